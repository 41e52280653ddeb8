#pragma once

#include <stdexcept>
#include <string>

namespace chaincalc {

// Error taxonomy used across the library. The CLI maps kinds to exit codes:
// Validation/Structural/Precondition/Unrepresentable -> 1, Resource -> 2.
enum class ErrorKind {
  Structural,      // family/rank mismatch, malformed inputs
  Validation,      // invalid subgroup data, bad parameters, parse semantics
  Resource,        // a configured cap was exceeded
  Unrepresentable, // subgroup exists but has no SubgroupData shape
  Precondition,    // operation called outside its contract
};

class ChainError : public std::runtime_error {
public:
  ChainError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void structural_error(const std::string& msg) {
  throw ChainError(ErrorKind::Structural, msg);
}
[[noreturn]] inline void validation_error(const std::string& msg) {
  throw ChainError(ErrorKind::Validation, msg);
}
[[noreturn]] inline void resource_error(const std::string& msg) {
  throw ChainError(ErrorKind::Resource, msg);
}
[[noreturn]] inline void unrepresentable_error(const std::string& msg) {
  throw ChainError(ErrorKind::Unrepresentable, msg);
}
[[noreturn]] inline void precondition_error(const std::string& msg) {
  throw ChainError(ErrorKind::Precondition, msg);
}

} // namespace chaincalc
