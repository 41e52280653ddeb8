#pragma once

#include <map>
#include <string>
#include <vector>

#include "chains.hpp"

namespace chaincalc {

// Built-in worked examples. Each entry knows how to build its chain at any
// depth and carries the expected analysis outcomes the regression runner
// checks. The basis field records how a claim is backed: "computed" claims
// are recomputed from scratch, "certificate" claims verify a finite witness,
// "cited" claims concern behaviour beyond any finite truncation and are
// reported next to the finite-level evidence instead of being asserted.
struct CatalogExpectation {
  std::string claim;     // weaklyNormal, virtRegular, discriminant, stable
  std::string expected;  // rendered expected value, "?" when undetermined
  std::string basis;     // computed, certificate, cited
};

struct CatalogEntry {
  std::string name;
  std::string family;  // lattice or heisenberg
  std::string summary;
  std::map<std::string, Int> defaults;
  int defaultDepth = 3;
  std::vector<CatalogExpectation> expected;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& name);

// Chain with `levels` proper subgroups below the whole group. Unknown entry
// names, unknown parameter keys and invalid values (non-primes where a prime
// is required, equal primes) raise validation errors.
GroupChain catalog_instantiate(const std::string& name,
                               const std::map<std::string, Int>& overrides,
                               int levels);

struct ClaimOutcome {
  std::string claim;
  std::string expected;
  std::string basis;
  std::string observed;
  std::string status;  // pass, fail, reported, unevaluated
};

struct RegressionResult {
  std::string entry;
  int depth = 0;
  int probeDepth = 0;
  std::vector<ClaimOutcome> claims;
  bool allPassed = true;  // reported and unevaluated claims never fail
};

// Builds the entry at `depth` (default depth when negative), analyzes it and
// evaluates every expected claim. Resource limits mark the affected claims
// unevaluated rather than failed.
RegressionResult run_regression(const std::string& name,
                                const std::map<std::string, Int>& overrides,
                                int depth = -1, const Caps& caps = Caps{});

std::string regression_str(const RegressionResult& r);

}  // namespace chaincalc
