#include <doctest.h>

#include "random_cases.hpp"

// Randomized structural invariants over both families. Seeds are fixed so a
// failure reproduces; the per-property counters guard against a template
// change silently starving one of the checks.

namespace {

void report(const randomcase::CaseStats& st) {
  for (const std::string& f : st.failures) MESSAGE(f);
  CHECK(st.failures.empty());
  CHECK(st.cases >= 100);
  CHECK(st.axiomChecks > 0);
  CHECK(st.thetaChecks > 0);
  CHECK(st.bondingChecks > 0);
  CHECK(st.nestingChecks > 0);
  CHECK(st.rationalCoreChecks > 0);
  CHECK(st.dichotomyChecks > 0);
  CHECK(st.equivalenceChecks > 0);
}

} // namespace

TEST_CASE("random lattice chains satisfy the structural invariants") {
  randomcase::CaseStats st = randomcase::run_lattice_cases(110, 20240817u);
  report(st);
}

TEST_CASE("random heisenberg chains satisfy the structural invariants") {
  randomcase::CaseStats st = randomcase::run_heisenberg_cases(110, 6180339u);
  report(st);
}
