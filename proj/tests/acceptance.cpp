// Acceptance suite: evaluates every criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.
//
// Three criteria (4, 7, and the symmetry-defect clause of 8) assert
// quantities that the measured mathematics contradicts; they are implemented
// exactly as stated, fail, and are marked "expected failure" with the
// measured values printed (see the project README).  The exit status is
// nonzero iff any criterion deviates from its documented expected outcome,
// so a regression in a passing criterion -- or an unexplained change in a
// failing one -- still fails the suite.
#include <cstdio>

#include "birkhoff/experiments.hpp"

int main() {
  const auto results = birkhoff::run_acceptance();
  int unexpected = 0;
  for (const auto& r : results) {
    const bool as_documented = r.pass == r.expected_pass;
    if (!as_documented) ++unexpected;
    std::printf("[%s] criterion %2d: %s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(),
                r.pass           ? ""
                : r.expected_pass ? "  << UNEXPECTED"
                                  : "  (expected failure; see notes)");
    for (const auto& c : r.clauses) {
      std::printf("        %s  %s%s%s\n", c.pass ? "ok  " : "FAIL",
                  c.what.c_str(), c.detail.empty() ? "" : " -- ",
                  c.detail.c_str());
    }
    if (r.runtime_s > 0.0) std::printf("        time: %.2f s\n", r.runtime_s);
  }
  std::printf("%d of %zu criteria match their documented outcome\n",
              static_cast<int>(results.size()) - unexpected, results.size());
  return unexpected == 0 ? 0 : 1;
}
