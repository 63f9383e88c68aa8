#include <cstdio>

#include "octoslice/acceptance.hpp"

int main() {
  int failed = 0;
  octoslice::run_acceptance({}, false, [&](const octoslice::CriterionResult& r) {
    std::printf("[%s] criterion %2d %-30s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.summary.c_str(), r.seconds);
    std::fflush(stdout);
    failed += r.pass ? 0 : 1;
  });
  std::printf("%d of %zu criteria failed\n", failed, octoslice::acceptance_criteria().size());
  return failed == 0 ? 0 : 1;
}
