#include <cstdio>

#include "kptau/acceptance.hpp"

int main() {
  kptau::AcceptanceConfig cfg;
  bool all = true;
  auto criteria = kptau::acceptance_criteria();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    kptau::CriterionResult r = kptau::run_criterion(criteria[i], static_cast<int>(i + 1), cfg);
    std::printf("[%s] %d %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.elapsed_ms / 1000.0);
    for (const auto& p : r.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
