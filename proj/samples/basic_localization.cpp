// Localize one random network with all three solvers and compare errors.

#include <cstdlib>
#include <iostream>

#include "coopnet/coopnet.hpp"

int main(int argc, char** argv) {
  using namespace coopnet;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;

  DeploymentConfig dep;
  dep.n_targets = 30;
  ErrorModel err;  // sigma = 1 m, LOS
  Rng rng(seed);
  const Scenario s = generate_scenario(dep, err, rng);
  const auto stats = connectivity_stats(s);
  std::cout << s.n_targets() << " targets, " << stats.without_anchor << " without a reference link\n";

  SolverConfig cfg;
  Rng init(seed + 1);
  const EstimateStack x0 = initial_estimate(s, cfg, init);

  const auto report = [&](const char* name, const SolveResult& r) {
    const auto e = target_errors(r.estimate, s);
    std::cout << name << ": median error " << median(e) << " m, f = " << r.trace.iterations.back().f << " after "
              << r.trace.size() << " iterations\n";
  };
  report("ppm ", solve_ppm(s, cfg, x0));
  report("pocs", solve_pocs(s, cfg, x0));
  report("ppb ", solve_ppb(s, cfg));
}
