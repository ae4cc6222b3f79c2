// Fits the walker heating probability to the dense engine's late-time anyon
// density at L = 2 with the imperfect gate |Q| = 0.1 sigma^z, phi = 0.5.

#include <CLI11.hpp>

#include <cstdio>

#include "rydsim/experiments.hpp"
#include "rydsim/toric.hpp"

namespace {

double plateau(const rydsim::ToricModel& model, rydsim::ToricEngine engine, int trajectories, int sweeps,
               std::uint64_t seed, int workers) {
  rydsim::ToricCoolOptions o;
  o.engine = engine;
  o.trajectories = trajectories;
  o.sweeps = sweeps;
  o.seed = seed;
  o.workers = workers;
  return rydsim::analyze_toric(rydsim::cool_toric(model, o)).plateau_density;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calibrate the walker heating probability against the dense engine"};
  int dense_trajectories = 1000;
  int walker_trajectories = 40000;
  int sweeps = 60;
  int iterations = 12;
  std::uint64_t seed = 7;
  int workers = 0;
  app.add_option("--dense-trajectories", dense_trajectories);
  app.add_option("--walker-trajectories", walker_trajectories);
  app.add_option("--sweeps", sweeps);
  app.add_option("--iterations", iterations, "Bisection steps");
  app.add_option("--seed", seed);
  app.add_option("--workers", workers);
  CLI11_PARSE(app, argc, argv);
  if (workers <= 0) workers = rydsim::default_workers();

  rydsim::ToricModel dense = rydsim::make_toric_model(2);
  dense.error = rydsim::ErrorModel::single_site(0.1);
  const double target = plateau(dense, rydsim::ToricEngine::Dense, dense_trajectories, sweeps, seed, workers);
  std::printf("dense plateau density %.6f\n", target);

  // The walker plateau grows monotonically with p_heat.
  rydsim::ToricModel walker = rydsim::make_toric_model(2);
  double lo = 0.0;
  double hi = 0.1;
  for (int k = 0; k < iterations; ++k) {
    walker.p_heat = 0.5 * (lo + hi);
    const double n = plateau(walker, rydsim::ToricEngine::Walker, walker_trajectories, sweeps, seed + 1, workers);
    std::printf("p_heat %.6f  walker plateau %.6f\n", walker.p_heat, n);
    (n < target ? lo : hi) = walker.p_heat;
  }
  std::printf("calibrated p_heat %.4f (shipped constant %.4f)\n", 0.5 * (lo + hi), rydsim::kCalibratedHeating);
  return 0;
}
