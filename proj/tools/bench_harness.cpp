// Times the serial reference runner against the OpenMP runner on the same
// workload and verifies the results are bit-identical.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "grenander/experiment.hpp"

namespace {

double run_timed(const grenander::ExperimentConfig& cfg, bool parallel,
                 grenander::ExperimentResult& out) {
  const auto start = std::chrono::steady_clock::now();
  out = parallel ? grenander::run_experiment(cfg)
                 : grenander::run_experiment_serial(cfg);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

bool identical(const grenander::ExperimentResult& a,
               const grenander::ExperimentResult& b) {
  if (a.series.size() != b.series.size()) return false;
  for (std::size_t s = 0; s < a.series.size(); ++s) {
    if (a.series[s].values != b.series[s].values) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int replications = 200;
  int max_workers = 4;
  if (argc > 1) replications = std::stoi(argv[1]);
  if (argc > 2) max_workers = std::stoi(argv[2]);

  grenander::ExperimentConfig cfg;
  cfg.density = grenander::ReferenceDensity::linear(1.5, 1.0, 1.0);
  cfg.statistic = grenander::Statistic::L2Error;
  cfg.n_grid = {1000, 3162, 10000};
  cfg.replications = replications;
  cfg.base_seed = 7;

  grenander::ExperimentResult serial;
  const double t_serial = run_timed(cfg, false, serial);
  std::printf("%-22s %10.1f ms\n", "serial reference", t_serial);

#ifdef _OPENMP
  std::printf("hardware threads: %d\n", omp_get_max_threads());
#endif
  for (int w = 1; w <= max_workers; w *= 2) {
    cfg.workers = w;
    grenander::ExperimentResult parallel;
    const double t = run_timed(cfg, true, parallel);
    std::printf("omp workers=%-10d %10.1f ms  speedup %.2fx  %s\n", w, t,
                t_serial / t,
                identical(serial, parallel) ? "bit-identical" : "MISMATCH");
    if (!identical(serial, parallel)) return 1;
  }
  return 0;
}
