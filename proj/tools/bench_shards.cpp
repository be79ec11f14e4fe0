// Compares the serial reference loop against OpenMP shard execution on the
// same workload and verifies both produce identical statistics.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "qec/config.hpp"
#include "qec/harness.hpp"

namespace {

double time_run(const qec::ExperimentConfig& config, int threads,
                qec::ExperimentSummary* summary) {
  const auto start = std::chrono::steady_clock::now();
  *summary = qec::run_memory_experiment(config, threads);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double>(elapsed).count();
}

}  // namespace

int main(int argc, char** argv) {
  qec::ExperimentConfig config;
  config.code_descriptor = argc > 1 ? argv[1] : "surface:5";
  config.weights = qec::WeightsMode::AdaptiveSp;
  config.observer = qec::ObserverMode::Sp;
  config.rounds = argc > 2 ? std::stol(argv[2]) : 20000;
  config.warmup_rounds = 10000;
  config.shards = 8;
  config.seed = 99;

  const int max_threads = omp_get_max_threads();
  std::printf("code=%s rounds/shard=%ld shards=%d\n", config.code_descriptor.c_str(),
              config.rounds, config.shards);

  qec::ExperimentSummary serial;
  const double t_serial = time_run(config, 1, &serial);
  std::printf("%-10s %8.3f s   p_log=%.6g failures=%ld\n", "serial", t_serial,
              serial.p_log, serial.failures);

  // 2 threads always runs (oversubscribed on small machines) so the OpenMP
  // path is exercised and compared even there
  for (int threads : {2, 4, 8, 16}) {
    if (threads > std::max(2, max_threads)) break;
    qec::ExperimentSummary parallel;
    const double t = time_run(config, threads, &parallel);
    const bool same = parallel.failures == serial.failures &&
                      parallel.rounds_measured == serial.rounds_measured &&
                      parallel.p_log == serial.p_log;
    std::printf("%2d threads %8.3f s   speedup=%.2fx   identical=%s\n", threads, t,
                t_serial / t, same ? "yes" : "NO");
    if (!same) return 1;
  }
  return 0;
}
