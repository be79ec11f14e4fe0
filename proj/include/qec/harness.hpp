#pragma once

// Closed-loop Monte Carlo experiments: per-round noise -> syndrome -> decode
// -> observe -> estimate, with a warm-up stage excluded from the failure
// statistics. Work is split into independent shards with counter-derived
// seeds; the OpenMP path and the serial reference path produce identical
// results for any thread count.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qec/code.hpp"
#include "qec/config.hpp"
#include "qec/decoder.hpp"

namespace qec {

struct ExperimentSummary {
  long rounds_measured = 0;
  long failures = 0;
  double p_log = 0.0;
  double p_log_stderr = 0.0;
  long clip_low = 0;
  long clip_high = 0;
  long clamp_events = 0;
  int shards_run = 0;
};

// Runs config.shards shards (warmup + measured rounds each) and merges their
// statistics in shard order. threads <= 1 selects the serial reference loop.
ExperimentSummary run_memory_experiment(const ExperimentConfig& config, int threads = 1);

struct DistanceResult {
  int d = 0;
  long rounds = 0;
  long failures = 0;
  double p_log = 0.0;
  double stderr_ = 0.0;
};

// Runs surface-code experiments per distance, adding shard batches until
// min_failures logical failures are seen or max_rounds is hit.
std::vector<DistanceResult> estimate_p_log(const ExperimentConfig& config,
                                           const std::vector<int>& distances,
                                           int threads = 1);

struct FitResult {
  double alpha = 0.0;
  double delta = 0.0;
  double sigma_alpha = 0.0;
  double sigma_delta = 0.0;
  int points_used = 0;
};

// Weighted least squares of -ln(p_log) = alpha d + delta. Points with
// p_log <= 0 are dropped with a warning on stderr; if any stderr is missing
// (<= 0) the fit falls back to equal weights with residual-based errors.
FitResult fit_exponential(const std::vector<double>& distances,
                          const std::vector<double>& p_logs,
                          const std::vector<double>& stderrs);

// Per-round, per-tracked-error record of the rate-tracking experiment.
struct TrackRow {
  long round = 0;
  int error_id = 0;
  double eps_true = 0.0;
  double eps_hat_co = 0.0;  // prediction for this round from data before it
  double eps_hat_sp = 0.0;
  double eps_used = 0.0;    // the rate the decoder consumed this round
};

struct TrackResult {
  long rounds = 0;
  long warmup_rounds = 0;
  int num_tracked = 0;
  std::vector<TrackRow> rows;  // all rounds, warmup included
  // Metrics over the measured window only:
  std::vector<double> mean_abs_err_co;      // per tracked error
  std::vector<double> mean_abs_err_sp;
  std::vector<double> mean_abs_err_static;  // |E[eps] - eps_true|
  std::vector<double> co_sp_correlation;
};

// Single-shard time-series experiment (both observers, GP estimator).
TrackResult track_rates_experiment(const ExperimentConfig& config);

// Exact logical error probability of the phase-flip MWPM decoder, by
// enumeration of every Z-error subset (capped at 2^22 subsets). The decoder
// weights and the error measure both use `rates`. threads <= 1 runs the
// serial reference; the parallel path sums fixed chunks in order, so results
// are bit-identical for any thread count.
double exhaustive_phase_flip_p_log(const StabilizerCode& code,
                                   const std::vector<double>& rates, int threads = 1);

// The OU prior the engine uses for a config: calibrated from
// (mean_rate, sd_rate), with any explicit overrides applied on top.
OUPrior effective_prior(const ExperimentConfig& config);

// --- serialized outputs (floats carry 17 significant digits) ---

void write_summary_json(std::ostream& out, const ExperimentConfig& config,
                        const ExperimentSummary& summary);
void write_sweep_json(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<DistanceResult>& results);
void write_fit_json(std::ostream& out, const FitResult& fit);
void write_rates_csv(std::ostream& out, const TrackResult& result);

std::vector<DistanceResult> read_sweep_json(const std::string& path);

}  // namespace qec
