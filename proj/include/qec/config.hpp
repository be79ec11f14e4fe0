#pragma once

// Experiment configuration: a sectioned key = value file plus command-line
// overrides of the form section.key=value.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qec {

enum class DecoderKind { Ideal, Mwpm };
enum class WeightsMode { Static, AdaptiveCo, AdaptiveSp, OracleTrueRates };
enum class ObserverMode { Co, Sp, Both, OracleTruth };
enum class EstimatorMode { Gp, Static, None };

struct ExperimentConfig {
  // [code]
  std::string code_descriptor = "steane";

  // [noise]
  double mean_rate = 0.02;
  double sd_rate = 0.01;
  double xi = 5000.0;
  std::uint64_t seed = 1;

  // [decoder]
  DecoderKind decoder = DecoderKind::Mwpm;
  WeightsMode weights = WeightsMode::Static;

  // [observer]
  ObserverMode observer = ObserverMode::Both;

  // [estimator]
  EstimatorMode estimator = EstimatorMode::Gp;
  std::optional<double> f0_mean;   // override the calibrated prior
  std::optional<double> sigma_f;
  std::optional<double> xi_prior;

  // [run]
  long rounds = 100000;        // measured rounds per shard
  long warmup_rounds = 10000;  // 2 xi by default: lets the posterior lock on
  int shards = 8;
  std::vector<int> distances = {3, 5, 7};
  long min_failures = 200;     // sweep stopping rule
  long max_rounds = 10000000;  // sweep cap on measured rounds per distance
};

std::string to_string(DecoderKind);
std::string to_string(WeightsMode);
std::string to_string(ObserverMode);
std::string to_string(EstimatorMode);

// Parses the config file; unknown sections or keys are input errors.
ExperimentConfig parse_config_file(const std::string& path);

// Same, applied on top of an existing config (command defaults survive).
void parse_config_file_into(ExperimentConfig& config, const std::string& path);

// Applies "section.key=value" to an existing config.
void apply_override(ExperimentConfig& config, const std::string& assignment);

// Cross-field checks (adaptive weights need a matching observer stream, an
// estimator, positive round counts, ...). Throws InputError.
void validate_config(const ExperimentConfig& config);

}  // namespace qec
