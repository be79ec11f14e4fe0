#include "qec/harness.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "qec/errors.hpp"
#include "qec/estimator.hpp"
#include "qec/noise.hpp"
#include "qec/observers.hpp"
#include "qec/rng.hpp"

namespace qec {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

OUPrior noise_prior(const ExperimentConfig& cfg) {
  OUPrior prior;
  prior.xi = cfg.xi;
  if (cfg.sd_rate == 0.0) {
    prior.f0_mean = f_of_rate(cfg.mean_rate);
    prior.sigma_f = 0.0;
  } else {
    const PriorCalibration cal = calibrate_prior(cfg.mean_rate, cfg.sd_rate);
    prior.f0_mean = cal.f0_mean;
    prior.sigma_f = cal.sigma_f;
  }
  return prior;
}

// One estimator per tracked error, fed by one observer stream.
struct EstimatorBank {
  EstimatorMode mode = EstimatorMode::None;
  double fallback_rate = 0.0;
  std::vector<TrackState> gp;
  std::vector<long> hits;
  long absorbed = 0;

  void init(EstimatorMode m, const OUPrior& prior, std::size_t n, double fallback) {
    mode = m;
    fallback_rate = fallback;
    if (mode == EstimatorMode::Gp) gp.assign(n, TrackState{prior, 0.0, 0.0, 0, 0});
    if (mode == EstimatorMode::Static) hits.assign(n, 0);
  }

  void absorb(const std::vector<std::int8_t>& events) {
    if (mode == EstimatorMode::Gp) {
      for (std::size_t i = 0; i < gp.size(); ++i) gp_update(gp[i], events[i]);
    } else if (mode == EstimatorMode::Static) {
      for (std::size_t i = 0; i < hits.size(); ++i)
        if (events[i] > 0) ++hits[i];
    }
    ++absorbed;
  }

  // Prediction for `round` from data strictly before it.
  double predict_rate(std::size_t i, long round) const {
    if (absorbed != round - 1)
      throw InvariantViolation("estimator: prediction would reuse this round's data");
    if (mode == EstimatorMode::Gp) return gp_predict(gp[i], round).rate;
    if (mode == EstimatorMode::Static)
      return absorbed > 0 ? static_cast<double>(hits[i]) / static_cast<double>(absorbed)
                          : fallback_rate;
    throw InvariantViolation("estimator: no estimator configured");
  }

  long clamp_events() const {
    long total = 0;
    for (const auto& s : gp) total += s.clamp_events;
    return total;
  }
};

struct ShardStats {
  long measured = 0;
  long failures = 0;
  ClipCounters clips;
  long clamps = 0;
};

// The full module stack of one independent shard.
class ShardRun {
 public:
  ShardRun(const ExperimentConfig& cfg, const StabilizerCode& code,
           const OUPrior& truth_prior, const OUPrior& estimator_prior,
           std::uint64_t seed)
      : cfg_(cfg), code_(code), rng_(seed) {
    noise_ = make_dephasing_noise(code, truth_prior, rng_);
    const std::size_t n = noise_.tracked.size();
    for (const auto& e : noise_.tracked) {
      tr_syndrome_.push_back(e.cls.syndrome);
      tr_label_.push_back(e.cls.logical_label);
    }
    static_rates_.assign(n, cfg.mean_rate);
    rates_buffer_.assign(n, cfg.mean_rate);

    if (cfg.decoder == DecoderKind::Mwpm) {
      mwpm_ = std::make_unique<MwpmDecoder>(&code_,
                                            build_decoding_graph(code, noise_.tracked));
      mwpm_->set_rates(static_rates_, &clips_);
    } else {
      ideal_ = std::make_unique<IdealDecoder>(&code_, noise_.tracked);
    }

    co_active_ = cfg.observer == ObserverMode::Co || cfg.observer == ObserverMode::Both;
    sp_active_ = cfg.observer == ObserverMode::Sp || cfg.observer == ObserverMode::Both;
    truth_active_ = cfg.observer == ObserverMode::OracleTruth;
    if (sp_active_) pattern_index_ = build_pattern_index(code, noise_.tracked);

    if (cfg.estimator != EstimatorMode::None) {
      if (truth_active_) {
        bank_truth_.init(cfg.estimator, estimator_prior, n, cfg.mean_rate);
      } else {
        if (co_active_) bank_co_.init(cfg.estimator, estimator_prior, n, cfg.mean_rate);
        if (sp_active_) bank_sp_.init(cfg.estimator, estimator_prior, n, cfg.mean_rate);
      }
    }

    syndrome_ = Syndrome::all_plus(code.generators.size());
    actual_label_.assign(2 * code.k, 0);
  }

  ShardStats run(TrackResult* sink) {
    ShardStats stats;
    for (long i = 0; i < cfg_.warmup_rounds; ++i) run_round(false, stats, sink);
    for (long i = 0; i < cfg_.rounds; ++i) run_round(true, stats, sink);
    stats.clips = clips_;
    stats.clamps = bank_co_.clamp_events() + bank_sp_.clamp_events() +
                   bank_truth_.clamp_events();
    return stats;
  }

 private:
  const EstimatorBank& adaptive_bank(WeightsMode mode) const {
    if (truth_active_) return bank_truth_;
    return mode == WeightsMode::AdaptiveCo ? bank_co_ : bank_sp_;
  }

  void run_round(bool measured, ShardStats& stats, TrackResult* sink) {
    ++round_;
    sample_round_into(noise_, rng_, &sampled_);

    syndrome_.reset();
    std::fill(actual_label_.begin(), actual_label_.end(), 0);
    for (std::size_t i = 0; i < sampled_.truth.size(); ++i) {
      if (sampled_.truth[i] < 0) continue;
      syndrome_ *= tr_syndrome_[i];
      for (std::size_t l = 0; l < actual_label_.size(); ++l)
        actual_label_[l] ^= tr_label_[i][l];
    }

    if (sink) {
      pred_co_.resize(sampled_.truth.size());
      pred_sp_.resize(sampled_.truth.size());
      for (std::size_t i = 0; i < sampled_.truth.size(); ++i) {
        pred_co_[i] = bank_for_sink(bank_co_).predict_rate(i, round_);
        pred_sp_[i] = bank_for_sink(bank_sp_).predict_rate(i, round_);
      }
    }

    const std::vector<double>* rates = &static_rates_;
    switch (cfg_.weights) {
      case WeightsMode::Static:
        break;
      case WeightsMode::AdaptiveCo:
      case WeightsMode::AdaptiveSp: {
        const EstimatorBank& bank = adaptive_bank(cfg_.weights);
        for (std::size_t i = 0; i < rates_buffer_.size(); ++i)
          rates_buffer_[i] = bank.predict_rate(i, round_);
        rates = &rates_buffer_;
        break;
      }
      case WeightsMode::OracleTrueRates:
        for (std::size_t i = 0; i < rates_buffer_.size(); ++i)
          rates_buffer_[i] = rate_of_f(noise_.tracked[i].f_current);
        rates = &rates_buffer_;
        break;
    }

    DecodeResult result;
    if (mwpm_) {
      if (cfg_.weights != WeightsMode::Static) mwpm_->set_rates(*rates, &clips_);
      result = mwpm_->decode(syndrome_);
    } else {
      result = ideal_->decode(syndrome_, *rates);
    }

    bool failed = false;
    for (std::size_t l = 0; l < actual_label_.size(); ++l)
      if (result.correction_class.logical_label[l] != actual_label_[l]) failed = true;
    if (measured) {
      stats.measured += 1;
      if (failed) stats.failures += 1;
    }

    if (sp_active_) observe_sp_into(pattern_index_, syndrome_, &y_sp_);

    if (cfg_.estimator != EstimatorMode::None) {
      if (truth_active_) {
        bank_truth_.absorb(sampled_.truth);
      } else {
        if (co_active_) bank_co_.absorb(result.decomposition.y);
        if (sp_active_) bank_sp_.absorb(y_sp_);
      }
    }

    if (sink) {
      for (std::size_t i = 0; i < sampled_.truth.size(); ++i) {
        TrackRow row;
        row.round = round_;
        row.error_id = static_cast<int>(i);
        row.eps_true = rate_of_f(noise_.tracked[i].f_current);
        row.eps_hat_co = pred_co_[i];
        row.eps_hat_sp = pred_sp_[i];
        row.eps_used = (*rates)[i];
        sink->rows.push_back(row);
      }
    }
  }

  // Track mode records both estimates; with the ground-truth observer both
  // columns come from the single truth-fed bank.
  const EstimatorBank& bank_for_sink(const EstimatorBank& bank) const {
    return truth_active_ ? bank_truth_ : bank;
  }

  const ExperimentConfig& cfg_;
  const StabilizerCode& code_;
  RandomStream rng_;
  NoiseState noise_;
  std::vector<Syndrome> tr_syndrome_;
  std::vector<std::vector<std::uint8_t>> tr_label_;
  std::unique_ptr<MwpmDecoder> mwpm_;
  std::unique_ptr<IdealDecoder> ideal_;
  PatternIndex pattern_index_;
  bool co_active_ = false, sp_active_ = false, truth_active_ = false;
  EstimatorBank bank_co_, bank_sp_, bank_truth_;
  long round_ = 0;
  ClipCounters clips_;
  SampledRound sampled_;
  Syndrome syndrome_;
  std::vector<std::uint8_t> actual_label_;
  std::vector<double> static_rates_, rates_buffer_, pred_co_, pred_sp_;
  std::vector<std::int8_t> y_sp_;
};

std::vector<ShardStats> run_shards(const ExperimentConfig& cfg, const StabilizerCode& code,
                                   const OUPrior& truth_prior, const OUPrior& est_prior,
                                   long first_shard, int count, int threads) {
  std::vector<ShardStats> stats(count);
  if (threads <= 1) {
    for (int s = 0; s < count; ++s) {
      ShardRun shard(cfg, code, truth_prior, est_prior,
                     derive_seed(cfg.seed, static_cast<std::uint64_t>(first_shard + s)));
      stats[s] = shard.run(nullptr);
    }
    return stats;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int s = 0; s < count; ++s) {
    try {
      ShardRun shard(cfg, code, truth_prior, est_prior,
                     derive_seed(cfg.seed, static_cast<std::uint64_t>(first_shard + s)));
      stats[s] = shard.run(nullptr);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return stats;
}

void merge_stats(const std::vector<ShardStats>& stats, ExperimentSummary* summary) {
  for (const auto& s : stats) {
    summary->rounds_measured += s.measured;
    summary->failures += s.failures;
    summary->clip_low += s.clips.low;
    summary->clip_high += s.clips.high;
    summary->clamp_events += s.clamps;
    summary->shards_run += 1;
  }
  if (summary->rounds_measured > 0) {
    const double n = static_cast<double>(summary->rounds_measured);
    summary->p_log = static_cast<double>(summary->failures) / n;
    summary->p_log_stderr = std::sqrt(summary->p_log * (1.0 - summary->p_log) / n);
  }
}

}  // namespace

OUPrior effective_prior(const ExperimentConfig& cfg) {
  OUPrior prior = noise_prior(cfg);
  if (cfg.f0_mean) prior.f0_mean = *cfg.f0_mean;
  if (cfg.sigma_f) prior.sigma_f = *cfg.sigma_f;
  if (cfg.xi_prior) prior.xi = *cfg.xi_prior;
  return prior;
}

ExperimentSummary run_memory_experiment(const ExperimentConfig& cfg, int threads) {
  validate_config(cfg);
  const StabilizerCode code = build_code(cfg.code_descriptor);
  const OUPrior truth = noise_prior(cfg);
  const OUPrior est = effective_prior(cfg);
  ExperimentSummary summary;
  merge_stats(run_shards(cfg, code, truth, est, 0, cfg.shards, threads), &summary);
  return summary;
}

std::vector<DistanceResult> estimate_p_log(const ExperimentConfig& cfg,
                                           const std::vector<int>& distances,
                                           int threads) {
  validate_config(cfg);
  std::vector<DistanceResult> results;
  for (int d : distances) {
    if (d < 3 || d % 2 == 0)
      throw InputError("estimate_p_log: distances must be odd and >= 3");
    ExperimentConfig run_cfg = cfg;
    run_cfg.code_descriptor = "surface:" + std::to_string(d);
    const StabilizerCode code = build_code(run_cfg.code_descriptor);
    const OUPrior truth = noise_prior(run_cfg);
    const OUPrior est = effective_prior(run_cfg);

    ExperimentSummary summary;
    long next_shard = 0;
    while (summary.failures < cfg.min_failures &&
           summary.rounds_measured < cfg.max_rounds) {
      merge_stats(
          run_shards(run_cfg, code, truth, est, next_shard, run_cfg.shards, threads),
          &summary);
      next_shard += run_cfg.shards;
    }
    results.push_back({d, summary.rounds_measured, summary.failures, summary.p_log,
                       summary.p_log_stderr});
  }
  return results;
}

FitResult fit_exponential(const std::vector<double>& distances,
                          const std::vector<double>& p_logs,
                          const std::vector<double>& stderrs) {
  if (distances.size() != p_logs.size() || distances.size() != stderrs.size())
    throw InputError("fit_exponential: input sizes differ");
  std::vector<double> xs, ys, ws;
  bool weighted = true;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (p_logs[i] <= 0.0) {
      std::cerr << "fit_exponential: dropping d=" << distances[i]
                << " (p_log <= 0)\n";
      continue;
    }
    xs.push_back(distances[i]);
    ys.push_back(-std::log(p_logs[i]));
    if (stderrs[i] > 0.0)
      ws.push_back(1.0 / ((stderrs[i] / p_logs[i]) * (stderrs[i] / p_logs[i])));
    else
      weighted = false;
  }
  if (xs.size() < 2) throw InputError("fit_exponential: need >= 2 usable points");
  if (!weighted) ws.assign(xs.size(), 1.0);

  double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    S += ws[i];
    Sx += ws[i] * xs[i];
    Sy += ws[i] * ys[i];
    Sxx += ws[i] * xs[i] * xs[i];
    Sxy += ws[i] * xs[i] * ys[i];
  }
  const double det = S * Sxx - Sx * Sx;
  if (std::abs(det) < 1e-30)
    throw NumericalError("fit_exponential: degenerate design (identical distances?)");

  FitResult fit;
  fit.points_used = static_cast<int>(xs.size());
  fit.alpha = (S * Sxy - Sx * Sy) / det;
  fit.delta = (Sxx * Sy - Sx * Sxy) / det;
  double var_scale = 1.0;
  if (!weighted) {
    // unknown errors: scale by the residual variance
    double ssr = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - fit.alpha * xs[i] - fit.delta;
      ssr += r * r;
    }
    var_scale = xs.size() > 2 ? ssr / static_cast<double>(xs.size() - 2) : 0.0;
  }
  fit.sigma_alpha = std::sqrt(var_scale * S / det);
  fit.sigma_delta = std::sqrt(var_scale * Sxx / det);
  return fit;
}

TrackResult track_rates_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.observer != ObserverMode::Both && cfg.observer != ObserverMode::OracleTruth)
    throw InputError("track: needs observer = both (or oracle-truth)");
  if (cfg.estimator == EstimatorMode::None)
    throw InputError("track: needs an estimator");

  const StabilizerCode code = build_code(cfg.code_descriptor);
  const OUPrior truth = noise_prior(cfg);
  const OUPrior est = effective_prior(cfg);

  TrackResult result;
  result.rounds = cfg.rounds;
  result.warmup_rounds = cfg.warmup_rounds;
  result.num_tracked = static_cast<int>(code.n);
  result.rows.reserve(static_cast<std::size_t>(cfg.rounds + cfg.warmup_rounds) * code.n);

  ShardRun shard(cfg, code, truth, est, derive_seed(cfg.seed, 0));
  shard.run(&result);

  const int n = result.num_tracked;
  result.mean_abs_err_co.assign(n, 0.0);
  result.mean_abs_err_sp.assign(n, 0.0);
  result.mean_abs_err_static.assign(n, 0.0);
  result.co_sp_correlation.assign(n, 0.0);
  std::vector<double> sc(n, 0), ss(n, 0), scc(n, 0), sss(n, 0), scs(n, 0);
  std::vector<long> count(n, 0);
  for (const TrackRow& row : result.rows) {
    if (row.round <= cfg.warmup_rounds) continue;
    const int i = row.error_id;
    count[i] += 1;
    result.mean_abs_err_co[i] += std::abs(row.eps_hat_co - row.eps_true);
    result.mean_abs_err_sp[i] += std::abs(row.eps_hat_sp - row.eps_true);
    result.mean_abs_err_static[i] += std::abs(cfg.mean_rate - row.eps_true);
    sc[i] += row.eps_hat_co;
    ss[i] += row.eps_hat_sp;
    scc[i] += row.eps_hat_co * row.eps_hat_co;
    sss[i] += row.eps_hat_sp * row.eps_hat_sp;
    scs[i] += row.eps_hat_co * row.eps_hat_sp;
  }
  for (int i = 0; i < n; ++i) {
    const double m = static_cast<double>(count[i]);
    if (m == 0) continue;
    result.mean_abs_err_co[i] /= m;
    result.mean_abs_err_sp[i] /= m;
    result.mean_abs_err_static[i] /= m;
    const double cov = scs[i] / m - (sc[i] / m) * (ss[i] / m);
    const double var_c = scc[i] / m - (sc[i] / m) * (sc[i] / m);
    const double var_s = sss[i] / m - (ss[i] / m) * (ss[i] / m);
    result.co_sp_correlation[i] =
        var_c > 0 && var_s > 0 ? cov / std::sqrt(var_c * var_s) : 0.0;
  }
  return result;
}

double exhaustive_phase_flip_p_log(const StabilizerCode& code,
                                   const std::vector<double>& rates, int threads) {
  const std::size_t n = code.n;
  if (rates.size() != n) throw InputError("exhaustive p_log: rate vector size mismatch");
  if (n > 22) throw InputError("exhaustive p_log: capped at 2^22 error patterns");
  if (code.num_x_checks > 16)
    throw InputError("exhaustive p_log: too many checks to precompute decodes");

  std::vector<TrackedError> tracked;
  for (std::size_t q = 0; q < n; ++q) {
    TrackedError e;
    e.pauli = PauliString::single(n, q, 'Z');
    e.cls = classify_error(code, e.pauli);
    e.f_current = 0.0;
    tracked.push_back(std::move(e));
  }

  // Per-qubit X-check pattern and logical label, packed.
  std::vector<std::uint32_t> pattern(n, 0), label(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    for (int d : tracked[q].cls.syndrome.defects()) {
      if (d >= static_cast<int>(code.num_x_checks))
        throw InputError("exhaustive p_log: non-X check flipped");
      pattern[q] |= 1u << d;
    }
    for (std::size_t l = 0; l < tracked[q].cls.logical_label.size(); ++l)
      if (tracked[q].cls.logical_label[l]) label[q] |= 1u << l;
  }

  // Decode every possible defect set once.
  MwpmDecoder decoder(&code, build_decoding_graph(code, tracked));
  decoder.set_rates(rates, nullptr);
  const std::uint32_t num_syndromes = 1u << code.num_x_checks;
  std::vector<std::uint32_t> correction_label(num_syndromes, 0);
  for (std::uint32_t s = 0; s < num_syndromes; ++s) {
    Syndrome syn = Syndrome::all_plus(code.generators.size());
    for (std::size_t c = 0; c < code.num_x_checks; ++c)
      if ((s >> c) & 1u) syn.flip(c);
    const DecodeResult r = decoder.decode(syn);
    for (std::size_t l = 0; l < r.correction_class.logical_label.size(); ++l)
      if (r.correction_class.logical_label[l]) correction_label[s] |= 1u << l;
  }

  // Fixed chunks summed in chunk order: identical results for any thread
  // count, and the serial reference runs the same chunks sequentially.
  const std::uint64_t total = std::uint64_t{1} << n;
  const int chunks = 256;
  const std::uint64_t per_chunk = (total + chunks - 1) / chunks;
  std::vector<double> chunk_sum(chunks, 0.0);

  auto run_chunk = [&](int c) {
    const std::uint64_t begin = per_chunk * static_cast<std::uint64_t>(c);
    const std::uint64_t end = std::min(total, begin + per_chunk);
    double acc = 0.0;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      double prob = 1.0;
      std::uint32_t syn = 0, lab = 0;
      for (std::size_t q = 0; q < n; ++q) {
        if ((mask >> q) & 1u) {
          prob *= rates[q];
          syn ^= pattern[q];
          lab ^= label[q];
        } else {
          prob *= 1.0 - rates[q];
        }
      }
      if (lab != correction_label[syn]) acc += prob;
    }
    chunk_sum[c] = acc;
  };

  if (threads <= 1) {
    for (int c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int c = 0; c < chunks; ++c) {
      try {
        run_chunk(c);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }
  double p_log = 0.0;
  for (int c = 0; c < chunks; ++c) p_log += chunk_sum[c];
  return p_log;
}

void write_summary_json(std::ostream& out, const ExperimentConfig& cfg,
                        const ExperimentSummary& summary) {
  out << "{\n"
      << "  \"code\": \"" << cfg.code_descriptor << "\",\n"
      << "  \"decoder\": \"" << to_string(cfg.decoder) << "\",\n"
      << "  \"weights\": \"" << to_string(cfg.weights) << "\",\n"
      << "  \"observer\": \"" << to_string(cfg.observer) << "\",\n"
      << "  \"estimator\": \"" << to_string(cfg.estimator) << "\",\n"
      << "  \"seed\": " << cfg.seed << ",\n"
      << "  \"shards\": " << summary.shards_run << ",\n"
      << "  \"rounds_per_shard\": " << cfg.rounds << ",\n"
      << "  \"warmup_rounds\": " << cfg.warmup_rounds << ",\n"
      << "  \"rounds_measured\": " << summary.rounds_measured << ",\n"
      << "  \"failures\": " << summary.failures << ",\n"
      << "  \"p_log\": " << fmt_double(summary.p_log) << ",\n"
      << "  \"stderr\": " << fmt_double(summary.p_log_stderr) << ",\n"
      << "  \"clip_low\": " << summary.clip_low << ",\n"
      << "  \"clip_high\": " << summary.clip_high << ",\n"
      << "  \"clamp_events\": " << summary.clamp_events << "\n"
      << "}\n";
}

void write_sweep_json(std::ostream& out, const ExperimentConfig& cfg,
                      const std::vector<DistanceResult>& results) {
  out << "{\n"
      << "  \"weights\": \"" << to_string(cfg.weights) << "\",\n"
      << "  \"observer\": \"" << to_string(cfg.observer) << "\",\n"
      << "  \"estimator\": \"" << to_string(cfg.estimator) << "\",\n"
      << "  \"mean_rate\": " << fmt_double(cfg.mean_rate) << ",\n"
      << "  \"sd_rate\": " << fmt_double(cfg.sd_rate) << ",\n"
      << "  \"seed\": " << cfg.seed << ",\n"
      << "  \"results\": [\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << "    {\"d\": " << r.d << ", \"rounds\": " << r.rounds
        << ", \"failures\": " << r.failures << ", \"p_log\": " << fmt_double(r.p_log)
        << ", \"stderr\": " << fmt_double(r.stderr_) << "}"
        << (i + 1 < results.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
}

void write_fit_json(std::ostream& out, const FitResult& fit) {
  out << "{\n"
      << "  \"alpha\": " << fmt_double(fit.alpha) << ",\n"
      << "  \"delta\": " << fmt_double(fit.delta) << ",\n"
      << "  \"sigma_alpha\": " << fmt_double(fit.sigma_alpha) << ",\n"
      << "  \"sigma_delta\": " << fmt_double(fit.sigma_delta) << ",\n"
      << "  \"points_used\": " << fit.points_used << "\n"
      << "}\n";
}

void write_rates_csv(std::ostream& out, const TrackResult& result) {
  out << "round,error_id,eps_true,eps_hat_co,eps_hat_sp,eps_used\n";
  for (const TrackRow& row : result.rows) {
    out << row.round << ',' << row.error_id << ',' << fmt_double(row.eps_true) << ','
        << fmt_double(row.eps_hat_co) << ',' << fmt_double(row.eps_hat_sp) << ','
        << fmt_double(row.eps_used) << '\n';
  }
}

std::vector<DistanceResult> read_sweep_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sweep file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError("bad sweep JSON in " + path + ": " + e.what());
  }
  if (!j.contains("results") || !j["results"].is_array())
    throw InputError("sweep file " + path + " has no results array");
  std::vector<DistanceResult> out;
  for (const auto& item : j["results"]) {
    DistanceResult r;
    r.d = item.at("d").get<int>();
    r.rounds = item.at("rounds").get<long>();
    r.failures = item.at("failures").get<long>();
    r.p_log = item.at("p_log").get<double>();
    r.stderr_ = item.at("stderr").get<double>();
    out.push_back(r);
  }
  return out;
}

}  // namespace qec
