#pragma once

// Online Gaussian-process classification of error events with an
// Ornstein-Uhlenbeck prior. The OU kernel collapses the posterior to two
// scalars per tracked error, so one update costs O(1); a full-covariance
// recursion is kept alongside as the equivalence oracle.
//
// Rates are mapped through the small-rate approximation eps ~ e^f, matching
// the likelihood used for the update coefficients.

#include <algorithm>
#include <cmath>
#include <vector>

#include "qec/errors.hpp"
#include "qec/noise.hpp"

namespace qec {

inline constexpr double kPredictedRateFloor = 1e-12;
inline constexpr double kPredictedRateCeil = 0.5 - 1e-9;

struct TrackState {
  OUPrior prior;
  double delta_f = 0.0;
  double delta_K = 0.0;
  long t = 0;  // rounds absorbed
  long clamp_events = 0;
};

// First and second derivatives of ln<p(y|f)> with respect to the posterior
// mean, under <p(y=+1|f)> ~ e^{m + v/2} =: g.
//   y = +1: q = 1,          r = 0
//   y = -1: q = -g/(1-g),   r = -g/(1-g)^2
// g >= 1 would make the no-error likelihood non-positive; g is clamped (and
// the event counted), and r is floored so the propagated variance
// K0 + e^{-2/xi} delta_K stays positive.
inline void gp_coefficients(double m, double v, int y, double* q, double* r,
                            long* clamp_events) {
  if (y > 0) {
    *q = 1.0;
    *r = 0.0;
    return;
  }
  double g = std::exp(m + 0.5 * v);
  if (g >= 1.0 - 1e-9) {
    g = 1.0 - 1e-9;
    if (clamp_events) *clamp_events += 1;
  }
  *q = -g / (1.0 - g);
  *r = -g / ((1.0 - g) * (1.0 - g));
  if (v > 0.0 && *r < -(1.0 - 1e-9) / v) {
    *r = -(1.0 - 1e-9) / v;
    if (clamp_events) *clamp_events += 1;
  }
}

inline void gp_update(TrackState& state, int y) {
  const double decay = std::exp(-1.0 / state.prior.xi);
  const double decay2 = decay * decay;
  const double m = state.prior.f0_mean + decay * state.delta_f;
  const double v = state.prior.sigma_f * state.prior.sigma_f + decay2 * state.delta_K;
  double q, r;
  gp_coefficients(m, v, y, &q, &r, &state.clamp_events);
  state.delta_f = decay * state.delta_f + q * v;
  state.delta_K = decay2 * state.delta_K + r * v * v;
  state.t += 1;
}

struct Prediction {
  double mean_f = 0.0;
  double var_f = 0.0;
  double rate = 0.0;
};

inline Prediction gp_predict(const TrackState& state, long x) {
  if (x < state.t) throw InputError("gp_predict: query round precedes absorbed data");
  const double decay = std::exp(-static_cast<double>(x - state.t) / state.prior.xi);
  Prediction p;
  p.mean_f = state.prior.f0_mean + decay * state.delta_f;
  p.var_f = state.prior.sigma_f * state.prior.sigma_f + decay * decay * state.delta_K;
  if (p.var_f < 0.0) {
    if (p.var_f < -1e-12)
      throw NumericalError("gp_predict: negative posterior variance");
    p.var_f = 0.0;
  }
  const double rate = std::exp(p.mean_f + 0.5 * p.var_f);
  p.rate = std::clamp(rate, kPredictedRateFloor, kPredictedRateCeil);
  return p;
}

// Plain event-frequency estimate for time-independent rates.
inline double static_estimate(const std::vector<std::int8_t>& events) {
  if (events.empty()) throw InputError("static_estimate: empty event list");
  long hits = 0;
  for (auto y : events)
    if (y > 0) ++hits;
  return static_cast<double>(hits) / static_cast<double>(events.size());
}

// General-kernel recursion carrying the full covariance matrix over rounds
// 1..horizon. O(horizon^2) per update; exists to certify that the
// two-parameter recursion is exact for the OU kernel.
class FullGpOracle {
 public:
  FullGpOracle(const OUPrior& prior, int horizon) : prior_(prior), horizon_(horizon) {
    if (horizon < 1 || horizon > 500)
      throw InputError("FullGpOracle: horizon must be in [1, 500]");
    mean_.assign(horizon + 1, prior.f0_mean);
    cov_.assign(horizon + 1, std::vector<double>(horizon + 1, 0.0));
    const double s2 = prior.sigma_f * prior.sigma_f;
    for (int x = 1; x <= horizon; ++x)
      for (int y = 1; y <= horizon; ++y)
        cov_[x][y] = s2 * std::exp(-std::abs(x - y) / prior.xi);
  }

  void absorb(int y) {
    if (t_ >= horizon_) throw InputError("FullGpOracle: horizon exhausted");
    const int t = ++t_;
    double q, r;
    gp_coefficients(mean_[t], cov_[t][t], y, &q, &r, &clamp_events_);
    std::vector<double> col(horizon_ + 1);
    for (int x = 1; x <= horizon_; ++x) col[x] = cov_[x][t];
    for (int x = 1; x <= horizon_; ++x) {
      mean_[x] += q * col[x];
      for (int xp = 1; xp <= horizon_; ++xp) cov_[x][xp] += r * col[x] * col[xp];
    }
  }

  long t() const { return t_; }
  double mean_at(int x) const { return mean_.at(x); }
  double var_at(int x) const { return cov_.at(x).at(x); }

 private:
  OUPrior prior_;
  int horizon_;
  long t_ = 0;
  long clamp_events_ = 0;
  std::vector<double> mean_;
  std::vector<std::vector<double>> cov_;
};

}  // namespace qec
