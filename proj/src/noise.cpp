#include "qec/noise.hpp"

#include <cmath>
#include <set>
#include <string>

#include "qec/errors.hpp"

namespace qec {

double rate_of_f(double f) { return 0.5 * (1.0 - std::exp(-2.0 * std::exp(f))); }

double f_of_rate(double rate) {
  if (!(rate > 0.0 && rate < 0.5)) throw InputError("f_of_rate: rate must be in (0, 0.5)");
  return std::log(-0.5 * std::log1p(-2.0 * rate));
}

double ou_step(double f, const OUPrior& prior, RandomStream& rng) {
  const double a = std::exp(-1.0 / prior.xi);
  const double noise_sd = prior.sigma_f * std::sqrt(1.0 - a * a);
  return prior.f0_mean + (f - prior.f0_mean) * a + noise_sd * rng.gaussian();
}

double ou_stationary_sample(const OUPrior& prior, RandomStream& rng) {
  return prior.f0_mean + prior.sigma_f * rng.gaussian();
}

void validate_noise_state(const NoiseState& state) {
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& e : state.tracked) {
    if (!seen.insert(e.cls.syndrome.defect_words()).second)
      throw InputError("NoiseState: two tracked errors share a syndrome");
  }
}

NoiseState make_dephasing_noise(const StabilizerCode& code, const OUPrior& prior,
                                RandomStream& rng) {
  NoiseState state;
  state.prior = prior;
  state.tracked.reserve(code.n);
  for (std::size_t q = 0; q < code.n; ++q) {
    TrackedError e;
    e.pauli = PauliString::single(code.n, q, 'Z');
    e.cls = classify_error(code, e.pauli);
    e.f_current = ou_stationary_sample(prior, rng);
    state.tracked.push_back(std::move(e));
  }
  validate_noise_state(state);
  return state;
}

void sample_round_into(NoiseState& state, RandomStream& rng, SampledRound* out) {
  const std::size_t n =
      state.tracked.empty() ? 1 : state.tracked.front().pauli.num_qubits();
  if (out->error.num_qubits() != n)
    out->error = PauliString::identity(n);
  else
    out->error.clear();
  out->truth.assign(state.tracked.size(), -1);
  for (std::size_t i = 0; i < state.tracked.size(); ++i) {
    auto& e = state.tracked[i];
    e.f_current = ou_step(e.f_current, state.prior, rng);
    if (rng.bernoulli(rate_of_f(e.f_current))) {
      out->truth[i] = +1;
      out->error *= e.pauli;
    }
  }
  state.round += 1;
}

SampledRound sample_round(NoiseState& state, RandomStream& rng) {
  SampledRound out;
  sample_round_into(state, rng, &out);
  return out;
}

namespace {

// E[eps(f)] and E[eps(f)^2] for f ~ N(m, s^2), composite Simpson over
// +-10 standard deviations. 4000 intervals puts the quadrature error well
// below 1e-10 for this smooth bounded integrand.
void rate_moments(double m, double s, double* mean, double* sd) {
  constexpr int kIntervals = 4000;
  constexpr double kRange = 10.0;
  const double h = 2.0 * kRange / kIntervals;
  double acc1 = 0.0, acc2 = 0.0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double u = -kRange + i * h;
    const double w = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double phi = std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI);
    const double eps = rate_of_f(m + s * u);
    acc1 += w * phi * eps;
    acc2 += w * phi * eps * eps;
  }
  acc1 *= h / 3.0;
  acc2 *= h / 3.0;
  *mean = acc1;
  const double var = acc2 - acc1 * acc1;
  *sd = var > 0.0 ? std::sqrt(var) : 0.0;
}

}  // namespace

PriorCalibration calibrate_prior(double mean_rate, double sd_rate) {
  if (!(mean_rate > 0.0 && mean_rate < 0.5) || !(sd_rate > 0.0 && sd_rate < 0.5))
    throw InputError("calibrate_prior: need mean_rate and sd_rate in (0, 0.5)");

  // Lognormal closed form of the small-rate approximation as the start point.
  double s2 = std::log1p(sd_rate * sd_rate / (mean_rate * mean_rate));
  double m = std::log(mean_rate) - 0.5 * s2;
  double s = std::sqrt(s2);

  constexpr int kMaxIter = 100;
  constexpr double kTol = 1e-10;
  constexpr double kStep = 1e-7;
  for (int iter = 1; iter <= kMaxIter; ++iter) {
    double em, es;
    rate_moments(m, s, &em, &es);
    const double r1 = em - mean_rate;
    const double r2 = es - sd_rate;
    if (std::abs(r1) < kTol && std::abs(r2) < kTol)
      return PriorCalibration{m, s, iter};

    double em_m, es_m, em_s, es_s;
    rate_moments(m + kStep, s, &em_m, &es_m);
    rate_moments(m, s + kStep, &em_s, &es_s);
    const double j11 = (em_m - em) / kStep, j12 = (em_s - em) / kStep;
    const double j21 = (es_m - es) / kStep, j22 = (es_s - es) / kStep;
    const double det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-30)
      throw NumericalError("calibrate_prior: singular Jacobian");
    m -= (j22 * r1 - j12 * r2) / det;
    s -= (-j21 * r1 + j11 * r2) / det;
    if (s <= 0.0) s = 1e-6;
  }
  throw NumericalError("calibrate_prior: no convergence after " + std::to_string(kMaxIter) +
                       " iterations");
}

}  // namespace qec
