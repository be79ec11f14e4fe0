#pragma once

// Time-dependent stochastic Pauli noise in product form: each tracked error
// fires independently with rate eps(f), where the log-rate parameter f of
// every error follows its own Ornstein-Uhlenbeck process.

#include <cstdint>
#include <vector>

#include "qec/code.hpp"
#include "qec/pauli.hpp"
#include "qec/rng.hpp"

namespace qec {

struct OUPrior {
  double f0_mean = 0.0;  // stationary mean of f
  double sigma_f = 0.0;  // stationary standard deviation, >= 0
  double xi = 1.0;       // relaxation time in error-correction rounds, > 0
};

// eps(f) = (1 - exp(-2 e^f)) / 2, strictly inside (0, 0.5).
double rate_of_f(double f);
// Inverse of rate_of_f on (0, 0.5).
double f_of_rate(double rate);

// Exact one-round discretization of the OU process; preserves the stationary
// law Gaussian(f0_mean, sigma_f^2) with autocovariance sigma_f^2 e^{-|dt|/xi}.
double ou_step(double f, const OUPrior& prior, RandomStream& rng);
double ou_stationary_sample(const OUPrior& prior, RandomStream& rng);

struct TrackedError {
  ErrorClass cls;      // classify_error(code, pauli)
  PauliString pauli;   // physical error applied when this source fires
  double f_current = 0.0;
};

struct NoiseState {
  std::vector<TrackedError> tracked;
  OUPrior prior;
  long round = 0;
};

// Independent dephasing: one tracked Z error per qubit, f initialized from
// the stationary distribution. Throws InputError if two tracked errors would
// share a syndrome.
NoiseState make_dephasing_noise(const StabilizerCode& code, const OUPrior& prior,
                                RandomStream& rng);

void validate_noise_state(const NoiseState& state);

struct SampledRound {
  PauliString error;             // product of fired generator paulis
  std::vector<std::int8_t> truth;  // +1 fired / -1 not, per tracked error
};

// Advances every f by one OU step, then fires each tracked error
// independently with probability eps(f). Draw order is fixed (per error:
// gaussian, then uniform) so equal seeds give equal trajectories across
// decoder/observer configurations.
SampledRound sample_round(NoiseState& state, RandomStream& rng);

// Buffer-reusing variant for the per-round loop.
void sample_round_into(NoiseState& state, RandomStream& rng, SampledRound* out);

struct PriorCalibration {
  double f0_mean = 0.0;
  double sigma_f = 0.0;
  int iterations = 0;
};

// Solves E[eps(f)] = mean_rate and SD[eps(f)] = sd_rate for f ~ N(m, s^2)
// by Newton iteration over Gaussian quadrature of the exact rate map.
// Requires 0 < sd_rate < mean_rate < 0.5.
PriorCalibration calibrate_prior(double mean_rate, double sd_rate);

}  // namespace qec
