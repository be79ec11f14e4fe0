#include <doctest.h>

#include <cmath>
#include <vector>

#include "qec/code.hpp"
#include "qec/errors.hpp"
#include "qec/noise.hpp"
#include "qec/rng.hpp"

using namespace qec;

TEST_CASE("rate_of_f limits and fixed points") {
  CHECK(rate_of_f(-40.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rate_of_f(40.0) == doctest::Approx(0.5).epsilon(1e-15));
  // solve (1 - e^{-2 e^f})/2 = 1/4  =>  f = ln(ln 2 / 2)
  const double f_quarter = std::log(std::log(2.0) / 2.0);
  CHECK(f_quarter == doctest::Approx(-1.0597).epsilon(1e-4));
  CHECK(rate_of_f(f_quarter) == doctest::Approx(0.25).epsilon(1e-14));
  for (double r : {1e-6, 0.02, 0.1, 0.3, 0.49})
    CHECK(rate_of_f(f_of_rate(r)) == doctest::Approx(r).epsilon(1e-12));
  CHECK_THROWS_AS(f_of_rate(0.5), InputError);
  CHECK_THROWS_AS(f_of_rate(0.0), InputError);
}

TEST_CASE("ou_step is deterministic mean reversion at sigma_f = 0") {
  OUPrior prior{-4.0, 0.0, 100.0};
  RandomStream rng(5);
  double f = -2.0;
  for (int i = 0; i < 10; ++i) {
    const double expected = prior.f0_mean + (f - prior.f0_mean) * std::exp(-0.01);
    f = ou_step(f, prior, rng);
    CHECK(f == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("ou_step reproduces the stationary law and kernel") {
  const OUPrior prior{-4.0, 0.7, 50.0};
  RandomStream rng(123456);
  const long steps = 1000000;
  std::vector<double> series(steps);
  double f = ou_stationary_sample(prior, rng);
  for (long i = 0; i < steps; ++i) {
    f = ou_step(f, prior, rng);
    series[i] = f;
  }
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= steps;
  const double s2 = prior.sigma_f * prior.sigma_f;

  // effective sample size ~ N / (2 xi); 3x margins on top of that
  const double se_var = s2 * std::sqrt(4.0 * prior.xi / steps);
  double var = 0.0;
  for (double v : series) var += (v - mean) * (v - mean);
  var /= steps;
  CHECK(std::abs(var - s2) < 3.0 * se_var);

  for (long lag : {1L, 50L, 150L}) {
    double cov = 0.0;
    for (long i = 0; i + lag < steps; ++i)
      cov += (series[i] - mean) * (series[i + lag] - mean);
    cov /= (steps - lag);
    const double expected = s2 * std::exp(-static_cast<double>(lag) / prior.xi);
    CHECK(std::abs(cov - expected) < 3.0 * se_var);
  }
}

TEST_CASE("sample_round: frozen rates fire at the right frequency") {
  const auto code = build_steane();
  const double target = 0.07;
  OUPrior frozen{f_of_rate(target), 0.0, 10.0};
  RandomStream rng(999);
  NoiseState state = make_dephasing_noise(code, frozen, rng);
  REQUIRE(state.tracked.size() == 7);

  const long rounds = 100000;
  long fires0 = 0, fires1 = 0, joint = 0;
  for (long i = 0; i < rounds; ++i) {
    const auto sampled = sample_round(state, rng);
    if (sampled.truth[0] > 0) ++fires0;
    if (sampled.truth[1] > 0) ++fires1;
    if (sampled.truth[0] > 0 && sampled.truth[1] > 0) ++joint;
  }
  const double sigma = std::sqrt(target * (1 - target) / rounds);
  CHECK(std::abs(fires0 / double(rounds) - target) < 3 * sigma);
  CHECK(std::abs(fires1 / double(rounds) - target) < 3 * sigma);
  // independence: joint frequency ~ product of marginals
  const double joint_p = target * target;
  const double sigma_joint = std::sqrt(joint_p * (1 - joint_p) / rounds);
  CHECK(std::abs(joint / double(rounds) - joint_p) < 3 * sigma_joint);
  CHECK(state.round == rounds);
}

TEST_CASE("sample_round: vanishing rates produce the identity") {
  const auto code = build_steane();
  OUPrior silent{-100.0, 0.0, 10.0};  // rate ~ e^{-100}
  RandomStream rng(4);
  NoiseState state = make_dephasing_noise(code, silent, rng);
  for (int i = 0; i < 1000; ++i) {
    const auto sampled = sample_round(state, rng);
    CHECK(sampled.error.is_identity());
    for (auto t : sampled.truth) CHECK(t == -1);
  }
}

TEST_CASE("sample_round error matches the fired truth vector") {
  const auto code = build_surface(3);
  OUPrior prior{f_of_rate(0.1), 0.5, 20.0};
  RandomStream rng(31);
  NoiseState state = make_dephasing_noise(code, prior, rng);
  for (int i = 0; i < 500; ++i) {
    const auto sampled = sample_round(state, rng);
    PauliString expect = PauliString::identity(code.n);
    for (std::size_t t = 0; t < sampled.truth.size(); ++t)
      if (sampled.truth[t] > 0) expect *= state.tracked[t].pauli;
    CHECK(sampled.error == expect);
    // syndrome homomorphism: syndrome of the product = product of syndromes
    Syndrome syn = Syndrome::all_plus(code.generators.size());
    for (std::size_t t = 0; t < sampled.truth.size(); ++t)
      if (sampled.truth[t] > 0) syn *= state.tracked[t].cls.syndrome;
    CHECK(syn == syndrome_of(code, sampled.error));
  }
}

TEST_CASE("calibrate_prior reproduces the reference parameter pairs") {
  const auto a = calibrate_prior(0.02, 0.01);
  CHECK(std::abs(a.f0_mean - (-4.0045)) < 5e-4);
  CHECK(std::abs(a.sigma_f - 0.4863) < 5e-4);
  const auto b = calibrate_prior(0.02, 0.02);
  CHECK(std::abs(b.f0_mean - (-4.2593)) < 5e-4);
  CHECK(std::abs(b.sigma_f - 0.8845) < 5e-4);
}

TEST_CASE("calibrate_prior degenerate limit and input errors") {
  const auto c = calibrate_prior(0.02, 1e-5);
  CHECK(std::abs(c.f0_mean - f_of_rate(0.02)) < 1e-3);
  CHECK(c.sigma_f < 1e-3);
  CHECK_THROWS_AS(calibrate_prior(0.6, 0.01), InputError);
  CHECK_THROWS_AS(calibrate_prior(0.02, 0.0), InputError);
  CHECK_THROWS_AS(calibrate_prior(0.02, 0.6), InputError);
}

TEST_CASE("sample_round only advances f_current and the round counter") {
  const auto code = build_steane();
  RandomStream rng(9);
  NoiseState state = make_dephasing_noise(code, OUPrior{-4.0, 0.5, 50.0}, rng);
  const auto snapshot = state.tracked;
  for (int i = 0; i < 200; ++i) sample_round(state, rng);
  REQUIRE(state.tracked.size() == snapshot.size());
  for (std::size_t t = 0; t < snapshot.size(); ++t) {
    CHECK(state.tracked[t].pauli == snapshot[t].pauli);
    CHECK(state.tracked[t].cls == snapshot[t].cls);
  }
  CHECK(state.round == 200);
}

TEST_CASE("duplicate tracked syndromes are rejected") {
  const auto code = build_steane();
  RandomStream rng(8);
  NoiseState state = make_dephasing_noise(code, OUPrior{-4, 0.1, 10}, rng);
  state.tracked.push_back(state.tracked.front());
  CHECK_THROWS_AS(validate_noise_state(state), InputError);
}
