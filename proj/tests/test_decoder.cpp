#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "qec/code.hpp"
#include "qec/decoder.hpp"
#include "qec/errors.hpp"
#include "qec/noise.hpp"
#include "qec/rng.hpp"

using namespace qec;

namespace {

std::vector<TrackedError> dephasing_tracked(const StabilizerCode& code) {
  std::vector<TrackedError> tracked;
  for (std::size_t q = 0; q < code.n; ++q) {
    TrackedError e;
    e.pauli = PauliString::single(code.n, q, 'Z');
    e.cls = classify_error(code, e.pauli);
    tracked.push_back(std::move(e));
  }
  return tracked;
}

std::vector<TrackedError> bitflip_tracked(const StabilizerCode& code) {
  std::vector<TrackedError> tracked;
  for (std::size_t q = 0; q < code.n; ++q) {
    TrackedError e;
    e.pauli = PauliString::single(code.n, q, 'X');
    e.cls = classify_error(code, e.pauli);
    tracked.push_back(std::move(e));
  }
  return tracked;
}

// Independent oracle: distribution over (syndrome, label) classes from
// enumerating every subset of independent single-qubit errors directly.
std::map<std::string, double> subset_distribution(const StabilizerCode& code,
                                                  const std::vector<TrackedError>& tracked,
                                                  const std::vector<double>& rates) {
  std::map<std::string, double> dist;
  const std::size_t n = tracked.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    PauliString err = PauliString::identity(code.n);
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) {
        err *= tracked[i].pauli;
        p *= rates[i];
      } else {
        p *= 1.0 - rates[i];
      }
    }
    dist[class_key(classify_error(code, err))] += p;
  }
  return dist;
}

// GF(2) kernel of the qubit -> X-check incidence map: every element is a
// syndrome-preserving Z-pattern (cycles and boundary-to-boundary chains).
std::vector<std::vector<std::uint8_t>> phase_flip_kernel(const StabilizerCode& code) {
  const std::size_t rows = code.num_x_checks, cols = code.n;
  std::vector<std::vector<std::uint8_t>> m(rows, std::vector<std::uint8_t>(cols, 0));
  for (std::size_t q = 0; q < cols; ++q)
    for (std::size_t g = 0; g < rows; ++g)
      if (code.generators[g].x_bit(q)) m[g][q] = 1;
  std::vector<int> pivot_col(rows, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && !m[p][c]) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && m[r][c])
        for (std::size_t cc = 0; cc < cols; ++cc) m[r][cc] ^= m[rank][cc];
    pivot_col[rank] = static_cast<int>(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  std::vector<std::vector<std::uint8_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint8_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < rank; ++r)
      if (m[r][free]) v[pivot_col[r]] = 1;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

TEST_CASE("edge_weight values, clipping and monotonicity") {
  CHECK(edge_weight(0.02) == doctest::Approx(std::log(49.0)).epsilon(1e-14));
  CHECK(edge_weight(0.5) == doctest::Approx(0.0).epsilon(1e-6));

  ClipCounters counters;
  CHECK(edge_weight(-0.1, &counters) == doctest::Approx(std::log((1 - 1e-12) / 1e-12)));
  CHECK(counters.low == 1);
  edge_weight(0.7, &counters);
  CHECK(counters.high == 1);

  double prev = edge_weight(1e-6);
  for (double r = 1e-5; r < 0.5; r *= 1.7) {
    const double w = edge_weight(r);
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("decoding graph structure on surface(3)") {
  const auto code = build_surface(3);
  const auto tracked = dephasing_tracked(code);
  const auto graph = build_decoding_graph(code, tracked);
  CHECK(graph.num_checks == 6);
  CHECK(graph.edges.size() == 13);  // one edge per tracked qubit
  std::vector<int> edges_per_tracked(tracked.size(), 0);
  int boundary_edges = 0;
  for (const auto& e : graph.edges) {
    edges_per_tracked[e.tracked] += 1;
    const bool u_virtual = e.u >= graph.num_checks;
    const bool v_virtual = e.v >= graph.num_checks;
    CHECK(!u_virtual);  // builder puts the check endpoint first
    if (v_virtual) ++boundary_edges;
  }
  CHECK(boundary_edges == 6);
  for (int count : edges_per_tracked) CHECK(count == 1);
}

TEST_CASE("decoding graph rejects non-matchable tracked sets") {
  const auto steane = build_steane();
  CHECK_THROWS_AS(build_decoding_graph(steane, dephasing_tracked(steane)), InputError);
}

TEST_CASE("mwpm: empty syndrome decodes to the identity") {
  const auto code = build_surface(3);
  const auto tracked = dephasing_tracked(code);
  const auto graph = build_decoding_graph(code, tracked);
  const std::vector<double> rates(tracked.size(), 0.02);
  const auto result = mwpm_decode(
      code, graph, Syndrome::all_plus(code.generators.size()), rates);
  CHECK(result.correction.is_identity());
  CHECK(result.correction_class.is_identity());
  for (auto y : result.decomposition.y) CHECK(y == -1);
}

TEST_CASE("mwpm: adjacent defects take the shared edge; boundary defect takes the boundary edge") {
  const auto code = build_surface(3);
  const auto tracked = dephasing_tracked(code);
  const auto graph = build_decoding_graph(code, tracked);
  const std::vector<double> rates(tracked.size(), 0.02);

  for (std::size_t q = 0; q < code.n; ++q) {
    const Syndrome syn = tracked[q].cls.syndrome;
    const auto result = mwpm_decode(code, graph, syn, rates);
    // single-qubit error: the one-hop correction is strictly cheapest
    CHECK(result.correction == tracked[q].pauli);
    for (std::size_t t = 0; t < tracked.size(); ++t)
      CHECK(result.decomposition.y[t] == (t == q ? +1 : -1));
  }
}

TEST_CASE("mwpm: decomposition is sound on random errors") {
  for (int d : {3, 5}) {
    const auto code = build_surface(d);
    const auto tracked = dephasing_tracked(code);
    MwpmDecoder decoder(&code, build_decoding_graph(code, tracked));
    std::vector<double> rates(tracked.size(), 0.02);
    decoder.set_rates(rates);
    RandomStream rng(101 + d);
    for (int trial = 0; trial < 300; ++trial) {
      PauliString err = PauliString::identity(code.n);
      for (std::size_t q = 0; q < code.n; ++q)
        if (rng.bernoulli(0.08)) err *= tracked[q].pauli;
      const Syndrome syn = syndrome_of(code, err);
      const auto result = decoder.decode(syn);  // throws if unsound
      CHECK(result.correction_class.syndrome == syn);
      // y decomposition reproduces the correction
      PauliString from_y = PauliString::identity(code.n);
      for (std::size_t t = 0; t < tracked.size(); ++t)
        if (result.decomposition.y[t] > 0) from_y *= tracked[t].pauli;
      CHECK(from_y == result.correction);
    }
  }
}

TEST_CASE("mwpm: matched weight beats randomized syndrome-consistent corrections") {
  for (int d : {3, 5}) {
    const auto code = build_surface(d);
    const auto tracked = dephasing_tracked(code);
    MwpmDecoder decoder(&code, build_decoding_graph(code, tracked));
    RandomStream rng(7 + d);
    std::vector<double> rates(tracked.size());
    for (auto& r : rates) r = 0.003 + 0.08 * rng.uniform01();
    decoder.set_rates(rates);
    const auto kernel = phase_flip_kernel(code);

    auto weight_of = [&](const std::vector<std::uint8_t>& pattern) {
      double w = 0.0;
      for (std::size_t q = 0; q < pattern.size(); ++q)
        if (pattern[q]) w += edge_weight(rates[q]);
      return w;
    };

    for (int trial = 0; trial < 20; ++trial) {
      PauliString err = PauliString::identity(code.n);
      for (std::size_t q = 0; q < code.n; ++q)
        if (rng.bernoulli(0.06)) err *= tracked[q].pauli;
      const auto result = decoder.decode(syndrome_of(code, err));
      std::vector<std::uint8_t> base(code.n, 0);
      for (std::size_t t = 0; t < tracked.size(); ++t)
        if (result.decomposition.y[t] > 0) base[t] = 1;
      const double matched_weight = weight_of(base);
      for (int candidate = 0; candidate < 50; ++candidate) {
        std::vector<std::uint8_t> other = base;
        for (const auto& k : kernel)
          if (rng.bernoulli(0.5))
            for (std::size_t q = 0; q < other.size(); ++q) other[q] ^= k[q];
        CHECK(matched_weight <= weight_of(other) + 1e-3);
      }
    }
  }
}

TEST_CASE("ideal decoder: repetition code picks the single error over the pair") {
  const auto code = build_repetition(3);
  const auto tracked = bitflip_tracked(code);  // X errors against ZZ checks
  const std::vector<double> rates(3, 0.1);

  Syndrome syn(code.generators.size());
  syn.set_value(0, -1);  // X on qubit 0 flips only the first check
  const auto result = ideal_decode(code, tracked, syn, rates);
  CHECK(result.decomposition.y == std::vector<std::int8_t>{+1, -1, -1});
  CHECK(result.correction_class == tracked[0].cls);
}

TEST_CASE("ideal decoder: trivial syndrome at small rates stays identity") {
  const auto code = build_steane();
  const auto tracked = dephasing_tracked(code);
  const std::vector<double> rates(7, 0.01);
  const auto result = ideal_decode(
      code, tracked, Syndrome::all_plus(code.generators.size()), rates);
  CHECK(result.correction_class.is_identity());
}

TEST_CASE("ideal decoder agrees with the exhaustive class-distribution oracle") {
  const auto code = build_steane();
  const auto tracked = dephasing_tracked(code);
  IdealDecoder decoder(&code, tracked);

  std::vector<double> rates(7, 0.01);
  rates[4] = 0.3;  // one hot qubit skews the argmax toward it
  const auto oracle = subset_distribution(code, tracked, rates);

  // oracle argmax per syndrome
  std::map<std::string, std::pair<std::string, double>> best_by_syndrome;
  for (const auto& [key, p] : oracle) {
    const std::string syndrome_part = key.substr(0, key.find('|'));
    auto it = best_by_syndrome.find(syndrome_part);
    if (it == best_by_syndrome.end() || p > it->second.second)
      best_by_syndrome[syndrome_part] = {key, p};
  }

  // compare against decode() on every syndrome the noise can produce
  for (const auto& [syndrome_part, best] : best_by_syndrome) {
    Syndrome syn(code.generators.size());
    for (std::size_t i = 0; i < syndrome_part.size(); ++i)
      if (syndrome_part[i] == '1') syn.set_value(i, -1);
    const auto result = decoder.decode(syn, rates);
    CHECK(class_key(result.correction_class) == best.first);
  }

  // the hot qubit wins its own syndrome
  const auto hot = decoder.decode(tracked[4].cls.syndrome, rates);
  CHECK(hot.decomposition.y[4] == +1);
}

TEST_CASE("ideal decoder class probabilities match the oracle") {
  const auto code = build_steane();
  const auto tracked = dephasing_tracked(code);
  IdealDecoder decoder(&code, tracked);
  RandomStream rng(40);
  std::vector<double> rates(7);
  for (auto& r : rates) r = 0.005 + 0.1 * rng.uniform01();
  const auto oracle = subset_distribution(code, tracked, rates);
  const auto probs = decoder.class_probabilities(rates);
  double total = 0.0;
  for (std::size_t c = 0; c < probs.size(); ++c) {
    const auto it = oracle.find(class_key(decoder.classes()[c]));
    REQUIRE(it != oracle.end());
    CHECK(probs[c] == doctest::Approx(it->second).epsilon(1e-12));
    total += probs[c];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("p_log from exhaustive distribution matches Monte Carlo") {
  const auto code = build_steane();
  const auto tracked = dephasing_tracked(code);
  IdealDecoder decoder(&code, tracked);
  std::vector<double> rates = {0.02, 0.05, 0.01, 0.03, 0.02, 0.04, 0.02};
  const double p_log = decoder.logical_error_probability(rates);

  RandomStream rng(90);
  const long rounds = 200000;
  long failures = 0;
  for (long i = 0; i < rounds; ++i) {
    PauliString err = PauliString::identity(code.n);
    for (std::size_t q = 0; q < 7; ++q)
      if (rng.bernoulli(rates[q])) err *= tracked[q].pauli;
    const auto actual = classify_error(code, err);
    const auto result = decoder.decode(actual.syndrome, rates);
    if (logical_failure(result.correction_class, actual)) ++failures;
  }
  const double mc = failures / static_cast<double>(rounds);
  const double sigma = std::sqrt(p_log * (1 - p_log) / rounds);
  CHECK(std::abs(mc - p_log) < 3 * sigma);
}

TEST_CASE("corrected-distribution distance equals p_log exactly") {
  // q_s^label = [label = decoded] p_s; half the L1 distance to p equals p_log
  for (const auto* descriptor : {"steane", "repetition:5"}) {
    const auto code = build_code(descriptor);
    const auto tracked = descriptor[0] == 's' ? dephasing_tracked(code)
                                              : bitflip_tracked(code);
    IdealDecoder decoder(&code, tracked);
    RandomStream rng(41);
    std::vector<double> rates(tracked.size());
    for (auto& r : rates) r = 0.01 + 0.15 * rng.uniform01();

    const auto probs = decoder.class_probabilities(rates);
    const double p_log = decoder.logical_error_probability(rates);

    // group classes by syndrome, find the decoded class in each group
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t c = 0; c < probs.size(); ++c) {
      const std::string key = class_key(decoder.classes()[c]);
      groups[key.substr(0, key.find('|'))].push_back(c);
    }
    double l1 = 0.0;
    for (const auto& [syndrome_part, members] : groups) {
      Syndrome syn(code.generators.size());
      for (std::size_t i = 0; i < syndrome_part.size(); ++i)
        if (syndrome_part[i] == '1') syn.set_value(i, -1);
      const auto decoded = decoder.decode(syn, rates);
      double p_s = 0.0;
      for (auto c : members) p_s += probs[c];
      for (auto c : members) {
        const double q = decoder.classes()[c] == decoded.correction_class ? p_s : 0.0;
        l1 += std::abs(q - probs[c]);
      }
    }
    CHECK(0.5 * l1 == doctest::Approx(p_log).epsilon(1e-12));
  }
}

TEST_CASE("shared-syndrome errors floor the logical error probability") {
  // two-qubit code whose two tracked errors share a syndrome but differ in
  // logical action
  StabilizerCode code;
  code.n = 2;
  code.k = 1;
  code.name = "shared";
  code.generators = {PauliString::parse("ZZ")};
  code.logical_x = {PauliString::parse("XX")};
  code.logical_z = {PauliString::parse("ZI")};
  code.distance = 1;
  code.num_x_checks = 0;
  validate_code(code);

  std::vector<TrackedError> tracked(2);
  tracked[0].pauli = PauliString::parse("XI");
  tracked[1].pauli = PauliString::parse("XZ");
  tracked[0].cls = classify_error(code, tracked[0].pauli);
  tracked[1].cls = classify_error(code, tracked[1].pauli);
  REQUIRE(tracked[0].cls.syndrome == tracked[1].cls.syndrome);
  REQUIRE(tracked[0].cls.logical_label != tracked[1].cls.logical_label);

  IdealDecoder decoder(&code, tracked);
  RandomStream rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> rates = {0.5 * rng.uniform01(), 0.5 * rng.uniform01()};
    const double p_log = decoder.logical_error_probability(rates);
    CHECK(p_log >= std::min(rates[0], rates[1]) - 1e-12);
  }
}

TEST_CASE("logical_failure semantics") {
  const auto code = build_steane();
  const auto id = identity_class(code);
  const auto lz = classify_error(code, code.logical_z[0]);
  CHECK(!logical_failure(id, id));
  CHECK(!logical_failure(lz, lz));
  CHECK(logical_failure(id, lz));
  CHECK(logical_failure(lz, id));

  auto mismatched = classify_error(code, PauliString::single(7, 0, 'Z'));
  CHECK_THROWS_AS(logical_failure(id, mismatched), InputError);

  RandomStream rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    PauliString a = PauliString::identity(7), b = PauliString::identity(7);
    for (std::size_t q = 0; q < 7; ++q) {
      if (rng.bernoulli(0.3)) a *= PauliString::single(7, q, 'Z');
      if (rng.bernoulli(0.3)) b *= PauliString::single(7, q, 'Z');
    }
    const auto ca = classify_error(code, a);
    auto cb = classify_error(code, b);
    if (ca.syndrome != cb.syndrome) continue;
    CHECK(logical_failure(ca, cb) == (ca.logical_label != cb.logical_label));
  }
}

TEST_CASE("ideal decoder caps the enumeration size") {
  const auto code = build_surface(5);  // 41 tracked errors would be 2^41 subsets
  const auto tracked = dephasing_tracked(code);
  CHECK_THROWS_AS(IdealDecoder(&code, tracked), InputError);
}
