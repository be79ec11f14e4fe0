#include "qec/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <queue>

#include "qec/errors.hpp"

namespace qec {

namespace {

constexpr double kRateFloor = 1e-12;
constexpr double kRateCeil = 0.5 - 1e-9;
constexpr double kWeightScale = 1048576.0;  // 2^20; path sums stay far below 2^52

double clip_rate(double rate, ClipCounters* counters) {
  if (rate < kRateFloor) {
    if (counters) counters->low += 1;
    return kRateFloor;
  }
  if (rate > kRateCeil) {
    if (counters) counters->high += 1;
    return kRateCeil;
  }
  return rate;
}

}  // namespace

double edge_weight(double rate, ClipCounters* counters) {
  rate = clip_rate(rate, counters);
  return std::log((1.0 - rate) / rate);
}

DecodingGraph build_decoding_graph(const StabilizerCode& code,
                                   const std::vector<TrackedError>& tracked) {
  if (code.num_x_checks == 0)
    throw InputError("decoding graph: code has no X checks");
  DecodingGraph graph;
  graph.num_checks = static_cast<int>(code.num_x_checks);
  graph.check_generator.resize(code.num_x_checks);
  for (std::size_t i = 0; i < code.num_x_checks; ++i)
    graph.check_generator[i] = static_cast<int>(i);
  graph.adjacency.assign(graph.num_vertices(), {});

  for (std::size_t t = 0; t < tracked.size(); ++t) {
    const TrackedError& e = tracked[t];
    if (e.pauli.weight() != 1)
      throw InputError("decoding graph: tracked errors must be single-qubit");
    int qubit = -1;
    for (std::size_t q = 0; q < e.pauli.num_qubits(); ++q)
      if (e.pauli.z_bit(q)) qubit = static_cast<int>(q);
    if (qubit < 0) throw InputError("decoding graph: tracked errors must be Z type");

    const std::vector<int> defects = e.cls.syndrome.defects();
    for (int d : defects)
      if (d >= graph.num_checks)
        throw InputError("decoding graph: tracked error touches a non-X check");

    DecodingGraph::GraphEdge edge;
    edge.qubit = qubit;
    edge.tracked = static_cast<int>(t);
    if (defects.size() == 2) {
      edge.u = defects[0];
      edge.v = defects[1];
    } else if (defects.size() == 1) {
      if (code.qubit_boundary.empty() || code.qubit_boundary[qubit] < 0)
        throw InputError("decoding graph: single-check qubit without a boundary side");
      edge.u = defects[0];
      edge.v = code.qubit_boundary[qubit] == 0 ? graph.left_boundary()
                                               : graph.right_boundary();
    } else {
      throw InputError("decoding graph: tracked error flips " +
                       std::to_string(defects.size()) + " checks");
    }
    const int id = static_cast<int>(graph.edges.size());
    graph.edges.push_back(edge);
    graph.adjacency[edge.u].push_back(id);
    graph.adjacency[edge.v].push_back(id);
  }
  return graph;
}

MwpmDecoder::MwpmDecoder(const StabilizerCode* code, DecodingGraph graph)
    : code_(code), graph_(std::move(graph)) {
  weight_.assign(graph_.edges.size(), 0);
  cache_.assign(graph_.num_vertices(), std::nullopt);
  tracked_syndrome_.reserve(graph_.edges.size());
}

void MwpmDecoder::set_rates(const std::vector<double>& rates, ClipCounters* counters) {
  if (rates.size() != graph_.edges.size())
    throw InputError("MwpmDecoder: rate vector size mismatch");
  for (std::size_t i = 0; i < rates.size(); ++i)
    weight_[i] = std::llround(edge_weight(rates[i], counters) * kWeightScale);
  std::fill(cache_.begin(), cache_.end(), std::nullopt);
}

const MwpmDecoder::SourceTree& MwpmDecoder::tree_from(int source) {
  if (cache_[source]) return *cache_[source];

  SourceTree tree;
  tree.dist.assign(graph_.num_vertices(), -1);
  tree.pred_edge.assign(graph_.num_vertices(), -1);
  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  tree.dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != tree.dist[u]) continue;
    for (int id : graph_.adjacency[u]) {
      const auto& e = graph_.edges[id];
      const int v = e.u == u ? e.v : e.u;
      const std::int64_t nd = d + weight_[id];
      if (tree.dist[v] < 0 || nd < tree.dist[v]) {
        tree.dist[v] = nd;
        tree.pred_edge[v] = id;
        heap.push({nd, v});
      } else if (nd == tree.dist[v] && tree.pred_edge[v] >= 0 &&
                 e.qubit < graph_.edges[tree.pred_edge[v]].qubit) {
        tree.pred_edge[v] = id;  // deterministic tie-break on qubit index
      }
    }
  }
  cache_[source] = std::move(tree);
  return *cache_[source];
}

DecodeResult MwpmDecoder::decode(const Syndrome& syndrome) {
  if (syndrome.size() != code_->generators.size())
    throw InputError("MwpmDecoder: syndrome size mismatch");
  if (tracked_syndrome_.empty()) {
    // lazily derived from the graph's tracked edges
    tracked_syndrome_.resize(graph_.edges.size());
    tracked_label_.resize(graph_.edges.size());
    for (const auto& e : graph_.edges) {
      PauliString p = PauliString::single(code_->n, e.qubit, 'Z');
      ErrorClass c = classify_error(*code_, p);
      tracked_syndrome_[e.tracked] = c.syndrome;
      tracked_label_[e.tracked] = c.logical_label;
    }
  }

  std::vector<int> defect_vertices;
  for (int v = 0; v < graph_.num_checks; ++v)
    if (syndrome.value(graph_.check_generator[v]) < 0) defect_vertices.push_back(v);

  DecodeResult result;
  result.decomposition.y.assign(graph_.edges.size(), -1);
  result.correction = PauliString::identity(code_->n);
  result.correction_class = identity_class(*code_);

  const int m = static_cast<int>(defect_vertices.size());
  if (m > 0) {
    // Nodes 0..m-1 are defects, m..2m-1 their boundary copies. A defect may
    // pair with another defect (chain between them), with its own copy
    // (chain to the cheaper rough boundary), and copies pair freely at zero
    // cost, which keeps the instance even and feasible.
    std::vector<MatchingEdge> matching_edges;
    std::vector<int> boundary_vertex(m, -1);
    for (int i = 0; i < m; ++i) {
      const SourceTree& tree = tree_from(defect_vertices[i]);
      for (int j = i + 1; j < m; ++j) {
        const std::int64_t d = tree.dist[defect_vertices[j]];
        if (d < 0) throw InputError("MwpmDecoder: defect pair disconnected");
        matching_edges.push_back({i, j, d});
      }
      const std::int64_t dl = tree.dist[graph_.left_boundary()];
      const std::int64_t dr = tree.dist[graph_.right_boundary()];
      if (dl >= 0 && (dr < 0 || dl <= dr)) {
        boundary_vertex[i] = graph_.left_boundary();
        matching_edges.push_back({i, m + i, dl});
      } else if (dr >= 0) {
        boundary_vertex[i] = graph_.right_boundary();
        matching_edges.push_back({i, m + i, dr});
      }
      for (int j = i + 1; j < m; ++j) matching_edges.push_back({m + i, m + j, 0});
    }

    const MatchingResult matching = min_weight_perfect_matching(2 * m, matching_edges);

    std::vector<std::uint8_t> in_correction(graph_.edges.size(), 0);
    auto xor_path = [&](int from_defect, int to_vertex) {
      const SourceTree& tree = tree_from(defect_vertices[from_defect]);
      int v = to_vertex;
      while (v != defect_vertices[from_defect]) {
        const int id = tree.pred_edge[v];
        in_correction[id] ^= 1;
        const auto& e = graph_.edges[id];
        v = e.u == v ? e.v : e.u;
      }
    };
    for (auto [a, b] : matching.pairs) {
      if (a >= m && b >= m) continue;  // copy-copy: unused boundary slots
      if (b < m) {
        xor_path(a, defect_vertices[b]);
      } else {
        xor_path(a, boundary_vertex[a]);  // b == m + a by construction
      }
    }

    for (std::size_t id = 0; id < in_correction.size(); ++id) {
      if (!in_correction[id]) continue;
      const int t = graph_.edges[id].tracked;
      result.decomposition.y[t] = +1;
      result.correction *= PauliString::single(code_->n, graph_.edges[id].qubit, 'Z');
      result.correction_class.syndrome *= tracked_syndrome_[t];
      for (std::size_t l = 0; l < tracked_label_[t].size(); ++l)
        result.correction_class.logical_label[l] ^= tracked_label_[t][l];
    }
  }

  // Decomposition soundness: the product of the y = +1 errors must reproduce
  // the decoded syndrome on this graph's checks.
  for (int v = 0; v < graph_.num_checks; ++v) {
    const int gen = graph_.check_generator[v];
    if (result.correction_class.syndrome.value(gen) != syndrome.value(gen))
      throw InvariantViolation("MwpmDecoder: correction does not match the syndrome");
  }
  return result;
}

DecodeResult mwpm_decode(const StabilizerCode& code, const DecodingGraph& graph,
                         const Syndrome& syndrome, const std::vector<double>& rates,
                         ClipCounters* counters) {
  MwpmDecoder decoder(&code, graph);
  decoder.set_rates(rates, counters);
  return decoder.decode(syndrome);
}

IdealDecoder::IdealDecoder(const StabilizerCode* code,
                           const std::vector<TrackedError>& tracked)
    : code_(code), num_tracked_(tracked.size()) {
  if (num_tracked_ > 24)
    throw InputError("IdealDecoder: subset enumeration capped at 2^24");
  const std::uint32_t subsets = 1u << num_tracked_;

  std::map<std::string, int> class_ids;
  subset_class_.resize(subsets);
  std::vector<ErrorClass> subset_cls(subsets);
  subset_cls[0] = identity_class(*code_);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    if (mask) {
      const int low = std::countr_zero(mask);
      subset_cls[mask] =
          compose_classes(subset_cls[mask & (mask - 1)], tracked[low].cls);
    }
    const std::string key = class_key(subset_cls[mask]);
    auto [it, fresh] = class_ids.try_emplace(key, static_cast<int>(classes_.size()));
    if (fresh) {
      classes_.push_back(subset_cls[mask]);
      class_subsets_.push_back({});
      class_min_subset_.push_back(mask);
    }
    subset_class_[mask] = it->second;
    class_subsets_[it->second].push_back(mask);
    std::uint32_t& best = class_min_subset_[it->second];
    if (std::popcount(mask) < std::popcount(best)) best = mask;
  }

  std::map<std::string, int> syndrome_groups;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    std::string key;
    for (std::size_t i = 0; i < classes_[c].syndrome.size(); ++i)
      key.push_back(classes_[c].syndrome.value(i) < 0 ? '1' : '0');
    auto [it, fresh] =
        syndrome_groups.try_emplace(key, static_cast<int>(syndrome_classes_.size()));
    if (fresh) {
      syndrome_classes_.push_back({});
      syndrome_keys_.push_back(key);
    }
    syndrome_classes_[it->second].push_back(static_cast<int>(c));
  }
}

int IdealDecoder::syndrome_group_of(const Syndrome& s) const {
  std::string key;
  for (std::size_t i = 0; i < s.size(); ++i) key.push_back(s.value(i) < 0 ? '1' : '0');
  for (std::size_t g = 0; g < syndrome_keys_.size(); ++g)
    if (syndrome_keys_[g] == key) return static_cast<int>(g);
  return -1;
}

DecodeResult IdealDecoder::decode(const Syndrome& syndrome,
                                  const std::vector<double>& rates) const {
  if (rates.size() != num_tracked_)
    throw InputError("IdealDecoder: rate vector size mismatch");
  const int group = syndrome_group_of(syndrome);
  if (group < 0)
    throw InputError("IdealDecoder: syndrome not reachable from tracked errors");

  std::vector<double> odds(num_tracked_);
  for (std::size_t i = 0; i < num_tracked_; ++i) {
    const double r = std::clamp(rates[i], kRateFloor, kRateCeil);
    odds[i] = r / (1.0 - r);
  }
  // The common factor prod(1 - eps) cancels in the argmax.
  int best_class = -1;
  double best_p = -1.0;
  for (int c : syndrome_classes_[group]) {
    double p = 0.0;
    for (std::uint32_t mask : class_subsets_[c]) {
      double term = 1.0;
      for (std::uint32_t bits = mask; bits; bits &= bits - 1)
        term *= odds[std::countr_zero(bits)];
      p += term;
    }
    if (p > best_p) {
      best_p = p;
      best_class = c;
    }
  }

  DecodeResult result;
  result.correction_class = classes_[best_class];
  result.decomposition.y.assign(num_tracked_, -1);
  result.correction = PauliString::identity(code_->n);
  const std::uint32_t chosen = class_min_subset_[best_class];
  for (std::uint32_t bits = chosen; bits; bits &= bits - 1)
    result.decomposition.y[std::countr_zero(bits)] = +1;
  return result;
}

std::vector<double> IdealDecoder::class_probabilities(
    const std::vector<double>& rates) const {
  if (rates.size() != num_tracked_)
    throw InputError("IdealDecoder: rate vector size mismatch");
  std::vector<double> out(classes_.size(), 0.0);
  const std::uint32_t subsets = 1u << num_tracked_;
  std::vector<double> prob(subsets);
  prob[0] = 1.0;
  for (std::size_t i = 0; i < num_tracked_; ++i) prob[0] *= 1.0 - rates[i];
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    const int low = std::countr_zero(mask);
    const double r = rates[low];
    prob[mask] = prob[mask & (mask - 1)] * (r / (1.0 - r));
  }
  for (std::uint32_t mask = 0; mask < subsets; ++mask)
    out[subset_class_[mask]] += prob[mask];
  return out;
}

double IdealDecoder::logical_error_probability(const std::vector<double>& rates) const {
  const std::vector<double> p = class_probabilities(rates);
  double captured = 0.0;
  for (const auto& group : syndrome_classes_) {
    double best = 0.0;
    for (int c : group) best = std::max(best, p[c]);
    captured += best;
  }
  return 1.0 - captured;
}

DecodeResult ideal_decode(const StabilizerCode& code,
                          const std::vector<TrackedError>& tracked,
                          const Syndrome& syndrome, const std::vector<double>& rates) {
  IdealDecoder decoder(&code, tracked);
  return decoder.decode(syndrome, rates);
}

bool logical_failure(const ErrorClass& correction, const ErrorClass& actual) {
  if (correction.syndrome != actual.syndrome)
    throw InputError("logical_failure: syndromes differ");
  return compose_classes(correction, actual).has_logical_error();
}

}  // namespace qec
