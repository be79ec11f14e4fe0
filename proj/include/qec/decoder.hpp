#pragma once

// Decoders: minimum-weight perfect matching on the phase-flip graph of the
// surface code (rate-dependent edge weights), and exhaustive
// maximum-probability decoding for small codes. Both report the correction
// decomposed over the tracked errors, which doubles as the per-round
// error-event indicator of the correction-operation method.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qec/code.hpp"
#include "qec/matching.hpp"
#include "qec/noise.hpp"
#include "qec/pauli.hpp"

namespace qec {

struct ClipCounters {
  long low = 0;   // rate clipped up to the floor
  long high = 0;  // rate clipped down below 0.5
};

// Log-odds weight ln((1-rate)/rate); rates are clipped into
// (1e-12, 0.5 - 1e-9) so weights stay finite, and clips are counted.
double edge_weight(double rate, ClipCounters* counters = nullptr);

struct DecodingGraph {
  struct GraphEdge {
    int u = 0, v = 0;  // vertex ids; boundaries are num_checks / num_checks+1
    int qubit = 0;
    int tracked = 0;   // index into the tracked-error list
  };

  int num_checks = 0;
  std::vector<int> check_generator;        // vertex -> generator index
  std::vector<GraphEdge> edges;
  std::vector<std::vector<int>> adjacency; // vertex -> edge ids

  int left_boundary() const { return num_checks; }
  int right_boundary() const { return num_checks + 1; }
  int num_vertices() const { return num_checks + 2; }
};

// Builds the phase-flip matching graph from the tracked errors' syndrome
// patterns: two-check patterns become interior edges, one-check patterns
// attach to the rough boundary on the qubit's side of the lattice.
DecodingGraph build_decoding_graph(const StabilizerCode& code,
                                   const std::vector<TrackedError>& tracked);

struct CorrectionDecomposition {
  std::vector<std::int8_t> y;  // +1 = this tracked error is in the correction
};

struct DecodeResult {
  ErrorClass correction_class;
  CorrectionDecomposition decomposition;
  PauliString correction;
};

class MwpmDecoder {
 public:
  MwpmDecoder(const StabilizerCode* code, DecodingGraph graph);

  // Installs per-tracked-error rates and re-quantizes edge weights; drops the
  // shortest-path cache.
  void set_rates(const std::vector<double>& rates, ClipCounters* counters = nullptr);

  DecodeResult decode(const Syndrome& syndrome);

  const DecodingGraph& graph() const { return graph_; }

 private:
  struct SourceTree {
    std::vector<std::int64_t> dist;
    std::vector<int> pred_edge;
  };
  const SourceTree& tree_from(int source);

  const StabilizerCode* code_;
  DecodingGraph graph_;
  std::vector<std::int64_t> weight_;           // per edge, quantized
  std::vector<std::optional<SourceTree>> cache_;  // per source vertex
  std::vector<Syndrome> tracked_syndrome_;
  std::vector<std::vector<std::uint8_t>> tracked_label_;
};

// One-shot convenience wrapper.
DecodeResult mwpm_decode(const StabilizerCode& code, const DecodingGraph& graph,
                         const Syndrome& syndrome, const std::vector<double>& rates,
                         ClipCounters* counters = nullptr);

// Exhaustive maximum-probability decoder: enumerates every subset of the
// tracked errors (capped at 2^24 configurations), accumulates the probability
// of each error class, and answers argmax queries per syndrome.
class IdealDecoder {
 public:
  IdealDecoder(const StabilizerCode* code, const std::vector<TrackedError>& tracked);

  DecodeResult decode(const Syndrome& syndrome, const std::vector<double>& rates) const;

  // Full class distribution at the given rates (probabilities sum to 1).
  std::vector<double> class_probabilities(const std::vector<double>& rates) const;
  const std::vector<ErrorClass>& classes() const { return classes_; }
  int class_of_subset(std::uint32_t subset_mask) const { return subset_class_[subset_mask]; }

  // 1 - sum_s max_label p_s^label: the logical error probability of this
  // decoder under the given rates, from the exhaustive distribution.
  double logical_error_probability(const std::vector<double>& rates) const;

 private:
  const StabilizerCode* code_;
  std::size_t num_tracked_;
  std::vector<ErrorClass> classes_;
  std::vector<int> subset_class_;                 // per subset mask
  std::vector<std::vector<std::uint32_t>> class_subsets_;  // per class id
  std::vector<std::uint32_t> class_min_subset_;   // min weight, then lex
  std::vector<std::vector<int>> syndrome_classes_;  // classes grouped by syndrome
  std::vector<std::string> syndrome_keys_;
  int syndrome_group_of(const Syndrome& s) const;
};

DecodeResult ideal_decode(const StabilizerCode& code,
                          const std::vector<TrackedError>& tracked,
                          const Syndrome& syndrome, const std::vector<double>& rates);

// True iff correcting `actual` with `correction` leaves a logical error.
// The two classes must carry the same syndrome.
bool logical_failure(const ErrorClass& correction, const ErrorClass& actual);

}  // namespace qec
