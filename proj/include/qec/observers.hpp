#pragma once

// Error-event observers: the correction-operation pass-through and the
// syndrome-pattern detector for faithful pattern occurrences, plus the exact
// subset-enumeration oracle for the faithful-occurrence probability and its
// inaccuracy bound.

#include <cstdint>
#include <vector>

#include "qec/code.hpp"
#include "qec/decoder.hpp"
#include "qec/noise.hpp"
#include "qec/pauli.hpp"

namespace qec {

struct FaithfulStats;

// Precomputed pattern structure per tracked error e:
//   pattern    - generator indices reading -1 under e
//   rivals     - other tracked errors whose pattern contains e's pattern
//   watchlist  - union of all rival (and own) patterns
//   relevant   - tracked errors whose pattern intersects the watchlist
// Only the watchlist generators ever influence e's event bit.
class PatternIndex {
 public:
  struct Entry {
    std::vector<int> pattern;
    std::vector<int> rivals;      // indices into the tracked list, self excluded
    std::vector<int> watchlist;
    std::vector<int> relevant;    // indices into the tracked list, self included
  };

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t num_tracked() const { return entries_.size(); }
  int max_relevant_size() const;

  friend PatternIndex build_pattern_index(const StabilizerCode& code,
                                          const std::vector<TrackedError>& tracked);

  // +1 per tracked error whose pattern occurs faithfully in the measured
  // syndrome (pattern present, no rival pattern present), else -1.
  friend std::vector<std::int8_t> observe_sp(const PatternIndex& index,
                                             const Syndrome& measured);
  friend void observe_sp_into(const PatternIndex& index, const Syndrome& measured,
                              std::vector<std::int8_t>* events);
  friend FaithfulStats faithful_probability_oracle(const PatternIndex& index,
                                                   const std::vector<double>& rates,
                                                   int target);

 private:
  std::size_t num_generators_ = 0;
  std::size_t words_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::vector<std::uint64_t>> pattern_mask_;  // per tracked error
};

PatternIndex build_pattern_index(const StabilizerCode& code,
                                 const std::vector<TrackedError>& tracked);

std::vector<std::int8_t> observe_sp(const PatternIndex& index, const Syndrome& measured);

// Buffer-reusing variant for the per-round loop.
void observe_sp_into(const PatternIndex& index, const Syndrome& measured,
                     std::vector<std::int8_t>* events);

// Pass-through of the decoder's correction decomposition.
std::vector<std::int8_t> observe_co(const CorrectionDecomposition& decomposition,
                                    std::size_t num_tracked);

struct FaithfulStats {
  double eps_s = 0.0;    // probability the pattern occurs faithfully
  double eps1 = 0.0;     // single-firing part, p0 * eps / (1 - eps)
  double eps2 = 0.0;     // multi-firing part
  double total_rate = 0.0;  // P_s: summed rates over the relevant set
  double bound = 0.0;    // (P_s - eps) * eps + P_s^2
};

// Exact enumeration over all firing subsets of the relevant set (capped at
// 2^20 subsets). rates must be aligned with the tracked-error list.
FaithfulStats faithful_probability_oracle(const PatternIndex& index,
                                          const std::vector<double>& rates, int target);

}  // namespace qec
