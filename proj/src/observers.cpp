#include "qec/observers.hpp"

#include <algorithm>
#include <set>

#include "qec/errors.hpp"

namespace qec {

namespace {

bool mask_subset(const std::vector<std::uint64_t>& inner,
                 const std::vector<std::uint64_t>& outer) {
  for (std::size_t i = 0; i < inner.size(); ++i)
    if (inner[i] & ~outer[i]) return false;
  return true;
}

bool mask_intersects(const std::vector<std::uint64_t>& a,
                     const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

}  // namespace

int PatternIndex::max_relevant_size() const {
  int best = 0;
  for (const auto& e : entries_) best = std::max(best, static_cast<int>(e.relevant.size()));
  return best;
}

PatternIndex build_pattern_index(const StabilizerCode& code,
                                 const std::vector<TrackedError>& tracked) {
  PatternIndex index;
  index.num_generators_ = code.generators.size();
  index.words_ = (index.num_generators_ + 63) / 64;
  index.entries_.resize(tracked.size());
  index.pattern_mask_.resize(tracked.size());

  std::set<std::vector<std::uint64_t>> seen;
  for (std::size_t t = 0; t < tracked.size(); ++t) {
    index.pattern_mask_[t] = tracked[t].cls.syndrome.defect_words();
    index.entries_[t].pattern = tracked[t].cls.syndrome.defects();
    if (!seen.insert(index.pattern_mask_[t]).second)
      throw InputError("pattern index: two tracked errors share a syndrome");
  }

  for (std::size_t t = 0; t < tracked.size(); ++t) {
    auto& entry = index.entries_[t];
    std::vector<std::uint64_t> watch = index.pattern_mask_[t];
    for (std::size_t o = 0; o < tracked.size(); ++o) {
      if (o == t) continue;
      if (mask_subset(index.pattern_mask_[t], index.pattern_mask_[o])) {
        entry.rivals.push_back(static_cast<int>(o));
        for (std::size_t w = 0; w < watch.size(); ++w) watch[w] |= index.pattern_mask_[o][w];
      }
    }
    for (std::size_t g = 0; g < index.num_generators_; ++g)
      if ((watch[g >> 6] >> (g & 63)) & 1u) entry.watchlist.push_back(static_cast<int>(g));
    for (std::size_t o = 0; o < tracked.size(); ++o)
      if (mask_intersects(index.pattern_mask_[o], watch))
        entry.relevant.push_back(static_cast<int>(o));
  }
  return index;
}

void observe_sp_into(const PatternIndex& index, const Syndrome& measured,
                     std::vector<std::int8_t>* events) {
  if (measured.size() != index.num_generators_)
    throw InputError("observe_sp: syndrome size mismatch");
  const auto& defects = measured.defect_words();
  events->assign(index.entries_.size(), -1);
  for (std::size_t t = 0; t < index.entries_.size(); ++t) {
    if (!mask_subset(index.pattern_mask_[t], defects)) continue;
    bool faithful = true;
    for (int rival : index.entries_[t].rivals)
      if (mask_subset(index.pattern_mask_[rival], defects)) {
        faithful = false;
        break;
      }
    if (faithful) (*events)[t] = +1;
  }
}

std::vector<std::int8_t> observe_sp(const PatternIndex& index, const Syndrome& measured) {
  std::vector<std::int8_t> events;
  observe_sp_into(index, measured, &events);
  return events;
}

std::vector<std::int8_t> observe_co(const CorrectionDecomposition& decomposition,
                                    std::size_t num_tracked) {
  if (decomposition.y.size() != num_tracked)
    throw InputError("observe_co: decomposition length mismatch");
  return decomposition.y;
}

FaithfulStats faithful_probability_oracle(const PatternIndex& index,
                                          const std::vector<double>& rates, int target) {
  if (rates.size() != index.entries_.size())
    throw InputError("faithful oracle: rate vector size mismatch");
  if (target < 0 || static_cast<std::size_t>(target) >= index.entries_.size())
    throw InputError("faithful oracle: bad target index");
  const auto& entry = index.entries_[target];
  const std::size_t r = entry.relevant.size();
  if (r > 20) throw InputError("faithful oracle: relevant set too large to enumerate");

  FaithfulStats stats;
  const double eps_target = rates[target];
  double p0 = 1.0;
  for (int e : entry.relevant) {
    stats.total_rate += rates[e];
    p0 *= 1.0 - rates[e];
  }

  const std::vector<std::uint64_t>& target_mask = index.pattern_mask_[target];
  std::vector<std::uint64_t> outcome(target_mask.size());
  for (std::uint32_t v = 0; v < (1u << r); ++v) {
    double p = 1.0;
    std::fill(outcome.begin(), outcome.end(), 0);
    int fired = 0;
    for (std::size_t i = 0; i < r; ++i) {
      const int e = entry.relevant[i];
      if ((v >> i) & 1u) {
        p *= rates[e];
        ++fired;
        for (std::size_t w = 0; w < outcome.size(); ++w)
          outcome[w] ^= index.pattern_mask_[e][w];
      } else {
        p *= 1.0 - rates[e];
      }
    }
    if (!mask_subset(target_mask, outcome)) continue;
    bool faithful = true;
    for (int rival : entry.rivals)
      if (mask_subset(index.pattern_mask_[rival], outcome)) {
        faithful = false;
        break;
      }
    if (!faithful) continue;
    stats.eps_s += p;
    if (fired >= 2) stats.eps2 += p;
  }

  stats.eps1 = p0 * eps_target / (1.0 - eps_target);
  stats.bound = (stats.total_rate - eps_target) * eps_target +
                stats.total_rate * stats.total_rate;
  if (eps_target - stats.eps1 < -1e-12)
    throw InvariantViolation("faithful oracle: single-firing part exceeds the rate");
  if (stats.eps2 < -1e-15)
    throw InvariantViolation("faithful oracle: negative multi-firing part");
  return stats;
}

}  // namespace qec
