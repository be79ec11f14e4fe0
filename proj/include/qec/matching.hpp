#pragma once

// Exact minimum-weight perfect matching on general graphs (primal-dual
// blossom algorithm, dense formulation). Integer costs; exact, not heuristic.

#include <cstdint>
#include <utility>
#include <vector>

namespace qec {

struct MatchingEdge {
  int a = 0, b = 0;
  std::int64_t cost = 0;  // >= 0
};

struct MatchingResult {
  std::vector<std::pair<int, int>> pairs;
  std::int64_t total_cost = 0;
};

// Nodes are 0..num_nodes-1; num_nodes must be even. Throws InvariantViolation
// on an odd node count, InputError on bad edges or when no perfect matching
// exists over the given edges.
MatchingResult min_weight_perfect_matching(int num_nodes,
                                           const std::vector<MatchingEdge>& edges);

}  // namespace qec
