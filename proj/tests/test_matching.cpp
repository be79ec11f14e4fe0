#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "qec/errors.hpp"
#include "qec/matching.hpp"
#include "qec/rng.hpp"

using namespace qec;

namespace {

// Exhaustive oracle over all (n-1)!! perfect matchings.
std::int64_t brute_force_min(const std::vector<MatchingEdge>& edges, int n,
                             unsigned used, int i, bool* feasible) {
  while (i < n && ((used >> i) & 1)) ++i;
  if (i == n) {
    *feasible = true;
    return 0;
  }
  std::int64_t best = -1;
  for (const auto& e : edges) {
    int j = -1;
    if (e.a == i && !((used >> e.b) & 1)) j = e.b;
    if (e.b == i && !((used >> e.a) & 1)) j = e.a;
    if (j < 0) continue;
    bool sub_feasible = false;
    const std::int64_t v =
        brute_force_min(edges, n, used | (1u << i) | (1u << j), i + 1, &sub_feasible);
    if (sub_feasible) {
      *feasible = true;
      if (best < 0 || e.cost + v < best) best = e.cost + v;
    }
  }
  return best < 0 ? 0 : best;
}

void check_valid_matching(const MatchingResult& result,
                          const std::vector<MatchingEdge>& edges, int n) {
  std::set<int> seen;
  std::int64_t sum = 0;
  for (auto [a, b] : result.pairs) {
    CHECK(!seen.count(a));
    CHECK(!seen.count(b));
    seen.insert(a);
    seen.insert(b);
    std::int64_t best = -1;
    for (const auto& e : edges)
      if ((e.a == a && e.b == b) || (e.a == b && e.b == a))
        if (best < 0 || e.cost < best) best = e.cost;
    REQUIRE(best >= 0);  // matched pair must be a real edge
    sum += best;
  }
  CHECK(static_cast<int>(seen.size()) == n);
  CHECK(sum == result.total_cost);
}

}  // namespace

TEST_CASE("two nodes match trivially") {
  const auto r = min_weight_perfect_matching(2, {{0, 1, 5}});
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.total_cost == 5);
}

TEST_CASE("four nodes pick the cheap cross pairing") {
  // (0-2, 1-3) is cheapest among the three pairings
  const std::vector<MatchingEdge> edges = {{0, 1, 10}, {0, 2, 1}, {0, 3, 10},
                                           {1, 2, 10}, {1, 3, 2}, {2, 3, 10}};
  const auto r = min_weight_perfect_matching(4, edges);
  CHECK(r.total_cost == 3);
  bool feasible = false;
  CHECK(r.total_cost == brute_force_min(edges, 4, 0, 0, &feasible));
}

TEST_CASE("odd node counts violate the evenness invariant") {
  CHECK_THROWS_AS(min_weight_perfect_matching(3, {{0, 1, 1}}), InvariantViolation);
}

TEST_CASE("infeasible instances are reported") {
  CHECK_THROWS_AS(min_weight_perfect_matching(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}),
                  InputError);
  CHECK_THROWS_AS(min_weight_perfect_matching(2, {}), InputError);
}

TEST_CASE("bad edges are input errors") {
  CHECK_THROWS_AS(min_weight_perfect_matching(2, {{0, 0, 1}}), InputError);
  CHECK_THROWS_AS(min_weight_perfect_matching(2, {{0, 2, 1}}), InputError);
  CHECK_THROWS_AS(min_weight_perfect_matching(2, {{0, 1, -1}}), InputError);
}

TEST_CASE("parallel edges collapse to the cheapest") {
  const auto r = min_weight_perfect_matching(2, {{0, 1, 9}, {1, 0, 4}, {0, 1, 7}});
  CHECK(r.total_cost == 4);
}

TEST_CASE("matches brute force on random complete graphs") {
  RandomStream rng(314159);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng.next_u64() % 6));  // up to 12
    const std::int64_t max_cost = (trial % 2) ? 6 : 1000000;
    std::vector<MatchingEdge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        edges.push_back({i, j, static_cast<std::int64_t>(rng.next_u64() % (max_cost + 1))});
    const auto r = min_weight_perfect_matching(n, edges);
    bool feasible = false;
    CHECK(r.total_cost == brute_force_min(edges, n, 0, 0, &feasible));
    check_valid_matching(r, edges, n);
  }
}

TEST_CASE("matches brute force on defect/boundary shaped instances") {
  RandomStream rng(2718);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 7);
    const int n = 2 * m;
    const std::int64_t max_cost = (trial % 2) ? 9 : 100000;
    std::vector<MatchingEdge> edges;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        edges.push_back({i, j, static_cast<std::int64_t>(rng.next_u64() % (max_cost + 1))});
    for (int i = 0; i < m; ++i)
      edges.push_back({i, m + i, static_cast<std::int64_t>(rng.next_u64() % (max_cost + 1))});
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) edges.push_back({m + i, m + j, 0});
    const auto r = min_weight_perfect_matching(n, edges);
    bool feasible = false;
    CHECK(r.total_cost == brute_force_min(edges, n, 0, 0, &feasible));
    check_valid_matching(r, edges, n);
  }
}

TEST_CASE("matches brute force on sparse graphs, detecting infeasibility") {
  RandomStream rng(55);
  int infeasible_count = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng.next_u64() % 5));
    std::vector<MatchingEdge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform01() < 0.45)
          edges.push_back({i, j, static_cast<std::int64_t>(rng.next_u64() % 8)});
    bool feasible = false;
    const std::int64_t want = brute_force_min(edges, n, 0, 0, &feasible);
    if (!feasible) {
      ++infeasible_count;
      CHECK_THROWS_AS(min_weight_perfect_matching(n, edges), InputError);
    } else {
      const auto r = min_weight_perfect_matching(n, edges);
      CHECK(r.total_cost == want);
      check_valid_matching(r, edges, n);
    }
  }
  CHECK(infeasible_count > 0);  // the suite must actually exercise that path
}
