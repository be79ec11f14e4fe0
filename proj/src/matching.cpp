#include "qec/matching.hpp"

#include <algorithm>
#include <deque>

#include "qec/errors.hpp"

namespace qec {

namespace {

// Maximum-weight perfect matching on a complete graph, 1-indexed vertices,
// primal-dual with explicit blossoms. Weights must be positive even integers
// (the caller doubles them), which keeps every dual adjustment integral.
class DenseBlossom {
 public:
  explicit DenseBlossom(int n) : n_(n), cap_(2 * n + 2) {
    pair_.assign(cap_, std::vector<PairInfo>(cap_));
    lab_.assign(cap_, 0);
    mate_.assign(cap_, 0);
    slack_.assign(cap_, 0);
    top_.assign(cap_, 0);
    parent_.assign(cap_, 0);
    label_.assign(cap_, kFree);
    visited_.assign(cap_, 0);
    ring_.assign(cap_, {});
    child_of_.assign(cap_, std::vector<int>(n_ + 1, 0));
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) pair_[u][v] = PairInfo{u, v, 0};
  }

  void set_weight(int u, int v, std::int64_t w) { pair_[u][v].w = pair_[v][u].w = w; }

  std::vector<int> solve() {
    node_count_ = n_;
    std::int64_t w_max = 0;
    for (int u = 1; u <= n_; ++u) {
      top_[u] = u;
      child_of_[u][u] = u;
      for (int v = 1; v <= n_; ++v) w_max = std::max(w_max, pair_[u][v].w);
    }
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max / 2 + 1;
    while (run_phase()) {
    }
    for (int u = 1; u <= n_; ++u)
      if (!mate_[u]) throw InputError("matching: no perfect matching exists");
    return mate_;
  }

 private:
  static constexpr int kFree = -1, kEven = 0, kOdd = 1;

  struct PairInfo {
    int u = 0, v = 0;    // original endpoints realizing this top-pair
    std::int64_t w = 0;  // doubled weight of (u, v); 0 marks "unset"
  };

  int n_, cap_, node_count_ = 0;
  std::vector<std::vector<PairInfo>> pair_;
  std::vector<std::int64_t> lab_;  // duals: per original vertex, per blossom
  std::vector<int> mate_;          // node -> matched original vertex, 0 = none
  std::vector<int> slack_;         // top -> even original vertex of min slack
  std::vector<int> top_;           // node -> enclosing top
  std::vector<int> parent_;        // odd top -> parent-side original vertex
  std::vector<int> label_;
  std::vector<int> visited_;
  std::vector<std::vector<int>> ring_;      // blossom children, base first
  std::vector<std::vector<int>> child_of_;  // blossom x original -> child
  std::deque<int> queue_;
  int stamp_ = 0;

  std::int64_t slack_of(const PairInfo& e) const { return lab_[e.u] + lab_[e.v] - e.w; }

  void update_slack(int u, int x) {
    if (!slack_[x] || slack_of(pair_[u][x]) < slack_of(pair_[slack_[x]][x])) slack_[x] = u;
  }

  void recompute_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (pair_[u][x].w > 0 && top_[u] != x && label_[top_[u]] == kEven) update_slack(u, x);
  }

  void push_even(int x) {
    if (x <= n_)
      queue_.push_back(x);
    else
      for (int child : ring_[x]) push_even(child);
  }

  void set_top(int x, int b) {
    top_[x] = b;
    if (x > n_)
      for (int child : ring_[x]) set_top(child, b);
  }

  // Index of child xr inside blossom b; flips the ring orientation if needed
  // so the index is even (the cycle is odd, one direction always works).
  int child_pos(int b, int xr) {
    int pos = static_cast<int>(std::find(ring_[b].begin(), ring_[b].end(), xr) -
                               ring_[b].begin());
    if (pos % 2 == 1) {
      std::reverse(ring_[b].begin() + 1, ring_[b].end());
      pos = static_cast<int>(ring_[b].size()) - pos;
    }
    return pos;
  }

  void set_mate(int u, int v) {  // match top u through the cached pair (u, v)
    mate_[u] = pair_[u][v].v;
    if (u <= n_) return;
    const PairInfo e = pair_[u][v];
    int xr = child_of_[u][e.u];
    int pos = child_pos(u, xr);
    for (int i = 0; i < pos; ++i) set_mate(ring_[u][i], ring_[u][i ^ 1]);
    set_mate(xr, v);
    std::rotate(ring_[u].begin(), ring_[u].begin() + pos, ring_[u].end());
  }

  void augment(int u, int v) {
    while (true) {
      int mate_top = top_[mate_[u]];
      set_mate(u, v);
      if (!mate_top) return;
      set_mate(mate_top, top_[parent_[mate_top]]);
      v = mate_top;
      u = top_[parent_[mate_top]];
    }
  }

  int find_lca(int u, int v) {
    for (++stamp_; u || v; std::swap(u, v)) {
      if (!u) continue;
      if (visited_[u] == stamp_) return u;
      visited_[u] = stamp_;
      u = mate_[u] ? top_[mate_[u]] : 0;
      if (u) u = top_[parent_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= node_count_ && top_[b]) ++b;
    if (b > node_count_) node_count_ = b;

    lab_[b] = 0;
    label_[b] = kEven;
    mate_[b] = mate_[lca];
    ring_[b].clear();
    ring_[b].push_back(lca);
    for (int x = top_[u]; x != lca;) {
      ring_[b].push_back(x);
      int y = top_[mate_[x]];
      ring_[b].push_back(y);
      push_even(y);
      x = top_[parent_[y]];
    }
    std::reverse(ring_[b].begin() + 1, ring_[b].end());
    for (int x = top_[v]; x != lca;) {
      ring_[b].push_back(x);
      int y = top_[mate_[x]];
      ring_[b].push_back(y);
      push_even(y);
      x = top_[parent_[y]];
    }
    set_top(b, b);
    for (int x = 1; x <= node_count_; ++x) pair_[b][x].w = pair_[x][b].w = 0;
    std::fill(child_of_[b].begin(), child_of_[b].end(), 0);
    for (int child : ring_[b]) {
      for (int x = 1; x <= node_count_; ++x)
        if (pair_[b][x].w == 0 || slack_of(pair_[child][x]) < slack_of(pair_[b][x])) {
          pair_[b][x] = pair_[child][x];
          pair_[x][b] = pair_[x][child];
        }
      for (int x = 1; x <= n_; ++x)
        if (child_of_[child][x]) child_of_[b][x] = child;
    }
    recompute_slack(b);
  }

  void expand_blossom(int b) {  // odd blossom at zero dual
    for (int child : ring_[b]) set_top(child, child);
    int xr = child_of_[b][pair_[parent_[b]][b].v];
    int pos = child_pos(b, xr);
    for (int i = 0; i < pos; i += 2) {
      int odd_child = ring_[b][i];
      int even_child = ring_[b][i + 1];
      parent_[odd_child] = pair_[even_child][odd_child].u;
      label_[odd_child] = kOdd;
      label_[even_child] = kEven;
      slack_[odd_child] = 0;
      recompute_slack(even_child);
      push_even(even_child);
    }
    label_[xr] = kOdd;
    parent_[xr] = parent_[b];
    slack_[xr] = 0;
    for (std::size_t i = pos + 1; i < ring_[b].size(); ++i) {
      int child = ring_[b][i];
      label_[child] = kFree;
      recompute_slack(child);
    }
    top_[b] = 0;
    ring_[b].clear();
  }

  bool process_tight_pair(const PairInfo& e) {
    int u = top_[e.u], v = top_[e.v];
    if (label_[v] == kFree) {
      parent_[v] = e.u;
      label_[v] = kOdd;
      int mate_top = top_[mate_[v]];
      slack_[v] = slack_[mate_top] = 0;
      label_[mate_top] = kEven;
      push_even(mate_top);
    } else if (label_[v] == kEven) {
      int lca = find_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool run_phase() {
    std::fill(label_.begin(), label_.begin() + node_count_ + 1, kFree);
    std::fill(slack_.begin(), slack_.begin() + node_count_ + 1, 0);
    std::fill(parent_.begin(), parent_.begin() + node_count_ + 1, 0);
    queue_.clear();
    bool any_root = false;
    for (int x = 1; x <= node_count_; ++x)
      if (top_[x] == x && !mate_[x]) {
        label_[x] = kEven;
        push_even(x);
        any_root = true;
      }
    if (!any_root) return false;

    while (true) {
      while (!queue_.empty()) {
        int u = queue_.front();
        queue_.pop_front();
        if (label_[top_[u]] == kOdd) continue;
        for (int v = 1; v <= n_; ++v) {
          if (pair_[u][v].w > 0 && top_[u] != top_[v]) {
            if (slack_of(pair_[u][v]) == 0) {
              if (process_tight_pair(pair_[u][v])) return true;
            } else {
              update_slack(u, top_[v]);
            }
          }
        }
      }

      std::int64_t d = -1;
      auto consider = [&d](std::int64_t cand) {
        if (cand >= 0 && (d < 0 || cand < d)) d = cand;
      };
      for (int b = n_ + 1; b <= node_count_; ++b)
        if (top_[b] == b && label_[b] == kOdd) consider(lab_[b] / 2);
      for (int x = 1; x <= node_count_; ++x)
        if (top_[x] == x && slack_[x]) {
          std::int64_t s = slack_of(pair_[slack_[x]][x]);
          if (label_[x] == kFree)
            consider(s);
          else if (label_[x] == kEven)
            consider(s / 2);
        }
      if (d < 0) throw InvariantViolation("matching: dual adjustment stuck");

      for (int u = 1; u <= n_; ++u) {
        if (label_[top_[u]] == kEven)
          lab_[u] -= d;
        else if (label_[top_[u]] == kOdd)
          lab_[u] += d;
      }
      for (int b = n_ + 1; b <= node_count_; ++b)
        if (top_[b] == b && label_[b] != kFree) {
          if (label_[b] == kEven)
            lab_[b] += 2 * d;
          else
            lab_[b] -= 2 * d;
        }

      for (int x = 1; x <= node_count_; ++x)
        if (top_[x] == x && slack_[x] && label_[x] != kOdd && top_[slack_[x]] != x &&
            slack_of(pair_[slack_[x]][x]) == 0) {
          if (process_tight_pair(pair_[slack_[x]][x])) return true;
        }
      for (int b = n_ + 1; b <= node_count_; ++b)
        if (top_[b] == b && label_[b] == kOdd && lab_[b] == 0) expand_blossom(b);
    }
  }
};

}  // namespace

MatchingResult min_weight_perfect_matching(int num_nodes,
                                           const std::vector<MatchingEdge>& edges) {
  if (num_nodes % 2 != 0)
    throw InvariantViolation("matching: odd node count");
  MatchingResult result;
  if (num_nodes == 0) return result;

  std::int64_t max_cost = 0;
  for (const MatchingEdge& e : edges) {
    if (e.a < 0 || e.a >= num_nodes || e.b < 0 || e.b >= num_nodes || e.a == e.b)
      throw InputError("matching: bad edge endpoints");
    if (e.cost < 0) throw InputError("matching: negative edge cost");
    max_cost = std::max(max_cost, e.cost);
  }
  if (max_cost > (std::int64_t{1} << 52) / num_nodes)
    throw InputError("matching: costs too large for exact arithmetic");

  // Penalty completion: maximize sum of (penalty - cost) over perfect
  // matchings of the completed graph. Absent pairs cost more than any real
  // perfect matching, so they are used only if the instance is infeasible.
  const std::int64_t absent = max_cost * (num_nodes / 2) + 1;
  const std::int64_t penalty = absent + 1;

  std::vector<std::vector<std::int64_t>> cost(
      num_nodes, std::vector<std::int64_t>(num_nodes, absent));
  for (const MatchingEdge& e : edges) {
    const std::int64_t c = std::min(cost[e.a][e.b], e.cost);
    cost[e.a][e.b] = cost[e.b][e.a] = c;
  }

  DenseBlossom solver(num_nodes);
  for (int u = 0; u < num_nodes; ++u)
    for (int v = u + 1; v < num_nodes; ++v)
      solver.set_weight(u + 1, v + 1, 2 * (penalty - cost[u][v]));
  const std::vector<int> mate = solver.solve();

  for (int u = 0; u < num_nodes; ++u) {
    const int v = mate[u + 1] - 1;
    if (v > u) {
      if (cost[u][v] >= absent)
        throw InputError("matching: no perfect matching exists");
      result.pairs.emplace_back(u, v);
      result.total_cost += cost[u][v];
    }
  }
  return result;
}

}  // namespace qec
