#pragma once

#include <algorithm>
#include <functional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "tropjac/polystab.hpp"

namespace tropjac {

/// Finite poset over indexed elements, stored as its full order relation plus
/// the Hasse diagram. `rank` is a caller-supplied label (for stability posets
/// the pseudo-divisor rank) and is not assumed to be the poset dimension.
template <class T>
class Poset {
 public:
  Poset() = default;

  /// `geq(i, j)` must be a partial order on indices.
  Poset(std::vector<T> elements, std::vector<int> rank, const std::function<bool(int, int)>& geq)
      : elements_(std::move(elements)), rank_(std::move(rank)) {
    const int n = size();
    order_.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) order_[i * n + j] = (i == j) || geq(i, j);
    }
    compute_covers();
  }

  int size() const { return static_cast<int>(elements_.size()); }
  const T& element(int i) const { return elements_.at(i); }
  const std::vector<T>& elements() const { return elements_; }
  int rank(int i) const { return rank_.at(i); }
  const std::vector<int>& ranks() const { return rank_; }

  bool geq(int i, int j) const { return order_[i * size() + j] != 0; }
  bool greater(int i, int j) const { return i != j && geq(i, j); }

  /// Covering pairs (upper, lower).
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& lower_covers(int i) const { return lower_.at(i); }
  const std::vector<int>& upper_covers(int i) const { return upper_.at(i); }

  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      if (upper_[i].empty()) out.push_back(i);
    }
    return out;
  }

  int index_of(const T& x) const {
    auto it = std::find(elements_.begin(), elements_.end(), x);
    return it == elements_.end() ? -1 : static_cast<int>(it - elements_.begin());
  }

  /// Removes one covering pair from the Hasse diagram without touching the
  /// order relation. Only used to build corrupted inputs for the checks.
  void drop_cover(int upper, int lower) {
    covers_.erase(std::remove(covers_.begin(), covers_.end(), std::make_pair(upper, lower)), covers_.end());
    auto& lo = lower_[upper];
    lo.erase(std::remove(lo.begin(), lo.end(), lower), lo.end());
    auto& up = upper_[lower];
    up.erase(std::remove(up.begin(), up.end(), upper), up.end());
  }

 private:
  void compute_covers() {
    const int n = size();
    lower_.assign(n, {});
    upper_.assign(n, {});
    covers_.clear();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!greater(i, j)) continue;
        bool between = false;
        for (int k = 0; k < n && !between; ++k) between = greater(i, k) && greater(k, j);
        if (between) continue;
        covers_.push_back({i, j});
        lower_[i].push_back(j);
        upper_[j].push_back(i);
      }
    }
  }

  std::vector<T> elements_;
  std::vector<int> rank_;
  std::vector<char> order_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> lower_, upper_;
};

struct RankReport {
  bool is_ranked = false;
  int length = -1;                  // common length of maximal chains, or the longest when not ranked
  bool rank_is_dimension = false;   // supplied rank equals the longest chain below each element
  bool codim1_connected = false;
  std::vector<int> dimension;       // longest cover chain down to a minimal element
  std::vector<int> bad_chain;       // a maximal chain of the wrong length, top first
  std::vector<std::vector<int>> witness_paths;  // from the first maximal element to each other one
};

/// Checks that all maximal chains (walked through the Hasse diagram) have one
/// length, and that maximal elements are linked by paths through elements of
/// codimension one.
template <class T>
RankReport verify_ranked_and_connected(const Poset<T>& poset) {
  const int n = poset.size();
  RankReport r;
  r.dimension.assign(n, 0);
  std::vector<int> down_long(n, -1), down_short(n, -1);

  std::function<int(int)> longest = [&](int i) -> int {
    if (down_long[i] >= 0) return down_long[i];
    int best = 0;
    for (int j : poset.lower_covers(i)) best = std::max(best, longest(j) + 1);
    return down_long[i] = best;
  };
  std::function<int(int)> shortest_fn = [&](int i) -> int {
    if (down_short[i] >= 0) return down_short[i];
    int best = poset.lower_covers(i).empty() ? 0 : n + 1;
    for (int j : poset.lower_covers(i)) best = std::min(best, shortest_fn(j) + 1);
    return down_short[i] = best;
  };

  auto maxima = poset.maximal_elements();
  int lo = n + 1, hi = -1;
  for (int i = 0; i < n; ++i) r.dimension[i] = longest(i);
  for (int y : maxima) {
    lo = std::min(lo, shortest_fn(y));
    hi = std::max(hi, longest(y));
  }
  r.is_ranked = n == 0 || lo == hi;
  r.length = n == 0 ? 0 : hi;
  if (!r.is_ranked) {
    // Follow the shortest chain from a maximal element that has one.
    for (int y : maxima) {
      if (down_short[y] == lo) {
        int cur = y;
        r.bad_chain.push_back(cur);
        while (!poset.lower_covers(cur).empty()) {
          for (int j : poset.lower_covers(cur)) {
            if (down_short[j] + 1 == down_short[cur]) {
              cur = j;
              break;
            }
          }
          r.bad_chain.push_back(cur);
        }
        break;
      }
    }
  }

  r.rank_is_dimension = true;
  for (int i = 0; i < n; ++i) r.rank_is_dimension = r.rank_is_dimension && poset.rank(i) == r.dimension[i];

  if (maxima.size() <= 1) {
    r.codim1_connected = r.is_ranked;
    if (!maxima.empty()) r.witness_paths.push_back({maxima.front()});
    return r;
  }
  // Two maximal elements are adjacent when some codimension-one element lies
  // below both.
  const int m = static_cast<int>(maxima.size());
  std::vector<std::vector<int>> adj(m);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      for (int x = 0; x < n; ++x) {
        if (r.dimension[x] != r.length - 1) continue;
        if (poset.greater(maxima[a], x) && poset.greater(maxima[b], x)) {
          adj[a].push_back(b);
          adj[b].push_back(a);
          break;
        }
      }
    }
  }
  std::vector<int> parent(m, -2);
  std::queue<int> q;
  q.push(0);
  parent[0] = -1;
  while (!q.empty()) {
    int a = q.front();
    q.pop();
    for (int b : adj[a]) {
      if (parent[b] == -2) {
        parent[b] = a;
        q.push(b);
      }
    }
  }
  r.codim1_connected = r.is_ranked;
  for (int b = 0; b < m; ++b) {
    if (parent[b] == -2) {
      r.codim1_connected = false;
      continue;
    }
    std::vector<int> path;
    for (int c = b; c != -1; c = parent[c]) path.push_back(maxima[c]);
    std::reverse(path.begin(), path.end());
    r.witness_paths.push_back(std::move(path));
  }
  return r;
}

using StabilityPoset = Poset<PseudoDivisor>;

/// The subposet of pd(Γ) cut out by a stability condition, ordered by
/// specialization.
inline StabilityPoset build_poset(const WeightedGraph& g, const Polarization& p, StabilityKind kind, int base = 0) {
  auto elements = enumerate_pseudo_divisors(g, p, kind, base);
  std::vector<int> ranks;
  for (const auto& x : elements) ranks.push_back(rank(g, x));
  return StabilityPoset(elements, ranks, [&](int i, int j) {
    return ranks[i] >= ranks[j] && specializes(g, elements[i], elements[j]);
  });
}

/// Number of elements per rank, indexed by rank.
template <class T>
std::vector<int> rank_profile(const Poset<T>& poset) {
  std::vector<int> out;
  for (int r : poset.ranks()) {
    if (r >= static_cast<int>(out.size())) out.resize(r + 1, 0);
    ++out[r];
  }
  return out;
}

}  // namespace tropjac
