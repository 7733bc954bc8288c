#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "tropjac/graph.hpp"

namespace tropjac {

struct GraphIsomorphism {
  std::vector<int> vertex_map;  // V(g1) -> V(g2)
  std::vector<int> edge_map;    // E(g1) -> E(g2)
  std::vector<bool> flipped;    // per edge of g1: image runs against the orientation
};

inline constexpr int kIsomorphismVertexGuard = 8;

namespace detail {

inline void check_iso_guard(const WeightedGraph& g) {
  if (g.num_vertices() > kIsomorphismVertexGuard) {
    throw Error(ErrorCode::kSizeGuard, "isomorphism search is limited to 8 vertices");
  }
}

// Edges of g grouped by unordered endpoint pair, key = a * n + b with a <= b.
inline std::vector<std::vector<int>> edges_by_pair(const WeightedGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> out(static_cast<size_t>(n) * n);
  for (int e = 0; e < g.num_edges(); ++e) {
    int a = std::min(g.edge(e).source, g.edge(e).target);
    int b = std::max(g.edge(e).source, g.edge(e).target);
    out[a * n + b].push_back(e);
  }
  return out;
}

}  // namespace detail

/// Calls `visit` on every isomorphism g1 → g2 until it returns false. Parallel
/// edges are permuted freely; a loop may map with either orientation and the
/// two choices count as different isomorphisms.
inline void for_each_isomorphism(const WeightedGraph& g1, const WeightedGraph& g2,
                                 const std::function<bool(const GraphIsomorphism&)>& visit) {
  detail::check_iso_guard(g1);
  detail::check_iso_guard(g2);
  const int n = g1.num_vertices();
  if (n != g2.num_vertices() || g1.num_edges() != g2.num_edges()) return;

  auto pairs1 = detail::edges_by_pair(g1);
  auto pairs2 = detail::edges_by_pair(g2);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  bool keep_going = true;

  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      ok = g1.weight(v) == g2.weight(perm[v]) && g1.valence(v) == g2.valence(perm[v]);
    }
    for (int a = 0; a < n && ok; ++a) {
      for (int b = a; b < n && ok; ++b) {
        int c = std::min(perm[a], perm[b]), d = std::max(perm[a], perm[b]);
        ok = pairs1[a * n + b].size() == pairs2[c * n + d].size();
      }
    }
    if (!ok) continue;

    // Per endpoint pair, choose a bijection of parallel edges; loops also
    // choose an orientation. Enumerated as a mixed-radix odometer.
    struct Slot {
      std::vector<int> from, to;
      bool loops;
    };
    std::vector<Slot> slots;
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        if (pairs1[a * n + b].empty()) continue;
        int c = std::min(perm[a], perm[b]), d = std::max(perm[a], perm[b]);
        slots.push_back({pairs1[a * n + b], pairs2[c * n + d], a == b});
        std::sort(slots.back().to.begin(), slots.back().to.end());
      }
    }

    GraphIsomorphism iso;
    iso.vertex_map = perm;
    iso.edge_map.assign(g1.num_edges(), -1);
    iso.flipped.assign(g1.num_edges(), false);

    std::function<void(size_t)> rec = [&](size_t k) {
      if (!keep_going) return;
      if (k == slots.size()) {
        keep_going = visit(iso);
        return;
      }
      Slot& s = slots[k];
      std::vector<int> order = s.to;
      do {
        for (size_t i = 0; i < s.from.size(); ++i) iso.edge_map[s.from[i]] = order[i];
        if (s.loops) {
          const size_t m = s.from.size();
          for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m) && keep_going; ++mask) {
            for (size_t i = 0; i < m; ++i) iso.flipped[s.from[i]] = (mask >> i) & 1u;
            rec(k + 1);
          }
        } else {
          for (int e : s.from) {
            iso.flipped[e] = g2.edge(iso.edge_map[e]).source != perm[g1.edge(e).source];
          }
          rec(k + 1);
        }
      } while (keep_going && std::next_permutation(order.begin(), order.end()));
    };
    rec(0);
  } while (keep_going && std::next_permutation(perm.begin(), perm.end()));
}

inline std::vector<GraphIsomorphism> isomorphisms(const WeightedGraph& g1, const WeightedGraph& g2) {
  std::vector<GraphIsomorphism> out;
  for_each_isomorphism(g1, g2, [&](const GraphIsomorphism& iso) {
    out.push_back(iso);
    return true;
  });
  return out;
}

inline bool are_isomorphic(const WeightedGraph& g1, const WeightedGraph& g2) {
  bool found = false;
  for_each_isomorphism(g1, g2, [&](const GraphIsomorphism&) {
    found = true;
    return false;
  });
  return found;
}

/// Lexicographically least encoding over all vertex relabelings: weights,
/// then optional per-vertex labels, then for each unordered vertex pair the
/// edge multiplicity and how many of those edges lie in `marked`. Two graphs
/// with markings and labels get equal codes iff some isomorphism carries one
/// onto the other. When `relabel` is false only the identity labeling is
/// used, which classifies up to edge permutations fixing every vertex.
inline std::vector<int> canonical_code(const WeightedGraph& g, EdgeSet marked = {},
                                       const std::vector<int>& labels = {}, bool relabel = true) {
  detail::check_iso_guard(g);
  const int n = g.num_vertices();
  std::vector<int> mult(static_cast<size_t>(n) * n, 0), mark(static_cast<size_t>(n) * n, 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    int a = g.edge(e).source, b = g.edge(e).target;
    ++mult[a * n + b];
    if (a != b) ++mult[b * n + a];
    if (marked.contains(e)) {
      ++mark[a * n + b];
      if (a != b) ++mark[b * n + a];
    }
  }
  // perm[i] = old vertex placed at new position i
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best, code;
  do {
    code.clear();
    for (int i = 0; i < n; ++i) code.push_back(g.weight(perm[i]));
    for (int i = 0; i < n && !labels.empty(); ++i) code.push_back(labels[perm[i]]);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        code.push_back(mult[perm[i] * n + perm[j]]);
        code.push_back(mark[perm[i] * n + perm[j]]);
      }
    }
    if (best.empty() || code < best) best = code;
  } while (relabel && std::next_permutation(perm.begin(), perm.end()));
  best.insert(best.begin(), {n, g.num_edges()});
  return best;
}

}  // namespace tropjac
