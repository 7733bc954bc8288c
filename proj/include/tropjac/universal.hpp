#pragma once

#include <map>
#include <vector>

#include "tropjac/isomorphism.hpp"
#include "tropjac/poset.hpp"

namespace tropjac {

inline void check_universal_genus(int genus) {
  if (genus < 2 || genus > 3) {
    throw Error(ErrorCode::kSizeGuard, "universal constructions are limited to genus 2 and 3");
  }
}

/// Connected stable weighted graphs of the given genus, one per isomorphism
/// class. Built from every multiset of at most 3g − 3 edges on at most 2g − 2
/// vertices and every spread of the remaining genus over vertex weights.
inline std::vector<WeightedGraph> stable_graphs(int genus) {
  check_universal_genus(genus);
  std::vector<WeightedGraph> out;
  std::map<std::vector<int>, int> seen;
  for (int n = 1; n <= 2 * genus - 2; ++n) {
    std::vector<Edge> pairs;
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) pairs.push_back({a, b});
    }
    const int np = static_cast<int>(pairs.size());
    for (int m = n - 1; m <= 3 * genus - 3; ++m) {
      const int spare = genus - (m - n + 1);
      if (spare < 0) continue;
      std::vector<int> pick(m, 0);
      auto emit = [&]() {
        std::vector<Edge> edges;
        for (int k : pick) edges.push_back(pairs[k]);
        WeightedGraph bare = WeightedGraph::from_edges(n, edges);
        if (!bare.is_connected()) return;
        std::vector<int> w(n, 0);
        auto spread = [&](auto&& self, int v, int left) -> void {
          if (v == n - 1) {
            w[v] = left;
            WeightedGraph g(w, edges);
            if (!g.is_stable()) return;
            auto code = canonical_code(g);
            if (seen.emplace(code, static_cast<int>(out.size())).second) out.push_back(g);
            return;
          }
          for (int x = 0; x <= left; ++x) {
            w[v] = x;
            self(self, v + 1, left - x);
          }
        };
        spread(spread, 0, spare);
      };
      // nondecreasing sequences of pair indices = edge multisets
      auto rec = [&](auto&& self, int k, int from) -> void {
        if (k == m) {
          emit();
          return;
        }
        for (int p = from; p < np; ++p) {
          pick[k] = p;
          self(self, k + 1, p);
        }
      };
      rec(rec, 0, 0);
    }
  }
  return out;
}

/// Carries a pseudo-divisor along a graph isomorphism.
inline PseudoDivisor apply_isomorphism(const GraphIsomorphism& iso, const PseudoDivisor& pd) {
  PseudoDivisor out;
  out.D.assign(pd.D.size(), 0);
  for (size_t v = 0; v < pd.D.size(); ++v) out.D[iso.vertex_map[v]] = pd.D[v];
  pd.E.for_each([&](int e) { out.E.insert(iso.edge_map[e]); });
  return out;
}

/// Isomorphism-class code of a triple (Γ, E, D).
inline std::vector<int> triple_code(const WeightedGraph& g, const PseudoDivisor& pd) {
  return canonical_code(g, pd.E, pd.D);
}

/// A class of triples (Γ, E, D); `graph` indexes UniversalPoset::graphs.
struct UniversalObject {
  int graph = 0;
  PseudoDivisor pd;
  int orbit_size = 1;  // pseudo-divisors on the representative graph in this class

  friend bool operator==(const UniversalObject&, const UniversalObject&) = default;
};

struct UniversalPoset {
  int genus = 0;
  long degree = 0;
  std::vector<WeightedGraph> graphs;
  std::vector<Polarization> polarizations;  // canonical, one per graph
  std::vector<int> objects_per_graph;       // |ps_μ(Γ)| before identifying isomorphic triples
  Poset<UniversalObject> poset;             // ranked by cone dimension |E(Γ)| + rk(E, D)
};

/// ps_{μ,g} for the canonical polarization of degree d. A class x lies above
/// y when, for some F ⊆ E(Γ_x) and some isomorphism φ: Γ_x/F → Γ_y, the
/// pseudo-divisor φ(ι_*(E_x, D_x)) specializes to (E_y, D_y).
inline UniversalPoset build_universal_poset(int genus, long d) {
  check_universal_genus(genus);
  UniversalPoset u;
  u.genus = genus;
  u.degree = d;
  u.graphs = stable_graphs(genus);
  std::map<std::vector<int>, int> graph_index;
  for (size_t i = 0; i < u.graphs.size(); ++i) graph_index[canonical_code(u.graphs[i])] = static_cast<int>(i);

  std::vector<UniversalObject> objects;
  std::vector<int> dims;
  std::vector<std::vector<int>> objects_on(u.graphs.size());
  for (size_t i = 0; i < u.graphs.size(); ++i) {
    const WeightedGraph& g = u.graphs[i];
    u.polarizations.push_back(canonical_polarization(g, d));
    auto ps = enumerate_pseudo_divisors(g, u.polarizations.back(), StabilityKind::kPolystable);
    u.objects_per_graph.push_back(static_cast<int>(ps.size()));
    std::map<std::vector<int>, int> class_of;
    for (const auto& pd : ps) {
      auto [it, fresh] = class_of.emplace(triple_code(g, pd), static_cast<int>(objects.size()));
      if (fresh) {
        objects.push_back({static_cast<int>(i), pd, 1});
        dims.push_back(g.num_edges() + rank(g, pd));
        objects_on[i].push_back(it->second);
      } else {
        ++objects[it->second].orbit_size;
      }
    }
  }

  const int n = static_cast<int>(objects.size());
  std::vector<char> below(static_cast<size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x) {
    const WeightedGraph& g = u.graphs[objects[x].graph];
    const std::uint64_t subsets = std::uint64_t{1} << g.num_edges();
    for (std::uint64_t bits = 0; bits < subsets; ++bits) {
      Specialization s = contract(g, EdgeSet(bits));
      const int j = graph_index.at(canonical_code(s.target));
      PseudoDivisor image = pushforward_pd(s, objects[x].pd);
      for_each_isomorphism(s.target, u.graphs[j], [&](const GraphIsomorphism& iso) {
        PseudoDivisor moved = apply_isomorphism(iso, image);
        for (int y : objects_on[j]) {
          if (!below[x * n + y] && specializes(u.graphs[j], moved, objects[y].pd)) below[x * n + y] = 1;
        }
        return true;
      });
    }
  }
  u.poset = Poset<UniversalObject>(objects, dims, [&](int x, int y) { return below[x * n + y] != 0; });
  return u;
}

}  // namespace tropjac
