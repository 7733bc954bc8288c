#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "tropjac/error.hpp"
#include "tropjac/index_set.hpp"

namespace tropjac {

/// An oriented edge. Loops have source == target.
struct Edge {
  int source = 0;
  int target = 0;

  bool is_loop() const { return source == target; }
  int other(int v) const { return v == source ? target : source; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite multigraph with loops, a fixed orientation and nonnegative vertex
/// weights. Edge identity is positional: parallel edges are told apart by
/// index, and every derived graph documents how its indices map back.
class WeightedGraph {
 public:
  static constexpr int kMaxIndex = 64;

  WeightedGraph() = default;

  WeightedGraph(std::vector<int> weights, std::vector<Edge> edges)
      : weights_(std::move(weights)), edges_(std::move(edges)) {
    const int n = num_vertices();
    if (n > kMaxIndex || num_edges() > kMaxIndex) {
      throw Error(ErrorCode::kSizeGuard, "graphs are limited to 64 vertices and 64 edges");
    }
    for (int w : weights_) {
      if (w < 0) throw Error(ErrorCode::kInvalidArgument, "vertex weights must be nonnegative");
    }
    for (const Edge& e : edges_) {
      if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n) {
        throw Error(ErrorCode::kIndexOutOfRange, "edge endpoint out of range");
      }
    }
  }

  /// Unweighted graph on n vertices.
  static WeightedGraph from_edges(int n, std::vector<Edge> edges) {
    return WeightedGraph(std::vector<int>(n, 0), std::move(edges));
  }

  int num_vertices() const { return static_cast<int>(weights_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int weight(int v) const { return weights_.at(v); }
  const std::vector<int>& weights() const { return weights_; }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  VertexSet all_vertices() const { return VertexSet::full(num_vertices()); }
  EdgeSet all_edges() const { return EdgeSet::full(num_edges()); }

  void check_vertex(int v) const {
    if (v < 0 || v >= num_vertices()) throw Error(ErrorCode::kIndexOutOfRange, "vertex index out of range");
  }
  void check_vertices(VertexSet s) const {
    if (!s.is_subset_of(all_vertices())) throw Error(ErrorCode::kIndexOutOfRange, "vertex set out of range");
  }
  void check_edges(EdgeSet s) const {
    if (!s.is_subset_of(all_edges())) throw Error(ErrorCode::kIndexOutOfRange, "edge set out of range");
  }

  /// Number of edge ends in `subset` at v; loops count twice.
  int valence_in(EdgeSet subset, int v) const {
    int val = 0;
    subset.for_each([&](int e) {
      const Edge& ed = edges_[e];
      val += (ed.source == v) + (ed.target == v);
    });
    return val;
  }
  int valence(int v) const { return valence_in(all_edges(), v); }

  /// Non-loop edges with exactly one endpoint in V, i.e. E(V, V^c).
  EdgeSet cut(VertexSet vs) const {
    EdgeSet out;
    for (int e = 0; e < num_edges(); ++e) {
      if (vs.contains(edges_[e].source) != vs.contains(edges_[e].target)) out.insert(e);
    }
    return out;
  }

  /// Edges with both endpoints in V (loops included).
  EdgeSet inside(VertexSet vs) const {
    EdgeSet out;
    for (int e = 0; e < num_edges(); ++e) {
      if (vs.contains(edges_[e].source) && vs.contains(edges_[e].target)) out.insert(e);
    }
    return out;
  }

  /// Connected-component label of each vertex in the graph with `removed`
  /// deleted. Labels are numbered by smallest vertex.
  std::vector<int> component_labels(EdgeSet removed = {}) const {
    const int n = num_vertices();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int e = 0; e < num_edges(); ++e) {
      if (removed.contains(e)) continue;
      int a = find(edges_[e].source), b = find(edges_[e].target);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> label(n, -1);
    int next = 0;
    std::vector<int> root_label(n, -1);
    for (int v = 0; v < n; ++v) {
      int r = find(v);
      if (root_label[r] < 0) root_label[r] = next++;
      label[v] = root_label[r];
    }
    return label;
  }

  /// Vertex sets of the components of the graph with `removed` deleted.
  std::vector<VertexSet> components(EdgeSet removed = {}) const {
    auto labels = component_labels(removed);
    int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<VertexSet> out(count);
    for (int v = 0; v < num_vertices(); ++v) out[labels[v]].insert(v);
    return out;
  }

  int b0(EdgeSet removed = {}) const { return static_cast<int>(components(removed).size()); }
  int b1() const { return num_edges() - num_vertices() + b0(); }

  int genus() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0) + b1();
  }

  bool is_connected() const { return b0() <= 1; }

  bool is_stable() const {
    for (int v = 0; v < num_vertices(); ++v) {
      if (valence(v) + 2 * weights_[v] < 3) return false;
    }
    return true;
  }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::vector<int> weights_;
  std::vector<Edge> edges_;
};

/// Record of a contraction Γ → Γ/F.
struct Specialization {
  WeightedGraph source;
  WeightedGraph target;
  EdgeSet contracted;
  std::vector<int> vertex_map;    // V(source) -> V(target), surjective
  std::vector<int> edge_map;      // E(target) -> E(source), injective
  std::vector<int> edge_image;    // E(source) -> E(target), -1 on contracted edges

  /// ι⁻¹(W) for a vertex set of the target.
  VertexSet preimage(VertexSet target_vertices) const {
    VertexSet out;
    for (int v = 0; v < source.num_vertices(); ++v) {
      if (target_vertices.contains(vertex_map[v])) out.insert(v);
    }
    return out;
  }

  /// Image of a source edge set, dropping contracted edges.
  EdgeSet image(EdgeSet source_edges) const {
    EdgeSet out;
    source_edges.for_each([&](int e) {
      if (edge_image[e] >= 0) out.insert(edge_image[e]);
    });
    return out;
  }
};

/// Contracts every edge of F. Each fiber's weight is the sum of its weights
/// plus the first Betti number of the contracted subgraph, so contracted loops
/// add one and the genus is preserved. Target vertices are numbered by the
/// smallest source vertex of their fiber; surviving edges keep their order.
inline Specialization contract(const WeightedGraph& g, EdgeSet f) {
  g.check_edges(f);
  const int n = g.num_vertices();
  EdgeSet kept = g.all_edges() - f;
  auto labels = g.component_labels(kept);  // components of (V, F)
  int m = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;

  std::vector<int> weights(m, 0), fiber_size(m, 0), fiber_edges(m, 0);
  for (int v = 0; v < n; ++v) {
    weights[labels[v]] += g.weight(v);
    ++fiber_size[labels[v]];
  }
  f.for_each([&](int e) { ++fiber_edges[labels[g.edge(e).source]]; });
  for (int c = 0; c < m; ++c) weights[c] += fiber_edges[c] - fiber_size[c] + 1;

  Specialization s;
  s.source = g;
  s.contracted = f;
  s.vertex_map = labels;
  s.edge_image.assign(g.num_edges(), -1);
  std::vector<Edge> edges;
  kept.for_each([&](int e) {
    s.edge_image[e] = static_cast<int>(edges.size());
    s.edge_map.push_back(e);
    edges.push_back({labels[g.edge(e).source], labels[g.edge(e).target]});
  });
  s.target = WeightedGraph(std::move(weights), std::move(edges));
  return s;
}

/// Γ_F: same vertices, the edges of F removed. Remaining edges keep their
/// relative order.
inline WeightedGraph delete_edges(const WeightedGraph& g, EdgeSet f) {
  g.check_edges(f);
  std::vector<Edge> edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!f.contains(e)) edges.push_back(g.edge(e));
  }
  return WeightedGraph(g.weights(), std::move(edges));
}

/// Refined edges lying over one base edge. For an unrefined edge both halves
/// name the same refined edge and `exceptional` is -1.
struct EdgeHalves {
  int source_half = -1;  // e^s, incident to s(e)
  int target_half = -1;  // e^t, incident to t(e)
  int exceptional = -1;  // v_e
};

struct Refinement {
  WeightedGraph graph;
  EdgeSet refined;
  std::vector<EdgeHalves> over;  // per base edge
  std::vector<int> under;        // per refined edge, the base edge below it
};

/// Γ^E. Exceptional vertices follow the base vertices in order of their edge.
/// Refined edges are laid out base edge by base edge, with e^s (running
/// s(e) → v_e) directly before e^t (running v_e → t(e)).
inline Refinement refine(const WeightedGraph& g, EdgeSet e_set) {
  g.check_edges(e_set);
  Refinement r;
  r.refined = e_set;
  std::vector<int> weights = g.weights();
  std::vector<Edge> edges;
  r.over.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (!e_set.contains(e)) {
      int idx = static_cast<int>(edges.size());
      r.over[e] = {idx, idx, -1};
      edges.push_back(ed);
      r.under.push_back(e);
      continue;
    }
    int ve = static_cast<int>(weights.size());
    weights.push_back(0);
    int idx = static_cast<int>(edges.size());
    r.over[e] = {idx, idx + 1, ve};
    edges.push_back({ed.source, ve});
    edges.push_back({ve, ed.target});
    r.under.push_back(e);
    r.under.push_back(e);
  }
  r.graph = WeightedGraph(std::move(weights), std::move(edges));
  return r;
}

/// E(V, W) = E(V∖W, W∖V) together with δ_{Γ,V} = |E(V, V^c)|.
inline std::pair<EdgeSet, int> cut_and_delta(const WeightedGraph& g, VertexSet v, VertexSet w) {
  g.check_vertices(v);
  g.check_vertices(w);
  VertexSet a = v - w, b = w - v;
  EdgeSet out;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if ((a.contains(ed.source) && b.contains(ed.target)) ||
        (b.contains(ed.source) && a.contains(ed.target))) {
      out.insert(e);
    }
  }
  return {out, g.cut(v).size()};
}

struct SpanningTree {
  EdgeSet edges;
  VertexSet reached;
  std::vector<int> parent_edge;  // per vertex; -1 at the root and off the tree
  std::vector<int> child;        // per edge; the endpoint farther from the root, -1 off the tree
};

/// Breadth-first spanning tree of the component of `root`. Vertices are
/// expanded in queue order and their edges scanned by ascending index, so the
/// result is deterministic. Each tree edge is oriented away from the root.
inline SpanningTree spanning_tree(const WeightedGraph& g, int root) {
  g.check_vertex(root);
  SpanningTree t;
  t.parent_edge.assign(g.num_vertices(), -1);
  t.child.assign(g.num_edges(), -1);
  std::queue<int> q;
  q.push(root);
  t.reached.insert(root);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      if (ed.is_loop() || (ed.source != v && ed.target != v)) continue;
      int u = ed.other(v);
      if (t.reached.contains(u)) continue;
      t.reached.insert(u);
      t.edges.insert(e);
      t.parent_edge[u] = e;
      t.child[e] = u;
      q.push(u);
    }
  }
  return t;
}

/// Fundamental cycles of a breadth-first spanning forest, as signed edge
/// vectors: +1 where the cycle runs along the edge orientation, -1 against.
inline std::vector<std::vector<int>> cycle_space_basis(const WeightedGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> parent_edge(n, -1), depth(n, 0);
  EdgeSet forest;
  VertexSet seen;
  for (int r = 0; r < n; ++r) {
    if (seen.contains(r)) continue;
    SpanningTree t = spanning_tree(g, r);
    seen |= t.reached;
    forest |= t.edges;
    t.reached.for_each([&](int v) { parent_edge[v] = t.parent_edge[v]; });
    // depths by walking to the root
    t.reached.for_each([&](int v) {
      int d = 0;
      for (int x = v; parent_edge[x] >= 0; x = g.edge(parent_edge[x]).other(x)) ++d;
      depth[v] = d;
    });
  }

  std::vector<std::vector<int>> basis;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (forest.contains(e)) continue;
    std::vector<int> cycle(g.num_edges(), 0);
    cycle[e] = 1;
    // Close the cycle by walking from t(e) back to s(e) through the tree.
    int a = g.edge(e).target, b = g.edge(e).source;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        int pe = parent_edge[a];
        int next = g.edge(pe).other(a);
        cycle[pe] += (g.edge(pe).source == a) ? 1 : -1;  // traverse a -> next
        a = next;
      } else {
        int pe = parent_edge[b];
        int next = g.edge(pe).other(b);
        cycle[pe] += (g.edge(pe).source == next) ? 1 : -1;  // traverse next -> b
        b = next;
      }
    }
    basis.push_back(std::move(cycle));
  }
  return basis;
}

inline std::string describe(const WeightedGraph& g) {
  std::string s = "V=" + std::to_string(g.num_vertices()) + " w=[";
  for (int v = 0; v < g.num_vertices(); ++v) s += (v ? "," : "") + std::to_string(g.weight(v));
  s += "] E=[";
  for (int e = 0; e < g.num_edges(); ++e) {
    s += (e ? "," : "") + std::to_string(g.edge(e).source) + ">" + std::to_string(g.edge(e).target);
  }
  return s + "]";
}

}  // namespace tropjac
