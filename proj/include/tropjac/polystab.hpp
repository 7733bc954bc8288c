#pragma once

#include <functional>
#include <vector>

#include "tropjac/stability.hpp"

namespace tropjac {

/// (E ∪ E(V,V^c), D1) with D1(v) = D(v) + val_{E(V,V^c)∖E}(v) on V and D1 = D
/// off V: the unique semistable pseudo-divisor on that edge set lying
/// strictly above (E, D).
inline PseudoDivisor saturate(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p, VertexSet vs) {
  check_degrees(g, pd, p);
  g.check_vertices(vs);
  if (Verdict v = is_semistable(g, pd, p); !v) {
    throw Error(ErrorCode::kNotSemistable, "saturation needs a semistable pseudo-divisor");
  }
  if (beta(g, pd, p, vs) != 0) throw Error(ErrorCode::kPrecondition, "saturation needs beta(V) = 0");
  EdgeSet added = g.cut(vs) - pd.E;
  if (added.empty()) throw Error(ErrorCode::kPrecondition, "saturation needs E(V,V^c) not contained in E");
  PseudoDivisor out{pd.E | added, pd.D};
  vs.for_each([&](int v) { out.D[v] += g.valence_in(added, v); });
  return out;
}

/// Vertex sets V with β(V) = 0 and E(V,V^c) ⊄ E, by ascending bitmask.
/// Empty exactly when a semistable pseudo-divisor is polystable.
inline std::vector<VertexSet> polystability_violations(const BetaTable& table, const PseudoDivisor& pd) {
  std::vector<long long> scaled;
  table.evaluate(pd, scaled);
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 0; mask < scaled.size(); ++mask) {
    if (scaled[mask] == 0 && !table.cut(mask).is_subset_of(pd.E)) out.push_back(VertexSet(mask));
  }
  return out;
}

/// Picks one of the violating sets (given in ascending bitmask order).
using ViolationChooser = std::function<VertexSet(const std::vector<VertexSet>&)>;

struct PolTrace {
  std::vector<PseudoDivisor> steps;  // starts with the input, ends with the result
  std::vector<VertexSet> chosen;     // the saturated set between consecutive steps
};

/// The minimal polystable pseudo-divisor above a semistable one, reached by
/// saturating violating sets until none remain. The default chooser takes
/// the smallest bitmask; the result does not depend on the choice.
inline PseudoDivisor pol(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p,
                         const ViolationChooser& choose = {}, PolTrace* trace = nullptr) {
  BetaTable table(g, p);
  std::vector<long long> scaled;
  table.evaluate(pd, scaled);
  if (Verdict v = check_stability(table, pd, StabilityKind::kSemistable, scaled); !v) {
    throw Error(ErrorCode::kNotSemistable, "pol needs a semistable pseudo-divisor");
  }
  PseudoDivisor cur = pd;
  if (trace) trace->steps.push_back(cur);
  for (;;) {
    auto violations = polystability_violations(table, cur);
    if (violations.empty()) return cur;
    VertexSet vs = choose ? choose(violations) : violations.front();
    EdgeSet added = g.cut(vs) - cur.E;
    cur.E |= added;
    vs.for_each([&](int v) { cur.D[v] += g.valence_in(added, v); });
    if (trace) {
      trace->chosen.push_back(vs);
      trace->steps.push_back(cur);
    }
  }
}

/// The witness of pol(pd) ≥ pd that saturation produces: each added edge
/// merges back into its endpoint on the saturated side.
inline SpecializationWitness saturation_witness(const WeightedGraph& g, const PolTrace& trace) {
  SpecializationWitness w;
  w.side.assign(g.num_edges(), Side::kNone);
  for (size_t i = 0; i < trace.chosen.size(); ++i) {
    VertexSet vs = trace.chosen[i];
    (trace.steps[i + 1].E - trace.steps[i].E).for_each([&](int e) {
      w.side[e] = vs.contains(g.edge(e).source) ? Side::kSource : Side::kTarget;
    });
  }
  return w;
}

/// A (v0, μ)-quasistable pseudo-divisor of the same rank whose pol is the
/// given polystable one. Uses the breadth-first spanning tree T of
/// Γ/(E(Γ)∖E) rooted at the image of v0 and returns (E ∖ T, D') where D'
/// drops by one at the far endpoint of each tree edge.
inline PseudoDivisor quasistable_lift(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p,
                                      int v0) {
  g.check_vertex(v0);
  if (!g.is_connected()) throw Error(ErrorCode::kDisconnected, "quasistability needs a connected graph");
  if (Verdict v = is_polystable(g, pd, p); !v) {
    throw Error(ErrorCode::kNotPolystable, "the lift needs a polystable pseudo-divisor");
  }
  Specialization s = contract(g, g.all_edges() - pd.E);
  SpanningTree tree = spanning_tree(s.target, s.vertex_map[v0]);
  PseudoDivisor out = pd;
  tree.edges.for_each([&](int te) {
    const int e = s.edge_map[te];
    const int child = tree.child[te];
    const Edge& ed = g.edge(e);
    out.D[s.vertex_map[ed.target] == child ? ed.target : ed.source] -= 1;
    out.E.erase(e);
  });
  return out;
}

}  // namespace tropjac
