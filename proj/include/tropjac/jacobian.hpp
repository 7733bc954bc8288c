#pragma once

#include <map>
#include <vector>

#include "tropjac/trop_curve.hpp"
#include "tropjac/universal.hpp"

namespace tropjac {

/// Geometric check of one Hasse cover: how many ways the lower cell embeds
/// into the upper one, and how many of those embeddings are faces.
struct FaceRelation {
  int upper = -1;
  int lower = -1;
  int realizations = 0;
  int faces = 0;

  bool verified() const { return realizations > 0 && faces == realizations; }
};

/// Cells P_{E,D}(X) (or boxes K_{E,D}(X)) indexed by a stability poset, glued
/// along the covers.
struct CellComplex {
  TropicalCurve curve;
  Polarization polarization;
  StabilityKind kind = StabilityKind::kPolystable;
  int base = 0;
  StabilityPoset poset;
  std::vector<QuotientCell> cells;
  std::vector<FaceRelation> faces;  // one per cover, in poset cover order

  std::vector<int> f_vector() const { return rank_profile(poset); }

  long euler_characteristic() const {
    long chi = 0;
    for (int r : poset.ranks()) chi += (r % 2 == 0) ? 1 : -1;
    return chi;
  }

  bool all_faces_verified() const {
    return std::all_of(faces.begin(), faces.end(), [](const FaceRelation& f) { return f.verified(); });
  }

  int index_of(const PseudoDivisor& pd) const { return poset.index_of(pd); }
};

inline void check_curve_complex(const TropicalCurve& x, const Polarization& p) {
  check_polarization(x.model, p);
  if (!x.model.is_connected()) throw Error(ErrorCode::kDisconnected, "cell complexes need a connected model");
}

inline CellComplex assemble_complex(const TropicalCurve& x, const Polarization& p, StabilityKind kind, int base) {
  check_curve_complex(x, p);
  CellComplex c{x, p, kind, base, build_poset(x.model, p, kind, base), {}, {}};
  for (const auto& pd : c.poset.elements()) c.cells.push_back(cell_P(x.model, pd, x.lengths));
  for (auto [u, l] : c.poset.covers()) {
    FaceRelation f{u, l, 0, 0};
    const PseudoDivisor& up = c.poset.element(u);
    const PseudoDivisor& lo = c.poset.element(l);
    for (const auto& w : all_specialization_witnesses(x.model, up, lo)) {
      ++f.realizations;
      auto inner = embed_cell_P(x.model, up, lo, w, x.lengths, c.cells[u]);
      if (is_face_polytope(inner, c.cells[u].vertices)) ++f.faces;
    }
    c.faces.push_back(f);
  }
  return c;
}

/// P^trop_μ(X): polytopes over ps_μ(Γ).
inline CellComplex build_jacobian_polystable(const TropicalCurve& x, const Polarization& p) {
  return assemble_complex(x, p, StabilityKind::kPolystable, 0);
}

/// J^trop_{v0,μ}(X): boxes over the (v0, μ)-quasistable pseudo-divisors,
/// with the base point at the model vertex v0.
inline CellComplex build_jacobian_quasistable(const TropicalCurve& x, const Polarization& p, int v0) {
  return assemble_complex(x, p, StabilityKind::kQuasistable, v0);
}

/// Each quasistable cell sent into the polystable cell of its pol-image.
struct RefinementMap {
  std::vector<int> image;               // fine cell -> coarse cell
  std::vector<bool> vertices_inside;    // fine cell's box vertices land in the coarse polytope
  std::vector<int> top_cells_covering;  // per coarse cell, fine cells of full dimension mapped to it

  bool sound(const CellComplex& coarse) const {
    if (std::find(vertices_inside.begin(), vertices_inside.end(), false) != vertices_inside.end()) return false;
    const int top = coarse.cells.empty() ? 0 : coarse.curve.model.b1();
    for (int i = 0; i < coarse.poset.size(); ++i) {
      if (coarse.cells[i].dimension == top && top_cells_covering[i] == 0) return false;
    }
    return true;
  }
};

/// Box vertices are carried along the witness of the saturation sequence:
/// every edge the sequence adds sits at its endpoint on the saturated side.
inline RefinementMap refinement_map(const CellComplex& fine, const CellComplex& coarse) {
  if (!(fine.curve == coarse.curve) || fine.polarization.values() != coarse.polarization.values()) {
    throw Error(ErrorCode::kPrecondition, "complexes are built on different curves or polarizations");
  }
  const WeightedGraph& g = fine.curve.model;
  const int top = g.b1();
  RefinementMap m;
  m.top_cells_covering.assign(coarse.poset.size(), 0);
  for (int i = 0; i < fine.poset.size(); ++i) {
    const PseudoDivisor& pd = fine.poset.element(i);
    PolTrace trace;
    PseudoDivisor up = pol(g, pd, fine.polarization, {}, &trace);
    const int j = coarse.index_of(up);
    if (j < 0) throw Error(ErrorCode::kPrecondition, "pol image missing from the coarse complex");
    m.image.push_back(j);
    auto pts = embed_cell_P(g, up, pd, saturation_witness(g, trace), fine.curve.lengths, coarse.cells[j]);
    bool inside = std::all_of(pts.begin(), pts.end(),
                              [&](const RatVector& v) { return in_convex_hull(coarse.cells[j].vertices, v); });
    m.vertices_inside.push_back(inside);
    if (fine.cells[i].dimension == top) ++m.top_cells_covering[j];
  }
  return m;
}

/// The open cell containing a semistable divisor's class, and the class's
/// coordinates in that cell's quotient.
struct Location {
  int cell = -1;
  RatVector coordinates;
  UnitaryDivisor polystable;
};

inline Location locate(const CellComplex& c, const UnitaryDivisor& d) {
  if (c.kind != StabilityKind::kPolystable) throw Error(ErrorCode::kPrecondition, "locate needs the polystable complex");
  Location loc;
  loc.polystable = polystabilize_on_curve(c.curve, d, c.polarization);
  loc.cell = c.index_of(loc.polystable.type);
  if (loc.cell < 0) throw Error(ErrorCode::kPrecondition, "polystable type missing from the complex");
  loc.coordinates = c.cells[loc.cell].quotient(box_point(c.curve, loc.polystable));
  return loc;
}

// ---------------------------------------------------------------------------
// Universal complex.

/// One way a cone σ_y sits inside σ_x: contract F in Γ_x, identify with Γ_y
/// by φ, and specialize with a witness on Γ_y.
struct ConeRealization {
  EdgeSet contracted;
  GraphIsomorphism iso;
  SpecializationWitness witness;
};

/// Enumerates realizations of x ≥ y in the universal poset; `visit` returns
/// false to stop.
inline void for_each_cone_realization(const UniversalPoset& u, int x, int y,
                                      const std::function<bool(const ConeRealization&)>& visit) {
  const UniversalObject& ox = u.poset.element(x);
  const UniversalObject& oy = u.poset.element(y);
  const WeightedGraph& gx = u.graphs[ox.graph];
  const WeightedGraph& gy = u.graphs[oy.graph];
  auto target_code = canonical_code(gy);
  const std::uint64_t subsets = std::uint64_t{1} << gx.num_edges();
  bool go = true;
  for (std::uint64_t bits = 0; bits < subsets && go; ++bits) {
    EdgeSet f(bits);
    if (gx.num_edges() - f.size() != gy.num_edges()) continue;
    Specialization s = contract(gx, f);
    if (canonical_code(s.target) != target_code) continue;
    PseudoDivisor image = pushforward_pd(s, ox.pd);
    for_each_isomorphism(s.target, gy, [&](const GraphIsomorphism& iso) {
      PseudoDivisor moved = apply_isomorphism(iso, image);
      for (auto& w : all_specialization_witnesses(gy, moved, oy.pd)) {
        if (!visit({f, iso, std::move(w)})) return go = false;
      }
      return true;
    });
  }
}

/// The refined-edge inclusion of σ_y into σ_x for a realization. The target
/// edge set and witness are pulled back to Γ_x/F through φ; an edge whose
/// image runs backwards swaps its witness side.
inline std::vector<int> cone_inclusion(const UniversalPoset& u, int x, int y, const ConeRealization& r) {
  const UniversalObject& ox = u.poset.element(x);
  const UniversalObject& oy = u.poset.element(y);
  const WeightedGraph& gx = u.graphs[ox.graph];
  Specialization s = contract(gx, r.contracted);
  const int m = s.target.num_edges();
  EdgeSet e2;
  SpecializationWitness w;
  w.side.assign(m, Side::kNone);
  for (int e = 0; e < m; ++e) {
    const int image = r.iso.edge_map[e];
    if (oy.pd.E.contains(image)) e2.insert(e);
    Side side = r.witness.side[image];
    if (r.iso.flipped[e] && side != Side::kNone) side = side == Side::kSource ? Side::kTarget : Side::kSource;
    w.side[e] = side;
  }
  // Refined edges of Γ_y^{E_y} are reached through φ^{-1}; reorder to Γ_y's layout.
  std::vector<int> via_quotient = refined_edge_inclusion(gx, ox.pd.E, s, e2, w);
  Refinement rq = refine(s.target, e2);
  Refinement ry = refine(u.graphs[oy.graph], oy.pd.E);
  std::vector<int> out(ry.graph.num_edges(), -1);
  for (int e = 0; e < m; ++e) {
    const int image = r.iso.edge_map[e];
    const EdgeHalves& hq = rq.over[e];
    const EdgeHalves& hy = ry.over[image];
    if (hq.exceptional < 0) {
      out[hy.source_half] = via_quotient[hq.source_half];
    } else if (r.iso.flipped[e]) {
      out[hy.source_half] = via_quotient[hq.target_half];
      out[hy.target_half] = via_quotient[hq.source_half];
    } else {
      out[hy.source_half] = via_quotient[hq.source_half];
      out[hy.target_half] = via_quotient[hq.target_half];
    }
  }
  return out;
}

struct UniversalComplex {
  UniversalPoset base;
  std::vector<ConeCell> cones;      // one per class, on its representative graph
  std::vector<FaceRelation> faces;  // per cover; realizations may be capped

  /// π^trop: each cone lies over the cone of its stable graph.
  int projection(int i) const { return base.poset.element(i).graph; }

  std::vector<int> f_vector() const { return rank_profile(base.poset); }

  /// Counts that weigh each class by the number of pseudo-divisors it
  /// represents on its graph.
  std::vector<int> f_vector_unquotiented() const {
    std::vector<int> out;
    for (int i = 0; i < base.poset.size(); ++i) {
      const int r = base.poset.rank(i);
      if (r >= static_cast<int>(out.size())) out.resize(r + 1, 0);
      out[r] += base.poset.element(i).orbit_size;
    }
    return out;
  }

  bool all_faces_verified() const {
    return std::all_of(faces.begin(), faces.end(), [](const FaceRelation& f) { return f.verified(); });
  }
};

/// P^trop_{μ,g} for the canonical polarization of degree d. Each cover is
/// checked geometrically on up to `max_realizations` realizations (0 = all).
inline UniversalComplex build_universal(int genus, long d, int max_realizations = 0) {
  UniversalComplex c{build_universal_poset(genus, d), {}, {}};
  const auto& poset = c.base.poset;
  for (int i = 0; i < poset.size(); ++i) {
    const auto& o = poset.element(i);
    c.cones.push_back(cone_sigma(c.base.graphs[o.graph], o.pd));
  }
  for (auto [x, y] : poset.covers()) {
    FaceRelation f{x, y, 0, 0};
    for_each_cone_realization(c.base, x, y, [&](const ConeRealization& r) {
      ++f.realizations;
      if (is_face_sigma(c.cones[x], cone_inclusion(c.base, x, y, r))) ++f.faces;
      return max_realizations == 0 || f.realizations < max_realizations;
    });
    c.faces.push_back(f);
  }
  return c;
}

/// The fiber of π^trop over the curve with model graph `graph` and the given
/// lengths agrees with P^trop_μ(X): the classes over that graph are the
/// Aut(Γ)-orbits of ps_μ(Γ) with matching sizes, and each cone's fiber is the
/// corresponding polytope.
inline bool universal_fiber_matches(const UniversalComplex& c, int graph, const RatVector& lengths) {
  const UniversalPoset& u = c.base;
  const WeightedGraph& g = u.graphs.at(graph);
  TropicalCurve x(g, lengths);
  CellComplex local = build_jacobian_polystable(x, u.polarizations[graph]);
  std::map<std::vector<int>, int> orbit;
  for (const auto& pd : local.poset.elements()) ++orbit[triple_code(g, pd)];
  std::map<std::vector<int>, int> classes;
  for (int i = 0; i < u.poset.size(); ++i) {
    const auto& o = u.poset.element(i);
    if (o.graph != graph) continue;
    classes[triple_code(g, o.pd)] = o.orbit_size;
    if (!fiber_matches_cell(g, o.pd, lengths)) return false;
    const int local_index = local.index_of(o.pd);
    if (local_index < 0 || local.cells[local_index].dimension + g.num_edges() != c.cones[i].cell.dimension) {
      return false;
    }
  }
  return orbit == classes;
}

}  // namespace tropjac
