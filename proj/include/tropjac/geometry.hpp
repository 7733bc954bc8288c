#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "tropjac/linalg.hpp"
#include "tropjac/stability.hpp"

namespace tropjac {

// Coordinates on Q^E follow the ascending edge indices of E. Coordinates on
// Q^{E(Γ^E)} follow the refined edge indices produced by refine().

/// Position of each base edge inside Q^E, or -1 when it is not in E.
inline std::vector<int> local_index(const WeightedGraph& g, EdgeSet e_set) {
  std::vector<int> idx(g.num_edges(), -1);
  int k = 0;
  e_set.for_each([&](int e) { idx[e] = k++; });
  return idx;
}

/// L_E from the components of Γ_E: the span of u_C, where u_C has +1 on
/// edges of E leaving C and −1 on edges of E entering C.
inline std::vector<RatVector> subspace_LE_from_components(const WeightedGraph& g, EdgeSet e_set) {
  g.check_edges(e_set);
  const int k = e_set.size();
  auto idx = local_index(g, e_set);
  std::vector<RatVector> gens;
  for (VertexSet c : g.components(e_set)) {
    RatVector u(k, Rational(0));
    bool nonzero = false;
    e_set.for_each([&](int e) {
      bool s_in = c.contains(g.edge(e).source), t_in = c.contains(g.edge(e).target);
      if (s_in && !t_in) u[idx[e]] = 1, nonzero = true;
      if (t_in && !s_in) u[idx[e]] = -1, nonzero = true;
    });
    if (nonzero) gens.push_back(std::move(u));
  }
  return span_basis(gens, k);
}

/// L_E as the solutions of Σ_{e∈γ∩E} γ(e) x_e = 0 over a cycle basis γ.
inline std::vector<RatVector> subspace_LE_from_cycles(const WeightedGraph& g, EdgeSet e_set) {
  g.check_edges(e_set);
  const int k = e_set.size();
  if (k == 0) return {};
  auto idx = local_index(g, e_set);
  std::vector<RatVector> rows;
  for (const auto& cycle : cycle_space_basis(g)) {
    RatVector r(k, Rational(0));
    e_set.for_each([&](int e) { r[idx[e]] = cycle[e]; });
    rows.push_back(std::move(r));
  }
  if (rows.empty()) rows.push_back(RatVector(k, Rational(0)));
  return span_basis(kernel(RatMatrix::from_rows(rows, k)), k);
}

/// L_E ⊆ Q^E, computed both ways; a disagreement is a library bug and throws.
inline std::vector<RatVector> subspace_LE(const WeightedGraph& g, EdgeSet e_set) {
  auto a = subspace_LE_from_components(g, e_set);
  auto b = subspace_LE_from_cycles(g, e_set);
  if (a != b) throw Error(ErrorCode::kPrecondition, "component and cycle descriptions of L_E disagree");
  return a;
}

/// EL_E ⊆ Q^{E(Γ^E)}: the span of w_C over components C of Γ_E, where w_C
/// is +1 on the half of each cut edge touching C and −1 on the other half.
inline std::vector<RatVector> subspace_ELE(const WeightedGraph& g, EdgeSet e_set, const Refinement& r) {
  const int n = r.graph.num_edges();
  std::vector<RatVector> gens;
  for (VertexSet c : g.components(e_set)) {
    RatVector w(n, Rational(0));
    bool nonzero = false;
    e_set.for_each([&](int e) {
      bool s_in = c.contains(g.edge(e).source), t_in = c.contains(g.edge(e).target);
      if (s_in == t_in) return;
      w[r.over[e].source_half] = s_in ? 1 : -1;
      w[r.over[e].target_half] = t_in ? 1 : -1;
      nonzero = true;
    });
    if (nonzero) gens.push_back(std::move(w));
  }
  return span_basis(gens, n);
}

inline std::vector<RatVector> subspace_ELE(const WeightedGraph& g, EdgeSet e_set) {
  return subspace_ELE(g, e_set, refine(g, e_set));
}

/// f_E sums the refined coordinates over each base edge; g_E reads the
/// coordinate of e^s for e ∈ E.
struct RefinementMaps {
  RatMatrix f;  // |E(Γ)| × |E(Γ^E)|
  RatMatrix g;  // |E| × |E(Γ^E)|

  RatMatrix joint() const {
    RatMatrix m(f.rows() + g.rows(), f.cols());
    for (int i = 0; i < f.rows(); ++i) {
      for (int j = 0; j < f.cols(); ++j) m.at(i, j) = f.at(i, j);
    }
    for (int i = 0; i < g.rows(); ++i) {
      for (int j = 0; j < g.cols(); ++j) m.at(f.rows() + i, j) = g.at(i, j);
    }
    return m;
  }
};

inline RefinementMaps maps_fE_gE(const WeightedGraph& gr, EdgeSet e_set, const Refinement& r) {
  const int n = r.graph.num_edges();
  RefinementMaps m{RatMatrix(gr.num_edges(), n), RatMatrix(e_set.size(), n)};
  for (int j = 0; j < n; ++j) m.f.at(r.under[j], j) = 1;
  auto idx = local_index(gr, e_set);
  e_set.for_each([&](int e) { m.g.at(idx[e], r.over[e].source_half) = 1; });
  return m;
}

inline RefinementMaps maps_fE_gE(const WeightedGraph& gr, EdgeSet e_set) {
  return maps_fE_gE(gr, e_set, refine(gr, e_set));
}

// ---------------------------------------------------------------------------
// Polytope and cone predicates, all decided by exact LP.

/// p ∈ conv(points).
inline bool in_convex_hull(const std::vector<RatVector>& points, const RatVector& p) {
  if (points.empty()) return false;
  const int n = static_cast<int>(points.size()), d = static_cast<int>(p.size());
  std::vector<LinearConstraint> cons;
  for (int i = 0; i < n; ++i) {
    RatVector a(n, Rational(0));
    a[i] = 1;
    cons.push_back({a, Relation::kGreaterEq, 0});
  }
  cons.push_back({RatVector(n, Rational(1)), Relation::kEqual, 1});
  for (int k = 0; k < d; ++k) {
    RatVector a(n);
    for (int i = 0; i < n; ++i) a[i] = points[i][k];
    cons.push_back({a, Relation::kEqual, p[k]});
  }
  return lp_feasible(cons, n).has_value();
}

/// p is a convex combination of all points with strictly positive weights,
/// i.e. p lies in the relative interior of their hull.
inline bool in_relative_interior(const std::vector<RatVector>& points, const RatVector& p) {
  if (points.empty()) return false;
  const int n = static_cast<int>(points.size()), d = static_cast<int>(p.size());
  std::vector<LinearConstraint> cons;
  for (int i = 0; i < n; ++i) {
    RatVector a(n, Rational(0));
    a[i] = 1;
    cons.push_back({a, Relation::kGreaterEq, 1});
  }
  for (int k = 0; k < d; ++k) {
    RatVector a(n);
    for (int i = 0; i < n; ++i) a[i] = points[i][k] - p[k];
    cons.push_back({a, Relation::kEqual, 0});
  }
  return lp_feasible(cons, n).has_value();
}

/// v ∈ cone(rays).
inline bool in_cone(const std::vector<RatVector>& rays, const RatVector& v) {
  const int n = static_cast<int>(rays.size()), d = static_cast<int>(v.size());
  if (n == 0) return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
  std::vector<LinearConstraint> cons;
  for (int i = 0; i < n; ++i) {
    RatVector a(n, Rational(0));
    a[i] = 1;
    cons.push_back({a, Relation::kGreaterEq, 0});
  }
  for (int k = 0; k < d; ++k) {
    RatVector a(n);
    for (int i = 0; i < n; ++i) a[i] = rays[i][k];
    cons.push_back({a, Relation::kEqual, v[k]});
  }
  return lp_feasible(cons, n).has_value();
}

inline std::vector<RatVector> unique_points(std::vector<RatVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Points not in the hull of the others, in sorted order.
inline std::vector<RatVector> extreme_points(const std::vector<RatVector>& points) {
  auto pts = unique_points(points);
  std::vector<RatVector> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<RatVector> others;
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j != i) others.push_back(pts[j]);
    }
    if (!in_convex_hull(others, pts[i])) out.push_back(pts[i]);
  }
  return out;
}

/// Generators of the extreme rays, each scaled to a primitive-free canonical
/// form (first nonzero entry ±1) and sorted.
inline std::vector<RatVector> extreme_rays(const std::vector<RatVector>& rays) {
  std::vector<RatVector> normalized;
  for (auto r : rays) {
    auto it = std::find_if(r.begin(), r.end(), [](const Rational& x) { return sgn(x) != 0; });
    if (it == r.end()) continue;
    Rational s = abs(*it);
    for (auto& x : r) x /= s;
    normalized.push_back(std::move(r));
  }
  auto pts = unique_points(normalized);
  std::vector<RatVector> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<RatVector> others;
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j != i) others.push_back(pts[j]);
    }
    if (!in_cone(others, pts[i])) out.push_back(pts[i]);
  }
  return out;
}

/// Dimension of the affine hull.
inline int affine_dimension(const std::vector<RatVector>& points) {
  if (points.size() <= 1) return 0;
  std::vector<RatVector> diffs;
  for (size_t i = 1; i < points.size(); ++i) {
    RatVector d(points[i].size());
    for (size_t k = 0; k < d.size(); ++k) d[k] = points[i][k] - points[0][k];
    diffs.push_back(std::move(d));
  }
  return static_cast<int>(span_basis(diffs, static_cast<int>(points[0].size())).size());
}

inline int linear_dimension(const std::vector<RatVector>& vectors) {
  if (vectors.empty()) return 0;
  return static_cast<int>(span_basis(vectors, static_cast<int>(vectors[0].size())).size());
}

/// conv(inner) is a face of conv(outer). Requires conv(inner) ⊆ conv(outer).
/// Looks for an affine h vanishing on `inner` with h ≥ 1 on every outer
/// vertex outside conv(inner); such h cuts out exactly conv(inner).
inline bool is_face_polytope(const std::vector<RatVector>& inner, const std::vector<RatVector>& outer) {
  for (const auto& p : inner) {
    if (!in_convex_hull(outer, p)) throw Error(ErrorCode::kPrecondition, "inner polytope is not contained in outer");
  }
  if (inner.empty()) return true;
  const int d = static_cast<int>(inner[0].size());
  std::vector<LinearConstraint> cons;  // variables: c (d), c0
  auto row = [&](const RatVector& p) {
    RatVector a(d + 1);
    for (int k = 0; k < d; ++k) a[k] = p[k];
    a[d] = 1;
    return a;
  };
  for (const auto& p : inner) cons.push_back({row(p), Relation::kEqual, 0});
  for (const auto& q : outer) {
    if (!in_convex_hull(inner, q)) cons.push_back({row(q), Relation::kGreaterEq, 1});
  }
  return lp_feasible(cons, d + 1).has_value();
}

/// cone(inner) is a face of cone(outer); the linear analogue of the above.
inline bool is_face_cone(const std::vector<RatVector>& inner, const std::vector<RatVector>& outer) {
  for (const auto& r : inner) {
    if (!in_cone(outer, r)) throw Error(ErrorCode::kPrecondition, "inner cone is not contained in outer");
  }
  if (outer.empty()) return true;
  const int d = static_cast<int>(outer[0].size());
  std::vector<LinearConstraint> cons;
  for (const auto& r : inner) cons.push_back({r, Relation::kEqual, 0});
  for (const auto& r : outer) {
    if (!in_cone(inner, r)) cons.push_back({r, Relation::kGreaterEq, 1});
  }
  return lp_feasible(cons, d).has_value();
}

// ---------------------------------------------------------------------------
// Cells.

/// A polytope T_E(K) or a cone T_E(orthant) in the coordinates of a fixed
/// quotient map. `generators` are the images of the box vertices (or of the
/// coordinate rays); `vertices` keeps only the extreme ones.
struct QuotientCell {
  bool is_cone = false;
  QuotientMap quotient;
  std::vector<RatVector> generators;
  std::vector<RatVector> vertices;
  int dimension = 0;
};

inline void check_lengths(const WeightedGraph& g, const RatVector& lengths) {
  if (static_cast<int>(lengths.size()) != g.num_edges()) {
    throw Error(ErrorCode::kInvalidArgument, "one length per edge is required");
  }
  for (const auto& l : lengths) {
    if (sgn(l) <= 0) throw Error(ErrorCode::kInvalidArgument, "edge lengths must be positive");
  }
}

inline constexpr int kBoxEdgeGuard = 12;

/// The 2^|E| vertices of K = ∏_{e∈E} [0, ℓ(e)] in Q^E.
inline std::vector<RatVector> box_vertices(const WeightedGraph& g, EdgeSet e_set, const RatVector& lengths) {
  const int k = e_set.size();
  if (k > kBoxEdgeGuard) throw Error(ErrorCode::kSizeGuard, "box has too many coordinates");
  auto items = e_set.items();
  std::vector<RatVector> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    RatVector v(k, Rational(0));
    for (int i = 0; i < k; ++i) {
      if ((mask >> i) & 1u) v[i] = lengths[items[i]];
    }
    out.push_back(std::move(v));
  }
  (void)g;
  return out;
}

/// P_{E,D}(X) = T_E(K_{E,D}(X)).
inline QuotientCell cell_P(const WeightedGraph& g, const PseudoDivisor& pd, const RatVector& lengths) {
  check_pseudo_divisor(g, pd);
  check_lengths(g, lengths);
  QuotientCell c;
  c.quotient = quotient_coordinates(subspace_LE(g, pd.E), pd.E.size());
  for (const auto& v : box_vertices(g, pd.E, lengths)) c.generators.push_back(c.quotient(v));
  c.vertices = extreme_points(c.generators);
  c.dimension = affine_dimension(c.vertices);
  return c;
}

/// Image in Q^{E1} of a box point of the smaller cell, for a specialization
/// (E1, D1) ≥ (E2, D2) with the given witness: each dropped edge sits at 0
/// when its point merged into the source and at ℓ(e) when into the target.
inline RatVector embed_box_point(const WeightedGraph& g, EdgeSet e1, EdgeSet e2, const SpecializationWitness& w,
                                 const RatVector& lengths, const RatVector& point) {
  auto idx1 = local_index(g, e1);
  auto idx2 = local_index(g, e2);
  RatVector x(e1.size(), Rational(0));
  e1.for_each([&](int e) {
    if (e2.contains(e)) x[idx1[e]] = point[idx2[e]];
    else if (w.side[e] == Side::kTarget) x[idx1[e]] = lengths[e];
    else if (w.side[e] == Side::kNone) throw Error(ErrorCode::kInvalidArgument, "witness misses an edge");
  });
  return x;
}

/// The smaller cell's box vertices carried into the larger cell's quotient
/// coordinates.
inline std::vector<RatVector> embed_cell_P(const WeightedGraph& g, const PseudoDivisor& outer, const PseudoDivisor& inner,
                                           const SpecializationWitness& w, const RatVector& lengths,
                                           const QuotientCell& outer_cell) {
  std::vector<RatVector> out;
  for (const auto& v : box_vertices(g, inner.E, lengths)) {
    out.push_back(outer_cell.quotient(embed_box_point(g, outer.E, inner.E, w, lengths, v)));
  }
  return unique_points(out);
}

/// Image of the center of the smaller box: a point of the relative interior
/// of the smaller cell.
inline RatVector embedded_center(const WeightedGraph& g, const PseudoDivisor& outer, const PseudoDivisor& inner,
                                 const SpecializationWitness& w, const RatVector& lengths,
                                 const QuotientCell& outer_cell) {
  auto items = inner.E.items();
  RatVector mid(items.size());
  for (size_t i = 0; i < items.size(); ++i) mid[i] = lengths[items[i]] / 2;
  return outer_cell.quotient(embed_box_point(g, outer.E, inner.E, w, lengths, mid));
}

inline bool is_face_P(const WeightedGraph& g, const PseudoDivisor& outer, const PseudoDivisor& inner,
                      const SpecializationWitness& w, const RatVector& lengths) {
  QuotientCell oc = cell_P(g, outer, lengths);
  return is_face_polytope(embed_cell_P(g, outer, inner, w, lengths, oc), oc.vertices);
}

/// σ_{(Γ,E,D)} = T_E(Q^{E(Γ^E)}_{≥0}), with the refinement it lives on.
struct ConeCell {
  Refinement refinement;
  QuotientCell cell;
};

inline ConeCell cone_sigma(const WeightedGraph& g, const PseudoDivisor& pd) {
  check_pseudo_divisor(g, pd);
  ConeCell c{refine(g, pd.E), {}};
  const int n = c.refinement.graph.num_edges();
  c.cell.is_cone = true;
  c.cell.quotient = quotient_coordinates(subspace_ELE(g, pd.E, c.refinement), n);
  for (int j = 0; j < n; ++j) {
    RatVector u(n, Rational(0));
    u[j] = 1;
    c.cell.generators.push_back(c.cell.quotient(u));
  }
  c.cell.vertices = extreme_rays(c.cell.generators);
  c.cell.dimension = linear_dimension(c.cell.generators);
  return c;
}

/// For a morphism (Γ1, E1, D1) → (Γ2, E2, D2) realized as: contract F in Γ1,
/// then specialize (ι_*(E1), ι_*D1) ≥ (E2, D2) on Γ1/F with witness w, the
/// refined edge of Γ1^{E1} that each refined edge of (Γ1/F)^{E2} becomes.
inline std::vector<int> refined_edge_inclusion(const WeightedGraph& g1, EdgeSet e1, const Specialization& s,
                                               EdgeSet e2, const SpecializationWitness& w) {
  Refinement r1 = refine(g1, e1);
  Refinement r2 = refine(s.target, e2);
  std::vector<int> out(r2.graph.num_edges(), -1);
  for (int e2i = 0; e2i < s.target.num_edges(); ++e2i) {
    const int e = s.edge_map[e2i];
    const EdgeHalves& h1 = r1.over[e];
    const EdgeHalves& h2 = r2.over[e2i];
    if (e2.contains(e2i)) {
      if (!e1.contains(e)) throw Error(ErrorCode::kPrecondition, "target edge set is not inside the image of E1");
      out[h2.source_half] = h1.source_half;
      out[h2.target_half] = h1.target_half;
    } else if (e1.contains(e)) {
      // the half on the merging side is contracted; the other survives
      out[h2.source_half] = w.side[e2i] == Side::kSource ? h1.target_half : h1.source_half;
    } else {
      out[h2.source_half] = h1.source_half;
    }
  }
  return out;
}

/// Rays of the smaller cone in the larger cone's quotient coordinates.
inline std::vector<RatVector> embed_cone(const ConeCell& outer, const std::vector<int>& inclusion) {
  std::vector<RatVector> out;
  const int n = outer.refinement.graph.num_edges();
  for (int j : inclusion) {
    RatVector u(n, Rational(0));
    u[j] = 1;
    out.push_back(outer.cell.quotient(u));
  }
  return out;
}

inline bool is_face_sigma(const ConeCell& outer, const std::vector<int>& inclusion) {
  return is_face_cone(embed_cone(outer, inclusion), outer.cell.generators);
}

/// The projection π_E followed by the isomorphism of the quotient onto
/// Q^{E(Γ)} × Q^E/L_E: a quotient point is lifted through the complement
/// coordinates, mapped by (f_E, g_E) and reduced modulo L_E.
inline RatVector sigma_to_length_and_P(const WeightedGraph& g, const PseudoDivisor& pd, const ConeCell& c,
                                       const QuotientMap& p_quotient, const RatVector& point) {
  const int n = c.refinement.graph.num_edges();
  RatVector lift(n, Rational(0));
  for (size_t i = 0; i < c.cell.quotient.complement.size(); ++i) lift[c.cell.quotient.complement[i]] = point[i];
  RefinementMaps m = maps_fE_gE(g, pd.E, c.refinement);
  RatVector y = m.f.apply(lift);
  RatVector z = p_quotient(m.g.apply(lift));
  y.insert(y.end(), z.begin(), z.end());
  return y;
}

/// Checks that the fiber of σ over the curve with the given lengths is the
/// polytope P_{E,D}(X): the extreme points of the fiber, carried to
/// Q^{E(Γ)} × Q^E/L_E, are exactly {ℓ} × vertices(P).
inline bool fiber_matches_cell(const WeightedGraph& g, const PseudoDivisor& pd, const RatVector& lengths) {
  ConeCell c = cone_sigma(g, pd);
  QuotientCell p = cell_P(g, pd, lengths);
  const int n = c.refinement.graph.num_edges();
  auto items = pd.E.items();
  std::vector<RatVector> fiber;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
    RatVector x(n, Rational(0));
    for (int e = 0; e < g.num_edges(); ++e) {
      const EdgeHalves& h = c.refinement.over[e];
      if (h.exceptional < 0) {
        x[h.source_half] = lengths[e];
        continue;
      }
      auto pos = std::find(items.begin(), items.end(), e) - items.begin();
      Rational a = ((mask >> pos) & 1u) ? lengths[e] : Rational(0);
      x[h.source_half] = a;
      x[h.target_half] = lengths[e] - a;
    }
    fiber.push_back(c.cell.quotient(x));
  }
  std::vector<RatVector> mapped;
  for (const auto& q : extreme_points(fiber)) mapped.push_back(sigma_to_length_and_P(g, pd, c, p.quotient, q));
  std::vector<RatVector> expected;
  for (const auto& v : p.vertices) {
    RatVector y = lengths;
    y.insert(y.end(), v.begin(), v.end());
    expected.push_back(std::move(y));
  }
  return unique_points(mapped) == unique_points(expected);
}

}  // namespace tropjac
