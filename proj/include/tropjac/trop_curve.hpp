#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "tropjac/geometry.hpp"
#include "tropjac/polystab.hpp"

namespace tropjac {

/// A metric graph with vertex weights, presented by a model and one positive
/// rational length per edge. Polarizations on the curve are given on the
/// model vertices.
struct TropicalCurve {
  WeightedGraph model;
  RatVector lengths;

  TropicalCurve() = default;
  TropicalCurve(WeightedGraph g, RatVector l) : model(std::move(g)), lengths(std::move(l)) {
    check_lengths(model, lengths);
  }

  int genus() const { return model.genus(); }
  const Rational& length(int e) const { return lengths.at(e); }

  friend bool operator==(const TropicalCurve&, const TropicalCurve&) = default;
};

/// A divisor with values D on the model vertices and value −1 at one interior
/// point of each edge of E; `position[e]` is that point's distance from s(e),
/// and is ignored for edges outside E.
struct UnitaryDivisor {
  PseudoDivisor type;
  RatVector position;

  long degree() const { return type.degree(); }

  friend bool operator==(const UnitaryDivisor&, const UnitaryDivisor&) = default;
};

inline void check_unitary(const TropicalCurve& x, const UnitaryDivisor& d) {
  check_pseudo_divisor(x.model, d.type);
  if (static_cast<int>(d.position.size()) != x.model.num_edges()) {
    throw Error(ErrorCode::kInvalidArgument, "one position slot per edge is required");
  }
  d.type.E.for_each([&](int e) {
    if (sgn(d.position[e]) <= 0 || d.position[e] >= x.length(e)) {
      throw Error(ErrorCode::kInvalidArgument, "position on edge " + std::to_string(e) + " is not interior");
    }
  });
  for (int e = 0; e < x.model.num_edges(); ++e) {
    if (!d.type.E.contains(e) && sgn(d.position[e]) != 0) {
      throw Error(ErrorCode::kInvalidArgument, "position given on an edge without an interior point");
    }
  }
}

/// Builds a unitary divisor from vertex values and interior points given as
/// (edge, distance from source).
inline UnitaryDivisor make_unitary(const TropicalCurve& x, std::vector<int> values,
                                   const std::vector<std::pair<int, Rational>>& points) {
  UnitaryDivisor d{{EdgeSet{}, std::move(values)}, RatVector(x.model.num_edges(), Rational(0))};
  for (const auto& [e, a] : points) {
    x.model.check_edges(EdgeSet::single(e));
    if (d.type.E.contains(e)) throw Error(ErrorCode::kInvalidArgument, "two interior points on one edge");
    d.type.E.insert(e);
    d.position[e] = a;
  }
  check_unitary(x, d);
  return d;
}

/// (E, D): the edges carrying an interior point and the vertex values.
inline PseudoDivisor combinatorial_type(const UnitaryDivisor& d) { return d.type; }

/// The point of K_{E,D}(X) ⊂ Q^E corresponding to the divisor.
inline RatVector box_point(const TropicalCurve& x, const UnitaryDivisor& d) {
  check_unitary(x, d);
  RatVector u;
  d.type.E.for_each([&](int e) { u.push_back(d.position[e]); });
  return u;
}

/// A sum Σ_{e∈E} (p_e − q_e) of interior points, recorded by the signed
/// displacement of p_e from q_e along each edge's orientation.
struct EDifference {
  EdgeSet E;
  RatVector displacement;  // per edge of the model, zero outside E

  friend bool operator==(const EDifference&, const EDifference&) = default;
};

/// d1 − d2 for two divisors of one combinatorial type.
inline EDifference difference(const TropicalCurve& x, const UnitaryDivisor& d1, const UnitaryDivisor& d2) {
  check_unitary(x, d1);
  check_unitary(x, d2);
  if (d1.type != d2.type) throw Error(ErrorCode::kPrecondition, "divisors have different combinatorial types");
  EDifference u{d1.type.E, RatVector(x.model.num_edges(), Rational(0))};
  d1.type.E.for_each([&](int e) { u.displacement[e] = d1.position[e] - d2.position[e]; });
  return u;
}

inline bool is_principal(const WeightedGraph& g, const EDifference& u) {
  if (static_cast<int>(u.displacement.size()) != g.num_edges()) {
    throw Error(ErrorCode::kInvalidArgument, "one displacement per edge is required");
  }
  RatVector local;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (u.E.contains(e)) local.push_back(u.displacement[e]);
    else if (sgn(u.displacement[e]) != 0) return false;
  }
  if (local.empty()) return true;
  return span_membership(subspace_LE(g, u.E), local);
}

/// Shifts every interior point by its displacement. Throws kCellExit when a
/// point would reach a vertex.
inline UnitaryDivisor move_by_principal(const TropicalCurve& x, const UnitaryDivisor& d, const EDifference& u) {
  check_unitary(x, d);
  if (!u.E.is_subset_of(d.type.E)) throw Error(ErrorCode::kPrecondition, "displacement leaves the divisor's edges");
  if (!is_principal(x.model, u)) throw Error(ErrorCode::kPrecondition, "displacement is not principal");
  UnitaryDivisor out = d;
  d.type.E.for_each([&](int e) {
    out.position[e] += u.displacement[e];
    if (sgn(out.position[e]) <= 0 || out.position[e] >= x.length(e)) {
      throw Error(ErrorCode::kCellExit, "point on edge " + std::to_string(e) + " leaves the edge interior");
    }
  });
  return out;
}

/// Among violating sets, one whose cut is minimal by inclusion among the
/// violating cuts; smallest bitmask on ties.
inline VertexSet minimal_violating_cut(const WeightedGraph& g, const std::vector<VertexSet>& violations) {
  for (VertexSet v : violations) {
    EdgeSet c = g.cut(v);
    bool minimal = std::none_of(violations.begin(), violations.end(), [&](VertexSet w) {
      EdgeSet cw = g.cut(w);
      return cw != c && cw.is_subset_of(c);
    });
    if (minimal) return v;
  }
  return violations.front();
}

/// One step of the on-curve saturation along V: every cut edge gets its −1
/// moved (or created) r/2 further from V, where r is the shortest remaining
/// distance from a cut point to the far endpoint. Vertex values change as in
/// saturate().
inline UnitaryDivisor saturate_on_curve(const TropicalCurve& x, const UnitaryDivisor& d, const Polarization& p,
                                        VertexSet vs) {
  const WeightedGraph& g = x.model;
  UnitaryDivisor out{saturate(g, d.type, p, vs), d.position};
  EdgeSet c = g.cut(vs);
  auto start = [&](int e) -> Rational {
    if (d.type.E.contains(e)) return d.position[e];
    return vs.contains(g.edge(e).source) ? Rational(0) : x.length(e);
  };
  auto remaining = [&](int e) -> Rational {
    return vs.contains(g.edge(e).source) ? x.length(e) - start(e) : start(e);
  };
  Rational r = -1;
  c.for_each([&](int e) {
    Rational m = remaining(e);
    if (r < 0 || m < r) r = m;
  });
  c.for_each([&](int e) {
    Rational step = r / 2;
    out.position[e] = vs.contains(g.edge(e).source) ? Rational(start(e) + step) : Rational(start(e) - step);
  });
  check_unitary(x, out);
  return out;
}

/// An equivalent polystable unitary divisor, reached by saturating violating
/// sets with inclusion-minimal cuts. The type of the result is pol(type(d)).
inline UnitaryDivisor polystabilize_on_curve(const TropicalCurve& x, const UnitaryDivisor& d, const Polarization& p,
                                             std::vector<VertexSet>* steps = nullptr) {
  check_unitary(x, d);
  check_degrees(x.model, d.type, p);
  BetaTable table(x.model, p);
  UnitaryDivisor cur = d;
  std::vector<long long> scaled;
  table.evaluate(cur.type, scaled);
  if (!check_stability(table, cur.type, StabilityKind::kSemistable, scaled).holds) {
    throw Error(ErrorCode::kNotSemistable, "divisor is not semistable");
  }
  for (;;) {
    auto violations = polystability_violations(table, cur.type);
    if (violations.empty()) return cur;
    VertexSet v = minimal_violating_cut(x.model, violations);
    if (steps) steps->push_back(v);
    cur = saturate_on_curve(x, cur, p, v);
  }
}

/// Linear equivalence of unitary divisors. Same-type pairs are decided by
/// L_E membership of the difference; otherwise both are polystabilized and
/// compared, since equivalent polystable divisors share a type.
inline bool equivalent(const TropicalCurve& x, const UnitaryDivisor& d1, const UnitaryDivisor& d2,
                       const Polarization& p) {
  check_unitary(x, d1);
  check_unitary(x, d2);
  if (d1.degree() != d2.degree()) throw Error(ErrorCode::kDegreeMismatch, "divisors have different degrees");
  if (d1.type == d2.type) return is_principal(x.model, difference(x, d1, d2));
  UnitaryDivisor a = polystabilize_on_curve(x, d1, p);
  UnitaryDivisor b = polystabilize_on_curve(x, d2, p);
  if (a.type != b.type) return false;
  return is_principal(x.model, difference(x, a, b));
}

}  // namespace tropjac
