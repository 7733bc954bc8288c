#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tropjac/jacobian.hpp"

namespace tropjac {

using Json = nlohmann::ordered_json;

// Rationals travel as strings ("3/2"); integers are also accepted on input.

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorCode::kParse, "expected a rational string, got " + j.dump());
}

inline Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline RatVector rat_vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "expected an array of rationals");
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

/// Wraps nlohmann type errors so malformed documents surface as parse errors.
template <class F>
auto guarded_parse(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

inline Json to_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.source, e.target});
  return {{"weights", g.weights()}, {"edges", edges}};
}

/// {"weights": [..], "edges": [[s, t], ..]}; "vertices": n may replace
/// "weights" for weight-zero graphs.
inline WeightedGraph graph_from_json(const Json& j) {
  return guarded_parse([&] {
    std::vector<int> weights;
    if (j.contains("weights")) {
      weights = j.at("weights").get<std::vector<int>>();
    } else {
      weights.assign(j.at("vertices").get<int>(), 0);
    }
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::kParse, "edges are [source, target] pairs");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return WeightedGraph(std::move(weights), std::move(edges));
  });
}

inline Json to_json(const TropicalCurve& x) {
  Json j = to_json(x.model);
  j["lengths"] = to_json(x.lengths);
  return j;
}

inline TropicalCurve curve_from_json(const Json& j) {
  return guarded_parse([&] { return TropicalCurve(graph_from_json(j), rat_vector_from_json(j.at("lengths"))); });
}

inline Json to_json(const Polarization& p) { return {{"mu", to_json(p.values())}}; }

inline Polarization polarization_from_json(const Json& j) {
  return guarded_parse([&] { return Polarization(rat_vector_from_json(j.at("mu"))); });
}

inline Json to_json(const PseudoDivisor& pd) { return {{"E", pd.E.items()}, {"D", pd.D}}; }

inline PseudoDivisor pseudo_divisor_from_json(const Json& j) {
  return guarded_parse([&] {
    PseudoDivisor pd;
    for (int e : j.at("E").get<std::vector<int>>()) {
      if (e < 0 || e >= EdgeSet::kCapacity) throw Error(ErrorCode::kParse, "edge index out of range");
      pd.E.insert(e);
    }
    pd.D = j.at("D").get<std::vector<int>>();
    return pd;
  });
}

inline Json to_json(const UnitaryDivisor& d) {
  Json pos = Json::object();
  d.type.E.for_each([&](int e) { pos[std::to_string(e)] = to_json(d.position[e]); });
  return {{"D", d.type.D}, {"positions", pos}};
}

/// {"D": [..], "positions": {"e": "a/b"}}: the interior points by edge index
/// and distance from the edge's source.
inline UnitaryDivisor unitary_from_json(const TropicalCurve& x, const Json& j) {
  return guarded_parse([&] {
    std::vector<std::pair<int, Rational>> points;
    if (j.contains("positions")) {
      for (const auto& [key, value] : j.at("positions").items()) {
        int e = 0;
        try {
          size_t used = 0;
          e = std::stoi(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          throw Error(ErrorCode::kParse, "position keys are edge indices, got '" + key + "'");
        }
        points.emplace_back(e, rational_from_json(value));
      }
    }
    return make_unitary(x, j.at("D").get<std::vector<int>>(), points);
  });
}

inline StabilityKind stability_kind_from_string(const std::string& s) {
  if (s == "semistable") return StabilityKind::kSemistable;
  if (s == "stable") return StabilityKind::kStable;
  if (s == "quasistable") return StabilityKind::kQuasistable;
  if (s == "polystable") return StabilityKind::kPolystable;
  throw Error(ErrorCode::kInvalidArgument, "unknown predicate '" + s + "'");
}

inline Json to_json(const Verdict& v) {
  Json j = {{"holds", v.holds}};
  if (v.witness) j["witness"] = v.witness->items();
  return j;
}

inline Json to_json(const RankReport& r) {
  return {{"ranked", r.is_ranked},
          {"length", r.length},
          {"rank_is_dimension", r.rank_is_dimension},
          {"codim1_connected", r.codim1_connected},
          {"bad_chain", r.bad_chain},
          {"witness_paths", r.witness_paths}};
}

inline Json covers_to_json(const std::vector<std::pair<int, int>>& covers) {
  Json a = Json::array();
  for (auto [u, l] : covers) a.push_back({u, l});
  return a;
}

inline Json to_json(const StabilityPoset& poset) {
  Json elements = Json::array();
  for (int i = 0; i < poset.size(); ++i) {
    Json e = to_json(poset.element(i));
    e["rank"] = poset.rank(i);
    elements.push_back(std::move(e));
  }
  return {{"elements", elements},
          {"covers", covers_to_json(poset.covers())},
          {"rank_profile", rank_profile(poset)},
          {"report", to_json(verify_ranked_and_connected(poset))}};
}

inline Json to_json(const QuotientCell& c) {
  Json verts = Json::array();
  for (const auto& v : c.vertices) verts.push_back(to_json(v));
  return {{"dimension", c.dimension},
          {"ambient", c.quotient.ambient},
          {"complement", c.quotient.complement},
          {"vertices", verts}};
}

inline Json to_json(const FaceRelation& f) {
  return {{"upper", f.upper}, {"lower", f.lower}, {"realizations", f.realizations}, {"faces", f.faces}};
}

inline Json to_json(const CellComplex& c) {
  Json cells = Json::array();
  for (int i = 0; i < c.poset.size(); ++i) {
    Json cell = to_json(c.poset.element(i));
    cell["rank"] = c.poset.rank(i);
    cell["geometry"] = to_json(c.cells[i]);
    cells.push_back(std::move(cell));
  }
  Json faces = Json::array();
  for (const auto& f : c.faces) faces.push_back(to_json(f));
  Json j = {{"curve", to_json(c.curve)},
            {"polarization", to_json(c.polarization)},
            {"kind", to_string(c.kind)}};
  if (c.kind == StabilityKind::kQuasistable) j["base"] = c.base;
  j["cells"] = cells;
  j["faces"] = faces;
  j["f_vector"] = c.f_vector();
  j["euler_characteristic"] = c.euler_characteristic();
  j["faces_verified"] = c.all_faces_verified();
  return j;
}

inline Json to_json(const UniversalComplex& u) {
  Json graphs = Json::array();
  for (size_t i = 0; i < u.base.graphs.size(); ++i) {
    Json g = to_json(u.base.graphs[i]);
    g["polarization"] = to_json(u.base.polarizations[i]);
    g["pseudo_divisors"] = u.base.objects_per_graph[i];
    graphs.push_back(std::move(g));
  }
  Json cones = Json::array();
  for (int i = 0; i < u.base.poset.size(); ++i) {
    const auto& o = u.base.poset.element(i);
    Json c = to_json(o.pd);
    c["graph"] = o.graph;
    c["orbit_size"] = o.orbit_size;
    c["dimension"] = u.base.poset.rank(i);
    c["rays"] = u.cones[i].cell.vertices.size();
    cones.push_back(std::move(c));
  }
  Json faces = Json::array();
  for (const auto& f : u.faces) faces.push_back(to_json(f));
  return {{"genus", u.base.genus},
          {"degree", u.base.degree},
          {"graphs", graphs},
          {"cones", cones},
          {"covers", covers_to_json(u.base.poset.covers())},
          {"faces", faces},
          {"f_vector", u.f_vector()},
          {"f_vector_unquotiented", u.f_vector_unquotiented()},
          {"report", to_json(verify_ranked_and_connected(u.base.poset))},
          {"faces_verified", u.all_faces_verified()}};
}

/// Hasse diagram in Graphviz syntax, top elements first.
inline std::string export_dot(const StabilityPoset& poset) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=TB;\n";
  for (int i = 0; i < poset.size(); ++i) {
    out << "  n" << i << " [label=\"" << to_string(poset.element(i)) << "\\nrk " << poset.rank(i) << "\"];\n";
  }
  for (auto [u, l] : poset.covers()) out << "  n" << u << " -> n" << l << ";\n";
  out << "}\n";
  return out.str();
}

/// Draws each top cell of a complex whose cells have dimension at most 2,
/// with the embedded lower cells outlined inside it. Coordinates are the
/// cell's quotient coordinates scaled by a fixed factor.
inline std::string export_svg(const CellComplex& c) {
  int top = 0;
  for (const auto& cell : c.cells) top = std::max(top, cell.dimension);
  if (top > 2) throw Error(ErrorCode::kPrecondition, "SVG export needs cells of dimension at most 2");
  constexpr double kScale = 80.0, kPad = 40.0;
  auto coord = [](const RatVector& v, size_t k) { return k < v.size() ? v[k].get_d() : 0.0; };
  std::ostringstream body;
  double offset = 0, height = 0;
  for (int i = 0; i < c.poset.size(); ++i) {
    if (!c.poset.upper_covers(i).empty()) continue;
    const QuotientCell& cell = c.cells[i];
    double lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
    for (size_t k = 0; k < cell.vertices.size(); ++k) {
      double x = coord(cell.vertices[k], 0), y = coord(cell.vertices[k], 1);
      if (k == 0 || x < lo_x) lo_x = x;
      if (k == 0 || y < lo_y) lo_y = y;
      if (k == 0 || x > hi_x) hi_x = x;
      if (k == 0 || y > hi_y) hi_y = y;
    }
    auto px = [&](const RatVector& v) { return offset + kPad + (coord(v, 0) - lo_x) * kScale; };
    auto py = [&](const RatVector& v) { return kPad + (hi_y - coord(v, 1)) * kScale; };
    // Order the vertices of a polygon by angle around their centroid.
    std::vector<RatVector> ring = cell.vertices;
    if (cell.dimension == 2) {
      double cx = 0, cy = 0;
      for (const auto& v : ring) cx += coord(v, 0), cy += coord(v, 1);
      cx /= ring.size();
      cy /= ring.size();
      std::sort(ring.begin(), ring.end(), [&](const RatVector& a, const RatVector& b) {
        return std::atan2(coord(a, 1) - cy, coord(a, 0) - cx) < std::atan2(coord(b, 1) - cy, coord(b, 0) - cx);
      });
    }
    body << "  <g id=\"cell" << i << "\">\n    <title>" << to_string(c.poset.element(i)) << "</title>\n";
    if (ring.size() == 1) {
      body << "    <circle cx=\"" << px(ring[0]) << "\" cy=\"" << py(ring[0]) << "\" r=\"4\"/>\n";
    } else {
      body << "    <polygon fill=\"#e8eef7\" stroke=\"#1f3b6f\" points=\"";
      for (const auto& v : ring) body << px(v) << "," << py(v) << " ";
      body << "\"/>\n";
    }
    for (int l = 0; l < c.poset.size(); ++l) {
      if (l == i || !c.poset.geq(i, l)) continue;
      const PseudoDivisor& lo = c.poset.element(l);
      for (const auto& w : all_specialization_witnesses(c.curve.model, c.poset.element(i), lo)) {
        auto pts = extreme_points(embed_cell_P(c.curve.model, c.poset.element(i), lo, w, c.curve.lengths, cell));
        if (pts.size() == 1) {
          body << "    <circle cx=\"" << px(pts[0]) << "\" cy=\"" << py(pts[0]) << "\" r=\"3\" fill=\"#b03030\"/>\n";
        } else if (pts.size() == 2) {
          body << "    <line x1=\"" << px(pts[0]) << "\" y1=\"" << py(pts[0]) << "\" x2=\"" << px(pts[1])
               << "\" y2=\"" << py(pts[1]) << "\" stroke=\"#b03030\" stroke-width=\"2\"/>\n";
        }
      }
    }
    body << "  </g>\n";
    offset += (hi_x - lo_x) * kScale + 2 * kPad;
    height = std::max(height, (hi_y - lo_y) * kScale + 2 * kPad);
  }
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << std::max(offset, 2 * kPad) << "\" height=\""
      << std::max(height, 2 * kPad) << "\">\n"
      << body.str() << "</svg>\n";
  return out.str();
}

}  // namespace tropjac
