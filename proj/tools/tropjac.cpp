// Command-line front end. Every subcommand reads JSON inputs and writes one
// JSON document (to --out or stdout).
//
// Exit codes: 0 ok, 2 usage, 3 malformed input, 4 size guard, 5 genus too
// small for the canonical polarization, 6 failed precondition, 7 any other
// domain error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tropjac/tropjac.hpp"

using namespace tropjac;

namespace {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return 3;
    case ErrorCode::kSizeGuard: return 4;
    case ErrorCode::kDegenerateGenus: return 5;
    case ErrorCode::kPrecondition: return 6;
    default: return 7;
  }
}

struct Common {
  std::string graph_path;
  std::string mu_path;
  std::optional<long> degree;
  bool uniform = false;
  std::string out_path;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << text;
}

void emit(const Common& c, const Json& j) { write_text(c.out_path, j.dump(2) + "\n"); }

Polarization polarization_for(const WeightedGraph& g, const Common& c) {
  if (!c.mu_path.empty()) return check_polarization(g, polarization_from_json(read_json_file(c.mu_path)));
  if (!c.degree) throw Error(ErrorCode::kInvalidArgument, "give --degree or --mu");
  if (c.uniform) {
    return check_polarization(g, Polarization(RatVector(g.num_vertices(), ratio(*c.degree, g.num_vertices()))));
  }
  return canonical_polarization(g, *c.degree);
}

void add_polarization_options(CLI::App* app, Common& c) {
  app->add_option("--degree,-d", c.degree, "degree d of the canonical polarization");
  app->add_option("--mu", c.mu_path, "polarization JSON {\"mu\": [..]}")->check(CLI::ExistingFile);
  app->add_flag("--uniform", c.uniform, "use μ = d/|V| on every vertex instead of the canonical polarization");
  app->add_option("--out,-o", c.out_path, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polystable pseudo-divisors and tropical Jacobian cell complexes"};
  app.require_subcommand(1);
  int guard_vertices = limits().subset_vertices;
  int guard_edges = limits().enumeration_edges;
  app.add_option("--guard-vertices", guard_vertices, "largest vertex count for subset enumeration")
      ->check(CLI::Range(1, 30));
  app.add_option("--guard-edges", guard_edges, "largest edge count for pseudo-divisor enumeration")
      ->check(CLI::Range(0, 30));

  Common c;
  std::string pd_path, predicate = "polystable", divisor_path, dot_path, svg_path;
  int base = 0, genus = 2, max_realizations = 0, max_vertices = 4, max_edges = 6;
  std::uint64_t seed = 1;
  bool quasistable = false, trace = false;

  auto* stability = app.add_subcommand("stability", "test a stability condition, reporting a violating set");
  stability->add_option("--graph,-g", c.graph_path)->required()->check(CLI::ExistingFile);
  stability->add_option("--pd", pd_path, "pseudo-divisor JSON {\"E\": [..], \"D\": [..]}")
      ->required()
      ->check(CLI::ExistingFile);
  stability->add_option("--predicate", predicate)
      ->check(CLI::IsMember({"semistable", "stable", "quasistable", "polystable"}));
  stability->add_option("--base", base, "marked vertex for quasistability");
  add_polarization_options(stability, c);

  auto* polc = app.add_subcommand("pol", "polystabilize a semistable pseudo-divisor");
  polc->add_option("--graph,-g", c.graph_path)->required()->check(CLI::ExistingFile);
  polc->add_option("--pd", pd_path)->required()->check(CLI::ExistingFile);
  polc->add_flag("--trace", trace, "include the saturation steps");
  add_polarization_options(polc, c);

  auto* lift = app.add_subcommand("lift", "quasistable lift of a polystable pseudo-divisor");
  lift->add_option("--graph,-g", c.graph_path)->required()->check(CLI::ExistingFile);
  lift->add_option("--pd", pd_path)->required()->check(CLI::ExistingFile);
  lift->add_option("--base", base, "base vertex v0");
  add_polarization_options(lift, c);

  auto* poset = app.add_subcommand("poset", "stability poset with rank and connectivity report");
  poset->add_option("--graph,-g", c.graph_path)->required()->check(CLI::ExistingFile);
  poset->add_option("--predicate", predicate)
      ->check(CLI::IsMember({"semistable", "stable", "quasistable", "polystable"}));
  poset->add_option("--base", base, "marked vertex for quasistability");
  poset->add_option("--dot", dot_path, "also write the Hasse diagram in Graphviz syntax");
  add_polarization_options(poset, c);

  auto* jac = app.add_subcommand("jacobian", "polyhedral decomposition of the Jacobian of a curve");
  jac->add_option("--curve,-c", c.graph_path, "curve JSON: graph plus \"lengths\"")
      ->required()
      ->check(CLI::ExistingFile);
  jac->add_flag("--quasistable", quasistable, "boxes over quasistable pseudo-divisors");
  jac->add_option("--basepoint", base, "base vertex for --quasistable");
  jac->add_option("--svg", svg_path, "draw the complex when its cells have dimension at most 2");
  add_polarization_options(jac, c);

  auto* uni = app.add_subcommand("universal", "universal cone complex over stable graphs of genus 2 or 3");
  uni->add_option("--genus", genus)->required();
  uni->add_option("--degree,-d", c.degree)->required();
  uni->add_option("--max-realizations", max_realizations, "face checks per cover (0 = all)");
  uni->add_option("--out,-o", c.out_path);

  auto* loc = app.add_subcommand("locate", "cell and quotient coordinates of a divisor class");
  loc->add_option("--curve,-c", c.graph_path)->required()->check(CLI::ExistingFile);
  loc->add_option("--divisor", divisor_path, "divisor JSON {\"D\": [..], \"positions\": {\"e\": \"a/b\"}}")
      ->required()
      ->check(CLI::ExistingFile);
  add_polarization_options(loc, c);

  auto* corpus = app.add_subcommand("corpus", "list the test corpus of graphs and polarizations");
  corpus->add_option("--max-vertices", max_vertices)->check(CLI::Range(1, 6));
  corpus->add_option("--max-edges", max_edges)->check(CLI::Range(0, 8));
  corpus->add_option("--seed", seed);
  corpus->add_option("--out,-o", c.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    limits().subset_vertices = guard_vertices;
    limits().enumeration_edges = guard_edges;

    if (*stability) {
      WeightedGraph g = graph_from_json(read_json_file(c.graph_path));
      Polarization p = polarization_for(g, c);
      PseudoDivisor pd = pseudo_divisor_from_json(read_json_file(pd_path));
      check_pseudo_divisor(g, pd);
      check_degrees(g, pd, p);
      StabilityKind kind = stability_kind_from_string(predicate);
      Json j = to_json(check_stability(g, pd, p, kind, base));
      j["predicate"] = predicate;
      j["rank"] = rank(g, pd);
      emit(c, j);
    } else if (*polc) {
      WeightedGraph g = graph_from_json(read_json_file(c.graph_path));
      Polarization p = polarization_for(g, c);
      PseudoDivisor pd = pseudo_divisor_from_json(read_json_file(pd_path));
      check_pseudo_divisor(g, pd);
      check_degrees(g, pd, p);
      PolTrace t;
      Json j = to_json(pol(g, pd, p, {}, &t));
      if (trace) {
        Json steps = Json::array();
        for (size_t i = 0; i < t.chosen.size(); ++i) {
          steps.push_back({{"saturated", t.chosen[i].items()}, {"result", to_json(t.steps[i + 1])}});
        }
        j["steps"] = steps;
      }
      emit(c, j);
    } else if (*lift) {
      WeightedGraph g = graph_from_json(read_json_file(c.graph_path));
      Polarization p = polarization_for(g, c);
      PseudoDivisor pd = pseudo_divisor_from_json(read_json_file(pd_path));
      check_pseudo_divisor(g, pd);
      check_degrees(g, pd, p);
      emit(c, to_json(quasistable_lift(g, pd, p, base)));
    } else if (*poset) {
      WeightedGraph g = graph_from_json(read_json_file(c.graph_path));
      Polarization p = polarization_for(g, c);
      StabilityPoset ps = build_poset(g, p, stability_kind_from_string(predicate), base);
      if (!dot_path.empty()) write_text(dot_path, export_dot(ps));
      Json j = to_json(ps);
      j["polarization"] = to_json(p);
      emit(c, j);
    } else if (*jac) {
      TropicalCurve x = curve_from_json(read_json_file(c.graph_path));
      Polarization p = polarization_for(x.model, c);
      CellComplex cx = quasistable ? build_jacobian_quasistable(x, p, base) : build_jacobian_polystable(x, p);
      if (!svg_path.empty()) write_text(svg_path, export_svg(cx));
      emit(c, to_json(cx));
    } else if (*uni) {
      emit(c, to_json(build_universal(genus, *c.degree, max_realizations)));
    } else if (*loc) {
      TropicalCurve x = curve_from_json(read_json_file(c.graph_path));
      Polarization p = polarization_for(x.model, c);
      UnitaryDivisor d = unitary_from_json(x, read_json_file(divisor_path));
      CellComplex cx = build_jacobian_polystable(x, p);
      Location l = locate(cx, d);
      emit(c, {{"cell", l.cell},
               {"type", to_json(l.polystable.type)},
               {"coordinates", to_json(l.coordinates)},
               {"polystable", to_json(l.polystable)}});
    } else if (*corpus) {
      Json a = Json::array();
      for (const auto& inst : generate_corpus(max_vertices, max_edges, seed)) {
        Json j = to_json(inst.curve);
        j["name"] = inst.name;
        j["degree"] = inst.degree;
        j["polarization"] = to_json(inst.polarization);
        a.push_back(std::move(j));
      }
      emit(c, a);
    }
  } catch (const Error& e) {
    std::cerr << "tropjac: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  }
  return 0;
}
