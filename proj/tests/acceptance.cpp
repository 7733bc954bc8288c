// End-to-end acceptance run: one PASS/FAIL line per criterion with timing.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tropjac/tropjac.hpp"

using namespace tropjac;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

const Polarization theta_mu = Polarization({ratio(-1, 2), ratio(-1, 2)});

std::string vec_str(const std::vector<int>& v) {
  std::ostringstream s;
  s << "(";
  for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ")";
  return s.str();
}

// Orbits of a set of pseudo-divisors under the given isomorphisms.
int orbit_count(const std::vector<PseudoDivisor>& xs, const std::vector<GraphIsomorphism>& group) {
  std::set<PseudoDivisor> seen;
  int orbits = 0;
  for (const auto& x : xs) {
    if (seen.count(x)) continue;
    ++orbits;
    for (const auto& iso : group) seen.insert(apply_isomorphism(iso, x));
  }
  return orbits;
}

// Stable graphs by exhaustive generation, deduplicated by pairwise
// isomorphism tests instead of canonical codes.
std::vector<WeightedGraph> stable_graphs_pairwise(int genus) {
  std::vector<WeightedGraph> out;
  for (int n = 1; n <= 2 * genus - 2; ++n) {
    for (int m = 0; m <= 3 * genus - 3; ++m) {
      const int b1 = m - n + 1;
      if (b1 < 0 || b1 > genus) continue;
      for (const auto& bare : connected_multigraphs(n, m)) {
        std::vector<int> w(n, 0);
        std::function<void(int, int)> spread = [&](int v, int left) {
          if (v == n) {
            if (left != 0) return;
            WeightedGraph g(w, bare.edges());
            if (!g.is_stable()) return;
            for (const auto& h : out) {
              if (are_isomorphic(g, h)) return;
            }
            out.push_back(g);
            return;
          }
          for (int x = 0; x <= left; ++x) {
            w[v] = x;
            spread(v + 1, left - x);
          }
        };
        spread(0, genus - b1);
      }
    }
  }
  return out;
}

}  // namespace

int main() {
  const auto corpus = generate_corpus(4, 6, 1);
  std::printf("corpus: %zu instances\n", corpus.size());

  criterion(1, "theta polystable poset", [] {
    WeightedGraph g = fixtures::theta();
    StabilityPoset ps = build_poset(g, theta_mu, StabilityKind::kPolystable);
    auto all_isos = isomorphisms(g, g);
    std::vector<GraphIsomorphism> vertex_fixing;
    for (const auto& iso : all_isos) {
      if (iso.vertex_map == std::vector<int>{0, 1}) vertex_fixing.push_back(iso);
    }
    const int classes = orbit_count(ps.elements(), vertex_fixing);
    const int full = orbit_count(ps.elements(), all_isos);
    bool pass = ps.size() == 6 && rank_profile(ps) == std::vector<int>{2, 3, 1} && classes == 4;
    return Outcome{pass, "size " + std::to_string(ps.size()) + ", profile " + vec_str(rank_profile(ps)) + ", " +
                             std::to_string(classes) + " classes under edge permutations (" + std::to_string(full) +
                             " under all automorphisms)"};
  });

  criterion(2, "pol of (empty,(1,-2))", [] {
    WeightedGraph g = fixtures::theta();
    PseudoDivisor out = pol(g, {EdgeSet{}, {1, -2}}, theta_mu);
    return Outcome{out == PseudoDivisor{g.all_edges(), {1, 1}}, "got " + to_string(out)};
  });

  criterion(3, "hexagon cell", [] {
    TropicalCurve x = fixtures::theta_curve();
    QuotientCell hex = cell_P(x.model, {x.model.all_edges(), {1, 1}}, x.lengths);
    int edges = 0, vertices = 0;
    for (size_t i = 0; i < hex.vertices.size(); ++i) {
      vertices += is_face_polytope({hex.vertices[i]}, hex.vertices);
      for (size_t j = i + 1; j < hex.vertices.size(); ++j) {
        edges += is_face_polytope({hex.vertices[i], hex.vertices[j]}, hex.vertices);
      }
    }
    CellComplex c = build_jacobian_polystable(x, theta_mu);
    bool pass = hex.vertices.size() == 6 && hex.dimension == 2 && edges == 6 && vertices == 6 &&
                c.f_vector() == std::vector<int>{2, 3, 1} && c.euler_characteristic() == 0 && c.all_faces_verified();
    return Outcome{pass, std::to_string(hex.vertices.size()) + " extreme points, dim " +
                             std::to_string(hex.dimension) + ", " + std::to_string(edges) + " edges, " +
                             std::to_string(vertices) + " vertices; complex " + vec_str(c.f_vector()) +
                             ", chi " + std::to_string(c.euler_characteristic())};
  });

  criterion(4, "Euler characteristic", [&] {
    int checked = 0, bad = 0;
    std::string first_bad;
    for (const auto& inst : corpus) {
      const WeightedGraph& g = inst.graph();
      StabilityPoset ps = build_poset(g, inst.polarization, StabilityKind::kPolystable);
      long chi = 0;
      for (int r : ps.ranks()) chi += r % 2 == 0 ? 1 : -1;
      const long expected = g.b1() >= 1 ? 0 : 1;
      ++checked;
      if (chi != expected) {
        if (bad++ == 0) first_bad = inst.name;
      }
    }
    return Outcome{bad == 0, std::to_string(checked) + " instances, " + std::to_string(bad) + " mismatches " + first_bad};
  });

  criterion(5, "pol independent of order", [&] {
    std::mt19937 rng(5);
    long elements = 0, bad = 0;
    for (const auto& inst : corpus) {
      const WeightedGraph& g = inst.graph();
      const Polarization& p = inst.polarization;
      for (const auto& pd : enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable)) {
        ++elements;
        PseudoDivisor first = pol(g, pd, p);
        bool ok = pol(g, first, p) == first && specializes(g, first, pd);
        for (int k = 0; k < 20 && ok; ++k) {
          ok = pol(g, pd, p, [&](const std::vector<VertexSet>& v) { return v[rng() % v.size()]; }) == first;
        }
        bad += !ok;
      }
    }
    return Outcome{bad == 0, std::to_string(elements) + " semistable elements x 20 orders, " + std::to_string(bad) +
                                 " failures"};
  });

  criterion(6, "quasistable lift round trip", [&] {
    long checked = 0, bad = 0;
    for (const auto& inst : corpus) {
      const WeightedGraph& g = inst.graph();
      const Polarization& p = inst.polarization;
      for (const auto& pd : enumerate_pseudo_divisors(g, p, StabilityKind::kPolystable)) {
        for (int v0 = 0; v0 < g.num_vertices(); ++v0) {
          PseudoDivisor l = quasistable_lift(g, pd, p, v0);
          ++checked;
          bad += !(pol(g, l, p) == pd && rank(g, l) == rank(g, pd) && is_quasistable(g, l, p, v0).holds);
        }
      }
    }
    return Outcome{bad == 0, std::to_string(checked) + " (element, base) pairs, " + std::to_string(bad) + " failures"};
  });

  criterion(7, "ranked and connected", [&] {
    int bad = 0;
    for (const auto& inst : corpus) {
      RankReport r = verify_ranked_and_connected(build_poset(inst.graph(), inst.polarization, StabilityKind::kPolystable));
      bad += !(r.is_ranked && r.length == inst.graph().b1() && r.codim1_connected);
    }
    const size_t oracle_graphs = stable_graphs_pairwise(2).size();
    const size_t graphs = stable_graphs(2).size();
    UniversalPoset u = build_universal_poset(2, 1);
    RankReport ur = verify_ranked_and_connected(u.poset);
    bool pass = bad == 0 && oracle_graphs == 7 && graphs == 7 && ur.is_ranked && ur.length == 5 && ur.codim1_connected;
    return Outcome{pass, std::to_string(bad) + " corpus failures; genus 2: " + std::to_string(graphs) +
                             " stable graphs (oracle " + std::to_string(oracle_graphs) + "), " +
                             std::to_string(u.poset.size()) + " classes, length " + std::to_string(ur.length) +
                             (ur.codim1_connected ? ", connected" : ", NOT connected")};
  });

  criterion(8, "equivalence laws", [&] {
    std::mt19937 rng(8);
    std::vector<const CorpusInstance*> pool;
    for (const auto& inst : corpus) {
      if (inst.graph().num_edges() <= 5) pool.push_back(&inst);
    }
    int bad = 0, moves = 0, cross = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const CorpusInstance& inst = *pool[rng() % pool.size()];
      const TropicalCurve& x = inst.curve;
      const WeightedGraph& g = x.model;
      const Polarization& p = inst.polarization;
      auto ss = enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable);
      UnitaryDivisor d = oracle::random_unitary(x, ss[rng() % ss.size()], rng);
      UnitaryDivisor ps = polystabilize_on_curve(x, d, p);
      bool ok = is_polystable(g, ps.type, p).holds && oracle::equivalent(x, d, ps) && equivalent(x, d, ps, p);
      // a principal move keeps the type
      auto basis = subspace_LE(g, ps.type.E);
      if (!basis.empty()) {
        EDifference u{ps.type.E, RatVector(g.num_edges(), Rational(0))};
        auto items = ps.type.E.items();
        Rational c = ratio(static_cast<long>(rng() % 7) - 3, 64);
        for (size_t k = 0; k < items.size(); ++k) u.displacement[items[k]] = c * basis[0][k];
        try {
          UnitaryDivisor moved = move_by_principal(x, ps, u);
          ++moves;
          ok = ok && moved.type == ps.type && oracle::equivalent(x, ps, moved) && equivalent(x, ps, moved, p);
        } catch (const Error& e) {
          ok = ok && e.code() == ErrorCode::kCellExit;
        }
      }
      // a polystable divisor of another type is never equivalent
      auto all_ps = enumerate_pseudo_divisors(g, p, StabilityKind::kPolystable);
      const PseudoDivisor& other = all_ps[rng() % all_ps.size()];
      if (other != ps.type) {
        ++cross;
        UnitaryDivisor o = oracle::random_unitary(x, other, rng);
        ok = ok && !oracle::equivalent(x, ps, o) && !equivalent(x, ps, o, p);
      }
      bad += !ok;
    }
    return Outcome{bad == 0, "1000 trials, " + std::to_string(moves) + " principal moves, " + std::to_string(cross) +
                                 " cross-type pairs, " + std::to_string(bad) + " failures"};
  });

  criterion(9, "linear algebra identities", [&] {
    long pairs = 0, bad = 0;
    std::set<std::vector<int>> seen;
    for (const auto& inst : corpus) {
      const WeightedGraph& g = inst.graph();
      if (!seen.insert(canonical_code(g)).second) continue;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << g.num_edges()); ++bits) {
        EdgeSet e(bits);
        ++pairs;
        auto a = subspace_LE_from_components(g, e);
        auto b = subspace_LE_from_cycles(g, e);
        bool ok = a == b && static_cast<int>(a.size()) == g.b0(e) - g.b0();
        Refinement r = refine(g, e);
        RefinementMaps m = maps_fE_gE(g, e, r);
        ok = ok && matrix_rank(m.joint()) == r.graph.num_edges();
        std::vector<RatVector> images;
        for (const auto& w : subspace_ELE(g, e, r)) {
          RatVector y = m.f.apply(w);
          ok = ok && std::all_of(y.begin(), y.end(), [](const Rational& q) { return q == 0; });
          images.push_back(m.g.apply(w));
        }
        ok = ok && same_span(images, a, e.size()) && images.size() == a.size();
        bad += !ok;
      }
    }
    return Outcome{bad == 0, std::to_string(pairs) + " (graph, E) pairs, " + std::to_string(bad) + " failures"};
  });

  criterion(10, "face dichotomy", [&] {
    int covers = 0, cover_bad = 0, degenerate = 0, degenerate_bad = 0, bridge_only = 0;
    for (const auto& inst : corpus) {
      if (inst.graph().num_edges() > 5) continue;
      const TropicalCurve& x = inst.curve;
      const WeightedGraph& g = x.model;
      const Polarization& p = inst.polarization;
      CellComplex c = build_jacobian_polystable(x, p);
      for (const auto& f : c.faces) {
        ++covers;
        cover_bad += !f.verified();
      }
      bool is_degenerate = false, found_non_face = false;
      for (const auto& pd : enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable)) {
        if (is_polystable(g, pd, p).holds) continue;
        PolTrace t;
        PseudoDivisor up = pol(g, pd, p, {}, &t);
        // saturating bridges only leaves the cell unchanged
        if (rank(g, pd) == rank(g, up)) {
          ++bridge_only;
          continue;
        }
        is_degenerate = true;
        const QuotientCell& cell = c.cells[c.index_of(up)];
        auto inner = embed_cell_P(g, up, pd, saturation_witness(g, t), x.lengths, cell);
        if (!is_face_polytope(inner, cell.vertices)) {
          found_non_face = true;
          break;
        }
      }
      if (is_degenerate) {
        ++degenerate;
        degenerate_bad += !found_non_face;
      }
    }
    UniversalComplex u = build_universal(2, 1);
    int cone_covers = static_cast<int>(u.faces.size());
    bool pass = cover_bad == 0 && degenerate_bad == 0 && u.all_faces_verified();
    return Outcome{pass, std::to_string(covers) + " polystable covers (" + std::to_string(cover_bad) + " bad), " +
                             std::to_string(degenerate) + " degenerate instances (" + std::to_string(degenerate_bad) +
                             " without a non-face), " + std::to_string(bridge_only) +
                             " bridge-only containments, " + std::to_string(cone_covers) + " genus-2 cone covers" +
                             (u.all_faces_verified() ? " verified" : " NOT verified")};
  });

  criterion(11, "refinement", [&] {
    int maps = 0, bad = 0;
    {
      TropicalCurve x = fixtures::theta_curve();
      CellComplex coarse = build_jacobian_polystable(x, theta_mu);
      for (int v0 = 0; v0 < 2; ++v0) {
        ++maps;
        bad += !refinement_map(build_jacobian_quasistable(x, theta_mu, v0), coarse).sound(coarse);
      }
    }
    for (const auto& inst : corpus) {
      if (inst.graph().num_edges() > 5) continue;
      CellComplex coarse = build_jacobian_polystable(inst.curve, inst.polarization);
      CellComplex fine = build_jacobian_quasistable(inst.curve, inst.polarization, 0);
      ++maps;
      bad += !refinement_map(fine, coarse).sound(coarse);
    }
    return Outcome{bad == 0, std::to_string(maps) + " refinement maps, " + std::to_string(bad) + " unsound"};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
