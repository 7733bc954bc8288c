// Randomized invariants over generated graphs, polarizations and divisors.
// Each property runs a fixed number of seeded trials so failures reproduce.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "tropjac/corpus.hpp"
#include "tropjac/jacobian.hpp"

using namespace tropjac;

namespace {

struct Gen {
  std::mt19937 rng;

  explicit Gen(unsigned seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  // Connected: a random spanning tree first, then extra edges and loops.
  WeightedGraph graph(int max_vertices = 4, int max_edges = 6) {
    const int n = uniform(1, max_vertices);
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({uniform(0, v - 1), v});
    const int extra = uniform(0, std::max(0, max_edges - (n - 1)));
    for (int k = 0; k < extra; ++k) edges.push_back({uniform(0, n - 1), uniform(0, n - 1)});
    std::shuffle(edges.begin(), edges.end(), rng);
    for (auto& e : edges) {
      if (uniform(0, 1)) std::swap(e.source, e.target);
    }
    std::vector<int> w(n);
    for (auto& x : w) x = uniform(0, 3) == 0 ? 1 : 0;
    return WeightedGraph(w, edges);
  }

  // Values k/6 with an integral total; degenerate choices are common.
  Polarization polarization(const WeightedGraph& g) {
    const int n = g.num_vertices();
    const long d = uniform(-2, 2);
    RatVector mu(n);
    Rational sum = 0;
    for (int v = 0; v + 1 < n; ++v) {
      mu[v] = ratio(uniform(-6, 6), uniform(0, 1) ? 2 : 6);
      sum += mu[v];
    }
    mu[n - 1] = Rational(d) - sum;
    return Polarization(mu);
  }

  TropicalCurve curve(const WeightedGraph& g) {
    RatVector l;
    for (int e = 0; e < g.num_edges(); ++e) l.push_back(ratio(uniform(1, 8), uniform(1, 4)));
    return TropicalCurve(g, l);
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[rng() % v.size()];
  }
};

constexpr int kTrials = 60;

}  // namespace

TEST(Property, PolIsIndependentOfTheChoiceOrder) {
  Gen gen(101);
  for (int t = 0; t < kTrials; ++t) {
    WeightedGraph g = gen.graph();
    Polarization p = gen.polarization(g);
    auto ss = enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable);
    for (const auto& pd : ss) {
      PseudoDivisor first = pol(g, pd, p);
      for (int order = 0; order < 5; ++order) {
        ViolationChooser random_choice = [&](const std::vector<VertexSet>& v) { return gen.pick(v); };
        EXPECT_EQ(pol(g, pd, p, random_choice), first) << describe(g) << " " << to_string(pd);
      }
      EXPECT_EQ(pol(g, first, p), first);
      EXPECT_TRUE(specializes(g, first, pd));
      EXPECT_TRUE(is_polystable(g, first, p).holds);
    }
  }
}

TEST(Property, SaturationSplitsAComponent) {
  // rank can stall when the saturated cut is a bridge; the component count
  // of the graph minus E cannot
  Gen gen(102);
  for (int t = 0; t < kTrials; ++t) {
    WeightedGraph g = gen.graph();
    Polarization p = gen.polarization(g);
    for (const auto& pd : enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable)) {
      PolTrace trace;
      pol(g, pd, p, {}, &trace);
      EXPECT_LE(trace.chosen.size(), static_cast<size_t>(g.num_vertices() - 1));
      for (size_t i = 0; i + 1 < trace.steps.size(); ++i) {
        EXPECT_LT(g.b0(trace.steps[i].E), g.b0(trace.steps[i + 1].E)) << describe(g) << " " << to_string(pd);
        EXPECT_LE(rank(g, trace.steps[i]), rank(g, trace.steps[i + 1]));
        EXPECT_TRUE(is_semistable(g, trace.steps[i + 1], p).holds);
      }
    }
  }
}

TEST(Property, LiftRoundTrip) {
  Gen gen(103);
  for (int t = 0; t < kTrials; ++t) {
    WeightedGraph g = gen.graph();
    Polarization p = gen.polarization(g);
    for (const auto& pd : enumerate_pseudo_divisors(g, p, StabilityKind::kPolystable)) {
      const int v0 = gen.uniform(0, g.num_vertices() - 1);
      PseudoDivisor lifted = quasistable_lift(g, pd, p, v0);
      EXPECT_TRUE(is_quasistable(g, lifted, p, v0).holds) << describe(g) << " " << to_string(pd);
      EXPECT_EQ(rank(g, lifted), rank(g, pd));
      EXPECT_EQ(pol(g, lifted, p), pd);
    }
  }
}

TEST(Property, PolystablePosetsAreRankedAndConnected) {
  Gen gen(104);
  for (int t = 0; t < kTrials; ++t) {
    WeightedGraph g = gen.graph();
    Polarization p = gen.polarization(g);
    StabilityPoset ps = build_poset(g, p, StabilityKind::kPolystable);
    RankReport r = verify_ranked_and_connected(ps);
    EXPECT_TRUE(r.is_ranked) << describe(g);
    EXPECT_EQ(r.length, g.b1()) << describe(g);
    EXPECT_TRUE(r.codim1_connected) << describe(g);
    for (int m : ps.maximal_elements()) EXPECT_EQ(ps.rank(m), g.b1());
  }
}

TEST(Property, QuasistableSitsUnderMaximalRank) {
  Gen gen(105);
  for (int t = 0; t < kTrials; ++t) {
    WeightedGraph g = gen.graph();
    Polarization p = gen.polarization(g);
    const int v0 = gen.uniform(0, g.num_vertices() - 1);
    auto qs = enumerate_pseudo_divisors(g, p, StabilityKind::kQuasistable, v0);
    std::vector<PseudoDivisor> top;
    for (const auto& x : qs) {
      if (rank(g, x) == g.b1()) top.push_back(x);
    }
    for (const auto& x : qs) {
      bool covered = std::any_of(top.begin(), top.end(), [&](const PseudoDivisor& y) { return specializes(g, y, x); });
      EXPECT_TRUE(covered) << describe(g) << " " << to_string(x);
    }
  }
}

TEST(Property, SemistabilitySurvivesContraction) {
  Gen gen(106);
  for (int t = 0; t < kTrials; ++t) {
    WeightedGraph g = gen.graph();
    Polarization p = gen.polarization(g);
    auto ss = enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable);
    EdgeSet f(gen.rng() & ((std::uint64_t{1} << g.num_edges()) - 1));
    Specialization s = contract(g, f);
    Polarization q = pushforward_polarization(s, p);
    for (const auto& pd : ss) {
      PseudoDivisor image = pushforward_pd(s, pd);
      EXPECT_EQ(image.degree(), pd.degree());
      EXPECT_TRUE(is_semistable(s.target, image, q).holds) << describe(g) << " " << to_string(pd);
    }
    if (g.genus() >= 2) {
      EXPECT_EQ(pushforward_polarization(s, canonical_polarization(g, 1)), canonical_polarization(s.target, 1));
    }
  }
}

TEST(Property, NonPolystableCellsAreNotFaces) {
  Gen gen(107);
  int checked = 0;
  for (int t = 0; t < kTrials; ++t) {
    WeightedGraph g = gen.graph(3, 5);
    Polarization p = gen.polarization(g);
    TropicalCurve x = gen.curve(g);
    for (const auto& pd : enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable)) {
      if (is_polystable(g, pd, p).holds) continue;
      PolTrace trace;
      PseudoDivisor up = pol(g, pd, p, {}, &trace);
      SpecializationWitness w = saturation_witness(g, trace);
      QuotientCell cell = cell_P(g, up, x.lengths);
      auto inner = embed_cell_P(g, up, pd, w, x.lengths, cell);
      if (rank(g, pd) == rank(g, up)) {
        // saturation only crossed bridges, so the cells coincide
        EXPECT_EQ(affine_dimension(inner), cell.dimension) << describe(g) << " " << to_string(pd);
        continue;
      }
      EXPECT_FALSE(is_face_polytope(inner, cell.vertices)) << describe(g) << " " << to_string(pd);
      EXPECT_TRUE(in_relative_interior(cell.vertices, embedded_center(g, up, pd, w, x.lengths, cell)));
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Property, EquivalenceIsAnEquivalenceRelation) {
  Gen gen(108);
  for (int t = 0; t < kTrials; ++t) {
    WeightedGraph g = gen.graph(3, 4);
    Polarization p = gen.polarization(g);
    TropicalCurve x = gen.curve(g);
    auto ss = enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable);
    if (ss.empty()) continue;
    UnitaryDivisor a = oracle::random_unitary(x, gen.pick(ss), gen.rng);
    UnitaryDivisor b = polystabilize_on_curve(x, a, p);
    UnitaryDivisor c = oracle::random_unitary(x, gen.pick(ss), gen.rng);
    EXPECT_TRUE(equivalent(x, a, a, p));
    EXPECT_EQ(equivalent(x, a, c, p), equivalent(x, c, a, p));
    EXPECT_TRUE(equivalent(x, a, b, p));
    EXPECT_EQ(equivalent(x, b, c, p), equivalent(x, a, c, p));
    EXPECT_EQ(equivalent(x, a, c, p), oracle::equivalent(x, a, c)) << describe(g);
  }
}

TEST(Property, PolystableTypesAreRigid) {
  // principal moves keep the type; distinct polystable types never meet
  Gen gen(109);
  for (int t = 0; t < kTrials; ++t) {
    WeightedGraph g = gen.graph(3, 5);
    Polarization p = gen.polarization(g);
    TropicalCurve x = gen.curve(g);
    auto ps = enumerate_pseudo_divisors(g, p, StabilityKind::kPolystable);
    const PseudoDivisor& type = gen.pick(ps);
    UnitaryDivisor d = oracle::random_unitary(x, type, gen.rng);
    auto basis = subspace_LE(g, type.E);
    if (!basis.empty()) {
      EDifference u{type.E, RatVector(g.num_edges(), Rational(0))};
      auto items = type.E.items();
      Rational c = ratio(gen.uniform(-3, 3), 64);
      for (size_t k = 0; k < items.size(); ++k) u.displacement[items[k]] = c * basis[0][k];
      try {
        UnitaryDivisor moved = move_by_principal(x, d, u);
        EXPECT_EQ(moved.type, d.type);
        EXPECT_TRUE(oracle::equivalent(x, d, moved));
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kCellExit);
      }
    }
    const PseudoDivisor& other = gen.pick(ps);
    if (other == type) continue;
    UnitaryDivisor o = oracle::random_unitary(x, other, gen.rng);
    EXPECT_FALSE(oracle::equivalent(x, d, o)) << describe(g);
  }
}

TEST(Property, FaceRelationsOfRandomComplexes) {
  Gen gen(110);
  for (int t = 0; t < 25; ++t) {
    WeightedGraph g = gen.graph(3, 5);
    Polarization p = gen.polarization(g);
    TropicalCurve x = gen.curve(g);
    CellComplex c = build_jacobian_polystable(x, p);
    EXPECT_TRUE(c.all_faces_verified()) << describe(g);
    EXPECT_EQ(c.euler_characteristic(), g.b1() >= 1 ? 0 : 1);
    for (int i = 0; i < c.poset.size(); ++i) EXPECT_EQ(c.cells[i].dimension, c.poset.rank(i));
    for (const auto& pd : c.poset.elements()) EXPECT_TRUE(fiber_matches_cell(g, pd, x.lengths));
  }
}
