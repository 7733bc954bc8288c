#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "tropjac/corpus.hpp"
#include "tropjac/stability.hpp"

using namespace tropjac;

namespace {

// β computed on the refinement Γ^E from the plain divisor formula, for the
// set Ṽ = V plus the exceptional vertices of E-edges touching V.
Rational beta_on_refinement(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p, VertexSet vs) {
  Refinement r = refine(g, pd.E);
  const int n = r.graph.num_vertices();
  std::vector<bool> in(n, false);
  for (int v = 0; v < g.num_vertices(); ++v) in[v] = vs.contains(v);
  pd.E.for_each([&](int e) {
    if (vs.contains(g.edge(e).source) || vs.contains(g.edge(e).target)) in[r.over[e].exceptional] = true;
  });
  Rational b = 0;
  for (int v = 0; v < n; ++v) {
    if (!in[v]) continue;
    if (v < g.num_vertices()) {
      b += pd.D[v] - p[v];
    } else {
      b -= 1;
    }
  }
  int delta = 0;
  for (const auto& e : r.graph.edges()) delta += in[e.source] != in[e.target];
  return b + ratio(delta, 2);
}

// Semistable pseudo-divisors by exhaustive search over a box of values.
std::set<PseudoDivisor> brute_force_semistable(const WeightedGraph& g, const Polarization& p) {
  std::set<PseudoDivisor> out;
  const int n = g.num_vertices();
  const int span = 2 * g.num_edges() + 3;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << g.num_edges()); ++bits) {
    PseudoDivisor pd{EdgeSet(bits), std::vector<int>(n, 0)};
    auto rec = [&](auto&& self, int v) -> void {
      if (v == n - 1) {
        // the last value is forced by the degree
        pd.D[v] = 0;
        pd.D[v] = static_cast<int>(p.degree() - pd.degree());
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
          if (beta_on_refinement(g, pd, p, VertexSet(m)) < 0) return;
        }
        out.insert(pd);
        return;
      }
      for (int x = -span; x <= span; ++x) {
        pd.D[v] = x;
        self(self, v + 1);
      }
    };
    rec(rec, 0);
  }
  return out;
}

const Polarization theta_mu = Polarization({ratio(-1, 2), ratio(-1, 2)});

}  // namespace

TEST(Polarization, CanonicalOnTheta) {
  EXPECT_EQ(canonical_polarization(fixtures::theta(), -1), theta_mu);
  EXPECT_EQ(canonical_polarization(fixtures::theta(), 2).degree(), 2);
}

TEST(Polarization, RejectsLowGenusAndFractionalDegree) {
  try {
    canonical_polarization(fixtures::two_cycle(), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateGenus);
  }
  EXPECT_THROW(Polarization({ratio(1, 2)}), Error);
}

TEST(Polarization, PushforwardAddsFibers) {
  WeightedGraph g = fixtures::dumbbell();
  Polarization p = canonical_polarization(g, 2);
  Specialization s = contract(g, EdgeSet::single(1));
  EXPECT_EQ(pushforward_polarization(s, p).values(), RatVector{Rational(2)});
}

TEST(Beta, MatchesRefinementOracleOnCorpus) {
  for (const auto& inst : generate_corpus(3, 4, 1)) {
    const WeightedGraph& g = inst.graph();
    BetaTable table(g, inst.polarization);
    for (const auto& pd : enumerate_pseudo_divisors(g, inst.polarization, StabilityKind::kSemistable)) {
      std::vector<long long> scaled;
      table.evaluate(pd, scaled);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.num_vertices()); ++m) {
        Rational oracle = beta_on_refinement(g, pd, inst.polarization, VertexSet(m));
        EXPECT_EQ(beta(g, pd, inst.polarization, VertexSet(m)), oracle) << inst.name;
        EXPECT_EQ(ratio(static_cast<long>(scaled[m]), static_cast<long>(table.scale())), oracle) << inst.name;
      }
    }
  }
}

TEST(Beta, SubmodularIdentity) {
  WeightedGraph g = fixtures::banana4();
  Polarization p({Rational(0), Rational(1)});
  PseudoDivisor pd{EdgeSet::of({1, 3}), {2, 1}};
  const std::uint64_t all = 3;
  for (std::uint64_t a = 0; a <= all; ++a) {
    for (std::uint64_t b = 0; b <= all; ++b) {
      VertexSet v(a), w(b);
      auto [cut, delta] = cut_and_delta(g, v, w);
      (void)delta;
      Rational lhs = beta(g, pd, p, v | w) + beta(g, pd, p, v & w);
      Rational rhs = beta(g, pd, p, v) + beta(g, pd, p, w) - (cut - pd.E).size();
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Beta, DegreeMismatchThrows) {
  try {
    beta(fixtures::theta(), {EdgeSet{}, {0, 0}}, theta_mu, VertexSet::single(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegreeMismatch);
  }
}

TEST(Stability, ThetaPredicates) {
  WeightedGraph g = fixtures::theta();
  PseudoDivisor vertex{EdgeSet{}, {1, -2}};
  EXPECT_TRUE(is_semistable(g, vertex, theta_mu).holds);
  EXPECT_FALSE(is_polystable(g, vertex, theta_mu).holds);
  EXPECT_TRUE(is_quasistable(g, vertex, theta_mu, 0).holds);
  EXPECT_FALSE(is_quasistable(g, vertex, theta_mu, 1).holds);
  PseudoDivisor top{g.all_edges(), {1, 1}};
  EXPECT_TRUE(is_polystable(g, top, theta_mu).holds);
  PseudoDivisor bad{EdgeSet{}, {2, -3}};
  Verdict v = is_semistable(g, bad, theta_mu);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_LT(beta(g, bad, theta_mu, *v.witness), 0);
}

TEST(Stability, StableRejectsNonemptyEdgeSet) {
  WeightedGraph g = fixtures::theta();
  EXPECT_THROW(is_stable(g, {EdgeSet::single(0), {0, 0}}, theta_mu), Error);
}

TEST(Stability, QuasistableNeedsConnectedGraph) {
  WeightedGraph g({1, 1}, {});
  Polarization p({Rational(0), Rational(0)});
  try {
    is_quasistable(g, {EdgeSet{}, {0, 0}}, p, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnected);
  }
}

TEST(Enumeration, ThetaCounts) {
  WeightedGraph g = fixtures::theta();
  EXPECT_EQ(enumerate_pseudo_divisors(g, theta_mu, StabilityKind::kPolystable).size(), 6u);
  EXPECT_EQ(enumerate_pseudo_divisors(g, theta_mu, StabilityKind::kQuasistable, 0).size(), 12u);
  // the two vertex divisors with E empty have slack on both sides
  EXPECT_EQ(enumerate_pseudo_divisors(g, theta_mu, StabilityKind::kStable).size(), 2u);
}

TEST(Enumeration, MatchesBruteForce) {
  for (const auto& inst : generate_corpus(3, 3, 1)) {
    const WeightedGraph& g = inst.graph();
    auto fast = enumerate_pseudo_divisors(g, inst.polarization, StabilityKind::kSemistable);
    std::set<PseudoDivisor> slow = brute_force_semistable(g, inst.polarization);
    EXPECT_EQ(std::set<PseudoDivisor>(fast.begin(), fast.end()), slow) << inst.name;
    EXPECT_TRUE(std::is_sorted(fast.begin(), fast.end()));
  }
}

TEST(Enumeration, FiltersAreSubsets) {
  for (const auto& inst : generate_corpus(3, 4, 1)) {
    const WeightedGraph& g = inst.graph();
    const Polarization& p = inst.polarization;
    auto ss = enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable);
    std::set<PseudoDivisor> ss_set(ss.begin(), ss.end());
    for (auto kind : {StabilityKind::kStable, StabilityKind::kPolystable, StabilityKind::kQuasistable}) {
      for (const auto& pd : enumerate_pseudo_divisors(g, p, kind, 0)) {
        EXPECT_TRUE(ss_set.count(pd)) << inst.name;
        EXPECT_TRUE(check_stability(g, pd, p, kind, 0).holds) << inst.name;
      }
    }
    for (const auto& pd : ss) {
      bool poly = is_polystable(g, pd, p).holds;
      bool listed = std::binary_search(ss.begin(), ss.end(), pd);
      EXPECT_TRUE(listed);
      if (pd.E.empty() && is_stable(g, pd, p).holds) EXPECT_TRUE(poly) << inst.name;
    }
  }
}

TEST(Enumeration, GuardOnEdges) {
  std::vector<Edge> many(17, Edge{0, 1});
  WeightedGraph g = WeightedGraph::from_edges(2, many);
  try {
    enumerate_pseudo_divisors(g, canonical_polarization(g, 0), StabilityKind::kSemistable);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeGuard);
  }
}

TEST(Rank, Examples) {
  WeightedGraph g = fixtures::theta();
  EXPECT_EQ(rank(g, {g.all_edges(), {1, 1}}), 2);
  EXPECT_EQ(rank(g, {EdgeSet::single(0), {0, 0}}), 1);
  EXPECT_EQ(rank(g, {EdgeSet{}, {1, -2}}), 0);
  EXPECT_EQ(rank(fixtures::dumbbell(), {EdgeSet::single(1), {0, 0}}), 0);
}

TEST(Specialization, ThetaWitnesses) {
  WeightedGraph g = fixtures::theta();
  PseudoDivisor top{g.all_edges(), {1, 1}};
  EXPECT_EQ(all_specialization_witnesses(g, top, {EdgeSet::single(2), {0, 0}}).size(), 2u);
  EXPECT_EQ(all_specialization_witnesses(g, top, {EdgeSet{}, {-1, 0}}).size(), 3u);
  EXPECT_FALSE(specializes(g, {EdgeSet{}, {-1, 0}}, top));
  EXPECT_TRUE(specializes(g, top, top));
}

TEST(Specialization, WitnessesReproduceTheTarget) {
  WeightedGraph g = fixtures::banana4();
  Polarization p = canonical_polarization(g, 1);
  auto all = enumerate_pseudo_divisors(g, p, StabilityKind::kSemistable);
  for (const auto& a : all) {
    for (const auto& b : all) {
      auto ws = all_specialization_witnesses(g, a, b);
      EXPECT_EQ(!ws.empty(), specializes(g, a, b));
      for (const auto& w : ws) EXPECT_EQ(interpolate(g, a, b, b.E, w), b);
    }
  }
}

TEST(Specialization, PushforwardKeepsDegree) {
  WeightedGraph g = fixtures::theta();
  PseudoDivisor top{g.all_edges(), {1, 1}};
  Specialization s = contract(g, EdgeSet::single(0));
  PseudoDivisor image = pushforward_pd(s, top);
  EXPECT_EQ(image.degree(), top.degree());
  EXPECT_EQ(image.E.size(), 2);
}
