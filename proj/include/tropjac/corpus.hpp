#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "tropjac/isomorphism.hpp"
#include "tropjac/trop_curve.hpp"

namespace tropjac {

namespace fixtures {

/// Two vertices joined by three edges.
inline WeightedGraph theta() { return WeightedGraph::from_edges(2, {{0, 1}, {0, 1}, {0, 1}}); }

/// Two loops joined by a bridge.
inline WeightedGraph dumbbell() { return WeightedGraph::from_edges(2, {{0, 0}, {0, 1}, {1, 1}}); }

/// Two vertices joined by two edges; its full refinement has four edges.
inline WeightedGraph two_cycle() { return WeightedGraph::from_edges(2, {{0, 1}, {0, 1}}); }

/// Two vertices joined by four edges.
inline WeightedGraph banana4() { return WeightedGraph::from_edges(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}); }

/// A single vertex of weight 2 and no edges.
inline WeightedGraph genus_two_point() { return WeightedGraph({2}, {}); }

/// The theta curve with lengths 1, 3/2, 2.
inline TropicalCurve theta_curve() { return TropicalCurve(theta(), {Rational(1), ratio(3, 2), Rational(2)}); }

}  // namespace fixtures

/// The canonical polarization when the genus allows it, otherwise the
/// uniform one d/|V| on every vertex.
inline Polarization default_polarization(const WeightedGraph& g, long d) {
  if (g.genus() >= 2) return canonical_polarization(g, d);
  RatVector mu(g.num_vertices(), ratio(d, g.num_vertices()));
  return Polarization(mu);
}

/// Connected multigraphs (loops allowed) with exactly n weight-zero vertices
/// and m edges, one per isomorphism class, in generation order.
inline std::vector<WeightedGraph> connected_multigraphs(int n, int m) {
  std::vector<Edge> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) pairs.push_back({a, b});
  }
  const int np = static_cast<int>(pairs.size());
  std::vector<WeightedGraph> out;
  std::map<std::vector<int>, int> seen;
  std::vector<int> pick(m, 0);
  auto rec = [&](auto&& self, int k, int from) -> void {
    if (k == m) {
      std::vector<Edge> edges;
      for (int i : pick) edges.push_back(pairs[i]);
      WeightedGraph g = WeightedGraph::from_edges(n, edges);
      if (g.is_connected() && seen.emplace(canonical_code(g), 0).second) out.push_back(g);
      return;
    }
    for (int p = from; p < np; ++p) {
      pick[k] = p;
      self(self, k + 1, p);
    }
  };
  rec(rec, 0, 0);
  return out;
}

struct CorpusInstance {
  std::string name;
  TropicalCurve curve;
  long degree = 0;
  Polarization polarization;

  const WeightedGraph& graph() const { return curve.model; }
};

/// Named fixtures followed by every connected multigraph with at most
/// `max_vertices` vertices and `max_edges` edges, each with degrees
/// −1, 0, 1 and g. Edge lengths are halves in [1/2, 3] drawn from `seed`.
inline std::vector<CorpusInstance> generate_corpus(int max_vertices, int max_edges, std::uint64_t seed) {
  std::vector<std::pair<std::string, WeightedGraph>> graphs = {
      {"theta", fixtures::theta()},
      {"dumbbell", fixtures::dumbbell()},
      {"two_cycle", fixtures::two_cycle()},
      {"banana4", fixtures::banana4()},
      {"genus_two_point", fixtures::genus_two_point()},
  };
  for (int n = 1; n <= max_vertices; ++n) {
    for (int m = n - 1; m <= max_edges; ++m) {
      int k = 0;
      for (auto& g : connected_multigraphs(n, m)) {
        graphs.emplace_back("v" + std::to_string(n) + "e" + std::to_string(m) + "_" + std::to_string(k++), g);
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<CorpusInstance> out;
  for (const auto& [name, g] : graphs) {
    RatVector lengths;
    for (int e = 0; e < g.num_edges(); ++e) lengths.push_back(ratio(static_cast<long>(rng() % 6) + 1, 2));
    TropicalCurve x(g, lengths);
    std::vector<long> degrees = {-1, 0, 1};
    if (g.genus() > 1) degrees.push_back(g.genus());
    for (long d : degrees) {
      out.push_back({name + "_d" + std::to_string(d), x, d, default_polarization(g, d)});
    }
  }
  return out;
}

}  // namespace tropjac
