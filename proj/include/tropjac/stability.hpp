#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tropjac/graph.hpp"
#include "tropjac/limits.hpp"
#include "tropjac/rational.hpp"

namespace tropjac {

/// Rational vertex function with integral total degree.
class Polarization {
 public:
  Polarization() = default;
  explicit Polarization(RatVector values) : values_(std::move(values)) {
    Rational total = std::accumulate(values_.begin(), values_.end(), Rational(0));
    if (!is_integer(total)) {
      throw Error(ErrorCode::kInvalidArgument, "polarization degree " + to_string(total) + " is not an integer");
    }
    degree_ = total.get_num().get_si();
  }

  int size() const { return static_cast<int>(values_.size()); }
  const Rational& operator[](int v) const { return values_.at(v); }
  const RatVector& values() const { return values_; }
  long degree() const { return degree_; }

  Rational sum(VertexSet vs) const {
    Rational s = 0;
    vs.for_each([&](int v) { s += values_.at(v); });
    return s;
  }

  friend bool operator==(const Polarization& a, const Polarization& b) { return a.values_ == b.values_; }

 private:
  RatVector values_;
  long degree_ = 0;
};

/// μ(v) = d(2w(v) − 2 + val(v)) / (2g − 2).
inline Polarization canonical_polarization(const WeightedGraph& g, long d) {
  const int genus = g.genus();
  if (genus < 2) {
    throw Error(ErrorCode::kDegenerateGenus, "canonical polarization needs genus at least 2");
  }
  RatVector mu;
  for (int v = 0; v < g.num_vertices(); ++v) {
    mu.push_back(ratio(d * (2 * g.weight(v) - 2 + g.valence(v)), 2 * genus - 2));
  }
  return Polarization(std::move(mu));
}

inline Polarization check_polarization(const WeightedGraph& g, const Polarization& p) {
  if (p.size() != g.num_vertices()) {
    throw Error(ErrorCode::kInvalidArgument, "polarization has the wrong number of vertices");
  }
  return p;
}

/// μ_E(v) = μ(v) + val_E(v)/2, a polarization on Γ_E of degree d + |E|.
inline Polarization induce_on_deletion(const WeightedGraph& g, const Polarization& p, EdgeSet e_set) {
  check_polarization(g, p);
  g.check_edges(e_set);
  RatVector mu = p.values();
  for (int v = 0; v < g.num_vertices(); ++v) mu[v] += ratio(g.valence_in(e_set, v), 2);
  return Polarization(std::move(mu));
}

/// μ^E: unchanged on V(Γ), zero on exceptional vertices.
inline Polarization induce_on_refinement(const Refinement& r, const Polarization& p) {
  RatVector mu = p.values();
  mu.resize(r.graph.num_vertices(), Rational(0));
  return Polarization(std::move(mu));
}

/// ι_*(μ): sums over fibers.
inline Polarization pushforward_polarization(const Specialization& s, const Polarization& p) {
  check_polarization(s.source, p);
  RatVector mu(s.target.num_vertices(), Rational(0));
  for (int v = 0; v < s.source.num_vertices(); ++v) mu[s.vertex_map[v]] += p[v];
  return Polarization(std::move(mu));
}

/// (E, D): D lives on V(Γ); the value −1 at each exceptional vertex is implied.
struct PseudoDivisor {
  EdgeSet E;
  std::vector<int> D;

  long degree() const { return std::accumulate(D.begin(), D.end(), 0L) - E.size(); }

  friend bool operator==(const PseudoDivisor&, const PseudoDivisor&) = default;
  friend auto operator<=>(const PseudoDivisor&, const PseudoDivisor&) = default;
};

inline std::string to_string(const PseudoDivisor& pd) {
  std::string s = "({";
  bool first = true;
  pd.E.for_each([&](int e) {
    s += (first ? "" : ",") + std::to_string(e);
    first = false;
  });
  s += "},(";
  for (size_t i = 0; i < pd.D.size(); ++i) s += (i ? "," : "") + std::to_string(pd.D[i]);
  return s + "))";
}

inline void check_pseudo_divisor(const WeightedGraph& g, const PseudoDivisor& pd) {
  if (static_cast<int>(pd.D.size()) != g.num_vertices()) {
    throw Error(ErrorCode::kInvalidArgument, "pseudo-divisor has the wrong number of vertices");
  }
  g.check_edges(pd.E);
}

inline void check_degrees(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p) {
  check_pseudo_divisor(g, pd);
  check_polarization(g, p);
  if (pd.degree() != p.degree()) {
    throw Error(ErrorCode::kDegreeMismatch, "pseudo-divisor degree " + std::to_string(pd.degree()) +
                                                " differs from polarization degree " + std::to_string(p.degree()));
  }
}

/// β_{E,D}(V) = deg(D|_V) − μ_E(V) + δ_{Γ_E,V}/2.
inline Rational beta(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p, VertexSet vs) {
  check_degrees(g, pd, p);
  g.check_vertices(vs);
  Rational b = 0;
  vs.for_each([&](int v) { b += pd.D[v] - p[v] - ratio(g.valence_in(pd.E, v), 2); });
  b += ratio((g.cut(vs) - pd.E).size(), 2);
  return b;
}

inline int rank(const WeightedGraph& g, const PseudoDivisor& pd) {
  check_pseudo_divisor(g, pd);
  return pd.E.size() - g.b0(pd.E) + g.b0();
}

/// β over every vertex subset at once, in integers scaled by S = 2·lcm of
/// the denominators of μ. Entry `mask` holds S·β_{E,D}(V) for V = mask.
class BetaTable {
 public:
  BetaTable(const WeightedGraph& g, const Polarization& p) : graph_(&g), mu_(p) {
    check_polarization(g, p);
    const int n = g.num_vertices();
    if (n > limits().subset_vertices) {
      throw Error(ErrorCode::kSizeGuard, "subset enumeration is limited to " +
                                             std::to_string(limits().subset_vertices) + " vertices");
    }
    mpz_class l = 1;
    for (const Rational& m : p.values()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.get_den_mpz_t());
    if (!l.fits_slong_p() || l > (1L << 20)) {
      throw Error(ErrorCode::kSizeGuard, "polarization denominators too large for the subset table");
    }
    half_ = l.get_si();
    scale_ = 2 * half_;

    const size_t count = std::size_t{1} << n;
    mu_scaled_.assign(count, 0);
    cut_.assign(count, 0);
    inside_.assign(count, 0);
    std::vector<long long> mu_v(n);
    for (int v = 0; v < n; ++v) {
      Rational x = p[v] * static_cast<long>(scale_);
      mu_v[v] = x.get_num().get_si();
    }
    for (size_t mask = 1; mask < count; ++mask) {
      int low = std::countr_zero(mask);
      mu_scaled_[mask] = mu_scaled_[mask & (mask - 1)] + mu_v[low];
      VertexSet vs(mask);
      cut_[mask] = g.cut(vs).bits();
      inside_[mask] = g.inside(vs).bits();
    }
  }

  long long scale() const { return scale_; }
  const WeightedGraph& graph() const { return *graph_; }
  const Polarization& polarization() const { return mu_; }
  EdgeSet cut(std::uint64_t mask) const { return EdgeSet(cut_[mask]); }

  /// Fills `out` with S·β for every subset.
  void evaluate(const PseudoDivisor& pd, std::vector<long long>& out) const {
    check_degrees(*graph_, pd, mu_);
    const size_t count = mu_scaled_.size();
    const std::uint64_t e = pd.E.bits();
    out.assign(count, 0);
    std::vector<long long> dsum(count, 0);
    for (size_t mask = 1; mask < count; ++mask) {
      int low = std::countr_zero(mask);
      dsum[mask] = dsum[mask & (mask - 1)] + pd.D[low];
      long long in_e = std::popcount(e & inside_[mask]);
      long long cut_e = std::popcount(e & cut_[mask]);
      long long cut_free = std::popcount(cut_[mask] & ~e);
      out[mask] = scale_ * dsum[mask] - mu_scaled_[mask] - half_ * (2 * in_e + cut_e) + half_ * cut_free;
    }
  }

 private:
  const WeightedGraph* graph_;
  Polarization mu_;
  long long half_ = 1;
  long long scale_ = 2;
  std::vector<long long> mu_scaled_;
  std::vector<std::uint64_t> cut_;
  std::vector<std::uint64_t> inside_;
};

/// Outcome of a stability test. On failure `witness` is the violating vertex
/// set with the smallest bitmask.
struct Verdict {
  bool holds = true;
  std::optional<VertexSet> witness;
  explicit operator bool() const { return holds; }
};

enum class StabilityKind { kSemistable, kStable, kQuasistable, kPolystable };

inline const char* to_string(StabilityKind k) {
  switch (k) {
    case StabilityKind::kSemistable: return "semistable";
    case StabilityKind::kStable: return "stable";
    case StabilityKind::kQuasistable: return "quasistable";
    case StabilityKind::kPolystable: return "polystable";
  }
  return "?";
}

namespace detail {

inline bool is_union_of_components(VertexSet vs, const std::vector<VertexSet>& comps) {
  for (VertexSet c : comps) {
    VertexSet meet = c & vs;
    if (!meet.empty() && meet != c) return false;
  }
  return true;
}

}  // namespace detail

/// Checks a stability condition against a precomputed table of S·β values.
/// `base` is the marked vertex for quasistability and ignored otherwise.
inline Verdict check_stability(const BetaTable& table, const PseudoDivisor& pd, StabilityKind kind,
                               const std::vector<long long>& scaled, int base = 0) {
  const WeightedGraph& g = table.graph();
  const int n = g.num_vertices();
  const std::uint64_t full = VertexSet::full(n).bits();
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<VertexSet> comps;
  if (kind == StabilityKind::kStable) {
    if (!pd.E.empty()) {
      throw Error(ErrorCode::kPrecondition, "stability is defined for divisors; use polystability for E nonempty");
    }
    comps = g.components();
  }
  if (kind == StabilityKind::kQuasistable) {
    if (!g.is_connected()) throw Error(ErrorCode::kDisconnected, "quasistability needs a connected graph");
    g.check_vertex(base);
  }
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const long long b = scaled[mask];
    bool ok = true;
    switch (kind) {
      case StabilityKind::kSemistable:
        ok = b >= 0;
        break;
      case StabilityKind::kStable:
        ok = detail::is_union_of_components(VertexSet(mask), comps) ? b == 0 : b > 0;
        break;
      case StabilityKind::kQuasistable:
        if (mask == full) break;
        ok = ((mask >> base) & 1u) ? b > 0 : b >= 0;
        break;
      case StabilityKind::kPolystable:
        ok = table.cut(mask).is_subset_of(pd.E) ? b >= 0 : b > 0;
        break;
    }
    if (!ok) return {false, VertexSet(mask)};
  }
  return {};
}

inline Verdict check_stability(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p,
                               StabilityKind kind, int base = 0) {
  BetaTable table(g, p);
  std::vector<long long> scaled;
  table.evaluate(pd, scaled);
  return check_stability(table, pd, kind, scaled, base);
}

inline Verdict is_semistable(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p) {
  return check_stability(g, pd, p, StabilityKind::kSemistable);
}
inline Verdict is_stable(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p) {
  return check_stability(g, pd, p, StabilityKind::kStable);
}
inline Verdict is_quasistable(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p, int v0) {
  return check_stability(g, pd, p, StabilityKind::kQuasistable, v0);
}
inline Verdict is_polystable(const WeightedGraph& g, const PseudoDivisor& pd, const Polarization& p) {
  return check_stability(g, pd, p, StabilityKind::kPolystable);
}

/// ι_*(E, D) = (E ∖ F, fiber sums of D), where each exceptional vertex on a
/// contracted edge of E adds −1 to its fiber.
inline PseudoDivisor pushforward_pd(const Specialization& s, const PseudoDivisor& pd) {
  check_pseudo_divisor(s.source, pd);
  PseudoDivisor out;
  out.E = s.image(pd.E);
  out.D.assign(s.target.num_vertices(), 0);
  for (int v = 0; v < s.source.num_vertices(); ++v) out.D[s.vertex_map[v]] += pd.D[v];
  (pd.E & s.contracted).for_each([&](int e) { out.D[s.vertex_map[s.source.edge(e).source]] -= 1; });
  return out;
}

/// Which end of an edge an exceptional vertex merges into.
enum class Side : signed char { kNone = 0, kSource = 1, kTarget = 2 };

/// Witness of (E1, D1) ≥ (E2, D2): for each e ∈ E1 ∖ E2 the endpoint its
/// exceptional vertex is merged into. Loops are recorded as kSource.
struct SpecializationWitness {
  std::vector<Side> side;  // per edge of Γ

  int vertex(const WeightedGraph& g, int e) const {
    return side[e] == Side::kTarget ? g.edge(e).target : g.edge(e).source;
  }
};

/// Decides (E1, D1) ≥ (E2, D2) by backtracking over endpoint assignments in
/// edge order, source side first. Returns the first assignment found.
inline std::optional<SpecializationWitness> specializes_to(const WeightedGraph& g, const PseudoDivisor& pd1,
                                                           const PseudoDivisor& pd2) {
  check_pseudo_divisor(g, pd1);
  check_pseudo_divisor(g, pd2);
  if (!pd2.E.is_subset_of(pd1.E)) return std::nullopt;
  const int n = g.num_vertices();
  std::vector<int> need(n);
  for (int v = 0; v < n; ++v) {
    need[v] = pd1.D[v] - pd2.D[v];
    if (need[v] < 0) return std::nullopt;
  }
  std::vector<int> dropped = (pd1.E - pd2.E).items();
  if (std::accumulate(need.begin(), need.end(), 0) != static_cast<int>(dropped.size())) return std::nullopt;

  SpecializationWitness w;
  w.side.assign(g.num_edges(), Side::kNone);
  auto rec = [&](auto&& self, size_t k) -> bool {
    if (k == dropped.size()) return true;
    const int e = dropped[k];
    const Edge& ed = g.edge(e);
    for (Side side : {Side::kSource, Side::kTarget}) {
      if (side == Side::kTarget && ed.is_loop()) break;
      int v = side == Side::kSource ? ed.source : ed.target;
      if (need[v] == 0) continue;
      --need[v];
      w.side[e] = side;
      if (self(self, k + 1)) return true;
      ++need[v];
    }
    w.side[e] = Side::kNone;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return w;
}

/// Every witness of (E1, D1) ≥ (E2, D2). Here a loop may merge at either
/// end: the two choices are the same combinatorially but put the point at
/// opposite ends of the loop, so they give different cell embeddings.
inline std::vector<SpecializationWitness> all_specialization_witnesses(const WeightedGraph& g,
                                                                       const PseudoDivisor& pd1,
                                                                       const PseudoDivisor& pd2) {
  check_pseudo_divisor(g, pd1);
  check_pseudo_divisor(g, pd2);
  std::vector<SpecializationWitness> out;
  if (!pd2.E.is_subset_of(pd1.E)) return out;
  const int n = g.num_vertices();
  std::vector<int> need(n);
  for (int v = 0; v < n; ++v) {
    need[v] = pd1.D[v] - pd2.D[v];
    if (need[v] < 0) return out;
  }
  std::vector<int> dropped = (pd1.E - pd2.E).items();
  if (std::accumulate(need.begin(), need.end(), 0) != static_cast<int>(dropped.size())) return out;
  SpecializationWitness w;
  w.side.assign(g.num_edges(), Side::kNone);
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == dropped.size()) {
      out.push_back(w);
      return;
    }
    const int e = dropped[k];
    for (Side side : {Side::kSource, Side::kTarget}) {
      int v = side == Side::kSource ? g.edge(e).source : g.edge(e).target;
      if (need[v] == 0) continue;
      --need[v];
      w.side[e] = side;
      self(self, k + 1);
      ++need[v];
    }
    w.side[e] = Side::kNone;
  };
  rec(rec, 0);
  return out;
}

inline bool specializes(const WeightedGraph& g, const PseudoDivisor& pd1, const PseudoDivisor& pd2) {
  return specializes_to(g, pd1, pd2).has_value();
}

/// Applies a specialization witness partially: keeps the edges of E, merging
/// only the exceptional vertices of E1 ∖ E. With E2 ⊆ E ⊆ E1 the result lies
/// between the two pseudo-divisors. Without a witness the one found by
/// specializes_to is used. Different witnesses can give different middles.
inline PseudoDivisor interpolate(const WeightedGraph& g, const PseudoDivisor& pd1, const PseudoDivisor& pd2,
                                 EdgeSet e_set, std::optional<SpecializationWitness> witness = std::nullopt) {
  if (!witness) witness = specializes_to(g, pd1, pd2);
  if (!witness) throw Error(ErrorCode::kPrecondition, "first pseudo-divisor does not specialize to the second");
  if (!pd2.E.is_subset_of(e_set) || !e_set.is_subset_of(pd1.E)) {
    throw Error(ErrorCode::kPrecondition, "edge set must lie between E2 and E1");
  }
  PseudoDivisor mid{e_set, pd1.D};
  (pd1.E - e_set).for_each([&](int e) {
    if (witness->side[e] == Side::kNone) throw Error(ErrorCode::kInvalidArgument, "witness misses an edge");
    mid.D[witness->vertex(g, e)] -= 1;
  });
  return mid;
}

/// Every pseudo-divisor of degree deg μ satisfying `kind`. The per-vertex
/// window D(v) ∈ [μ_E(v) − δ_v/2, μ_E(v) + δ_v/2] comes from β({v}) ≥ 0 and
/// β({v}^c) ≥ 0. Output is sorted by (E, D).
inline std::vector<PseudoDivisor> enumerate_pseudo_divisors(const WeightedGraph& g, const Polarization& p,
                                                            StabilityKind kind, int base = 0) {
  check_polarization(g, p);
  if (g.num_edges() > limits().enumeration_edges) {
    throw Error(ErrorCode::kSizeGuard, "pseudo-divisor enumeration is limited to " +
                                           std::to_string(limits().enumeration_edges) + " edges");
  }
  if (kind == StabilityKind::kQuasistable) {
    if (!g.is_connected()) throw Error(ErrorCode::kDisconnected, "quasistability needs a connected graph");
    g.check_vertex(base);
  }
  BetaTable table(g, p);
  const int n = g.num_vertices();
  std::vector<PseudoDivisor> out;
  std::vector<long long> scaled;
  const std::uint64_t subsets = std::uint64_t{1} << g.num_edges();
  for (std::uint64_t bits = 0; bits < subsets; ++bits) {
    EdgeSet e_set(bits);
    if (kind == StabilityKind::kStable && !e_set.empty()) break;
    Polarization mu_e = induce_on_deletion(g, p, e_set);
    std::vector<long> lo(n), hi(n);
    for (int v = 0; v < n; ++v) {
      Rational half_delta = ratio((g.cut(VertexSet::single(v)) - e_set).size(), 2);
      lo[v] = ceil_to_long(mu_e[v] - half_delta);
      hi[v] = floor_to_long(mu_e[v] + half_delta);
    }
    std::vector<long> lo_suffix(n + 1, 0), hi_suffix(n + 1, 0);
    for (int v = n - 1; v >= 0; --v) {
      lo_suffix[v] = lo_suffix[v + 1] + lo[v];
      hi_suffix[v] = hi_suffix[v + 1] + hi[v];
    }
    const long total = p.degree() + e_set.size();
    PseudoDivisor pd{e_set, std::vector<int>(n, 0)};
    auto rec = [&](auto&& self, int v, long remaining) -> void {
      if (v == n) {
        if (remaining != 0) return;
        table.evaluate(pd, scaled);
        if (check_stability(table, pd, kind, scaled, base)) out.push_back(pd);
        return;
      }
      for (long x = lo[v]; x <= hi[v]; ++x) {
        long rest = remaining - x;
        if (rest < lo_suffix[v + 1] || rest > hi_suffix[v + 1]) continue;
        pd.D[v] = static_cast<int>(x);
        self(self, v + 1, rest);
      }
    };
    rec(rec, 0, total);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tropjac
