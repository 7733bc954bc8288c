#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropjac/rational.hpp"

namespace tropjac {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Rational(0)) {}

  static RatMatrix from_rows(const std::vector<RatVector>& rows, int cols) {
    RatMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows_; ++i) {
      if (static_cast<int>(rows[i].size()) != cols) throw Error(ErrorCode::kInvalidArgument, "ragged matrix rows");
      for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  RatVector row(int i) const { return RatVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  std::vector<RatVector> row_list() const {
    std::vector<RatVector> out;
    for (int i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  RatVector apply(const RatVector& x) const {
    if (static_cast<int>(x.size()) != cols_) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in apply");
    RatVector y(rows_, Rational(0));
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        if (sgn(at(i, j)) != 0) y[i] += at(i, j) * x[j];
      }
    }
    return y;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in product");
    RatMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        if (sgn(at(i, k)) == 0) continue;
        for (int j = 0; j < o.cols_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
      }
    }
    return m;
  }

  RatMatrix transpose() const {
    RatMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    }
    return m;
  }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  RatVector data_;
};

struct RowEchelon {
  RatMatrix matrix;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

/// Reduced row-echelon form: leading ones, zeros above and below pivots.
inline RowEchelon rref(RatMatrix m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (sgn(m.at(i, c)) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    }
    Rational inv = 1 / m.at(r, c);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m.at(i, c)) == 0) continue;
      Rational f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline int matrix_rank(const RatMatrix& m) { return static_cast<int>(rref(m).pivots.size()); }

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<RatVector> kernel(const RatMatrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.matrix.at(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Canonical basis of span(vectors): the nonzero rows of the reduced
/// row-echelon form. Equal subspaces give equal bases.
inline std::vector<RatVector> span_basis(const std::vector<RatVector>& vectors, int dim) {
  if (vectors.empty()) return {};
  RowEchelon e = rref(RatMatrix::from_rows(vectors, dim));
  std::vector<RatVector> out;
  for (size_t r = 0; r < e.pivots.size(); ++r) out.push_back(e.matrix.row(static_cast<int>(r)));
  return out;
}

inline bool same_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b, int dim) {
  return span_basis(a, dim) == span_basis(b, dim);
}

inline bool span_membership(const std::vector<RatVector>& basis, const RatVector& v) {
  const int dim = static_cast<int>(v.size());
  if (basis.empty()) {
    for (const auto& x : v) {
      if (sgn(x) != 0) return false;
    }
    return true;
  }
  std::vector<RatVector> with = basis;
  with.push_back(v);
  return matrix_rank(RatMatrix::from_rows(with, dim)) == matrix_rank(RatMatrix::from_rows(basis, dim));
}

/// Linear surjection Q^n → Q^{n−k} whose kernel is span(B), k = dim span(B).
/// B is completed to a basis of Q^n with standard vectors taken greedily by
/// index; a vector's image is its coefficients on those standard vectors.
struct QuotientMap {
  int ambient = 0;
  std::vector<RatVector> subspace;  // reduced basis of the kernel
  std::vector<int> complement;      // indices of the standard vectors used
  RatMatrix map;                    // (n − k) × n

  RatVector operator()(const RatVector& x) const { return map.apply(x); }
  int dimension() const { return ambient - static_cast<int>(subspace.size()); }
};

inline QuotientMap quotient_coordinates(const std::vector<RatVector>& subspace, int n) {
  for (const auto& b : subspace) {
    if (static_cast<int>(b.size()) != n) throw Error(ErrorCode::kInvalidArgument, "subspace vector of wrong length");
  }
  QuotientMap q;
  q.ambient = n;
  q.subspace = span_basis(subspace, n);
  std::vector<RatVector> cols = q.subspace;
  int current = static_cast<int>(cols.size());
  for (int i = 0; i < n && current < n; ++i) {
    RatVector e(n, Rational(0));
    e[i] = 1;
    cols.push_back(e);
    int r = matrix_rank(RatMatrix::from_rows(cols, n));
    if (r > current) {
      q.complement.push_back(i);
      current = r;
    } else {
      cols.pop_back();
    }
  }
  // cols as columns of an invertible matrix M; rows of M^{-1} past the
  // subspace block give the complement coefficients.
  RatMatrix m = RatMatrix::from_rows(cols, n).transpose();
  RatMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  RowEchelon e = rref(aug);
  const int k = static_cast<int>(q.subspace.size());
  q.map = RatMatrix(n - k, n);
  for (int i = 0; i < n - k; ++i) {
    for (int j = 0; j < n; ++j) q.map.at(i, j) = e.matrix.at(k + i, n + j);
  }
  return q;
}

enum class Relation { kLessEq, kGreaterEq, kEqual };

/// a · x (relation) b over free real variables.
struct LinearConstraint {
  RatVector a;
  Relation rel = Relation::kLessEq;
  Rational b;
};

inline constexpr int kSimplexVariableGuard = 512;
inline constexpr int kFourierMotzkinVariableGuard = 12;

/// Exact phase-one simplex with Bland's rule. Returns a feasible point or
/// nothing.
inline std::optional<RatVector> simplex_feasible(const std::vector<LinearConstraint>& cons, int nvars) {
  if (nvars > kSimplexVariableGuard) throw Error(ErrorCode::kSizeGuard, "too many LP variables");
  const int m = static_cast<int>(cons.size());
  if (m == 0) return RatVector(nvars, Rational(0));
  int slacks = 0;
  for (const auto& c : cons) {
    if (static_cast<int>(c.a.size()) != nvars) throw Error(ErrorCode::kInvalidArgument, "constraint of wrong length");
    if (c.rel != Relation::kEqual) ++slacks;
  }
  // columns: x+ (nvars), x- (nvars), slacks, artificials, rhs
  const int art0 = 2 * nvars + slacks;
  const int ncols = art0 + m;
  RatMatrix t(m, ncols + 1);
  std::vector<int> basis(m);
  int s = 0;
  for (int i = 0; i < m; ++i) {
    const auto& c = cons[i];
    for (int j = 0; j < nvars; ++j) {
      t.at(i, j) = c.a[j];
      t.at(i, nvars + j) = -c.a[j];
    }
    if (c.rel == Relation::kLessEq) t.at(i, 2 * nvars + s++) = 1;
    if (c.rel == Relation::kGreaterEq) t.at(i, 2 * nvars + s++) = -1;
    t.at(i, ncols) = c.b;
    if (sgn(c.b) < 0) {
      for (int j = 0; j <= ncols; ++j) t.at(i, j) = -t.at(i, j);
    }
    t.at(i, art0 + i) = 1;
    basis[i] = art0 + i;
  }
  // Phase-one cost row: reduced costs of minimizing the artificial sum.
  RatVector cost(ncols + 1, Rational(0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= ncols; ++j) {
      if (j < art0 || j == ncols) cost[j] -= t.at(i, j);
    }
  }
  for (;;) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (sgn(t.at(i, enter)) <= 0) continue;
      Rational ratio_i = t.at(i, ncols) / t.at(i, enter);
      if (leave < 0 || ratio_i < best || (ratio_i == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio_i;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase one
    Rational inv = 1 / t.at(leave, enter);
    for (int j = 0; j <= ncols; ++j) t.at(leave, j) *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || sgn(t.at(i, enter)) == 0) continue;
      Rational f = t.at(i, enter);
      for (int j = 0; j <= ncols; ++j) t.at(i, j) -= f * t.at(leave, j);
    }
    if (sgn(cost[enter]) != 0) {
      Rational f = cost[enter];
      for (int j = 0; j <= ncols; ++j) cost[j] -= f * t.at(leave, j);
    }
    basis[leave] = enter;
  }
  if (sgn(cost[ncols]) != 0) return std::nullopt;  // −(artificial sum) at the optimum
  RatVector x(nvars, Rational(0));
  for (int i = 0; i < m; ++i) {
    if (basis[i] < nvars) x[basis[i]] += t.at(i, ncols);
    else if (basis[i] < 2 * nvars) x[basis[i] - nvars] -= t.at(i, ncols);
  }
  return x;
}

/// Fourier–Motzkin elimination with back-substitution. Kept for small
/// systems and as an independent check on the simplex.
inline std::optional<RatVector> fourier_motzkin_feasible(const std::vector<LinearConstraint>& cons, int nvars,
                                                         size_t max_rows = 20000) {
  if (nvars > kFourierMotzkinVariableGuard) throw Error(ErrorCode::kSizeGuard, "too many variables for elimination");
  // Each row: a · x ≤ b.
  struct Row {
    RatVector a;
    Rational b;
  };
  std::vector<Row> rows;
  for (const auto& c : cons) {
    if (static_cast<int>(c.a.size()) != nvars) throw Error(ErrorCode::kInvalidArgument, "constraint of wrong length");
    if (c.rel != Relation::kGreaterEq) rows.push_back({c.a, c.b});
    if (c.rel != Relation::kLessEq) {
      Row r{c.a, -c.b};
      for (auto& x : r.a) x = -x;
      rows.push_back(std::move(r));
    }
  }
  std::vector<std::vector<Row>> stages;
  for (int k = 0; k < nvars; ++k) {
    stages.push_back(rows);
    std::vector<Row> pos, neg, next;
    for (auto& r : rows) {
      int s = sgn(r.a[k]);
      (s > 0 ? pos : s < 0 ? neg : next).push_back(r);
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Rational fp = -q.a[k], fq = p.a[k];
        Row r{RatVector(nvars, Rational(0)), fp * p.b + fq * q.b};
        for (int j = 0; j < nvars; ++j) r.a[j] = fp * p.a[j] + fq * q.a[j];
        r.a[k] = 0;
        next.push_back(std::move(r));
      }
    }
    // scale to a unit leading coefficient and drop repeats, otherwise the row
    // count squares at every step
    std::vector<Row> kept;
    std::set<std::pair<RatVector, Rational>> seen;
    for (auto& r : next) {
      auto lead = std::find_if(r.a.begin(), r.a.end(), [](const Rational& q) { return q != 0; });
      if (lead == r.a.end()) {
        if (sgn(r.b) < 0) return std::nullopt;
        continue;
      }
      Rational scale = abs(*lead);
      for (auto& q : r.a) q /= scale;
      r.b /= scale;
      if (seen.insert({r.a, r.b}).second) kept.push_back(std::move(r));
    }
    if (kept.size() > max_rows) throw Error(ErrorCode::kSizeGuard, "elimination produced too many rows");
    rows = std::move(kept);
  }
  for (const auto& r : rows) {
    if (sgn(r.b) < 0) return std::nullopt;
  }
  RatVector x(nvars, Rational(0));
  for (int k = nvars - 1; k >= 0; --k) {
    std::optional<Rational> lo, hi;
    for (const auto& r : stages[k]) {
      int s = sgn(r.a[k]);
      if (s == 0) continue;
      Rational rest = r.b;
      for (int j = k + 1; j < nvars; ++j) rest -= r.a[j] * x[j];
      Rational bound = rest / r.a[k];
      if (s > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    x[k] = lo ? *lo : hi ? *hi : Rational(0);
  }
  return x;
}

enum class LpEngine { kSimplex, kFourierMotzkin };

inline std::optional<RatVector> lp_feasible(const std::vector<LinearConstraint>& cons, int nvars,
                                            LpEngine engine = LpEngine::kSimplex) {
  return engine == LpEngine::kSimplex ? simplex_feasible(cons, nvars) : fourier_motzkin_feasible(cons, nvars);
}

inline bool satisfies(const LinearConstraint& c, const RatVector& x) {
  Rational lhs = 0;
  for (size_t j = 0; j < x.size(); ++j) lhs += c.a[j] * x[j];
  switch (c.rel) {
    case Relation::kLessEq: return lhs <= c.b;
    case Relation::kGreaterEq: return lhs >= c.b;
    case Relation::kEqual: return lhs == c.b;
  }
  return false;
}

}  // namespace tropjac
