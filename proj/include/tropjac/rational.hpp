#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "tropjac/error.hpp"

namespace tropjac {

using Rational = mpq_class;
using RatVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" with q > 0 and gcd(p, q) = 1.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::kParse, "empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(ErrorCode::kParse, "malformed rational '" + s + "'");
  if (sgn(r.get_den()) <= 0) throw Error(ErrorCode::kParse, "denominator must be positive in '" + s + "'");
  mpz_class g = gcd(r.get_num(), r.get_den());
  if (g != 1) throw Error(ErrorCode::kParse, "rational '" + s + "' is not in lowest terms");
  return r;
}

/// num/den in lowest terms.
inline Rational ratio(long num, long den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long floor_to_long(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

inline long ceil_to_long(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

}  // namespace tropjac
