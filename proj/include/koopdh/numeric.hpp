#pragma once

// Exact integer and rational scalars shared by every module.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace koopdh {

using Int = mpz_class;
using Rational = mpq_class;

/// Raised when an internal cross-check fails (e.g. two routes disagree).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed external input (CSV/JSON data files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) { return v.get_str(); }

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Non-negative residue of v modulo p (p > 0).
inline Int mod_floor(const Int& v, const Int& p) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

inline std::vector<Rational> to_rationals(const std::vector<Int>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

}  // namespace koopdh
