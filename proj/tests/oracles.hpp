#pragma once

// Reference implementations used only by the tests. They avoid the library's
// own elimination and recurrence code so that agreement means something.

#include <koopdh/numeric.hpp>

#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

using koopdh::Int;
using koopdh::Rational;

// Repeated multiplication, no squaring.
inline Int slow_pow(const Int& b, const Int& e, const Int& p) {
  Int r = 1;
  for (Int i = 0; i < e; ++i) r = (r * b) % p;
  return r % p;
}

inline bool slow_is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d < n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long multiplicative_order(long m, long p) {
  long x = m % p, k = 1;
  while (x != 1) {
    x = x * m % p;
    ++k;
  }
  return k;
}

inline std::vector<long> primitive_roots(long p) {
  std::vector<long> out;
  for (long m = 2; m < p; ++m)
    if (multiplicative_order(m, p) == p - 1) out.push_back(m);
  return out;
}

inline std::vector<long> primes_between(long lo, long hi) {
  std::vector<long> out;
  for (long n = lo; n <= hi; ++n)
    if (slow_is_prime(n)) out.push_back(n);
  return out;
}

// Walks m, m^2, ... until c; 1 maps to p-1.
inline long orbit_log(long c, long m, long p) {
  long x = m % p;
  for (long k = 1; k < p; ++k, x = x * m % p)
    if (x == c % p) return k;
  return -1;
}

// Plain row reduction over the rationals, first nonzero pivot.
inline std::size_t naive_rank(const std::vector<std::vector<Int>>& in) {
  std::vector<std::vector<Rational>> a;
  for (const auto& row : in) a.emplace_back(row.begin(), row.end());
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Smallest L such that s_k is a fixed linear combination of the previous L
// terms for every k >= L. Decided by rank([H | b]) == rank(H) with H the
// (n-L) x L window matrix, over the integers.
inline std::size_t linear_complexity(const std::vector<Int>& s) {
  const std::size_t n = s.size();
  for (std::size_t len = 0; len <= n; ++len) {
    if (len == n) return n;
    std::vector<std::vector<Int>> h, hb;
    bool zero_rhs = true;
    for (std::size_t k = len; k < n; ++k) {
      std::vector<Int> row(s.begin() + static_cast<std::ptrdiff_t>(k - len), s.begin() + static_cast<std::ptrdiff_t>(k));
      h.push_back(row);
      row.push_back(s[k]);
      hb.push_back(row);
      zero_rhs = zero_rhs && s[k] == 0;
    }
    if (len == 0) {
      if (zero_rhs) return 0;
      continue;
    }
    if (naive_rank(h) == naive_rank(hb)) return len;
  }
  return n;
}

inline std::vector<Int> dh_sequence(long p, long m, std::size_t n) {
  std::vector<Int> out;
  long x = 1;
  for (std::size_t k = 0; k < n; ++k, x = x * m % p) out.push_back(x);
  return out;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240917u);
  return gen;
}

inline long uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

}  // namespace oracle
