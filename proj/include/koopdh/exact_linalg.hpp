#pragma once

// Gauss-Jordan elimination over exact fields. Rank decisions made here are
// exact; nothing in this header touches floating point.

#include <koopdh/matrix.hpp>
#include <koopdh/numeric.hpp>

#include <optional>
#include <span>
#include <vector>

namespace koopdh {

/// The rationals. Pivots are chosen by largest numerator magnitude.
struct RationalField {
  using value_type = Rational;

  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational from_int(const Int& v) const { return Rational(v); }
  bool is_zero(const Rational& a) const { return sgn(a) == 0; }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational div(const Rational& a, const Rational& b) const { return a / b; }
  Int pivot_score(const Rational& a) const { return abs(a.get_num()); }
};

/// Integers modulo a prime, elements kept reduced to [0, p-1].
class PrimeField {
 public:
  using value_type = Int;

  explicit PrimeField(Int p);

  const Int& modulus() const { return p_; }
  Int zero() const { return 0; }
  Int one() const { return 1; }
  Int from_int(const Int& v) const { return mod_floor(v, p_); }
  bool is_zero(const Int& a) const { return sgn(a) == 0; }
  Int add(const Int& a, const Int& b) const { return mod_floor(a + b, p_); }
  Int sub(const Int& a, const Int& b) const { return mod_floor(a - b, p_); }
  Int mul(const Int& a, const Int& b) const { return mod_floor(a * b, p_); }
  Int div(const Int& a, const Int& b) const;
  // Any nonzero pivot is exact; prefer the first one found.
  Int pivot_score(const Int& a) const { return sgn(a) == 0 ? 0 : 1; }

 private:
  Int p_;
};

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
/// Only the first `active_cols` columns are eligible as pivots (use this to
/// reduce an augmented matrix without pivoting on the right-hand side).
template <class Field>
std::vector<std::size_t> reduce_rows(Matrix<typename Field::value_type>& m, const Field& f,
                                     std::size_t active_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < active_cols && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    Int best_score = 0;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (f.is_zero(m(r, col))) continue;
      Int score = f.pivot_score(m(r, col));
      if (best == m.rows() || score > best_score) {
        best = r;
        best_score = score;
      }
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(best, c), m(row, c));

    const auto inv_pivot = f.div(f.one(), m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv_pivot);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || f.is_zero(m(r, col))) continue;
      const auto factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Field>
std::size_t rank(Matrix<typename Field::value_type> m, const Field& f) {
  const auto cols = m.cols();
  return reduce_rows(m, f, cols).size();
}

inline std::size_t rank(const Matrix<Rational>& m) { return rank(m, RationalField{}); }

template <class T>
struct LinearSolve {
  std::optional<std::vector<T>> solution;
  std::size_t rank_coefficients = 0;
  std::size_t rank_augmented = 0;

  bool solvable() const { return solution.has_value(); }
};

/// Solves A x = b. Consistency is decided by the Kronecker-Capelli rank test;
/// when solvable, free variables are set to zero.
template <class Field>
LinearSolve<typename Field::value_type> solve(const Matrix<typename Field::value_type>& a,
                                              std::span<const typename Field::value_type> b,
                                              const Field& f) {
  using T = typename Field::value_type;
  if (a.rows() != b.size()) throw std::invalid_argument("solve: right-hand side length mismatch");

  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = reduce_rows(aug, f, a.cols());

  LinearSolve<T> out;
  out.rank_coefficients = pivots.size();
  out.rank_augmented = pivots.size();
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
    if (!f.is_zero(aug(r, a.cols()))) {
      out.rank_augmented = pivots.size() + 1;
      return out;
    }
  }
  std::vector<T> x(a.cols(), f.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  out.solution = std::move(x);
  return out;
}

inline LinearSolve<Rational> solve(const Matrix<Rational>& a, std::span<const Rational> b) {
  return solve(a, b, RationalField{});
}

/// Inverse of a square matrix, or nullopt when singular.
template <class Field>
std::optional<Matrix<typename Field::value_type>> inverse(
    const Matrix<typename Field::value_type>& a, const Field& f) {
  using T = typename Field::value_type;
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const auto n = a.rows();
  Matrix<T> aug(n, 2 * n, f.zero());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = f.one();
  }
  if (reduce_rows(aug, f, n).size() != n) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

inline std::optional<Matrix<Rational>> inverse(const Matrix<Rational>& a) {
  return inverse(a, RationalField{});
}

/// Rank factorization A = F G with F = the pivot columns of A and G the
/// nonzero rows of rref(A). F has full column rank, G full row rank.
struct RankFactorization {
  Matrix<Rational> left;
  Matrix<Rational> right;
  std::size_t rank = 0;
};

RankFactorization rank_factorize(const Matrix<Rational>& a);

/// Moore-Penrose pseudo-inverse over the rationals, via a rank factorization:
/// A^+ = G^T (G G^T)^{-1} (F^T F)^{-1} F^T.
Matrix<Rational> pseudo_inverse(const Matrix<Rational>& a);

/// Squared Frobenius norm.
Rational frobenius_sq(const Matrix<Rational>& a);

}  // namespace koopdh
