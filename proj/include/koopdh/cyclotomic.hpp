#pragma once

// Exact arithmetic on the unit circle.
//
// TurnAngle stores exp(2*pi*i*t) by the rational t in [0, 1). Sums of such
// points live in the cyclotomic field Q(zeta_n); CyclotomicNumber represents
// them as polynomials in zeta_n and decides equality by reduction modulo the
// n-th cyclotomic polynomial.

#include <koopdh/numeric.hpp>

#include <complex>
#include <cstddef>
#include <vector>

namespace koopdh {

class TurnAngle {
 public:
  TurnAngle() = default;
  explicit TurnAngle(Rational turns);
  static TurnAngle of(long num, long den) { return TurnAngle(make_rational(num, den)); }

  /// Fraction of a full turn, in [0, 1).
  const Rational& turns() const { return turns_; }

  /// Order of the point as a root of unity (the reduced denominator).
  Int order() const { return turns_.get_den(); }

  TurnAngle operator+(const TurnAngle& o) const { return TurnAngle(turns_ + o.turns_); }
  TurnAngle operator-(const TurnAngle& o) const { return TurnAngle(turns_ - o.turns_); }
  TurnAngle operator-() const { return TurnAngle(-turns_); }
  TurnAngle operator*(const Int& k) const { return TurnAngle(turns_ * Rational(k)); }

  friend bool operator==(const TurnAngle&, const TurnAngle&) = default;

  std::complex<double> to_complex() const;

 private:
  Rational turns_ = 0;
};

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<Int> cyclotomic_polynomial(std::size_t n);

/// An element sum_k c_k zeta_n^k of Q(zeta_n), zeta_n = exp(2*pi*i/n).
class CyclotomicNumber {
 public:
  explicit CyclotomicNumber(std::size_t n);
  /// The root of unity at `angle`; its order must divide n.
  static CyclotomicNumber root(std::size_t n, const TurnAngle& angle);
  static CyclotomicNumber constant(std::size_t n, const Rational& c);

  std::size_t conductor() const { return coeffs_.size(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber operator+(const CyclotomicNumber& o) const { return CyclotomicNumber(*this) += o; }
  CyclotomicNumber operator-(const CyclotomicNumber& o) const { return CyclotomicNumber(*this) -= o; }
  CyclotomicNumber operator*(const CyclotomicNumber& o) const;
  CyclotomicNumber operator*(const Rational& s) const;

  /// Exact zero test: reduces modulo the n-th cyclotomic polynomial.
  bool is_zero() const;

  std::complex<double> to_complex() const;

 private:
  void require_same_field(const CyclotomicNumber& o) const;
  std::vector<Rational> coeffs_;
};

}  // namespace koopdh
