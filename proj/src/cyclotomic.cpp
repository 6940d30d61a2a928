#include <koopdh/cyclotomic.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace koopdh {

TurnAngle::TurnAngle(Rational turns) : turns_(std::move(turns)) {
  turns_.canonicalize();
  // Reduce into [0, 1).
  Int whole;
  mpz_fdiv_q(whole.get_mpz_t(), turns_.get_num_mpz_t(), turns_.get_den_mpz_t());
  turns_ -= whole;
}

std::complex<double> TurnAngle::to_complex() const {
  // Map to (-1/2, 1/2] first so the argument to sin/cos stays small.
  double t = turns_.get_d();
  if (t > 0.5) t -= 1.0;
  const double theta = 2.0 * std::numbers::pi * t;
  return {std::cos(theta), std::sin(theta)};
}

namespace {

using Poly = std::vector<Int>;

// Exact division of integer polynomials; the divisor must be monic.
Poly divide_exact(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) throw std::logic_error("divide_exact: degree underflow");
  Poly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const Int c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("divide_exact: nonzero remainder");
  return quot;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
  static std::mutex mu;
  static std::map<std::size_t, Poly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 = prod_{d | n} Phi_d(x)
  Poly poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::size_t d = 1; d < n; ++d)
    if (n % d == 0) poly = divide_exact(std::move(poly), cyclotomic_polynomial(d));
  std::lock_guard lock(mu);
  cache.emplace(n, poly);
  return poly;
}

CyclotomicNumber::CyclotomicNumber(std::size_t n) : coeffs_(n, Rational(0)) {
  if (n == 0) throw std::invalid_argument("CyclotomicNumber: conductor must be positive");
}

CyclotomicNumber CyclotomicNumber::root(std::size_t n, const TurnAngle& angle) {
  const Rational scaled = angle.turns() * Rational(static_cast<unsigned long>(n));
  if (scaled.get_den() != 1)
    throw std::invalid_argument("CyclotomicNumber::root: angle is not an n-th root of unity");
  CyclotomicNumber out(n);
  out.coeffs_[scaled.get_num().get_ui() % n] = 1;
  return out;
}

CyclotomicNumber CyclotomicNumber::constant(std::size_t n, const Rational& c) {
  CyclotomicNumber out(n);
  out.coeffs_[0] = c;
  return out;
}

void CyclotomicNumber::require_same_field(const CyclotomicNumber& o) const {
  if (o.coeffs_.size() != coeffs_.size())
    throw std::invalid_argument("CyclotomicNumber: mismatched conductors");
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
  require_same_field(o);
  const std::size_t n = coeffs_.size();
  CyclotomicNumber out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) out.coeffs_[(i + j) % n] += coeffs_[i] * o.coeffs_[j];
  }
  return out;
}

CyclotomicNumber CyclotomicNumber::operator*(const Rational& s) const {
  CyclotomicNumber out(*this);
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

bool CyclotomicNumber::is_zero() const {
  const auto phi = cyclotomic_polynomial(coeffs_.size());
  const std::size_t deg = phi.size() - 1;
  std::vector<Rational> rem = coeffs_;
  for (std::size_t i = rem.size(); i-- > deg;) {
    const Rational c = rem[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) rem[i - deg + j] -= c * Rational(phi[j]);
  }
  for (std::size_t i = 0; i < deg; ++i)
    if (rem[i] != 0) return false;
  return true;
}

std::complex<double> CyclotomicNumber::to_complex() const {
  const std::size_t n = coeffs_.size();
  std::complex<double> acc = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (coeffs_[k] == 0) continue;
    acc += coeffs_[k].get_d() * TurnAngle::of(static_cast<long>(k), static_cast<long>(n)).to_complex();
  }
  return acc;
}

}  // namespace koopdh
