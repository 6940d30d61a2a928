#include <koopdh/spectral_recovery.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace koopdh {

namespace {

// Relative floor below which a transformed coordinate carries no phase.
constexpr double kNegligible = 1e-9;

Complex unit(std::size_t num, std::size_t den) {
  return TurnAngle::of(static_cast<long>(num % den), static_cast<long>(den)).to_complex();
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Congruence {
  std::size_t residue = 0;
  std::size_t modulus = 1;
};

std::optional<Congruence> merge(const Congruence& a, const Congruence& b) {
  const std::size_t g = std::gcd(a.modulus, b.modulus);
  if (a.residue % g != b.residue % g) return std::nullopt;
  const std::size_t l = a.modulus / g * b.modulus;
  std::size_t r = a.residue;
  while (r % b.modulus != b.residue) r += a.modulus;
  return Congruence{r % l, l};
}

std::size_t checked_q(const Int& p, const SpectralDecomposition& dec) {
  if (Int(static_cast<unsigned long>(2 * dec.q)) != p - 1)
    throw std::invalid_argument("spectral decomposition does not belong to p = " + to_string(p));
  return dec.q;
}

}  // namespace

std::string_view to_string(Parity parity) {
  switch (parity) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Unavailable: return "unavailable";
  }
  return "unknown";
}

std::optional<std::size_t> SpectralDecomposition::minus_one_index() const {
  const TurnAngle half = TurnAngle::of(1, 2);
  for (std::size_t j = 0; j < eigen_turns.size(); ++j)
    if (eigen_turns[j] == half) return j;
  return std::nullopt;
}

SpectralDecomposition eigen_canonical(const Int& p, std::size_t q) {
  if (p <= 3 || !is_prime(p)) throw std::invalid_argument("eigen_canonical: p must be a prime > 3");
  if (q < 1 || Int(static_cast<unsigned long>(2 * q)) != p - 1)
    throw std::invalid_argument("eigen_canonical: only q = (p-1)/2 has the analysed spectrum");

  SpectralDecomposition dec;
  dec.q = q;
  const std::size_t n = q + 1;
  dec.eigen_turns.push_back(TurnAngle::of(0, 1));
  for (std::size_t k = 0; k < q; ++k)
    dec.eigen_turns.push_back(TurnAngle::of(static_cast<long>(2 * k + 1), static_cast<long>(2 * q)));
  for (const auto& t : dec.eigen_turns) dec.eigenvalues.push_back(t.to_complex());

  dec.vandermonde = Matrix<Complex>(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      dec.vandermonde(i, j) = (dec.eigen_turns[j] * Int(static_cast<unsigned long>(i))).to_complex();

  // Row j of V^{-1} holds the coefficients of the Lagrange polynomial
  // P(x) / ((x - lambda_j) P'(lambda_j)), P(x) = (x^q + 1)(x - 1).
  std::vector<double> poly(n + 1, 0.0);
  poly[0] -= 1.0;
  poly[1] += 1.0;
  poly[q] -= 1.0;
  poly[q + 1] += 1.0;
  dec.vandermonde_inv = Matrix<Complex>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex lambda = dec.eigenvalues[j];
    std::vector<Complex> quot(n);
    quot[q] = poly[q + 1];
    for (std::size_t i = q; i >= 1; --i) quot[i - 1] = poly[i] + lambda * quot[i];
    const auto power = [&](std::size_t k) {
      return (dec.eigen_turns[j] * Int(static_cast<unsigned long>(k))).to_complex();
    };
    const Complex lambda_q = power(q);
    const Complex deriv =
        static_cast<double>(q) * power(q - 1) * (lambda - 1.0) + (lambda_q + 1.0);
    for (std::size_t i = 0; i < n; ++i) dec.vandermonde_inv(j, i) = quot[i] / deriv;
  }
  return dec;
}

SpectralDecomposition eigen_canonical(const Int& p, const CompanionSystem& system) {
  if (system.alpha != canonical_alpha(p, system.q))
    throw std::invalid_argument("eigen_canonical: companion system does not carry the canonical alpha");
  return eigen_canonical(p, system.q);
}

bool eigenpairs_exact(const SpectralDecomposition& dec, const CompanionSystem& system) {
  if (system.dimension() != dec.dimension())
    throw std::invalid_argument("eigenpairs_exact: dimension mismatch");
  const std::size_t field = 2 * dec.q;
  const auto a = system.matrix();
  const std::size_t n = dec.dimension();
  for (const auto& turn : dec.eigen_turns) {
    const auto lambda = CyclotomicNumber::root(field, turn);
    std::vector<CyclotomicNumber> v;
    for (std::size_t i = 0; i < n; ++i)
      v.push_back(CyclotomicNumber::root(field, turn * Int(static_cast<unsigned long>(i))));
    for (std::size_t r = 0; r < n; ++r) {
      CyclotomicNumber acc(field);
      for (std::size_t c = 0; c < n; ++c)
        if (a(r, c) != 0) acc += v[c] * a(r, c);
      acc -= lambda * v[r];
      if (!acc.is_zero()) return false;
    }
  }
  return true;
}

double eigenpair_residual(const SpectralDecomposition& dec, const CompanionSystem& system) {
  if (system.dimension() != dec.dimension())
    throw std::invalid_argument("eigenpair_residual: dimension mismatch");
  const auto a = system.matrix();
  const std::size_t n = dec.dimension();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < n; ++c)
        if (a(r, c) != 0) acc += a(r, c).get_d() * dec.vandermonde(c, j);
      worst = std::max(worst, std::abs(acc - dec.eigenvalues[j] * dec.vandermonde(r, j)));
    }
  }
  return worst;
}

std::vector<Complex> to_complex(const std::vector<Int>& z) {
  std::vector<Complex> out;
  out.reserve(z.size());
  for (const auto& v : z) out.emplace_back(v.get_d(), 0.0);
  return out;
}

std::vector<Complex> transform(const std::vector<Complex>& z, const SpectralDecomposition& dec) {
  if (z.size() != dec.dimension()) throw std::invalid_argument("transform: dimension mismatch");
  return dec.vandermonde_inv * z;
}

std::vector<Complex> transform(const std::vector<Int>& z, const SpectralDecomposition& dec) {
  return transform(to_complex(z), dec);
}

std::vector<Complex> advance(const std::vector<Complex>& z_tilde, const SpectralDecomposition& dec,
                             const Int& e) {
  if (z_tilde.size() != dec.dimension()) throw std::invalid_argument("advance: dimension mismatch");
  std::vector<Complex> out(z_tilde.size());
  for (std::size_t j = 0; j < z_tilde.size(); ++j)
    out[j] = (dec.eigen_turns[j] * e).to_complex() * z_tilde[j];
  return out;
}

ExponentEstimate recover_exponent(const std::vector<Complex>& z_e, const std::vector<Complex>& z_0,
                                  const SpectralDecomposition& dec, const Int& p) {
  const std::size_t period = 2 * checked_q(p, dec);
  const auto te = transform(z_e, dec);
  const auto t0 = transform(z_0, dec);
  const double floor = kNegligible * std::max(1.0, max_abs(t0));

  ExponentEstimate est;
  Congruence combined;
  for (std::size_t j = 0; j < dec.dimension(); ++j) {
    const auto& turn = dec.eigen_turns[j].turns();
    if (turn == 0) continue;  // lambda = 1 has no angle to match
    if (std::abs(t0[j]) < floor) continue;
    const Complex ratio = te[j] / t0[j];
    const std::size_t order = turn.get_den().get_ui();
    const std::size_t step = turn.get_num().get_ui();

    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < order; ++t) {
      const double dist = std::abs(ratio - unit(t * step, order));
      if (dist < best_dist) {
        best_dist = dist;
        best = t;
      }
    }
    // Half the minimum chord between distinct powers of lambda_j.
    const double accept = std::sin(std::numbers::pi / static_cast<double>(order));
    if (!(best_dist < accept))
      throw ConsistencyError("recover_exponent: ratio at eigenvalue " + std::to_string(j) +
                             " matches no power of lambda");
    est.residues.push_back({j, best, order, best_dist});
    const auto merged = merge(combined, {best, order});
    if (!merged)
      throw ConsistencyError("recover_exponent: eigenvalue " + std::to_string(j) +
                             " is inconsistent with the others");
    combined = *merged;
  }
  if (combined.modulus != period)
    throw ConsistencyError("recover_exponent: constraints determine e only modulo " +
                           std::to_string(combined.modulus));
  est.e = combined.residue == 0 ? Int(static_cast<unsigned long>(period))
                                : Int(static_cast<unsigned long>(combined.residue));
  est.parity = parity(z_e, z_0, dec);
  return est;
}

ExponentEstimate recover_exponent(const std::vector<Int>& z_e, const std::vector<Int>& z_0,
                                  const SpectralDecomposition& dec, const Int& p) {
  return recover_exponent(to_complex(z_e), to_complex(z_0), dec, p);
}

Parity parity(const std::vector<Complex>& z_e, const std::vector<Complex>& z_0,
              const SpectralDecomposition& dec) {
  const auto idx = dec.minus_one_index();
  if (!idx) return Parity::Unavailable;
  const auto te = transform(z_e, dec);
  const auto t0 = transform(z_0, dec);
  if (std::abs(t0[*idx]) < kNegligible * std::max(1.0, max_abs(t0)))
    throw ConsistencyError("parity: transformed initial state vanishes at lambda = -1");
  return (te[*idx] / t0[*idx]).real() > 0 ? Parity::Even : Parity::Odd;
}

Parity parity(const std::vector<Int>& z_e, const std::vector<Int>& z_0,
              const SpectralDecomposition& dec) {
  return parity(to_complex(z_e), to_complex(z_0), dec);
}

}  // namespace koopdh
