#include <koopdh/exact_linalg.hpp>
#include <koopdh/koopman_lift.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace koopdh {

namespace {

std::size_t as_size(const Int& v) {
  if (v < 0 || !v.fits_ulong_p()) throw std::invalid_argument("value does not fit a size: " + to_string(v));
  return static_cast<std::size_t>(v.get_ui());
}

std::size_t period_of(const ModTrajectory& traj) { return as_size(traj.params.period()); }

}  // namespace

std::string_view to_string(DictionaryKind kind) {
  switch (kind) {
    case DictionaryKind::Shift: return "shift";
    case DictionaryKind::ComplexExp: return "complex_exp";
    case DictionaryKind::AffineAugment: return "affine_augment";
    case DictionaryKind::AdditiveComplex: return "additive_complex";
  }
  return "unknown";
}

std::size_t ObservableDictionary::dimension() const {
  switch (kind) {
    case DictionaryKind::Shift:
    case DictionaryKind::ComplexExp: return q + 1;
    case DictionaryKind::AffineAugment: return 2;
    case DictionaryKind::AdditiveComplex: return 1;
  }
  return 0;
}

CompanionSystem::CompanionSystem(std::size_t order, std::vector<Rational> coefficients)
    : q(order), alpha(std::move(coefficients)) {
  if (alpha.size() != q + 1)
    throw std::invalid_argument("CompanionSystem: alpha must have length q+1");
}

Matrix<Rational> CompanionSystem::matrix() const {
  Matrix<Rational> a(q + 1, q + 1);
  for (std::size_t r = 0; r < q; ++r) a(r, r + 1) = 1;
  for (std::size_t c = 0; c <= q; ++c) a(q, c) = alpha[c];
  return a;
}

std::vector<Rational> CompanionSystem::characteristic_polynomial() const {
  std::vector<Rational> poly(q + 2);
  for (std::size_t j = 0; j <= q; ++j) poly[j] = -alpha[j];
  poly[q + 1] = 1;
  return poly;
}

std::vector<Int> lift_shift(const ModTrajectory& traj, std::size_t q, std::size_t k) {
  std::vector<Int> z;
  z.reserve(q + 1);
  for (std::size_t j = 0; j <= q; ++j) z.push_back(traj.at(k + j));
  return z;
}

std::vector<Int> lift_ciphertext(const Int& c, const DhParams& params, std::size_t q) {
  const Int& p = params.p();
  if (c < 1 || c >= p) throw std::invalid_argument("lift_ciphertext: c must lie in [1, p-1]");
  std::vector<Int> z{c};
  z.reserve(q + 1);
  for (std::size_t j = 0; j < q; ++j) z.push_back(mod_floor(z.back() * params.m(), p));
  return z;
}

std::vector<TurnAngle> lift_complex(const Int& x, const DhParams& params, std::size_t q) {
  const Int& p = params.p();
  if (x < 1 || x >= p) throw std::invalid_argument("lift_complex: x must lie in [1, p-1]");
  std::vector<TurnAngle> h;
  h.reserve(q + 1);
  Int weight = params.m();  // m^{j+1} mod p
  for (std::size_t j = 0; j <= q; ++j) {
    h.emplace_back(Rational(mod_floor(weight * x, p), p));
    weight = mod_floor(weight * params.m(), p);
  }
  return h;
}

std::vector<Rational> canonical_alpha(const Int& p, std::size_t q) {
  if (p <= 3 || !is_prime(p)) throw std::invalid_argument("canonical_alpha: p must be a prime > 3");
  const std::size_t qt = as_size((p - 1) / 2);
  if (q < qt) throw std::invalid_argument("canonical_alpha: q must be at least (p-1)/2");
  std::vector<Rational> alpha(q + 1, Rational(0));
  alpha[q - qt] += 1;
  alpha[q - qt + 1] += -1;
  alpha[q] += 1;
  return alpha;
}

bool verify_closing(const ModTrajectory& traj, const std::vector<Rational>& alpha,
                    std::size_t periods) {
  if (alpha.empty()) return false;
  const std::size_t q = alpha.size() - 1;
  const std::size_t span = periods * period_of(traj);
  for (std::size_t k = 0; k < span; ++k) {
    Rational acc = 0;
    for (std::size_t j = 0; j <= q; ++j)
      if (alpha[j] != 0) acc += alpha[j] * Rational(traj.at(k + j));
    if (acc != Rational(traj.at(k + q + 1))) return false;
  }
  return true;
}

bool verify_closing_mod_p(const ModTrajectory& traj, const std::vector<Rational>& alpha) {
  if (alpha.empty()) return false;
  const std::size_t q = alpha.size() - 1;
  const Int& p = traj.params.p();
  for (const auto& a : alpha)
    if (a.get_den() != 1) throw std::invalid_argument("verify_closing_mod_p: alpha must be integral");
  for (std::size_t k = 0; k < period_of(traj); ++k) {
    Int acc = 0;
    for (std::size_t j = 0; j <= q; ++j) acc += alpha[j].get_num() * traj.at(k + j);
    if (mod_floor(acc - traj.at(k + q + 1), p) != 0) return false;
  }
  return true;
}

HankelSystem hankel_system(const ModTrajectory& traj, std::size_t q) {
  const std::size_t n = period_of(traj);
  HankelSystem sys{Matrix<Rational>(n, q + 1), std::vector<Rational>(n)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c <= q; ++c) sys.a(r, c) = traj.at((r + c) % n);
    sys.b[r] = traj.at((r + q + 1) % n);
  }
  return sys;
}

AlphaSolve solve_alpha_exact(const HankelSystem& sys) {
  auto res = solve(sys.a, std::span<const Rational>(sys.b));
  return {std::move(res.solution), res.rank_coefficients, res.rank_augmented};
}

LiftingScan scan_lifting_dimension(const DhParams& params) {
  const std::size_t n = as_size(params.period());
  const auto traj = simulate(params.m(), params, 1, n - 1);
  LiftingScan scan;
  for (std::size_t q = 0; q + 1 <= n; ++q) {
    const auto solved = solve_alpha_exact(hankel_system(traj, q));
    LiftingScanStep step{q, solved.rank_a, solved.rank_ab, false};
    step.closes = solved.alpha && verify_closing(traj, *solved.alpha);
    scan.steps.push_back(step);
    if (step.closes) {
      scan.dimension = q + 1;
      scan.alpha = *solved.alpha;
      return scan;
    }
  }
  throw ConsistencyError("minimal_lifting_dimension: no closing alpha up to q = p-2");
}

std::size_t minimal_lifting_dimension(const DhParams& params) {
  return scan_lifting_dimension(params).dimension;
}

CompanionSystem full_period_system(const DhParams& params) {
  const std::size_t q = as_size(params.p() - 2);
  std::vector<Rational> alpha(q + 1, Rational(0));
  alpha[0] = 1;
  return CompanionSystem(q, std::move(alpha));
}

Int index_lookup_attack(const Int& c, const DhParams& params) {
  const auto z0 = lift_ciphertext(1, params, as_size(params.p() - 2));
  for (std::size_t i = 0; i < z0.size(); ++i) {
    if (z0[i] != c) continue;
    return i == 0 ? params.period() : Int(static_cast<unsigned long>(i));
  }
  throw std::invalid_argument("index_lookup_attack: c must lie in [1, p-1]");
}

std::vector<Int> AffineLift::step(const std::vector<Int>& z) const {
  return {matrix(0, 0) * z[0] + matrix(0, 1) * z[1], matrix(1, 0) * z[0] + matrix(1, 1) * z[1]};
}

std::vector<Int> AffineLift::generate(std::size_t n) const {
  std::vector<Int> out;
  out.reserve(n);
  auto z = z0;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(recover(z));
    z = step(z);
  }
  return out;
}

AffineLift affine_augment_system(const Int& m, const Int& a, const Int& x0) {
  Matrix<Int> mat(2, 2);
  mat(0, 0) = m;
  mat(0, 1) = 1;
  mat(1, 1) = 1;
  return {std::move(mat), {x0, a}};
}

Int AdditiveComplexLift::recover(const TurnAngle& z) const {
  const Rational x = z.turns() * Rational(modulus);
  if (x.get_den() != 1) throw std::invalid_argument("AdditiveComplexLift: angle is off the lattice");
  return x.get_num();
}

Int AdditiveComplexLift::recover(std::complex<double> z) const {
  // x = -i n/(2 pi) ln z, principal branch, then reduced mod n.
  const double turns = std::arg(z) / (2.0 * std::numbers::pi);
  const Int nearest = static_cast<long>(std::lround(turns * modulus.get_d()));
  return mod_floor(nearest, modulus);
}

std::vector<Int> AdditiveComplexLift::generate(std::size_t n) const {
  std::vector<Int> out;
  out.reserve(n);
  TurnAngle z = z0;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(recover(z));
    z = step(z);
  }
  return out;
}

AdditiveComplexLift additive_complex_lift(const Int& modulus, const Int& x0) {
  if (modulus < 1) throw std::invalid_argument("additive_complex_lift: modulus must be positive");
  return {modulus, TurnAngle(Rational(Int(1), modulus)), TurnAngle(Rational(x0, modulus))};
}

}  // namespace koopdh
