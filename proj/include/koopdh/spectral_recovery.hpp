#pragma once

// Analytic eigendecomposition of the canonical companion matrix and recovery
// of the secret exponent from lifted initial and terminal states.

#include <koopdh/cyclotomic.hpp>
#include <koopdh/koopman_lift.hpp>
#include <koopdh/matrix.hpp>

#include <complex>
#include <optional>
#include <vector>

namespace koopdh {

using Complex = std::complex<double>;

/// Eigenvalues of the canonical companion matrix at q = (p-1)/2, i.e. the
/// roots of (lambda^q + 1)(lambda - 1). Index 0 is lambda = 1; index k+1 is
/// exp(i pi (2k+1)/q).
struct SpectralDecomposition {
  std::size_t q = 0;
  std::vector<TurnAngle> eigen_turns;
  std::vector<Complex> eigenvalues;
  /// Columns are v(lambda) = (1, lambda, ..., lambda^q).
  Matrix<Complex> vandermonde;
  Matrix<Complex> vandermonde_inv;

  std::size_t dimension() const { return q + 1; }
  /// Index of lambda = -1 (present iff q is odd).
  std::optional<std::size_t> minus_one_index() const;
};

struct ResidueMatch {
  std::size_t eigen_index = 0;
  /// e mod order(lambda_j).
  std::size_t matched_power = 0;
  std::size_t modulus = 0;
  double match_error = 0.0;
};

enum class Parity { Even, Odd, Unavailable };

std::string_view to_string(Parity parity);

struct ExponentEstimate {
  Int e;
  std::vector<ResidueMatch> residues;
  Parity parity = Parity::Unavailable;
};

/// Only q = (p-1)/2 is supported; other orders are rejected.
SpectralDecomposition eigen_canonical(const Int& p, std::size_t q);

/// Same, after checking that `system` carries the canonical alpha.
SpectralDecomposition eigen_canonical(const Int& p, const CompanionSystem& system);

/// A v(lambda) - lambda v(lambda) evaluated in Q(zeta_{2q}); true iff every
/// entry of every eigenpair residual is exactly zero.
bool eigenpairs_exact(const SpectralDecomposition& dec, const CompanionSystem& system);

/// max over eigenpairs of ||A v - lambda v||_inf in floating point.
double eigenpair_residual(const SpectralDecomposition& dec, const CompanionSystem& system);

/// z~ = V^{-1} z.
std::vector<Complex> transform(const std::vector<Complex>& z, const SpectralDecomposition& dec);
std::vector<Complex> transform(const std::vector<Int>& z, const SpectralDecomposition& dec);

/// Lambda^e z~, with lambda^e taken from the exact angles.
std::vector<Complex> advance(const std::vector<Complex>& z_tilde, const SpectralDecomposition& dec,
                             const Int& e);

std::vector<Complex> to_complex(const std::vector<Int>& z);

/// Matches z~_{e,j}/z~_{0,j} against the powers of each lambda_j != 1 and
/// combines the resulting congruences. Throws ConsistencyError when the
/// eigenvalues disagree or do not pin e modulo p-1.
ExponentEstimate recover_exponent(const std::vector<Complex>& z_e, const std::vector<Complex>& z_0,
                                  const SpectralDecomposition& dec, const Int& p);
ExponentEstimate recover_exponent(const std::vector<Int>& z_e, const std::vector<Int>& z_0,
                                  const SpectralDecomposition& dec, const Int& p);

/// Sign of the transformed ratio at lambda = -1.
Parity parity(const std::vector<Complex>& z_e, const std::vector<Complex>& z_0,
              const SpectralDecomposition& dec);
Parity parity(const std::vector<Int>& z_e, const std::vector<Int>& z_0,
              const SpectralDecomposition& dec);

}  // namespace koopdh
