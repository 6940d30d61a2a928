#include <koopdh/exact_linalg.hpp>

namespace koopdh {

PrimeField::PrimeField(Int p) : p_(std::move(p)) {
  if (p_ < 2) throw std::invalid_argument("PrimeField: modulus must be >= 2");
}

Int PrimeField::div(const Int& a, const Int& b) const {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), b.get_mpz_t(), p_.get_mpz_t()) == 0)
    throw std::domain_error("PrimeField: division by a non-invertible element");
  return mul(a, inv);
}

RankFactorization rank_factorize(const Matrix<Rational>& a) {
  Matrix<Rational> reduced = a;
  const auto pivots = reduce_rows(reduced, RationalField{}, reduced.cols());
  RankFactorization out;
  out.rank = pivots.size();
  out.left = Matrix<Rational>(a.rows(), out.rank);
  out.right = Matrix<Rational>(out.rank, a.cols());
  for (std::size_t k = 0; k < out.rank; ++k) {
    for (std::size_t r = 0; r < a.rows(); ++r) out.left(r, k) = a(r, pivots[k]);
    for (std::size_t c = 0; c < a.cols(); ++c) out.right(k, c) = reduced(k, c);
  }
  return out;
}

Matrix<Rational> pseudo_inverse(const Matrix<Rational>& a) {
  const auto fac = rank_factorize(a);
  if (fac.rank == 0) return Matrix<Rational>(a.cols(), a.rows());
  const auto ft = fac.left.transposed();
  const auto gt = fac.right.transposed();
  const auto ftf_inv = inverse(ft * fac.left);
  const auto ggt_inv = inverse(fac.right * gt);
  // Both Gram matrices are nonsingular by construction of the factorization.
  if (!ftf_inv || !ggt_inv) throw ConsistencyError("pseudo_inverse: singular Gram matrix");
  return gt * (*ggt_inv) * (*ftf_inv) * ft;
}

Rational frobenius_sq(const Matrix<Rational>& a) {
  Rational acc = 0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& v : a.row(r)) acc += v * v;
  return acc;
}

}  // namespace koopdh
