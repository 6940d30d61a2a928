#pragma once

// Linear complexity of sequences over an exact field (the rationals or a
// prime field) and its comparison with the Koopman lifting dimension.
//
// Connection coefficients use the convention s_k = sum_{i=1..L} c_i s_{k-i}
// (newest first). A companion row alpha of order q = L-1 corresponds to
// c_i = alpha_{L-i}.

#include <koopdh/modular_dynamics.hpp>

#include <optional>
#include <string>
#include <vector>

namespace koopdh {

struct FieldTag {
  enum class Kind { Rational, Prime };
  Kind kind = Kind::Rational;
  Int modulus;  // meaningful for Kind::Prime only

  static FieldTag rational() { return {}; }
  static FieldTag prime(Int p);

  std::string describe() const;
  friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

struct SequenceSample {
  std::vector<Rational> terms;
  FieldTag field;

  static SequenceSample rational(std::vector<Rational> terms);
  static SequenceSample rational(const std::vector<Int>& terms);
  /// Reduces every term into [0, p-1]; terms must be integral.
  static SequenceSample prime_field(const std::vector<Int>& terms, const Int& p);
};

struct LinearComplexityResult {
  std::size_t length = 0;
  std::vector<Rational> connection;
  FieldTag field;
};

LinearComplexityResult berlekamp_massey(const SequenceSample& seq);

/// Extends `seed` by the recurrence up to n terms (or truncates it).
std::vector<Rational> lfsr_generate(const std::vector<Rational>& connection,
                                    const std::vector<Rational>& seed, std::size_t n,
                                    const FieldTag& field = FieldTag::rational());

/// Smallest L <= max_order admitting an exact recurrence, found by solving
/// the linear system for each order in turn; nullopt if none fits.
std::optional<LinearComplexityResult> bruteforce_min_lfsr(const SequenceSample& seq,
                                                          std::size_t max_order);

struct KoopmanLfsrComparison {
  std::size_t lfsr_length = 0;
  std::size_t koopman_dimension = 0;
  bool equal = false;
  std::vector<Rational> connection;
  /// The connection rewritten as a companion row alpha_0..alpha_{L-1}.
  std::vector<Rational> connection_as_alpha;
};

/// Berlekamp-Massey over the rationals on two periods of the base trajectory
/// against the minimal lifting dimension.
KoopmanLfsrComparison compare_koopman_vs_lfsr(const DhParams& params);

/// alpha_{j} = c_{L-j}.
std::vector<Rational> connection_to_alpha(const std::vector<Rational>& connection);

}  // namespace koopdh
