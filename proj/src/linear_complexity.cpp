#include <koopdh/exact_linalg.hpp>
#include <koopdh/koopman_lift.hpp>
#include <koopdh/linear_complexity.hpp>

#include <stdexcept>

namespace koopdh {

namespace {

template <class Field>
using Values = std::vector<typename Field::value_type>;

template <class Field>
Values<Field> berlekamp_massey_core(const Values<Field>& s, const Field& f, std::size_t& length) {
  using T = typename Field::value_type;
  std::vector<T> conn{f.one()};  // C(x) = 1 + C_1 x + ...
  std::vector<T> prev{f.one()};
  T prev_disc = f.one();
  std::size_t shift = 1;
  length = 0;

  for (std::size_t n = 0; n < s.size(); ++n) {
    T disc = s[n];
    for (std::size_t i = 1; i <= length && i < conn.size(); ++i)
      disc = f.add(disc, f.mul(conn[i], s[n - i]));
    if (f.is_zero(disc)) {
      ++shift;
      continue;
    }
    const T coef = f.div(disc, prev_disc);
    std::vector<T> updated = conn;
    if (updated.size() < prev.size() + shift) updated.resize(prev.size() + shift, f.zero());
    for (std::size_t i = 0; i < prev.size(); ++i)
      updated[i + shift] = f.sub(updated[i + shift], f.mul(coef, prev[i]));
    if (2 * length <= n) {
      prev = conn;
      prev_disc = disc;
      length = n + 1 - length;
      shift = 1;
    } else {
      ++shift;
    }
    conn = std::move(updated);
  }
  conn.resize(length + 1, f.zero());
  Values<Field> out;
  for (std::size_t i = 1; i <= length; ++i) out.push_back(f.sub(f.zero(), conn[i]));
  return out;
}

template <class Field>
Values<Field> generate_core(const Values<Field>& conn, const Values<Field>& seed, std::size_t n,
                            const Field& f) {
  if (seed.size() != conn.size())
    throw std::invalid_argument("lfsr_generate: seed length must equal connection length");
  Values<Field> out(seed.begin(), seed.begin() + std::min(n, seed.size()));
  const std::size_t l = conn.size();
  while (out.size() < n) {
    auto next = f.zero();
    const std::size_t k = out.size();
    for (std::size_t i = 1; i <= l; ++i) next = f.add(next, f.mul(conn[i - 1], out[k - i]));
    out.push_back(next);
  }
  return out;
}

template <class Field>
std::optional<Values<Field>> fit_order(const Values<Field>& s, std::size_t order, const Field& f) {
  using T = typename Field::value_type;
  if (order == 0) {
    for (const auto& v : s)
      if (!f.is_zero(v)) return std::nullopt;
    return Values<Field>{};
  }
  if (s.size() <= order) return Values<Field>(order, f.zero());
  Matrix<T> a(s.size() - order, order, f.zero());
  Values<Field> b;
  for (std::size_t k = order; k < s.size(); ++k) {
    for (std::size_t i = 1; i <= order; ++i) a(k - order, i - 1) = s[k - i];
    b.push_back(s[k]);
  }
  auto res = solve(a, std::span<const T>(b), f);
  if (!res.solution) return std::nullopt;
  return *res.solution;
}

Int integral(const Rational& v) {
  if (v.get_den() != 1) throw std::invalid_argument("prime-field sequences must be integral");
  return v.get_num();
}

Values<PrimeField> to_prime(const std::vector<Rational>& v, const PrimeField& f) {
  Values<PrimeField> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(f.from_int(integral(x)));
  return out;
}

std::vector<Rational> from_prime(const Values<PrimeField>& v) { return to_rationals(v); }

}  // namespace

FieldTag FieldTag::prime(Int p) {
  if (!is_prime(p)) throw std::invalid_argument("FieldTag: modulus " + to_string(p) + " is not prime");
  return {Kind::Prime, std::move(p)};
}

std::string FieldTag::describe() const {
  return kind == Kind::Rational ? "rational" : "prime-field(" + to_string(modulus) + ")";
}

SequenceSample SequenceSample::rational(std::vector<Rational> terms) {
  return {std::move(terms), FieldTag::rational()};
}

SequenceSample SequenceSample::rational(const std::vector<Int>& terms) {
  return rational(to_rationals(terms));
}

SequenceSample SequenceSample::prime_field(const std::vector<Int>& terms, const Int& p) {
  SequenceSample out{{}, FieldTag::prime(p)};
  for (const auto& t : terms) out.terms.emplace_back(mod_floor(t, p));
  return out;
}

LinearComplexityResult berlekamp_massey(const SequenceSample& seq) {
  if (seq.terms.empty()) throw std::invalid_argument("berlekamp_massey: empty sequence");
  LinearComplexityResult out;
  out.field = seq.field;
  if (seq.field.kind == FieldTag::Kind::Rational) {
    out.connection = berlekamp_massey_core(seq.terms, RationalField{}, out.length);
  } else {
    const PrimeField f(seq.field.modulus);
    out.connection = from_prime(berlekamp_massey_core(to_prime(seq.terms, f), f, out.length));
  }
  const std::vector<Rational> seed(seq.terms.begin(), seq.terms.begin() + out.length);
  if (lfsr_generate(out.connection, seed, seq.terms.size(), seq.field) != seq.terms)
    throw ConsistencyError("berlekamp_massey: connection does not regenerate the sequence");
  return out;
}

std::vector<Rational> lfsr_generate(const std::vector<Rational>& connection,
                                    const std::vector<Rational>& seed, std::size_t n,
                                    const FieldTag& field) {
  if (field.kind == FieldTag::Kind::Rational)
    return generate_core(connection, seed, n, RationalField{});
  const PrimeField f(field.modulus);
  return from_prime(generate_core(to_prime(connection, f), to_prime(seed, f), n, f));
}

std::optional<LinearComplexityResult> bruteforce_min_lfsr(const SequenceSample& seq,
                                                          std::size_t max_order) {
  for (std::size_t order = 0; order <= max_order; ++order) {
    std::optional<std::vector<Rational>> conn;
    if (seq.field.kind == FieldTag::Kind::Rational) {
      conn = fit_order(seq.terms, order, RationalField{});
    } else {
      const PrimeField f(seq.field.modulus);
      if (auto c = fit_order(to_prime(seq.terms, f), order, f)) conn = from_prime(*c);
    }
    if (conn) return LinearComplexityResult{order, std::move(*conn), seq.field};
  }
  return std::nullopt;
}

std::vector<Rational> connection_to_alpha(const std::vector<Rational>& connection) {
  return {connection.rbegin(), connection.rend()};
}

KoopmanLfsrComparison compare_koopman_vs_lfsr(const DhParams& params) {
  const auto period = static_cast<std::size_t>(params.period().get_ui());
  const auto traj = simulate(params.m(), params, 1, 2 * period - 1);
  const auto lc = berlekamp_massey(SequenceSample::rational(traj.values));
  KoopmanLfsrComparison out;
  out.lfsr_length = lc.length;
  out.koopman_dimension = minimal_lifting_dimension(params);
  out.equal = out.lfsr_length == out.koopman_dimension;
  out.connection = lc.connection;
  out.connection_as_alpha = connection_to_alpha(lc.connection);
  return out;
}

}  // namespace koopdh
