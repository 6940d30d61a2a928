#include <koopdh/analysis.hpp>
#include <koopdh/io.hpp>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

// Python int <-> mpz_class and fractions.Fraction <-> mpq_class, via decimal strings.
namespace pybind11::detail {

template <>
struct type_caster<koopdh::Int> {
  PYBIND11_TYPE_CASTER(koopdh::Int, const_name("int"));

  bool load(handle src, bool) {
    if (!src || !PyLong_Check(src.ptr())) return false;
    return value.set_str(py::str(src).cast<std::string>(), 10) == 0;
  }

  static handle cast(const koopdh::Int& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  }
};

template <>
struct type_caster<koopdh::Rational> {
  PYBIND11_TYPE_CASTER(koopdh::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool convert) {
    if (!src) return false;
    if (PyLong_Check(src.ptr())) {
      koopdh::Int n;
      if (n.set_str(py::str(src).cast<std::string>(), 10) != 0) return false;
      value = koopdh::Rational(n);
      return true;
    }
    const auto fraction = py::module_::import("fractions").attr("Fraction");
    if (!py::isinstance(src, fraction) && !convert) return false;
    if (!py::isinstance(src, fraction)) return false;
    koopdh::Int num, den;
    num.set_str(py::str(src.attr("numerator")).cast<std::string>(), 10);
    den.set_str(py::str(src.attr("denominator")).cast<std::string>(), 10);
    value = koopdh::Rational(num, den);
    value.canonicalize();
    return true;
  }

  static handle cast(const koopdh::Rational& v, return_value_policy, handle) {
    const auto fraction = py::module_::import("fractions").attr("Fraction");
    py::object num = py::reinterpret_steal<py::object>(PyLong_FromString(v.get_num().get_str().c_str(), nullptr, 10));
    py::object den = py::reinterpret_steal<py::object>(PyLong_FromString(v.get_den().get_str().c_str(), nullptr, 10));
    return fraction(num, den).release();
  }
};

}  // namespace pybind11::detail

namespace {

using namespace koopdh;

std::vector<std::vector<Rational>> rows_of(const Matrix<Rational>& m) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

std::string dumped(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_koopdh, m) {
  m.doc() = "Koopman lifting and spectral analysis of the Diffie-Hellman map";

  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  py::class_<DhParams>(m, "DhParams")
      .def(py::init<Int, Int>(), py::arg("p"), py::arg("m"))
      .def_property_readonly("p", &DhParams::p)
      .def_property_readonly("m", &DhParams::m)
      .def_property_readonly("period", &DhParams::period)
      .def_property_readonly("half_period", &DhParams::half_period)
      .def("__eq__", [](const DhParams& a, const DhParams& b) { return a == b; })
      .def("__repr__", [](const DhParams& d) { return "DhParams(p=" + to_string(d.p()) + ", m=" + to_string(d.m()) + ")"; });

  m.def("mod_pow", &mod_pow, py::arg("base"), py::arg("exp"), py::arg("p"));
  m.def("is_prime", &is_prime);
  m.def("is_primitive_root", &is_primitive_root, py::arg("m"), py::arg("p"));
  m.def("find_primitive_root", &find_primitive_root);
  m.def("all_primitive_roots", &all_primitive_roots);
  m.def("euler_criterion", &euler_criterion, py::arg("m"), py::arg("p"));
  m.def(
      "simulate",
      [](const DhParams& params, std::size_t steps, const Int& x0, std::optional<Int> multiplier) {
        return simulate(multiplier.value_or(params.m()), params, x0, steps).values;
      },
      py::arg("params"), py::arg("steps"), py::arg("x0") = Int(1), py::arg("multiplier") = py::none());
  m.def(
      "dh_exchange",
      [](const DhParams& params, const Int& e, const Int& d) {
        const auto t = dh_exchange(params, e, d);
        return py::dict(py::arg("c_e") = t.c_e, py::arg("c_d") = t.c_d, py::arg("c_ed") = t.c_ed);
      },
      py::arg("params"), py::arg("e"), py::arg("d"));
  m.def("discrete_log_bruteforce", &discrete_log_bruteforce, py::arg("c"), py::arg("params"));
  m.def(
      "shared_secret_intersection",
      [](const Int& c_e, const Int& c_d, const DhParams& params) {
        const auto r = shared_secret_intersection(c_e, c_d, params);
        return py::make_tuple(r.secret, r.e, r.d);
      },
      py::arg("c_e"), py::arg("c_d"), py::arg("params"));

  m.def("lift_ciphertext", &lift_ciphertext, py::arg("c"), py::arg("params"), py::arg("q"));
  m.def(
      "lift_complex",
      [](const Int& x, const DhParams& params, std::size_t q) {
        std::vector<Rational> turns;
        for (const auto& a : lift_complex(x, params, q)) turns.push_back(a.turns());
        return turns;
      },
      py::arg("x"), py::arg("params"), py::arg("q"),
      "Angles of the complex observables as fractions of a full turn.");
  m.def("canonical_alpha", &canonical_alpha, py::arg("p"), py::arg("q"));
  m.def(
      "verify_closing",
      [](const DhParams& params, const std::vector<Rational>& alpha, std::size_t periods) {
        const std::size_t steps = static_cast<std::size_t>(params.period().get_ui()) * (periods + 1) + alpha.size();
        return verify_closing(simulate(params.m(), params, 1, steps), alpha, periods);
      },
      py::arg("params"), py::arg("alpha"), py::arg("periods") = 1);
  m.def("minimal_lifting_dimension", &minimal_lifting_dimension);
  m.def("index_lookup_attack", &index_lookup_attack, py::arg("c"), py::arg("params"));
  m.def(
      "companion_matrix", [](std::size_t q, std::vector<Rational> alpha) { return rows_of(CompanionSystem(q, std::move(alpha)).matrix()); },
      py::arg("q"), py::arg("alpha"));

  m.def(
      "eigenvalues", [](const Int& p) { return eigen_canonical(p, static_cast<std::size_t>(Int((p - 1) / 2).get_ui())).eigenvalues; },
      py::arg("p"));
  m.def(
      "recover_exponent",
      [](const DhParams& params, const Int& c) {
        const std::size_t q = static_cast<std::size_t>(params.half_period().get_ui());
        const auto dec = eigen_canonical(params.p(), q);
        const auto est =
            recover_exponent(lift_ciphertext(c, params, q), lift_ciphertext(1, params, q), dec, params.p());
        return py::make_tuple(est.e, std::string(to_string(est.parity)));
      },
      py::arg("params"), py::arg("c"), "Returns (e, parity).");

  m.def(
      "edmd_fit",
      [](const std::vector<Int>& series, std::size_t q, std::size_t n) {
        const auto fit = edmd_fit(build_dataset(std::span<const Int>(series), q, n));
        return py::dict(py::arg("a_hat") = rows_of(fit.a_hat), py::arg("residual_sq") = fit.residual_sq,
                        py::arg("kind") = std::string(to_string(fit.kind)));
      },
      py::arg("series"), py::arg("q"), py::arg("n"));

  m.def(
      "berlekamp_massey",
      [](const std::vector<Rational>& terms, std::optional<Int> field_prime) {
        LinearComplexityResult r;
        if (field_prime) {
          std::vector<Int> ints;
          for (const auto& t : terms) {
            if (t.get_den() != 1) throw std::invalid_argument("prime-field terms must be integers");
            ints.push_back(t.get_num());
          }
          r = berlekamp_massey(SequenceSample::prime_field(ints, *field_prime));
        } else {
          r = berlekamp_massey(SequenceSample::rational(terms));
        }
        return py::make_tuple(r.length, r.connection);
      },
      py::arg("terms"), py::arg("field_prime") = py::none(), "Returns (length, connection).");
  m.def(
      "lfsr_generate",
      [](const std::vector<Rational>& connection, const std::vector<Rational>& seed, std::size_t n) {
        return lfsr_generate(connection, seed, n);
      },
      py::arg("connection"), py::arg("seed"), py::arg("n"));

  // Report builders return JSON text; the package wrapper decodes it.
  m.def("_run_experiment", [](const std::string& config, unsigned threads) {
    return dumped(run_experiment(parse_config(Json::parse(config)), threads));
  });
  m.def("_verify_theorem_report", [](const Int& from, const Int& to, bool all) {
    return dumped(verify_theorem_report(from, to, all ? GeneratorPolicy::All : GeneratorPolicy::Smallest));
  });
  m.def("_recover_report", [](const DhParams& params, std::optional<Int> c, std::optional<Int> e, bool parity_only) {
    return dumped(recover_report(params, c, e, parity_only));
  });
  m.def("_complexity_report", [](const DhParams& params) { return dumped(complexity_report(params)); });
  m.def("_edmd_report",
        [](const DhParams& params, std::size_t q, std::size_t n) { return dumped(edmd_report(params, q, n)); });
}
