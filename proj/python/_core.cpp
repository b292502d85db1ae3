#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypmod/error.hpp"
#include "hypmod/hecke.hpp"
#include "hypmod/padic.hpp"
#include "hypmod/qseries.hpp"
#include "hypmod/verify.hpp"

namespace py = pybind11;
using namespace hypmod;

namespace {

Rational to_rational(const py::handle& x) { return parse_rational(py::str(x).cast<std::string>()); }

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::int_(py::str(r.get_num().get_str())), py::int_(py::str(r.get_den().get_str())));
}

py::int_ integer(const Integer& z) { return py::int_(py::str(z.get_str())); }

BackendKind backend_from(const std::string& name) {
  if (name == "exact" || name == "modular") return BackendKind::modular;
  if (name == "complex") return BackendKind::complex;
  throw Error(ErrorCode::UnknownName, "backend '" + name + "'");
}

KFamily kind_from(const std::string& name) {
  if (name == "K4" || name == "k4") return KFamily::K4;
  if (name == "K5" || name == "k5") return KFamily::K5;
  throw Error(ErrorCode::UnknownName, "family kind '" + name + "'");
}

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["theorem"] = to_string(r.theorem);
  d["r"] = fraction(r.r);
  d["cprime"] = r.cprime ? fraction(*r.cprime) : py::none();
  d["p"] = r.p;
  d["backend"] = to_string(r.backend);
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["status"] = to_string(r.status);
  d["reason"] = r.reason;
  return d;
}

py::list terms(const IntSeries& s) {
  py::list out;
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
    if (s.coeffs()[i] != 0) out.append(py::make_tuple(fraction(Rational(s.exponent_at(i), kGrid)), integer(s.coeffs()[i])));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static auto* error = new py::object(py::reinterpret_steal<py::object>(
      PyErr_NewException("hypmod._core.HypmodError", PyExc_RuntimeError, nullptr)));
  m.attr("HypmodError") = *error;
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      py::object exc = (*error)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error->ptr(), exc.ptr());
    }
  });

  m.def(
      "verify",
      [](const std::string& theorem, py::handle r, std::uint64_t p, const std::string& backend, py::object cprime) {
        const auto t = parse_theorem(theorem);
        const auto b = backend_from(backend);
        const auto rr = to_rational(r);
        const auto c = cprime.is_none() ? Rational(1, 2) : to_rational(cprime);
        VerificationReport rep;
        {
          py::gil_scoped_release release;
          switch (t) {
            case TheoremId::thm1: rep = verify_weight4(rr, p, b); break;
            case TheoremId::thm2: rep = verify_weight2(rr, p, b); break;
            case TheoremId::f1: rep = verify_appell_f1(rr, p, b); break;
            case TheoremId::f2: rep = verify_appell_f2(rr, c, p, b); break;
          }
        }
        return report_dict(rep);
      },
      py::arg("theorem"), py::arg("r"), py::arg("p"), py::arg("backend") = "exact", py::arg("cprime") = py::none());

  m.def(
      "sweep_json",
      [](const std::string& theorem, std::uint64_t pmax, const std::string& backend, int jobs, py::object rs,
         py::object cprimes) {
        SweepOptions o;
        o.theorem = parse_theorem(theorem);
        o.pmax = pmax;
        o.backend = backend_from(backend);
        o.jobs = jobs;
        if (!rs.is_none()) {
          for (auto r : rs) o.rs.push_back(to_rational(r));
        }
        if (!cprimes.is_none()) {
          for (auto c : cprimes) o.cprimes.push_back(to_rational(c));
        }
        py::gil_scoped_release release;
        return to_json(sweep(o));
      },
      py::arg("theorem"), py::arg("pmax"), py::arg("backend") = "exact", py::arg("jobs") = 1,
      py::arg("rs") = py::none(), py::arg("cprimes") = py::none());

  m.def(
      "eigen_coefficient",
      [](const std::string& kind, py::handle r, std::uint64_t p) {
        return integer(eigen_coefficient(kind_from(kind), to_rational(r), p));
      },
      py::arg("kind"), py::arg("r"), py::arg("p"));

  m.def(
      "k_series",
      [](const std::string& kind, py::handle r, std::int64_t precision) {
        const auto rr = to_rational(r);
        return terms(kind_from(kind) == KFamily::K4 ? k4_series(rr, precision) : k5_series(rr, precision));
      },
      py::arg("kind"), py::arg("r"), py::arg("precision"));

  m.def(
      "eta_quotient",
      [](const std::vector<std::pair<py::object, long>>& factors, std::int64_t precision) {
        std::vector<EtaFactor> fs;
        for (const auto& [d, e] : factors) fs.push_back({to_rational(d), e});
        return terms(eta_quotient(fs, precision));
      },
      py::arg("factors"), py::arg("precision"));

  m.def("identity_names", &identity_names);
  m.def(
      "check_identity",
      [](const std::string& name, std::int64_t precision) {
        const auto rep = check_identity(name, precision);
        py::dict d;
        d["name"] = rep.name;
        d["precision"] = rep.precision;
        d["passed"] = rep.passed;
        d["compared"] = rep.compared;
        d["first_mismatch"] = rep.first_mismatch ? py::object(fraction(Rational(*rep.first_mismatch, kGrid))) : py::none();
        return d;
      },
      py::arg("name"), py::arg("precision") = 200);

  m.def("family_ids", [] {
    std::vector<std::string> ids;
    for (const auto& f : family_catalog()) ids.push_back(f.id);
    return ids;
  });
  m.def(
      "hecke_table",
      [](const std::string& family, py::object primes, int jobs) {
        const auto& fam = find_family(family);
        const auto ps = primes.is_none() ? fam.table_primes : primes.cast<std::vector<long>>();
        py::gil_scoped_release release;
        std::vector<std::string> cells;
        for (const auto& c : compute_hecke_table(fam, ps, jobs).cells) cells.push_back(c.format());
        return cells;
      },
      py::arg("family"), py::arg("primes") = py::none(), py::arg("jobs") = 1);

  m.def(
      "gamma_p", [](py::handle x, std::uint64_t p) { return gamma_p(to_rational(x), p).residue; }, py::arg("x"),
      py::arg("p"));
  m.def(
      "jacobi_mod_p",
      [](py::handle a, py::handle b, std::uint64_t p) { return jacobi_mod_p(to_rational(a), to_rational(b), p).residue; },
      py::arg("a"), py::arg("b"), py::arg("p"));
  m.def(
      "ar_congruence",
      [](py::handle r, std::uint64_t p) {
        const auto rep = check_ar_congruence(to_rational(r), p);
        py::dict d;
        d["k"] = rep.k;
        d["a_r"] = fraction(rep.a_r);
        d["lhs"] = rep.lhs.residue;
        d["rhs"] = rep.rhs.residue;
        d["passed"] = rep.passed;
        return d;
      },
      py::arg("r"), py::arg("p"));

  m.attr("report_schema_version") = kReportSchemaVersion;
}
