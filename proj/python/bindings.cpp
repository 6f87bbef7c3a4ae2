// Python module cmzeta._core.  Exact values cross the boundary as wire
// strings ("13/2 + 21/2*w"); reports come back as dicts.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cmzeta/analytic.hpp"
#include "cmzeta/commands.hpp"
#include "cmzeta/config.hpp"
#include "cmzeta/eisenstein.hpp"

namespace py = pybind11;
using namespace cmzeta;

namespace {

Domain domain_of(const std::string &s)
{
    if (s == "exact") {
        return Domain::exact;
    }
    if (s == "fast") {
        return Domain::fast;
    }
    throw py::value_error("domain must be 'exact' or 'fast'");
}

py::object violation(const std::optional<Violation> &v)
{
    if (!v) {
        return py::none();
    }
    return py::make_tuple(v->index, v->valuation);
}

py::dict report_dict(const VerificationReport &r)
{
    py::dict d;
    d["p"] = r.p;
    d["class"] = to_string(r.cls);
    d["place"] = r.place < 0 ? py::object(py::none()) : py::object(py::int_(r.place));
    d["domain"] = to_string(r.domain);
    d["N"] = r.N;
    d["k"] = r.k;
    d["ok"] = r.ok;
    d["mu"] = r.mu ? py::object(py::str(r.mu_string())) : py::object(py::none());
    d["lambda"] = r.lambda_recovered ? py::object(py::str(r.lambda_recovered->to_string())) : py::object(py::none());
    d["first_violation"] = violation(r.first_violation);
    d["earliest_violation"] = violation(r.earliest_violation);
    d["pre_correction_violation"] = violation(r.pre_correction_violation);
    d["terms_checked"] = r.terms_checked;
    d["undecidable"] = r.undecidable;
    d["notes"] = r.notes;
    return d;
}

std::vector<std::string> coefficients(const TruncatedSeries<QuadRat> &f, long from, long to)
{
    std::vector<std::string> out;
    for (long n = from; n < to; ++n) {
        out.push_back(f[n].to_string());
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact and p-adic checks of the weight-2 Eisenstein value on CM curves";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InconsistencyError>(m, "InconsistencyError", PyExc_RuntimeError);

    py::class_<CurveModel>(m, "Curve")
        .def_readonly("name", &CurveModel::name)
        .def_readonly("dK", &CurveModel::dK)
        .def_readonly("conductor", &CurveModel::conductor)
        .def_property_readonly("g2", [](const CurveModel &c) { return c.g2.to_string(); })
        .def_property_readonly("g3", [](const CurveModel &c) { return c.g3.to_string(); })
        .def_property_readonly("field", [](const CurveModel &c) { return py::make_tuple(c.field.s, c.field.t); })
        .def("discriminant", [](const CurveModel &c) { return c.discriminant().to_string(); })
        .def("j_invariant", [](const CurveModel &c) { return c.j_invariant().to_string(); })
        .def("norm_discriminant", [](const CurveModel &c) { return c.norm_discriminant().get_str(); })
        .def("classify", [](const CurveModel &c, unsigned long p) { return to_string(classify_prime(c, p)); },
             py::arg("p"))
        .def("__repr__", [](const CurveModel &c) { return "<Curve " + c.name + ">"; });

    m.def("load_curve", &load_curve, py::arg("name_or_path") = "cm15",
          "A built-in curve by name, or a TOML curve file.");
    m.def("curve_names", &builtin_curve_names);

    m.def(
        "expand",
        [](const CurveModel &c, long N, const std::string &route) {
            if (route != "compose" && route != "formal-group") {
                throw py::value_error("route must be 'compose' or 'formal-group'");
            }
            WeierstrassExpansion ex;
            {
                py::gil_scoped_release unlocked;
                ex = expand(c, N, route == "compose" ? ZetaRoute::compose : ZetaRoute::formal_group);
            }
            py::dict d;
            d["N"] = N;
            std::vector<std::string> cs;
            for (const auto &x : ex.cs) {
                cs.push_back(x.to_string());
            }
            d["c"] = cs;
            d["log"] = coefficients(ex.log, 0, N);
            d["zeta"] = coefficients(ex.zeta, -1, std::min<long>(ex.zeta.precision(), N));
            d["zeta_of_log"] = coefficients(ex.zeta_of_log, -1, N);
            return d;
        },
        py::arg("curve"), py::arg("N"), py::arg("route") = "compose",
        "Coefficient strings.  'log' and 'zeta_of_log' start at u^0 and u^-1, 'zeta' at z^-1.");

    m.def(
        "verify",
        [](const CurveModel &c, const std::string &A, const std::vector<unsigned long> &primes, long N, unsigned k,
           const std::string &domain) {
            const QuadRat a = QuadRat::parse(A, c.field);
            VerifyOptions opt;
            opt.N = N;
            opt.k = k;
            opt.domain = domain_of(domain);
            std::vector<VerificationReport> reports;
            {
                py::gil_scoped_release unlocked;
                std::optional<WeierstrassExpansion> ex;
                if (opt.domain == Domain::exact) {
                    ex = expand(c, N, ZetaRoute::formal_group);
                }
                reports = verify_primes(c, ex ? &*ex : nullptr, a, primes, opt);
            }
            py::list out;
            for (const auto &r : reports) {
                out.append(report_dict(r));
            }
            return out;
        },
        py::arg("curve"), py::arg("A"), py::arg("primes"), py::arg("N") = 500, py::arg("k") = 2,
        py::arg("domain") = "fast");

    m.def(
        "recover",
        [](const CurveModel &c, const std::vector<std::pair<unsigned long, unsigned>> &primes, long bound, long N) {
            std::vector<LambdaRecovery> residues;
            {
                py::gil_scoped_release unlocked;
                for (const auto &[p, k] : primes) {
                    residues.push_back(recover_lambda(c, nullptr, p, k, Domain::fast, N));
                }
            }
            const Reconstruction r = reconstruct_lambda(residues, c.field, Integer(bound));
            py::dict d;
            py::list res;
            for (const auto &x : residues) {
                res.append(py::make_tuple(x.p, x.k, x.coordinates.to_string()));
            }
            d["residues"] = res;
            d["value"] = r.value ? py::object(py::str(r.value->to_string())) : py::object(py::none());
            return d;
        },
        py::arg("curve"), py::arg("primes"), py::arg("bound"), py::arg("N") = 500,
        "primes is a list of (p, k) pairs at ordinary p.");

    m.def("analytic_A", py::overload_cast<const CurveModel &, int>(&analytic_A), py::arg("curve"),
          py::arg("embedding"));
    m.def(
        "tau", [](const CurveModel &c, int embedding) { return periods(c, embedding).tau; }, py::arg("curve"),
        py::arg("embedding"));
    m.def(
        "recognize",
        [](const CurveModel &c, double v0, double v1, long bound) -> py::object {
            const auto r = recognize_quad(v0, v1, c.field, bound);
            return r ? py::object(py::str(r->to_string())) : py::object(py::none());
        },
        py::arg("curve"), py::arg("v0"), py::arg("v1"), py::arg("bound") = 10000);

    m.def(
        "run",
        [](const std::string &command, const std::string &config_toml) {
            JobConfig cfg;
            apply_config_text(cfg, config_toml, "<python>");
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release unlocked;
                code = run_command(command, cfg, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("command"), py::arg("config_toml") = "",
        "Runs a CLI command in-process with a TOML job; returns (exit code, stdout, stderr).");
}
