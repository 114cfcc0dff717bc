// Python bindings: symbols, kernels, renewal function, oracles and validation.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "levyhit/error.hpp"
#include "levyhit/hitting.hpp"
#include "levyhit/io.hpp"
#include "levyhit/kernels.hpp"
#include "levyhit/oracle.hpp"
#include "levyhit/renewal.hpp"
#include "levyhit/symbols.hpp"
#include "levyhit/validation.hpp"

namespace py = pybind11;
using namespace levyhit;

namespace {

py::dict band_dict(const EstimateBand& b) {
    py::dict d;
    d["lower"] = b.lower;
    d["central"] = b.central;
    d["upper"] = b.upper;
    d["regime"] = to_string(b.regime);
    d["clamped"] = b.clamped;
    d["alternates"] = b.alternates;
    py::list cs;
    for (const auto& c : b.constants_used) cs.append(py::make_tuple(c.name, c.value, to_string(c.provenance)));
    d["constants"] = cs;
    d["notes"] = b.notes;
    return d;
}

py::dict mc_dict(const McResult& r) {
    py::dict d;
    d["estimate"] = r.estimate;
    d["std_error"] = r.std_error;
    d["n_effective"] = r.n_effective;
    d["bias_note"] = to_string(r.bias_note);
    return d;
}

McConfig mc_config(long paths, double h, std::uint64_t seed) {
    McConfig c;
    c.n_paths = paths;
    c.h = h;
    c.seed = seed;
    c.validate();
    return c;
}

py::object parse_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Point and interval hitting for one-dimensional symmetric Levy processes";
    m.attr("__version__") = kToolVersion;

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());
    py::register_exception<InsufficientSampleError>(m, "InsufficientSampleError", base.ptr());

    py::class_<SymbolSpec>(m, "SymbolSpec")
        .def_static("stable", &SymbolSpec::stable, py::arg("alpha"))
        .def_static("brownian", &SymbolSpec::brownian, py::arg("sigma2") = 1.0)
        .def_static("cauchy_plus_bm", &SymbolSpec::cauchy_plus_bm)
        .def_static("log_perturbed", &SymbolSpec::log_perturbed)
        .def_static("atomic_stablelike", &SymbolSpec::atomic_stablelike, py::arg("alpha"))
        .def_static("two_stable", &SymbolSpec::two_stable, py::arg("alpha1"), py::arg("alpha2"))
        .def_static("parse", [](const std::string& text) { return parse_spec(text); }, py::arg("text"))
        .def_static("load", &load_spec, py::arg("path"))
        .def_property_readonly("name", &SymbolSpec::name)
        .def("psi", &SymbolSpec::psi, py::arg("xi"))
        .def("psi_star", &SymbolSpec::psi_star, py::arg("xi"))
        .def("psi_inverse", &SymbolSpec::psi_inverse, py::arg("u"))
        .def("__repr__", [](const SymbolSpec& s) { return "SymbolSpec(" + s.name() + ")"; });

    m.def("kernel_K", [](const SymbolSpec& s, double x) { return kernel_K(s, x).value; }, py::arg("spec"),
          py::arg("x"), "K(x) = (1/pi) int (1 - cos xs) / psi(s) ds");
    m.def("kernel_K_tilde", [](const SymbolSpec& s, double x) { return kernel_K(s, x, {}, KernelSymbol::psi_star).value; },
          py::arg("spec"), py::arg("x"), "K with psi replaced by psi*");
    m.def("kernel_K_lambda", [](const SymbolSpec& s, double x, double l) { return kernel_K_lambda(s, x, l).value; },
          py::arg("spec"), py::arg("x"), py::arg("lam"));
    m.def("potential", [](const SymbolSpec& s, double x, double l) { return potential_u_lambda(s, x, l).value; },
          py::arg("spec"), py::arg("x"), py::arg("lam"), "lambda-potential density u^lambda(x)");
    m.def("renewal_V", [](const SymbolSpec& s, double x) { return renewal_V(s, x); }, py::arg("spec"), py::arg("x"));

    m.def("point_tail", [](const SymbolSpec& s, double x, double t) { return laplace_point_tail(s, x, t); },
          py::arg("spec"), py::arg("x"), py::arg("t"), "P^x(T_0 > t) by Laplace inversion");
    m.def("point_tail_band",
          [](const SymbolSpec& s, double x, double t, const std::string& mode) {
              PointModeConfig c;
              c.mode = point_mode_from_string(mode);
              return band_dict(point_tail_band(s, x, t, c));
          },
          py::arg("spec"), py::arg("x"), py::arg("t"), py::arg("mode") = "general");
    m.def("interval_tail_band",
          [](const SymbolSpec& s, double x, double R, double t) { return band_dict(interval_tail_band(s, x, R, t)); },
          py::arg("spec"), py::arg("x"), py::arg("R"), py::arg("t"));
    m.def("heat_kernel", [](const SymbolSpec& s, double x, double t) { return heat_kernel_free(s, x, t); },
          py::arg("spec"), py::arg("x"), py::arg("t"));

    m.def("simulate_interval_tail",
          [](const SymbolSpec& s, double x, double R, double t, long paths, double h, std::uint64_t seed) {
              HittingRun r;
              {
                  py::gil_scoped_release nogil;
                  r = simulate_hitting(s, x, R, t, mc_config(paths, h, seed));
              }
              py::dict d = mc_dict(r.fine);
              d["coarse"] = mc_dict(r.coarse);
              d["bias_bar"] = r.bias_bar;
              return d;
          },
          py::arg("spec"), py::arg("x"), py::arg("R"), py::arg("t"), py::arg("paths") = 20000, py::arg("h") = 1e-3,
          py::arg("seed") = 1, "P^x(T_[-R,R] > t) from skeletons at steps h and h/4");

    m.def("check_names", [] {
        std::vector<std::string> out;
        for (const auto& c : check_catalog()) out.push_back(c.name);
        return out;
    });
    m.def("validate",
          [](const std::string& suite, const std::vector<std::string>& only, const std::vector<SymbolSpec>& specs,
             std::uint64_t seed, double mc_scale, bool acceptance) {
              ValidationOptions o;
              o.suite = suite_from_string(suite);
              o.only = only;
              o.seed = seed;
              o.mc_scale = mc_scale;
              o.acceptance = acceptance;
              ValidationReport rep;
              {
                  py::gil_scoped_release nogil;
                  rep = run_validation(specs, o);
              }
              return parse_json(rep.to_json());
          },
          py::arg("suite") = "quick", py::arg("only") = std::vector<std::string>{},
          py::arg("specs") = std::vector<SymbolSpec>{}, py::arg("seed") = 1, py::arg("mc_scale") = 1.0,
          py::arg("acceptance") = true, "run a validation suite and return the report as a dict");
}
