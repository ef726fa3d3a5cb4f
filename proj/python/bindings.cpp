#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "optomech/config.hpp"
#include "optomech/error.hpp"
#include "optomech/figures.hpp"
#include "optomech/linear_dynamics.hpp"
#include "optomech/measures.hpp"
#include "optomech/spectra.hpp"
#include "optomech/steady_state.hpp"
#include "optomech/sweep.hpp"

namespace py = pybind11;
using namespace optomech;

namespace {

CovarianceState as_covariance(const Matrix4& V) {
    CovarianceState c;
    c.V = V;
    return c;
}

DriftMatrix as_drift(const Matrix4& A) {
    DriftMatrix d;
    d.entries = A;
    return d;
}

}  // namespace

PYBIND11_MODULE(_optomech, m) {
    m.doc() = "Steady states, entanglement and mechanical squeezing of a parametrically driven optomechanical cavity";

    py::exception<Error>(m, "OptomechError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object type = py::module_::import("optomech._optomech").attr("OptomechError");
            py::object exc = type(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            exc.attr("validation") = is_validation_error(e.code());
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    py::class_<Scenario>(m, "Scenario")
        .def(py::init(&reference_scenario))
        .def("__getitem__", [](const Scenario& s, const std::string& key) { return get_parameter(s, key); })
        .def("__setitem__", [](Scenario& s, const std::string& key, double v) { set_parameter(s, key, v); })
        .def("set", [](Scenario& s, const std::string& assignment) { apply_assignment(s, assignment); })
        .def("to_config", &format_config)
        .def("__repr__", [](const Scenario& s) { return "Scenario(\n" + format_config(s) + ")"; });

    m.def("reference_scenario", &reference_scenario);
    m.def("parameter_names", [] {
        std::vector<std::string> out;
        for (auto n : parameter_names()) out.emplace_back(n);
        return out;
    });
    m.def("parse_config", [](const std::string& text) { return parse_config(text, reference_scenario()); });
    m.def("load_config", [](const std::filesystem::path& path) { return load_config(path, reference_scenario()); });

    py::class_<EffectiveParams>(m, "EffectiveParams")
        .def_readonly("kappa", &EffectiveParams::kappa)
        .def_readonly("gamma_m", &EffectiveParams::gamma_m)
        .def_readonly("delta", &EffectiveParams::delta)
        .def_readonly("Omega_M", &EffectiveParams::Omega_M)
        .def_readonly("G0", &EffectiveParams::G0)
        .def_readonly("F", &EffectiveParams::F)
        .def_readonly("n_m", &EffectiveParams::n_m);
    m.def("resolve", &resolve);

    py::class_<BranchPoint>(m, "BranchPoint")
        .def_readonly("z", &BranchPoint::z)
        .def_readonly("n_cav", &BranchPoint::n_cav)
        .def_readonly("beta", &BranchPoint::beta)
        .def_readonly("stable", &BranchPoint::stable)
        .def_property_readonly("alpha", &BranchPoint::alpha)
        .def_property_readonly("branch", [](const BranchPoint& p) { return std::string(to_string(p.branch)); })
        .def("__repr__", [](const BranchPoint& p) {
            return "BranchPoint(" + std::string(to_string(p.branch)) + ", z=" + std::to_string(p.z) +
                   (p.stable ? ", stable)" : ", unstable)");
        });

    m.def("population_cubic", &population_cubic);
    m.def("steady_states", &classify_and_solve, "all branches, ordered lower to upper");

    m.def("drift_matrix", [](const BranchPoint& p, const EffectiveParams& params) { return build_drift(p, params).entries; });
    m.def("noise_matrix", [](const EffectiveParams& params) { return noise_matrix(params).matrix(); });
    m.def("eigenvalues", [](const Matrix4& A) { return eigenvalues(as_drift(A)); });
    m.def("covariance", [](const Matrix4& A, const EffectiveParams& params) {
        return solve_lyapunov(as_drift(A), noise_matrix(params)).V;
    });

    m.def("log_negativity", [](const Matrix4& V) { return log_negativity(as_covariance(V)).E_N; });
    m.def("symplectic_eigenvalues", &symplectic_eigenvalues);
    m.def("quadrature_variance", &quadrature_variance);

    py::class_<QuadratureScan>(m, "QuadratureScan")
        .def_readonly("thetas", &QuadratureScan::thetas)
        .def_readonly("variances", &QuadratureScan::variances)
        .def_readonly("theta_min", &QuadratureScan::theta_min)
        .def_readonly("S_min", &QuadratureScan::S_min)
        .def_readonly("theta_max", &QuadratureScan::theta_max)
        .def_readonly("S_max", &QuadratureScan::S_max);
    m.def("scan_quadratures", &scan_quadratures, py::arg("V_M"), py::arg("n_theta") = 180);

    m.def(
        "spectrum_variance",
        [](const Matrix4& A, const EffectiveParams& params, double theta) {
            return quadrature_spectrum(as_drift(A), noise_matrix(params), theta).integrated_variance;
        },
        "quadrature variance from the integrated noise spectrum");

    m.def(
        "reproduce_figure",
        [](const std::string& tag, const Scenario& base, const std::filesystem::path& out_dir, int workers) {
            FigureOptions options;
            options.out_dir = out_dir;
            options.workers = workers;
            py::gil_scoped_release release;
            return reproduce_figure(tag, base, options);
        },
        py::arg("tag"), py::arg("base") = reference_scenario(), py::arg("out_dir") = ".", py::arg("workers") = 1);
}
