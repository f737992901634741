#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <stdexcept>
#include <string>

#include "cauchywell/analysis.hpp"
#include "cauchywell/pv_quadrature.hpp"
#include "cauchywell/refine.hpp"
#include "cauchywell/solver.hpp"
#include "cauchywell/trial.hpp"

namespace py = pybind11;
using namespace cauchywell;

namespace {

Parity parity_of(const std::string& s)
{
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    throw std::invalid_argument("parity must be 'even' or 'odd'");
}

TrialKind kind_of(const std::string& s)
{
    if (s == "ground") return TrialKind::ground_cos;
    if (s == "excited") return TrialKind::excited_sin_cos;
    throw std::invalid_argument("kind must be 'ground' or 'excited'");
}

py::dict grid_dict(const ResidualGrid& grid)
{
    py::list xs, psis, ads, residuals;
    for (const auto& s : grid.samples) {
        xs.append(s.x);
        psis.append(s.psi);
        ads.append(s.ad_psi);
        residuals.append(s.residual);
    }
    py::dict d;
    d["x"] = xs;
    d["psi"] = psis;
    d["ad_psi"] = ads;
    d["residual"] = residuals;
    d["sup"] = grid.sup;
    d["boundary_limit"] = grid.boundary_limit;
    d["e_used"] = grid.e_used;
    return d;
}

py::dict report_dict(const ResidualReport& r)
{
    py::dict d;
    d["sup"] = r.sup;
    d["sup_location"] = r.sup_location;
    d["grid_sup"] = r.grid_sup;
    d["boundary_upper"] = r.boundary_upper;
    d["boundary_lower"] = r.boundary_lower;
    d["grid_points"] = r.grid_points;
    return d;
}

py::dict deviation_dict(const Deviation& d)
{
    py::dict out;
    out["field"] = d.field;
    out["computed"] = d.computed;
    out["reference"] = d.reference;
    out["deviation"] = d.deviation;
    out["tolerance"] = d.tolerance;
    out["pass"] = d.pass;
    return out;
}

}  // namespace

PYBIND11_MODULE(_cauchywell, m)
{
    m.doc() = "Spectral solver for the Cauchy operator (-Laplace)^(1/2) on (-1,1) "
              "with exterior Dirichlet conditions";
    m.attr("__version__") = kToolVersion;

    py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<lookup_error>(m, "LookupError", PyExc_KeyError);

    py::class_<SpectralSolution>(m, "Solution")
        .def_property_readonly("parity",
                               [](const SpectralSolution& s) { return to_string(s.parity); })
        .def_readonly("degree", &SpectralSolution::degree)
        .def_readonly("rank", &SpectralSolution::rank)
        .def_readonly("E", &SpectralSolution::E)
        .def_readonly("alphas", &SpectralSolution::alphas)
        .def_readonly("C", &SpectralSolution::norm_c)
        .def_readonly("imag_residue", &SpectralSolution::imag_residue)
        .def_readonly("precision_bits", &SpectralSolution::precision_bits)
        .def_readonly("E_str", &SpectralSolution::E_str)
        .def("__call__",
             [](const SpectralSolution& s, double x) { return evaluate(s.wavefunction(), x); },
             py::arg("x"), "Evaluate the normalized eigenfunction at x")
        .def("__repr__", [](const SpectralSolution& s) {
            std::ostringstream os;
            os << "Solution(parity=" << to_string(s.parity) << ", degree=" << s.degree
               << ", rank=" << s.rank << ", E=" << s.E << ")";
            return os.str();
        });

    py::class_<TrialFunction>(m, "Trial")
        .def_property_readonly("kind",
                               [](const TrialFunction& t) { return to_string(t.kind); })
        .def_property_readonly("parity",
                               [](const TrialFunction& t) { return to_string(t.parity()); })
        .def_readonly("theta_num", &TrialFunction::theta_num)
        .def_readonly("gamma_terms", &TrialFunction::gamma_terms)
        .def_readonly("C", &TrialFunction::norm_c)
        .def_property_readonly("theta", &TrialFunction::theta)
        .def_property_readonly("alphas",
                               [](const TrialFunction& t) { return as_weighted(t).alphas; })
        .def("__call__",
             [](const TrialFunction& t, double x) { return evaluate_trial(t, x); },
             py::arg("x"), "Evaluate the normalized trial state at x")
        .def("__repr__", [](const TrialFunction& t) {
            std::ostringstream os;
            os << "Trial(kind=" << to_string(t.kind) << ", theta_num=" << t.theta_num << ")";
            return os.str();
        });

    m.def(
        "solve",
        [](const std::string& parity, int degree, int rank, double imag_tol) {
            return solve(parity_of(parity), degree, rank, imag_tol);
        },
        py::arg("parity"), py::arg("degree"), py::arg("rank") = 1, py::arg("imag_tol") = 1e-8,
        "Eigenpair of the given parity and truncation degree, ranks ascending in E");

    m.def(
        "solve_all",
        [](const std::string& parity, int degree, double imag_tol) {
            return solve_all(parity_of(parity), degree, imag_tol).solutions;
        },
        py::arg("parity"), py::arg("degree"), py::arg("imag_tol") = 1e-8,
        "All real eigenpairs at this truncation, ascending in E");

    m.def(
        "refine",
        [](const std::string& parity, int degree, int rank, int precision_bits,
           int max_iterations) {
            RefineSettings settings;
            settings.precision_bits = precision_bits;
            settings.max_iterations = max_iterations;
            return refine(parity_of(parity), degree, rank, settings);
        },
        py::arg("parity"), py::arg("degree"), py::arg("rank") = 1,
        py::arg("precision_bits") = 0, py::arg("max_iterations") = 60,
        "Re-solve one eigenpair in extended precision (bits=0 picks a per-degree default)");

    m.def(
        "apply_closed",
        [](const std::string& parity_s, const std::vector<double>& alphas) {
            const Parity parity = parity_of(parity_s);
            const auto image = to_dense(
                apply_AD_closed(WeightedPolynomial<double>{parity, alphas, {}}), parity);
            py::dict d;
            d["image"] = image.coeffs;
            d["boundary_value"] = boundary_value(image);
            return d;
        },
        py::arg("parity"), py::arg("alphas"),
        "Closed-form operator image (dense monomial coefficients) and its value at x=1");

    m.def(
        "apply_numeric",
        [](const std::function<double(double)>& psi, double x) {
            return apply_AD_numeric(psi, x);
        },
        py::arg("psi"), py::arg("x"),
        "Operator applied to an arbitrary callable by adaptive principal-value quadrature");

    m.def(
        "eigenvalue_from_series",
        [](const std::vector<double>& coeffs, const std::string& parity) {
            const auto est = eigenvalue_from_series(coeffs, parity_of(parity));
            return py::make_tuple(est.value, est.last_increment);
        },
        py::arg("coeffs"), py::arg("parity"),
        "Eigenvalue estimate from Taylor coefficients of psi: (value, last_increment)");

    m.def(
        "residual_grid",
        [](const SpectralSolution& sol, int grid_points) {
            return grid_dict(solution_residual(sol, grid_points));
        },
        py::arg("solution"), py::arg("grid_points") = 1001,
        "Chebyshev-sampled |A_D psi - E psi| for a solved state");

    m.def(
        "compare",
        [](const SpectralSolution& sol) {
            py::list out;
            for (const auto& d : compare(sol, ToleranceConfig::defaults()))
                out.append(deviation_dict(d));
            return out;
        },
        py::arg("solution"),
        "Deviations from the published reference tables at the default tolerances");

    m.def(
        "to_json", [](const SpectralSolution& sol) { return to_json(sol).dump(2); },
        py::arg("solution"), "Versioned JSON document for a solution");

    m.def(
        "load_solution",
        [](const std::string& text) {
            std::istringstream is(text);
            return load_solution(is);
        },
        py::arg("text"), "Parse a solution document produced by to_json");

    m.def(
        "make_trial",
        [](const std::string& kind, int theta_num, int gamma_terms) {
            return make_trial(kind_of(kind), theta_num, gamma_terms);
        },
        py::arg("kind"), py::arg("theta_num"), py::arg("gamma_terms") = kDefaultGammaTerms,
        "Normalized variational trial state; theta_num is the integer numerator of pi/4096");

    m.def(
        "trial_residual",
        [](const TrialFunction& trial, double e, int grid_points) {
            return report_dict(trial_residual(trial, e, grid_points));
        },
        py::arg("trial"), py::arg("e"), py::arg("grid_points") = 2001,
        "Pointwise residual report of a trial state against a candidate eigenvalue");

    m.def(
        "sweep",
        [](const std::string& kind, int theta_from, int theta_to, double e, int grid_points,
           int gamma_terms) {
            const auto result =
                sweep(kind_of(kind), theta_from, theta_to, e, grid_points, gamma_terms);
            py::list points;
            for (const auto& p : result.points)
                points.append(py::make_tuple(p.theta_num, p.sup));
            py::dict d;
            d["best"] = py::make_tuple(result.best.theta_num, result.best.sup);
            d["points"] = points;
            return d;
        },
        py::arg("kind"), py::arg("theta_from"), py::arg("theta_to"), py::arg("e"),
        py::arg("grid_points") = 501, py::arg("gamma_terms") = kDefaultGammaTerms,
        "Residual sup over a range of trial parameters; best holds (theta_num, sup)");

    m.def(
        "sqrt_series", [](int k_max) { return sqrt_series<double>(k_max).coeffs; },
        py::arg("k_max"),
        "Taylor coefficients of sqrt(1-x^2) in x^2 steps, indices 0..k_max");
}
