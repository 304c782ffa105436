// Python bindings for the solver library: grids, operators, solvers,
// the consistency oracle, rate fitting and CSV I/O.
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plap/io.hpp"
#include "plap/reference.hpp"
#include "plap/solvers.hpp"

namespace py = pybind11;
using namespace plap;

namespace {

py::array_t<double> as_array(const GridFunction& u) {
    int n = u.grid->n;
    py::array_t<double> a({n, n});
    auto r = a.mutable_unchecked<2>();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) r(j, i) = u.at(i, j);
    return a;
}

void from_array(GridFunction& u, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    int n = u.grid->n;
    if (a.ndim() != 2 || a.shape(0) != n || a.shape(1) != n)
        throw std::invalid_argument("array shape must be (n, n)");
    auto r = a.unchecked<2>();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) u.at(i, j) = r(j, i);
}

} // namespace

PYBIND11_MODULE(_plap, m) {
    m.doc() = "finite-difference solvers for the normalized p-Laplacian "
              "and infinity Laplacian on square grids";

    py::class_<Grid2D, std::shared_ptr<Grid2D>>(m, "Grid2D")
        .def(py::init([](double xmin, double xmax, double ymin, double ymax, int n) {
                 return Grid2D(Bounds{xmin, xmax, ymin, ymax}, n);
             }),
             py::arg("xmin") = -1.0, py::arg("xmax") = 1.0, py::arg("ymin") = -1.0,
             py::arg("ymax") = 1.0, py::arg("n") = 65)
        .def_readonly("n", &Grid2D::n)
        .def_readonly("h", &Grid2D::h)
        .def_readonly("xmin", &Grid2D::xmin)
        .def_readonly("xmax", &Grid2D::xmax)
        .def_readonly("ymin", &Grid2D::ymin)
        .def_readonly("ymax", &Grid2D::ymax)
        .def("x", &Grid2D::x)
        .def("y", &Grid2D::y)
        .def("interior", &Grid2D::interior)
        .def("__repr__", [](const Grid2D& g) {
            return "Grid2D([" + std::to_string(g.xmin) + ", " + std::to_string(g.xmax) + "] x [" +
                   std::to_string(g.ymin) + ", " + std::to_string(g.ymax) +
                   "], n=" + std::to_string(g.n) + ")";
        });

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init<const Grid2D&, double>(), py::arg("grid"), py::arg("fill") = 0.0,
             py::keep_alive<1, 2>())
        .def("at", [](const GridFunction& u, int i, int j) { return u.at(i, j); })
        .def("set", [](GridFunction& u, int i, int j, double v) { u.at(i, j) = v; })
        .def_property("array", &as_array, &from_array,
                      "node values as an (n, n) array indexed [j, i] (row = y index)")
        .def_property_readonly(
            "grid", [](const GridFunction& u) { return *u.grid; },
            "copy of the grid this field lives on");

    m.def("sample", &sample, py::arg("f"), py::arg("grid"), py::keep_alive<0, 2>(),
          "grid function with values f(x, y) at every node");
    m.def("apply_boundary", &apply_boundary);
    m.def("max_norm_diff", &max_norm_diff, py::arg("a"), py::arg("b"),
          py::arg("interior_only") = false);
    m.def("max_abs", &max_abs, py::arg("a"), py::arg("interior_only") = false);

    py::class_<PWeights>(m, "PWeights")
        .def_readonly("alpha", &PWeights::alpha)
        .def_readonly("beta", &PWeights::beta)
        .def_static("from_p", &PWeights::from_p)
        .def_static("from_alpha", &PWeights::from_alpha);

    py::class_<Stencil>(m, "Stencil")
        .def_readonly("level", &Stencil::level)
        .def_readonly("dtheta", &Stencil::dtheta)
        .def_property_readonly("points",
                               [](const Stencil& s) { return 1 + (int)s.directions.size(); });
    m.def("build_stencil", &build_stencil, py::arg("level"),
          "level 1 -> 5 point, 2 -> 9 point, 3 -> 17 point");
    m.def("directional_resolution", &directional_resolution);

    py::class_<InfinityLaplacian>(m, "InfinityLaplacian")
        .def(py::init([](const Grid2D& g, int level, BoundaryData bd) {
                 return InfinityLaplacian(g, build_stencil(level), bd);
             }),
             py::arg("grid"), py::arg("level"), py::arg("boundary"), py::keep_alive<1, 2>())
        .def("eval",
             [](const InfinityLaplacian& il, const GridFunction& u, int i, int j) {
                 return il.eval(u, i, j);
             })
        .def("apply", &InfinityLaplacian::apply, py::keep_alive<0, 2>());

    m.def("laplacian_5pt", &laplacian_5pt, py::keep_alive<0, 1>());
    m.def("p_laplacian", &p_laplacian, py::arg("u"), py::arg("op"), py::arg("weights"),
          py::keep_alive<0, 1>());
    m.def("standard_fd_infinity_laplacian", &standard_fd_infinity_laplacian, py::arg("u"),
          py::arg("h_reg") = std::nullopt, py::keep_alive<0, 1>());
    m.def("residual", &residual, py::arg("u"), py::arg("op"), py::arg("weights"), py::arg("g"),
          py::keep_alive<0, 1>());

    py::class_<PoissonSolver>(m, "PoissonSolver")
        .def(py::init<const Grid2D&>(), py::arg("grid"), py::keep_alive<1, 2>())
        .def("solve", &PoissonSolver::solve, py::arg("f"), py::arg("boundary"),
             py::keep_alive<0, 2>(), "solve -lap u = f with Dirichlet data")
        .def("harmonic_extension", &PoissonSolver::harmonic_extension, py::keep_alive<0, 1>());

    py::enum_<Method>(m, "Method")
        .value("Explicit", Method::Explicit)
        .value("SemiImplicit", Method::SemiImplicit);
    py::enum_<Init>(m, "Init")
        .value("Harmonic", Init::Harmonic)
        .value("Zero", Init::Zero)
        .value("BoundaryExtension", Init::BoundaryExtension);
    py::enum_<Sweep>(m, "Sweep").value("Jacobi", Sweep::Jacobi).value("RedBlack", Sweep::RedBlack);
    py::enum_<StopReason>(m, "StopReason")
        .value("Converged", StopReason::Converged)
        .value("MaxIters", StopReason::MaxIters)
        .value("Diverged", StopReason::Diverged);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("method", &SolverConfig::method)
        .def_readwrite("tol", &SolverConfig::tol)
        .def_readwrite("max_iters", &SolverConfig::max_iters)
        .def_readwrite("rho_override", &SolverConfig::rho_override)
        .def_readwrite("init", &SolverConfig::init)
        .def_readwrite("sweep", &SolverConfig::sweep)
        .def_readwrite("damping", &SolverConfig::damping)
        .def_readwrite("divergence_factor", &SolverConfig::divergence_factor)
        .def_readwrite("record_every", &SolverConfig::record_every);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("iter", &SolveReport::iter)
        .def_readonly("delta_max", &SolveReport::delta_max)
        .def_readonly("residual_max", &SolveReport::residual_max)
        .def_readonly("error_max", &SolveReport::error_max)
        .def_readonly("stop", &SolveReport::stop)
        .def_readonly("converged", &SolveReport::converged)
        .def_readonly("iters", &SolveReport::iters)
        .def_readonly("final_delta", &SolveReport::final_delta)
        .def_readonly("rho", &SolveReport::rho);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("u", &SolveResult::u)
        .def_readonly("report", &SolveResult::report);

    m.def("cfl_step", &cfl_step);
    m.def("initial_iterate", &initial_iterate, py::arg("grid"), py::arg("boundary"),
          py::arg("init"), py::keep_alive<0, 1>());

    m.def(
        "solve",
        [](const InfinityLaplacian& il, BoundaryData bd, PWeights w, const GridFunction& g,
           const SolverConfig& cfg, const GridFunction* reference) {
            return solve(il, bd, w, g, cfg, reference);
        },
        py::arg("op"), py::arg("boundary"), py::arg("weights"), py::arg("g"), py::arg("config"),
        py::arg("reference") = nullptr, py::keep_alive<0, 1>(),
        "run the configured method (explicit or semi-implicit)");
    m.def(
        "explicit_solve",
        [](const InfinityLaplacian& il, BoundaryData bd, PWeights w, const GridFunction& g,
           const SolverConfig& cfg, const GridFunction* reference) {
            return explicit_solve(il, bd, w, g, cfg, reference);
        },
        py::arg("op"), py::arg("boundary"), py::arg("weights"), py::arg("g"), py::arg("config"),
        py::arg("reference") = nullptr, py::keep_alive<0, 1>());
    m.def(
        "semi_implicit_solve",
        [](const InfinityLaplacian& il, BoundaryData bd, PWeights w, const GridFunction& g,
           const SolverConfig& cfg, const GridFunction* reference) {
            return semi_implicit_solve(il, bd, w, g, cfg, reference);
        },
        py::arg("op"), py::arg("boundary"), py::arg("weights"), py::arg("g"), py::arg("config"),
        py::arg("reference") = nullptr, py::keep_alive<0, 1>());
    m.def(
        "standard_scheme_solve",
        [](const Grid2D& g, BoundaryData bd, const SolverConfig& cfg,
           const GridFunction* reference) { return standard_scheme_solve(g, bd, cfg, reference); },
        py::arg("grid"), py::arg("boundary"), py::arg("config"), py::arg("reference") = nullptr,
        py::keep_alive<0, 1>(),
        "iterate the non-monotone centered-difference scheme to a fixed point");
    m.def("fixed_point_check", &fixed_point_check, py::arg("u"), py::arg("op"), py::arg("weights"),
          py::arg("g"), py::arg("rho"));
    m.def("contraction_rate_model", &contraction_rate_model, py::arg("n"));

    py::class_<ExactSolution>(m, "ExactSolution")
        .def_readonly("name", &ExactSolution::name)
        .def_readonly("p", &ExactSolution::p)
        .def_readonly("domain", &ExactSolution::domain)
        .def("__call__",
             [](const ExactSolution& e, double x, double y) { return e.value(x, y); });
    m.def("exact_solution", &exact_solution, py::arg("name"),
          "harmonic_saddle, aronsson, cone_diff or affine");

    py::class_<SmoothFunction>(m, "SmoothFunction")
        .def(py::init([](std::function<double(double, double)> v,
                         std::function<std::array<double, 2>(double, double)> gr,
                         std::function<std::array<double, 3>(double, double)> he) {
                 return SmoothFunction{v, gr, he};
             }),
             py::arg("value"), py::arg("gradient"), py::arg("hessian"));
    m.def("infinity_laplacian_exact", &infinity_laplacian_exact);
    m.def("laplacian_exact", &laplacian_exact);
    m.def("curvature_factor", &curvature_factor);

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("value", &OracleResult::value)
        .def_readonly("correction_estimate", &OracleResult::correction_estimate);
    m.def("sphere_consistency_oracle", &sphere_consistency_oracle, py::arg("u"), py::arg("x"),
          py::arg("y"), py::arg("eps"), py::arg("m"));

    py::class_<RateFit>(m, "RateFit")
        .def_readonly("alpha", &RateFit::alpha)
        .def_readonly("mu", &RateFit::mu)
        .def_readonly("residual", &RateFit::residual)
        .def_readonly("points", &RateFit::points)
        .def_readonly("floor_case", &RateFit::floor_case);
    m.def("fit_rate", &fit_rate, py::arg("report"), py::arg("alpha") = 0.0);

    py::class_<LoadedField>(m, "LoadedField")
        .def_readonly("grid", &LoadedField::grid)
        .def_property_readonly(
            "u", [](const LoadedField& lf) { return lf.u; }, py::keep_alive<0, 1>());
    m.def("read_grid_function",
          py::overload_cast<const std::string&>(&read_grid_function), py::arg("path"));
    m.def("write_grid_function",
          [](const std::string& path, const GridFunction& u) { write_grid_function(path, u); },
          py::arg("path"), py::arg("u"));
    m.def("write_solve_report",
          [](const std::string& path, const SolveReport& r) { write_solve_report(path, r); },
          py::arg("path"), py::arg("report"));
}
