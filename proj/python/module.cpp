#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nonloc/beta.hpp"
#include "nonloc/eigen.hpp"
#include "nonloc/parabolic.hpp"

namespace py = pybind11;
using namespace nonloc;

namespace {

KernelClass make_kernel(double lam, double Lam, double s, double cplus) {
    return {lam, Lam, s, cplus};
}

ControlFamily family_from(const std::string& tag,
                          const std::vector<std::vector<std::pair<double, double>>>& lists) {
    if (tag == "extremal_plus") return ControlFamily::extremal_plus();
    if (tag == "extremal_minus") return ControlFamily::extremal_minus();
    if (tag != "explicit") throw config_error("family: unknown tag " + tag);
    std::vector<std::vector<Control>> cs;
    for (const auto& l : lists) {
        std::vector<Control> inner;
        for (const auto& [kap, dr] : l) inner.push_back({kap, dr});
        cs.push_back(std::move(inner));
    }
    return ControlFamily::inf_sup(std::move(cs));
}

GridFunction to_grid_fn(const std::shared_ptr<const Grid>& g, const std::vector<double>& v) {
    if ((int)v.size() != g->node_count())
        throw data_error("value vector length does not match the grid");
    return {g, v};
}

} // namespace

PYBIND11_MODULE(_nonloc, m) {
    m.doc() = "Nonlocal Bellman-Isaacs discretization: grids, extremal operators, "
              "principal half-eigenvalues, decay diagnostics";

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<data_error>(m, "DataError", PyExc_ValueError);

    py::class_<KernelClass>(m, "Kernel")
        .def(py::init(&make_kernel), py::arg("lam"), py::arg("Lam"), py::arg("s"),
             py::arg("cplus") = 0.0)
        .def_readonly("lam", &KernelClass::lambda_lo)
        .def_readonly("Lam", &KernelClass::lambda_hi)
        .def_readonly("s", &KernelClass::s)
        .def_readonly("cplus", &KernelClass::c_plus);

    py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
        .def_property_readonly("h", [](const Grid& g) { return g.h; })
        .def_property_readonly("n", &Grid::node_count)
        .def_property_readonly("nodes", [](const Grid& g) {
            std::vector<double> xs;
            for (const Point& p : g.nodes) xs.push_back(p[0]);
            return xs;
        });

    m.def("interval_grid",
          [](double a, double b, int n) {
              return std::make_shared<Grid>(interval_grid(a, b, n));
          },
          py::arg("a"), py::arg("b"), py::arg("n_nodes"));

    m.def("psi_beta", &psi_beta, py::arg("t"), py::arg("beta"));
    m.def("c_constant",
          [](double beta, const KernelClass& k, const std::string& sign, double tol) {
              return c_constant(beta, k,
                                sign == "plus" ? ExtremalSign::Plus : ExtremalSign::Minus, tol);
          },
          py::arg("beta"), py::arg("kernel"), py::arg("sign") = "plus", py::arg("tol") = 1e-10);
    m.def("beta_roots",
          [](const KernelClass& k, double tol) {
              return std::make_pair(find_beta_root(k, ExtremalSign::Plus, tol),
                                    find_beta_root(k, ExtremalSign::Minus, tol));
          },
          py::arg("kernel"), py::arg("tol") = 1e-6);

    m.def("solve_dirichlet",
          [](std::shared_ptr<Grid> g, const std::vector<double>& f, const KernelClass& k,
             const std::string& tag,
             const std::vector<std::vector<std::pair<double, double>>>& controls, double tol) {
              SolveConfig cfg;
              cfg.residual_tol = tol;
              ControlFamily fam = family_from(tag, controls);
              fam.validate(k);
              std::shared_ptr<const Grid> cg = g;
              SolveReport rep = solve(to_grid_fn(cg, f), fam, k, cfg);
              if (!rep.converged) throw convergence_error("dirichlet solve did not converge");
              return py::make_tuple(rep.u.values, rep.iterations);
          },
          py::arg("grid"), py::arg("f"), py::arg("kernel"), py::arg("family") = "extremal_plus",
          py::arg("controls") = std::vector<std::vector<std::pair<double, double>>>{},
          py::arg("tol") = 1e-10);

    m.def("principal_eigen",
          [](std::shared_ptr<Grid> g, const KernelClass& k, const std::string& tag,
             const std::vector<std::vector<std::pair<double, double>>>& controls,
             const std::string& sign, double tol, std::uint64_t seed) {
              EigenConfig cfg;
              cfg.sign = sign == "plus" ? ExtremalSign::Plus : ExtremalSign::Minus;
              cfg.cw_gap_tol = tol;
              cfg.seed = seed;
              ControlFamily fam = family_from(tag, controls);
              fam.validate(k);
              std::shared_ptr<const Grid> cg = g;
              EigenResult res = inverse_power(fam, k, cg, cfg);
              if (!res.converged) throw convergence_error("eigen iteration did not converge");
              py::dict d;
              d["lambda"] = res.lambda;
              d["cw_lo"] = res.cw_lo;
              d["cw_hi"] = res.cw_hi;
              d["phi"] = res.phi.values;
              d["outer_iters"] = res.outer_iters;
              return d;
          },
          py::arg("grid"), py::arg("kernel"), py::arg("family") = "extremal_plus",
          py::arg("controls") = std::vector<std::vector<std::pair<double, double>>>{},
          py::arg("sign") = "plus", py::arg("tol") = 1e-6, py::arg("seed") = 1);

    m.def("abp_ratio",
          [](std::shared_ptr<Grid> g, const std::vector<double>& f, const KernelClass& k,
             double tol) {
              SolveConfig cfg;
              cfg.residual_tol = tol;
              std::shared_ptr<const Grid> cg = g;
              return abp_ratio(to_grid_fn(cg, f), k, cfg);
          },
          py::arg("grid"), py::arg("f"), py::arg("kernel"), py::arg("tol") = 1e-10);

    m.def("decay_series",
          [](std::shared_ptr<Grid> g, const std::vector<double>& h0, double lam,
             const std::vector<double>& v, const KernelClass& k, const std::string& tag,
             double tau, double horizon) {
              std::shared_ptr<const Grid> cg = g;
              ControlFamily fam = family_from(tag, {});
              if (tau <= 0.0) // default to the largest stable explicit step
                  tau = 0.9 / center_dependence_bound(build_quadrature(*cg, k), k);
              EigenRef ref{lam, to_grid_fn(cg, v)};
              DecaySeries s = decay_ratio_series(to_grid_fn(cg, h0), ref, fam, k, tau, horizon);
              py::dict d;
              std::vector<double> ts, sups, ratios;
              for (const DecaySample& x : s.samples) {
                  ts.push_back(x.t);
                  sups.push_back(x.sup_h);
                  ratios.push_back(x.ratio);
              }
              d["t"] = ts;
              d["sup_h"] = sups;
              d["ratio"] = ratios;
              d["r0_plus"] = s.r0_plus;
              d["ratio_bound_holds"] = s.ratio_bound_holds;
              return d;
          },
          py::arg("grid"), py::arg("h0"), py::arg("lam"), py::arg("v"), py::arg("kernel"),
          py::arg("family") = "extremal_plus", py::arg("tau") = 0.0, py::arg("horizon") = 1.0);
}
