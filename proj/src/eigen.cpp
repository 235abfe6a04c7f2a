#include "nonloc/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace nonloc {

std::pair<double, double> collatz_wielandt(const GridFunction& u, const ControlFamily& fam,
                                           const KernelClass& k, const QuadratureTable& q) {
    for (int i = 0; i < u.size(); ++i)
        if (!(u[i] > 0.0)) throw data_error("collatz_wielandt: u must be positive at interior nodes");
    const GridFunction iu = eval_operator(u, fam, q, k);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < u.size(); ++i) {
        if (u[i] < 1e-13) continue;
        const double r = -iu[i] / u[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

EigenResult inverse_power(const ControlFamily& fam, const KernelClass& k,
                          const std::shared_ptr<const Grid>& grid, const EigenConfig& cfg) {
    cfg.validate();
    // minus sign: iterate the conjugated operator on positive functions
    const ControlFamily fam_eff =
        cfg.sign == ExtremalSign::Plus ? fam : fam.conjugate();
    fam_eff.validate(k);
    const QuadratureTable q = build_quadrature(*grid, k);

    SolveConfig inner = cfg.inner;
    inner.rho_shift = 0.0;
    inner.residual_tol = std::min(inner.residual_tol, 0.1 * cfg.cw_gap_tol);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.5, 1.0);
    GridFunction u(grid);
    for (int i = 0; i < u.size(); ++i) u[i] = unif(rng);

    EigenResult res;
    for (int it = 0; it < cfg.max_outer_iters; ++it) {
        GridFunction f = u;
        const double norm = u.sup_norm();
        for (int i = 0; i < f.size(); ++i) f[i] = u[i] / norm;
        SolveReport rep = solve(f, fam_eff, k, q, inner);
        if (!rep.converged)
            throw convergence_error("inverse_power: inner solve did not converge");
        u = rep.u;
        // bracket from the rhs-to-solution ratios: -I u = f up to the inner
        // residual, so f_i / u_i are the Collatz-Wielandt ratios
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        bool positive = true;
        for (int i = 0; i < u.size(); ++i) {
            if (!(u[i] > 0.0)) { positive = false; break; }
            if (u[i] < 1e-13) continue;
            const double r = f[i] / u[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        if (!positive)
            throw convergence_error("inverse_power: iterate left the positive cone");
        res.trace.emplace_back(lo, hi);
        res.outer_iters = it + 1;
        res.cw_lo = lo;
        res.cw_hi = hi;
        if (hi - lo < cfg.cw_gap_tol) {
            res.converged = true;
            break;
        }
    }
    res.lambda = 0.5 * (res.cw_lo + res.cw_hi);
    const double norm = u.sup_norm();
    res.phi = u;
    const double flip = cfg.sign == ExtremalSign::Plus ? 1.0 : -1.0;
    for (int i = 0; i < u.size(); ++i) res.phi[i] = flip * u[i] / norm;
    return res;
}

double verify_simplicity(const ControlFamily& fam, const KernelClass& k,
                         const std::shared_ptr<const Grid>& grid, const EigenConfig& cfg,
                         int n_restarts) {
    if (n_restarts < 2) throw config_error("verify_simplicity: need at least 2 restarts");
    std::vector<GridFunction> phis;
    for (int r = 0; r < n_restarts; ++r) {
        EigenConfig c = cfg;
        c.seed = cfg.seed + static_cast<std::uint64_t>(r) * 7919;
        EigenResult res = inverse_power(fam, k, grid, c);
        if (!res.converged)
            throw convergence_error("verify_simplicity: restart did not converge");
        phis.push_back(res.phi);
    }
    double dev = 0.0;
    for (size_t a = 0; a < phis.size(); ++a)
        for (size_t b = a + 1; b < phis.size(); ++b)
            for (int i = 0; i < phis[a].size(); ++i)
                dev = std::max(dev, std::abs(phis[a][i] - phis[b][i]));
    return dev;
}

DomainScanResult domain_monotonicity(const KernelClass& k, const ControlFamily& fam,
                                     const std::vector<double>& radii, int n_nodes,
                                     const EigenConfig& cfg) {
    if (!std::is_sorted(radii.begin(), radii.end()))
        throw config_error("domain_monotonicity: radii must be ascending");
    DomainScanResult out;
    for (double a : radii) {
        auto grid = std::make_shared<const Grid>(interval_grid(-a, a, n_nodes));
        EigenResult res = inverse_power(fam, k, grid, cfg);
        if (!res.converged)
            throw convergence_error("domain_monotonicity: eigen run did not converge");
        out.rows.push_back({a, res.lambda});
    }
    out.strictly_decreasing = true;
    for (size_t i = 1; i < out.rows.size(); ++i)
        if (!(out.rows[i].lambda < out.rows[i - 1].lambda)) out.strictly_decreasing = false;
    return out;
}

} // namespace nonloc
