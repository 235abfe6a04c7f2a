// Acceptance suite: one line per criterion, exit 0 only if all pass.
// Tolerances are pinned here on purpose; do not read them from the
// environment or a config file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "nonloc/beta.hpp"
#include "nonloc/eigen.hpp"
#include "nonloc/oracle.hpp"
#include "nonloc/parabolic.hpp"

using namespace nonloc;

namespace {

int g_failures = 0;

void report(int idx, const char* label, bool ok, const char* detail = "") {
    std::printf("[%s] %2d %s%s%s\n", ok ? "PASS" : "FAIL", idx, label,
                detail[0] ? " -- " : "", detail);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::shared_ptr<const Grid> grid_n(int n, double a = 1.0) {
    return std::make_shared<const Grid>(interval_grid(-a, a, n));
}

GridFunction random_fn(const std::shared_ptr<const Grid>& g, std::mt19937_64& rng,
                       double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> unif(lo, hi);
    GridFunction u(g);
    for (int i = 0; i < u.size(); ++i) u[i] = unif(rng);
    return u;
}

// 1. find_beta_root pins beta at s when lambda == Lambda, to 1e-3.
void criterion_1() {
    bool ok = true;
    char detail[160] = "";
    for (double s : {0.55, 0.6, 0.75, 0.9}) {
        KernelClass k(1.0, 1.0, s);
        for (ExtremalSign sg : {ExtremalSign::Plus, ExtremalSign::Minus}) {
            const double root = find_beta_root(k, sg, 1e-6);
            if (std::abs(root - s) > 1e-3) {
                ok = false;
                std::snprintf(detail, sizeof detail, "s=%g root=%.6f", s, root);
            }
        }
    }
    report(1, "beta-root sandwich collapses to s in the linear case (1e-3)", ok, detail);
}

// 2. c+ negative below its root, positive above; beta1 <= beta2.
void criterion_2() {
    KernelClass k(1.0, 2.0, 0.75);
    const double b1 = find_beta_root(k, ExtremalSign::Plus, 1e-6);
    const double b2 = find_beta_root(k, ExtremalSign::Minus, 1e-6);
    bool ok = b1 <= b2 + 1e-9;
    for (int i = 0; i < 24; ++i) {
        const double margin = 5e-3;
        const double b = 0.02 + i * (2.0 * 0.75 - 0.06) / 23.0;
        if (std::abs(b - b1) < margin) continue;
        const double c = c_constant(b, k, ExtremalSign::Plus, 1e-9);
        if ((b < b1) != (c < 0.0)) ok = false;
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "beta1=%.6f beta2=%.6f", b1, b2);
    report(2, "c+ sign pattern around beta1; beta1 <= beta2", ok, detail);
}

// 3. 1-homogeneity to 1e-12 relative and the ellipticity sandwich, nodewise.
void criterion_3() {
    auto g = grid_n(256);
    KernelClass k(1.0, 2.0, 0.75, 0.6);
    QuadratureTable q = build_quadrature(*g, k);
    std::mt19937_64 rng(11);
    const std::vector<ControlFamily> fams = {
        ControlFamily::extremal_plus(),
        ControlFamily::sup_of({{1.0, 0.1}, {1.7, -0.3}, {2.0, 0.55}}),
        ControlFamily::inf_sup({{{1.0, 0.0}, {1.5, 0.2}}, {{2.0, -0.1}, {1.2, 0.4}}}),
    };
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const ControlFamily& fam = fams[trial % fams.size()];
        GridFunction u = random_fn(g, rng);
        GridFunction v = random_fn(g, rng);
        GridFunction iu = eval_operator(u, fam, q, k);
        GridFunction iv = eval_operator(v, fam, q, k);

        GridFunction tu = u;
        const double t = 2.5;
        for (int i = 0; i < u.size(); ++i) tu[i] *= t;
        GridFunction itu = eval_operator(tu, fam, q, k);

        GridFunction w(g);
        for (int i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
        GridFunction mp = eval_operator(w, ControlFamily::extremal_plus(), q, k);
        GridFunction mm = eval_operator(w, ControlFamily::extremal_minus(), q, k);
        for (int i = 0; i < u.size(); ++i) {
            const double scale = std::max(1.0, std::abs(itu[i]));
            if (std::abs(itu[i] - t * iu[i]) > 1e-12 * scale) ok = false;
            const double d = iu[i] - iv[i];
            if (d > mp[i] + 1e-10 || d < mm[i] - 1e-10) ok = false;
        }
    }
    report(3, "1-homogeneity (1e-12 rel) and ellipticity sandwich, 100 random pairs", ok);
}

// 4. 200 ordered source pairs, ordered solutions, zero violations.
void criterion_4() {
    auto g = grid_n(64);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    SolveConfig cfg;
    bool ok = true;
    const std::vector<std::pair<KernelClass, ControlFamily>> cases = {
        {KernelClass(1.0, 2.0, 0.75), ControlFamily::extremal_plus()},
        {KernelClass(1.0, 2.0, 0.75), ControlFamily::extremal_minus()},
        {KernelClass(1.0, 1.5, 0.6), ControlFamily::sup_of({{1.0, 0.0}, {1.4, 0.0}})},
        {KernelClass(1.0, 2.0, 0.8, 0.5), ControlFamily::extremal_plus()},
    };
    for (int trial = 0; trial < 200 && ok; ++trial) {
        const auto& [k, fam] = cases[trial % cases.size()];
        GridFunction fv(g), fu(g);
        for (int i = 0; i < fv.size(); ++i) {
            fv[i] = unif(rng);
            fu[i] = fv[i] + unif(rng);
        }
        SolveReport su = solve(fu, fam, k, cfg);
        SolveReport sv = solve(fv, fam, k, cfg);
        if (!su.converged || !sv.converged) ok = false;
        else if (!(check_comparison(su.u, sv.u).worst_violation <= 1e-10)) ok = false;
    }
    report(4, "discrete comparison on 200 ordered pairs", ok);
}

// 5. 50 random f >= 0, f != 0: solution strictly positive at every node.
void criterion_5() {
    auto g = grid_n(64);
    KernelClass k(1.0, 2.0, 0.75);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> where(0, g->node_count() - 1);
    SolveConfig cfg;
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        GridFunction f(g);
        const int spots = 1 + trial % 4;
        for (int s = 0; s < spots; ++s) f[where(rng)] = 0.25 + unif(rng);
        const ControlFamily fam =
            trial % 2 ? ControlFamily::extremal_plus() : ControlFamily::extremal_minus();
        SolveReport rep = solve(f, fam, k, cfg);
        if (!rep.converged || rep.u.min() <= 0.0) ok = false;
    }
    report(5, "strong maximum principle: 50 nonnegative sources give u > 0", ok);
}

// 6. Iterative eigenvalue vs dense oracle (1e-8); quadrature oracle vs
//    c_constant at 20 beta samples (1e-8).
void criterion_6() {
    auto g = grid_n(512);
    KernelClass k(1.0, 1.0, 0.5);
    EigenConfig cfg;
    cfg.cw_gap_tol = 1e-10;
    EigenResult it = inverse_power(ControlFamily::single({1.0, 0.0}), k, g, cfg);
    QuadratureTable q = build_quadrature(*g, k);
    auto dense = oracle::dense_principal_eigen(oracle::assemble_dense({1.0, 0.0}, g, q, k), 1e-12);
    bool ok = it.converged && std::abs(it.lambda - dense.lambda) <= 1e-8;

    KernelClass kp(1.0, 2.0, 0.75);
    for (int i = 0; i < 20 && ok; ++i) {
        const double b = 0.05 + i * (1.45 - 0.05) / 19.0;
        for (ExtremalSign sg : {ExtremalSign::Plus, ExtremalSign::Minus}) {
            const double a = oracle::quadrature_oracle(b, kp, sg, 1e-10);
            const double c = c_constant(b, kp, sg, 1e-10);
            if (std::abs(a - c) > 1e-8 * std::max(1.0, std::abs(c))) ok = false;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "|iter-dense|=%.2e", std::abs(it.lambda - dense.lambda));
    report(6, "oracle equivalence: dense eigen (1e-8) and 20 beta samples (1e-8)", ok, detail);
}

// 7. |lambda_h - lambda_{h/2}| strictly decreasing along N = 128..1024.
void criterion_7() {
    bool ok = true;
    EigenConfig cfg;
    cfg.cw_gap_tol = 1e-9;
    for (int variant = 0; variant < 2; ++variant) {
        const KernelClass k = variant == 0 ? KernelClass(1.0, 1.0, 0.5)
                                           : KernelClass(1.0, 2.0, 0.5);
        const ControlFamily fam = variant == 0 ? ControlFamily::single({1.0, 0.0})
                                               : ControlFamily::extremal_plus();
        std::vector<double> lams;
        for (int n : {128, 256, 512, 1024}) {
            EigenResult res = inverse_power(fam, k, grid_n(n), cfg);
            if (!res.converged) ok = false;
            lams.push_back(res.lambda);
        }
        for (size_t i = 2; i < lams.size(); ++i)
            if (!(std::abs(lams[i] - lams[i - 1]) < std::abs(lams[i - 1] - lams[i - 2])))
                ok = false;
    }
    report(7, "refinement gaps strictly shrink, linear and two-constant cases", ok);
}

// 8. Linear symmetry lambda1+ = lambda1- (1e-6); conjugation exact to 1e-10.
void criterion_8() {
    auto g = grid_n(128);
    EigenConfig cfg;
    cfg.cw_gap_tol = 1e-9;
    KernelClass klin(1.0, 1.0, 0.5);
    ControlFamily lin = ControlFamily::single({1.0, 0.0});
    EigenResult plus = inverse_power(lin, klin, g, cfg);
    cfg.sign = ExtremalSign::Minus;
    EigenResult minus = inverse_power(lin, klin, g, cfg);
    bool ok = plus.converged && minus.converged &&
              std::abs(plus.lambda - minus.lambda) <= 1e-6 * std::abs(plus.lambda);

    KernelClass kp(1.0, 2.0, 0.75);
    for (const ControlFamily& fam :
         {ControlFamily::extremal_plus(), ControlFamily::sup_of({{1.0, 0.0}, {1.8, 0.0}})}) {
        cfg.sign = ExtremalSign::Minus;
        EigenResult m = inverse_power(fam, kp, g, cfg);
        cfg.sign = ExtremalSign::Plus;
        EigenResult pc = inverse_power(fam.conjugate(), kp, g, cfg);
        if (!m.converged || !pc.converged || std::abs(m.lambda - pc.lambda) > 1e-10) ok = false;
    }
    report(8, "lambda1+ = lambda1- in the linear case (1e-6); conjugation (1e-10)", ok);
}

// 9. Simplicity: 5 restarts, normalized eigenfunctions within 1e-5.
void criterion_9() {
    auto g = grid_n(512);
    KernelClass k(1.0, 2.0, 0.5);
    EigenConfig cfg;
    cfg.cw_gap_tol = 1e-8;
    const double dev = verify_simplicity(ControlFamily::extremal_plus(), k, g, cfg, 5);
    char detail[64];
    std::snprintf(detail, sizeof detail, "max sup deviation %.2e", dev);
    report(9, "simplicity across 5 random restarts (1e-5)", dev < 1e-5, detail);
}

// 10. Maximum-principle breakdown rho within 2% of lambda1+.
void criterion_10() {
    auto g = grid_n(128);
    KernelClass k(1.0, 1.0, 0.5);
    ControlFamily fam = ControlFamily::single({1.0, 0.0});
    EigenConfig ecfg;
    ecfg.cw_gap_tol = 1e-9;
    EigenResult res = inverse_power(fam, k, g, ecfg);
    std::vector<double> rho_grid;
    for (int i = 0; i <= 200; ++i) rho_grid.push_back(res.lambda * (0.5 + 0.6 * i / 200.0));
    SolveConfig cfg;
    ThresholdResult thr = max_principle_threshold(fam, k, g, rho_grid, cfg);
    bool ok = res.converged && thr.breakdown_rho.has_value() &&
              std::abs(*thr.breakdown_rho - res.lambda) <= 0.02 * res.lambda;
    char detail[96];
    std::snprintf(detail, sizeof detail, "lambda1+=%.6f breakdown=%.6f", res.lambda,
                  thr.breakdown_rho ? *thr.breakdown_rho : -1.0);
    report(10, "maximum-principle threshold within 2% of lambda1+", ok, detail);
}

// 11. Barrier signs around beta1 and the d^{beta-2s} growth slope (0.15).
void criterion_11() {
    KernelClass k(1.0, 1.0, 0.75);
    const double b1 = find_beta_root(k, ExtremalSign::Plus, 1e-6);
    // wide domain and collar push the plateau/exterior corrections down so the
    // d^{beta-2s} asymptote dominates on the inner window [12h, 0.03]
    auto g = std::make_shared<const Grid>(interval_grid(-4.0, 4.0, 16383));
    BarrierSignReport rep =
        barrier_sign_check(g, k, {b1 - 0.1, b1 + 0.1}, 2.0, 12.0 * g->h, 0.03);
    bool ok = rep.rows.size() == 4;
    for (const BarrierSignRow& row : rep.rows) {
        if (row.sign != ExtremalSign::Plus) continue;
        const bool above = row.beta > b1;
        if (!row.one_signed) ok = false;
        if (above && !(row.min_value > 0.0)) ok = false;
        if (!above && !(row.max_value < 0.0)) ok = false;
        if (std::abs(row.fitted_slope - (row.beta - 2.0 * k.s)) > 0.15) ok = false;
    }
    report(11, "barrier signs straddle beta1; collar slope matches beta-2s (0.15)", ok);
}

// 12. Parabolic decay: slope -lambda1+ to 1e-6 from the eigenfunction, 2%
//     from a generic bump; ratio statistic never exceeds r0+(1+1e-8).
void criterion_12() {
    auto g = grid_n(64);
    KernelClass k(1.0, 1.0, 0.5);
    ControlFamily fam = ControlFamily::single({1.0, 0.0});
    EigenConfig ecfg;
    ecfg.cw_gap_tol = 1e-10;
    EigenResult res = inverse_power(fam, k, g, ecfg);
    EigenRef ref{res.lambda, res.phi};

    // tiny-step run from the eigenfunction: explicit Euler bias ~ lambda^2 tau/2
    const double tau_small = 1e-8;
    DecaySeries es = decay_ratio_series(res.phi, ref, fam, k, tau_small, 64.0 * tau_small, 32);
    const double eig_slope = decay_rate_fit(es, 0.0);
    bool ok = res.converged && std::abs(eig_slope + res.lambda) <= 1e-6;

    QuadratureTable q = build_quadrature(*g, k);
    const double tau = 0.9 / center_dependence_bound(q, k);
    GridFunction h0(g);
    for (int i = 0; i < h0.size(); ++i) {
        const double x = g->nodes[i][0];
        h0[i] = std::max(0.0, 1.0 - 4.0 * (x - 0.2) * (x - 0.2));
    }
    const double horizon = 8.0 / res.lambda;
    DecaySeries bs = decay_ratio_series(h0, ref, fam, k, tau, horizon);
    const double bump_slope = decay_rate_fit(bs, 0.3 * horizon);
    if (std::abs(bump_slope + res.lambda) > 0.02 * res.lambda) ok = false;
    if (!bs.ratio_bound_holds || !es.ratio_bound_holds) ok = false;
    char detail[128];
    std::snprintf(detail, sizeof detail, "eig slope err %.2e, bump rel err %.2e",
                  std::abs(eig_slope + res.lambda),
                  std::abs(bump_slope + res.lambda) / res.lambda);
    report(12, "parabolic decay slopes (1e-6 / 2%) and the ratio bound", ok, detail);
}

// 13. ABP constant moves < 20% between h and h/2, over 50 random sources.
void criterion_13() {
    KernelClass k(1.0, 2.0, 0.75);
    SolveConfig cfg;
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto coarse = grid_n(128);
    auto fine = grid_n(257); // h/2: (n+1) doubles
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        // smooth random source, sampled on both grids
        std::array<double, 5> a;
        for (double& c : a) c = unif(rng);
        a[0] = 1.0 + 0.5 * a[0]; // positive mean keeps the positive part of u nontrivial
        auto f_of = [&](double x) {
            double v = a[0];
            for (int m = 1; m < 5; ++m) v += a[m] * std::sin(m * M_PI * x);
            return v;
        };
        GridFunction fc(coarse), ff(fine);
        for (int i = 0; i < fc.size(); ++i) fc[i] = f_of(coarse->nodes[i][0]);
        for (int i = 0; i < ff.size(); ++i) ff[i] = f_of(fine->nodes[i][0]);
        const double rc = abp_ratio(fc, k, cfg);
        const double rf = abp_ratio(ff, k, cfg);
        const double denom = std::max(rc, rf);
        const double rel = denom > 0.0 ? std::abs(rc - rf) / denom : 0.0;
        worst = std::max(worst, rel);
        if (!(rel < 0.20)) ok = false;
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "worst rel drift %.3f", worst);
    report(13, "ABP constant stable under h -> h/2 (20%, 50 sources)", ok, detail);
}

// 14. u >= K xi nodewise for f == 1 with beta in (beta2, 2s).
void criterion_14() {
    KernelClass k(1.0, 1.0, 0.75);
    const double beta2 = find_beta_root(k, ExtremalSign::Minus, 1e-6);
    auto g = grid_n(256);
    GridFunction f(g);
    for (int i = 0; i < f.size(); ++i) f[i] = 1.0;
    SolveConfig cfg;
    const double beta = 0.5 * (beta2 + 2.0 * k.s);
    HConditionReport rep =
        h_condition_check(f, ControlFamily::single({1.0, 0.0}), k, beta, 0.2, beta2, cfg);
    char detail[96];
    std::snprintf(detail, sizeof detail, "K=%.4f margin=%.2e", rep.constant_K, rep.worst_margin);
    report(14, "h-condition: u >= K xi for f = 1, beta in (beta2, 2s)",
           rep.status == HConditionStatus::Holds, detail);
}

// 15. lambda1+((-a,a)) strictly decreasing in a; exact a^{-2s} scaling (2%).
void criterion_15() {
    KernelClass k(1.0, 1.0, 0.5);
    EigenConfig cfg;
    cfg.cw_gap_tol = 1e-9;
    DomainScanResult scan = domain_monotonicity(k, ControlFamily::single({1.0, 0.0}),
                                                {0.5, 0.75, 1.0}, 128, cfg);
    bool ok = scan.rows.size() == 3 && scan.strictly_decreasing;
    const double ref = scan.rows[2].lambda; // a = 1
    for (const DomainScanRow& row : scan.rows) {
        const double expect = std::pow(row.radius, -2.0 * k.s) * ref;
        if (std::abs(row.lambda - expect) > 0.02 * expect) ok = false;
    }
    report(15, "domain monotonicity and a^{-2s} scaling (2%)", ok);
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14();
    criterion_15();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/15 criteria passed in %.1f s\n", 15 - g_failures, secs);
    return g_failures == 0 ? 0 : 1;
}
