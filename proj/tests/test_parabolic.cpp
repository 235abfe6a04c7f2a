#include "doctest.h"

#include <cmath>

#include "nonloc/eigen.hpp"
#include "nonloc/parabolic.hpp"

using namespace nonloc;

namespace {

std::shared_ptr<const Grid> grid_n(int n) {
    return std::make_shared<const Grid>(interval_grid(-1.0, 1.0, n));
}

EigenRef eigen_ref(const std::shared_ptr<const Grid>& g, const ControlFamily& fam,
                   const KernelClass& k, double gap_tol = 1e-9) {
    EigenConfig cfg;
    cfg.cw_gap_tol = gap_tol;
    EigenResult res = inverse_power(fam, k, g, cfg);
    REQUIRE(res.converged);
    return {res.lambda, res.phi};
}

} // namespace

TEST_CASE("zero initial data stays zero; CFL violations are rejected") {
    auto g = grid_n(48);
    KernelClass k(1.0, 1.0, 0.5);
    QuadratureTable q = build_quadrature(*g, k);
    ControlFamily fam = ControlFamily::single({1.0, 0.0});
    GridFunction z(g);
    GridFunction z1 = step(z, fam, k, q, 0.5 / center_dependence_bound(q, k));
    for (int i = 0; i < z1.size(); ++i) CHECK(z1[i] == 0.0);
    CHECK_THROWS_AS(step(z, fam, k, q, 10.0 / center_dependence_bound(q, k)), config_error);
}

TEST_CASE("one step on the eigenfunction is exact geometric decay") {
    auto g = grid_n(64);
    KernelClass k(1.0, 1.0, 0.5);
    ControlFamily fam = ControlFamily::single({1.0, 0.0});
    EigenRef ref = eigen_ref(g, fam, k);
    QuadratureTable q = build_quadrature(*g, k);
    const double tau = 0.5 / center_dependence_bound(q, k);
    GridFunction h1 = step(ref.v, fam, k, q, tau);
    for (int i = 0; i < h1.size(); ++i)
        CHECK(h1[i] == doctest::Approx((1.0 - tau * ref.lambda) * ref.v[i]).epsilon(1e-7));
}

TEST_CASE("step comparison: ordered data stays ordered") {
    auto g = grid_n(48);
    KernelClass k(1.0, 2.0, 0.75);
    QuadratureTable q = build_quadrature(*g, k);
    ControlFamily fam = ControlFamily::extremal_plus();
    const double tau = 0.9 / center_dependence_bound(q, k);
    GridFunction a(g), b(g);
    for (int i = 0; i < a.size(); ++i) {
        const double x = g->nodes[i][0];
        a[i] = std::max(0.0, 0.5 - x * x);
        b[i] = a[i] + 0.1 * (1.0 + std::sin(5.0 * x)) * 0.5;
    }
    GridFunction a1 = step(a, fam, k, q, tau), b1 = step(b, fam, k, q, tau);
    for (int i = 0; i < a1.size(); ++i) CHECK(a1[i] <= b1[i] + 1e-13);
}

TEST_CASE("evolution is 1-homogeneous in the initial data") {
    auto g = grid_n(32);
    KernelClass k(1.0, 2.0, 0.75);
    QuadratureTable q = build_quadrature(*g, k);
    ControlFamily fam = ControlFamily::extremal_minus();
    const double tau = 0.9 / center_dependence_bound(q, k);
    GridFunction h(g);
    for (int i = 0; i < h.size(); ++i) h[i] = std::max(0.0, 1.0 - 2.0 * std::abs(g->nodes[i][0]));
    GridFunction h3 = h;
    for (int i = 0; i < h.size(); ++i) h3[i] *= 3.0;
    for (int m = 0; m < 20; ++m) {
        h = step(h, fam, k, q, tau);
        h3 = step(h3, fam, k, q, tau);
    }
    for (int i = 0; i < h.size(); ++i)
        CHECK(h3[i] == doctest::Approx(3.0 * h[i]).epsilon(1e-11));
}

TEST_CASE("ratio statistic: eigen data pins the ratio near 1") {
    auto g = grid_n(48);
    KernelClass k(1.0, 1.0, 0.5);
    ControlFamily fam = ControlFamily::single({1.0, 0.0});
    EigenRef ref = eigen_ref(g, fam, k);
    QuadratureTable q = build_quadrature(*g, k);
    const double tau = 0.9 / center_dependence_bound(q, k);
    DecaySeries series = decay_ratio_series(ref.v, ref, fam, k, tau, 2.0 / ref.lambda);
    CHECK(series.r0_plus == doctest::Approx(1.0));
    CHECK(series.ratio_bound_holds);
    // the explicit Euler factor (1 - tau lambda) trails e^{-lambda tau}, so
    // the ratio drifts below 1 by roughly exp(-lambda^2 tau t / 2)
    const double drift = std::exp(-0.5 * ref.lambda * ref.lambda * tau * 2.0 / ref.lambda);
    for (const DecaySample& s : series.samples) {
        CHECK(s.ratio <= 1.0 + 1e-9);
        CHECK(s.ratio >= drift * (1.0 - 5e-3));
    }
}

TEST_CASE("nonpositive initial data stays nonpositive with r0+ = 0") {
    auto g = grid_n(48);
    KernelClass k(1.0, 2.0, 0.75);
    ControlFamily fam = ControlFamily::extremal_plus();
    EigenRef ref = eigen_ref(g, fam, k);
    QuadratureTable q = build_quadrature(*g, k);
    const double tau = 0.9 / center_dependence_bound(q, k);
    GridFunction h0(g);
    for (int i = 0; i < h0.size(); ++i) h0[i] = -std::max(0.0, 0.3 - g->nodes[i][0] * g->nodes[i][0]);
    DecaySeries series = decay_ratio_series(h0, ref, fam, k, tau, 1.0);
    CHECK(series.r0_plus == 0.0);
    GridFunction h = h0;
    for (int m = 0; m < 50; ++m) h = step(h, fam, k, q, tau);
    CHECK(h.max() <= 1e-13);
}

TEST_CASE("decay slope: eigen evolution with a tiny step hits -lambda to 1e-6") {
    auto g = grid_n(64);
    KernelClass k(1.0, 1.0, 0.5);
    ControlFamily fam = ControlFamily::single({1.0, 0.0});
    EigenRef ref = eigen_ref(g, fam, k, 1e-10);
    const double tau = 1e-8; // Euler slope bias lambda^2 tau / 2 must sit below 1e-6
    DecaySeries series = decay_ratio_series(ref.v, ref, fam, k, tau, 64.0 * tau, 32);
    const double slope = decay_rate_fit(series, 0.0);
    CHECK(slope == doctest::Approx(-ref.lambda).epsilon(1e-6 / ref.lambda));
    // scale invariance of the slope
    GridFunction cv = ref.v;
    for (int i = 0; i < cv.size(); ++i) cv[i] *= 17.0;
    DecaySeries series2 = decay_ratio_series(cv, ref, fam, k, tau, 64.0 * tau, 32);
    CHECK(decay_rate_fit(series2, 0.0) == doctest::Approx(slope).epsilon(1e-9));
}

TEST_CASE("generic bump decays at the principal rate within 2 percent") {
    auto g = grid_n(64);
    KernelClass k(1.0, 1.0, 0.5);
    ControlFamily fam = ControlFamily::single({1.0, 0.0});
    EigenRef ref = eigen_ref(g, fam, k);
    QuadratureTable q = build_quadrature(*g, k);
    const double tau = 0.9 / center_dependence_bound(q, k);
    GridFunction h0(g);
    for (int i = 0; i < h0.size(); ++i) {
        const double x = g->nodes[i][0];
        h0[i] = std::max(0.0, 1.0 - 4.0 * (x - 0.2) * (x - 0.2));
    }
    const double horizon = 8.0 / ref.lambda;
    DecaySeries series = decay_ratio_series(h0, ref, fam, k, tau, horizon);
    const double slope = decay_rate_fit(series, 0.3 * horizon);
    CHECK(slope == doctest::Approx(-ref.lambda).epsilon(0.02));
    CHECK(series.ratio_bound_holds);
}

TEST_CASE("decay fit needs enough usable samples") {
    DecaySeries s;
    for (int i = 0; i < 5; ++i) s.samples.push_back({0.1 * i, std::exp(-0.1 * i), 1.0});
    CHECK_THROWS_AS(decay_rate_fit(s, 0.0), data_error);
}
