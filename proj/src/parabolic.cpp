#include "nonloc/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nonloc {

GridFunction step(const GridFunction& h, const ControlFamily& fam, const KernelClass& k,
                  const QuadratureTable& q, double tau) {
    if (!(tau > 0.0) || tau > 0.9 / center_dependence_bound(q, k))
        throw config_error("parabolic step: tau violates the CFL bound");
    GridFunction ih = eval_operator(h, fam, q, k);
    GridFunction out = h;
    for (int i = 0; i < h.size(); ++i) out[i] += tau * ih[i];
    return out;
}

DecaySeries decay_ratio_series(const GridFunction& h0, const EigenRef& ref,
                               const ControlFamily& fam, const KernelClass& k, double tau,
                               double horizon, int n_snapshots) {
    for (int i = 0; i < ref.v.size(); ++i)
        if (!(ref.v[i] > 0.0))
            throw data_error("decay_ratio_series: reference eigenfunction must be positive");
    if (!(horizon > 0.0)) throw config_error("decay_ratio_series: horizon must be positive");
    const QuadratureTable q = build_quadrature(*h0.grid, k);

    DecaySeries out;
    for (int i = 0; i < h0.size(); ++i)
        out.r0_plus = std::max(out.r0_plus, std::max(h0[i], 0.0) / ref.v[i]);

    auto record = [&](const GridFunction& h, double t) {
        DecaySample s{t, h.sup_norm(), 0.0};
        double r = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < h.size(); ++i)
            r = std::max(r, h[i] / (ref.v[i] * std::exp(-ref.lambda * t)));
        s.ratio = r;
        out.samples.push_back(s);
        out.ratio_max = std::max(out.ratio_max, r);
    };

    GridFunction h = h0;
    record(h, 0.0);
    const long n_steps = static_cast<long>(std::ceil(horizon / tau));
    long next_snap = 1;
    for (long m = 1; m <= n_steps; ++m) {
        h = step(h, fam, k, q, tau);
        if (m * n_snapshots >= next_snap * n_steps) {
            record(h, m * tau);
            ++next_snap;
        }
    }
    out.ratio_bound_holds = out.ratio_max <= out.r0_plus * (1.0 + 1e-8);
    return out;
}

double decay_rate_fit(const DecaySeries& series, double burn_in) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const DecaySample& s : series.samples) {
        if (s.t < burn_in || !(s.sup_h > 1e-300)) continue;
        const double x = s.t, y = std::log(s.sup_h);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    if (cnt < 10) throw data_error("decay_rate_fit: fewer than 10 usable samples");
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

} // namespace nonloc
