#pragma once

#include "nonloc/operator.hpp"

namespace nonloc {

/// Reference eigenpair used to normalize the decay statistics.
struct EigenRef {
    double lambda;
    GridFunction v; // positive interior eigenfunction
};

/// One explicit Euler step h' = h + tau I(h); tau must respect the CFL bound
/// 0.9 / (center dependence of the scheme).
GridFunction step(const GridFunction& h, const ControlFamily& fam, const KernelClass& k,
                  const QuadratureTable& q, double tau);

struct DecaySample {
    double t;
    double sup_h;
    double ratio; // max_i h_i / (v_i e^{-lambda t})
};

struct DecaySeries {
    std::vector<DecaySample> samples;
    double r0_plus = 0.0;  // max_i h0+_i / v_i
    double ratio_max = 0.0;
    bool ratio_bound_holds = false; // ratio_max <= r0_plus (1 + 1e-8)
};

/// Evolves h0 to the horizon, sampling 64 evenly spaced times plus t=0, and
/// records the sup norm and the eigen-normalized ratio statistic.
DecaySeries decay_ratio_series(const GridFunction& h0, const EigenRef& ref,
                               const ControlFamily& fam, const KernelClass& k, double tau,
                               double horizon, int n_snapshots = 64);

/// Least-squares slope of log sup|h| vs t over post-burn-in samples.
double decay_rate_fit(const DecaySeries& series, double burn_in);

} // namespace nonloc
