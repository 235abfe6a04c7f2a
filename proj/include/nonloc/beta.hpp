#pragma once

#include <vector>

#include "nonloc/kernel.hpp"
#include "nonloc/operator.hpp"

namespace nonloc {

/// Even profile (1+t)_+^beta + (1-t)_+^beta - 2 whose weighted singular
/// integral yields the boundary-exponent constants.
double psi_beta(double t, double beta);

/// c^+(beta) or c^-(beta): the integral of S^sign(psi_beta) against
/// |t|^{-(1+2s)} over the whole line, to absolute accuracy tol.
double c_constant(double beta, const KernelClass& k, ExtremalSign sign, double tol = 1e-10);

/// Root of c^sign on (0, 2s) by bisection; beta1 for sign=Plus, beta2 for
/// sign=Minus. Interval width < tol on return.
double find_beta_root(const KernelClass& k, ExtremalSign sign, double tol = 1e-6);

struct BetaSample {
    double beta;
    double c_plus;
    double c_minus;
};

struct BetaProfile {
    double s;
    double lambda_lo;
    double lambda_hi;
    std::vector<BetaSample> samples;
    double beta1;
    double beta2;
};

/// Tabulates c+- on a uniform beta sweep of (0.02*2s, 0.98*2s) and locates
/// both roots.
BetaProfile profile(const KernelClass& k, int n_samples);

} // namespace nonloc
