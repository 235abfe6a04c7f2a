#pragma once

#include <optional>
#include <vector>

#include "nonloc/operator.hpp"

namespace nonloc {

enum class SolveMethod { PseudoTime, PolicyIteration };

struct SolveConfig {
    SolveMethod method = SolveMethod::PolicyIteration;
    double residual_tol = 1e-10;
    int max_iters = 200000;
    double rho_shift = 0.0; // the rho in G_rho = -I - rho

    void validate() const {
        if (!(residual_tol > 0.0)) throw config_error("solve: residual_tol must be positive");
        if (max_iters < 1) throw config_error("solve: max_iters must be at least 1");
    }
};

struct SolveReport {
    GridFunction u;
    std::vector<double> residual_history; // sup norms
    int iterations = 0;
    bool converged = false;
    SolveMethod method_used = SolveMethod::PolicyIteration;
};

/// Solve -Iu - rho u = f with exterior-zero data. Policy iteration needs a
/// one-sided family (pure sup or pure inf, or the extremal envelopes) and
/// uses dense frozen-control linear solves; pseudo-time marching works for
/// any family and reports divergence instead of looping forever.
SolveReport solve(const GridFunction& f, const ControlFamily& fam, const KernelClass& k,
                  const SolveConfig& cfg);
SolveReport solve(const GridFunction& f, const ControlFamily& fam, const KernelClass& k,
                  const QuadratureTable& q, const SolveConfig& cfg);

struct ComparisonReport {
    double worst_violation = 0.0; // max over nodes of (v - u)_+
    bool holds = false;
};

/// Checks u >= v nodewise for a caller-constructed super/sub pair.
ComparisonReport check_comparison(const GridFunction& u, const GridFunction& v);

/// sup u+ / (||f||_inf |Omega|^{1/n}) for the solution of the extremal-plus
/// problem with source f. Returns 0 for f == 0.
double abp_ratio(const GridFunction& f, const KernelClass& k, const SolveConfig& cfg);

struct ThresholdResult {
    std::optional<double> breakdown_rho; // empty: no breakdown within the grid
    std::vector<double> tested_rho;
    std::vector<bool> positive; // solution stayed nonnegative and the solve converged
};

/// Scans rho over a sorted grid, solving (-I - rho)u = f for a fixed
/// f >= 0, and reports the first rho at which positivity fails or the solve
/// breaks down; this estimates mu+ = lambda1+.
ThresholdResult max_principle_threshold(const ControlFamily& fam, const KernelClass& k,
                                        const std::shared_ptr<const Grid>& grid,
                                        const std::vector<double>& rho_grid,
                                        const SolveConfig& cfg);

struct BarrierSignRow {
    double beta;
    ExtremalSign sign;
    double min_value;  // of M(xi) over the fit window of the collar
    double max_value;
    double fitted_slope; // log|M(xi)| vs log d
    bool one_signed;
};

struct BarrierSignReport {
    std::vector<BarrierSignRow> rows;
};

/// Evaluates M+-_K(xi) on the collar for each beta and fits the d^{beta-2s}
/// growth rate over the window d in [d_min, d_max]. Nodes with d below d_min
/// are excluded (discretization pollution right at the boundary); d_max <= 0
/// means the full collar. For order > 1/2 the plateau kink at d = delta makes
/// the operator sign fail in a fixed neighborhood inside the seam, so the
/// asymptotic sign and slope need d_max well below delta.
BarrierSignReport barrier_sign_check(const std::shared_ptr<const Grid>& grid,
                                     const KernelClass& k, const std::vector<double>& betas,
                                     double delta, double d_min, double d_max = 0.0);

/// Least-squares slope of log u vs log d over collar nodes, skipping the two
/// nodes nearest each boundary point.
double boundary_exponent_fit(const GridFunction& u, double delta);

enum class HConditionStatus { Holds, Violated, SkippedRegime };

struct HConditionReport {
    HConditionStatus status;
    double constant_K = 0.0;
    double worst_margin = 0.0; // min over nodes of u - K xi
};

/// Verifies u >= K xi for u = solve(f), K = cap^{-1} inf_{d >= delta} u,
/// in the barrier regime beta in (beta2, 2s). Outside that regime the check
/// is skipped with an explanatory status.
HConditionReport h_condition_check(const GridFunction& f, const ControlFamily& fam,
                                   const KernelClass& k, double beta, double delta,
                                   double beta2, const SolveConfig& cfg);

} // namespace nonloc
