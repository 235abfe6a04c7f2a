#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nonloc/dirichlet.hpp"

namespace nonloc {

struct EigenConfig {
    ExtremalSign sign = ExtremalSign::Plus; // plus: positive eigenfunction
    double cw_gap_tol = 1e-6;
    int max_outer_iters = 300;
    SolveConfig inner;
    std::uint64_t seed = 1;

    void validate() const {
        if (!(cw_gap_tol > 0.0)) throw config_error("eigen: cw_gap_tol must be positive");
        if (max_outer_iters < 1) throw config_error("eigen: max_outer_iters must be at least 1");
    }
};

struct EigenResult {
    double lambda = 0.0;
    double cw_lo = 0.0;
    double cw_hi = 0.0;
    GridFunction phi; // sup-norm 1; positive for sign=plus, negative for sign=minus
    int outer_iters = 0;
    bool converged = false;
    std::vector<std::pair<double, double>> trace; // per-iteration (cw_lo, cw_hi)
};

/// Collatz-Wielandt bracket min/max of (-Iu)_i / u_i over interior nodes for
/// a positive u; nodes with u_i < 1e-13 are excluded to avoid 0/0 right at
/// the boundary.
std::pair<double, double> collatz_wielandt(const GridFunction& u, const ControlFamily& fam,
                                           const KernelClass& k, const QuadratureTable& q);

/// Principal half-eigenpair by inverse power iteration on the solution
/// operator. For sign=minus the iteration runs on the conjugated operator
/// -I(-u) (positive iterates) and the eigenfunction is negated at the end.
EigenResult inverse_power(const ControlFamily& fam, const KernelClass& k,
                          const std::shared_ptr<const Grid>& grid, const EigenConfig& cfg);

/// Max sup-norm deviation between normalized eigenfunctions over independent
/// random restarts.
double verify_simplicity(const ControlFamily& fam, const KernelClass& k,
                         const std::shared_ptr<const Grid>& grid, const EigenConfig& cfg,
                         int n_restarts);

struct DomainScanRow {
    double radius;
    double lambda;
};

struct DomainScanResult {
    std::vector<DomainScanRow> rows;
    bool strictly_decreasing = false;
};

/// lambda1+ on (-a, a) for each radius, same interior node count per run.
DomainScanResult domain_monotonicity(const KernelClass& k, const ControlFamily& fam,
                                     const std::vector<double>& radii, int n_nodes,
                                     const EigenConfig& cfg);

} // namespace nonloc
