#pragma once

#include <vector>

#include "nonloc/grid.hpp"
#include "nonloc/kernel.hpp"

namespace nonloc {

/// Exact mass of the single cell [a,b] (0 < a < b) under y^{-(1+2s)} dy.
double cell_mass(double a, double b, double s);

/// Cell weights and analytic tail for the 1D nonlocal integral. Offsets are
/// the symmetric multiples y_j = j*h; weights[j-1] carries the mass of BOTH
/// mirror cells +-[(j-1/2)h, (j+1/2)h], so that sum(weights) + tail_mass
/// reproduces the full integral of |y|^{-(1+2s)} over |y| > h/2. The ball
/// |y| < h/2 is dropped; beyond R the integrand uses the exterior-zero data
/// exactly.
struct QuadratureTable {
    double h = 0.0;
    double s = 0.5;
    double R = 0.0;                   // cutoff (J+1/2)h, >= diameter
    std::vector<double> weights;      // weights[j-1] for offset j = 1..J
    double tail_mass = 0.0;           // integral over |y| > R, both half-lines

    int offset_count() const { return static_cast<int>(weights.size()); }
    /// sum of all weights plus the tail; the center coefficient of the
    /// scheme is -2 kappa times this.
    double total_mass() const;
};

QuadratureTable build_quadrature(const Grid& grid, const KernelClass& k);

} // namespace nonloc
