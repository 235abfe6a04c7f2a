#include "nonloc/quadrature.hpp"

#include <cmath>

namespace nonloc {

double cell_mass(double a, double b, double s) {
    return (std::pow(a, -2.0 * s) - std::pow(b, -2.0 * s)) / (2.0 * s);
}

double QuadratureTable::total_mass() const {
    double sum = 0.0;
    for (double w : weights) sum += w;
    return sum + tail_mass;
}

QuadratureTable build_quadrature(const Grid& grid, const KernelClass& k) {
    if (grid.domain.dim != 1)
        throw config_error("build_quadrature: nonlocal operators are implemented in 1D only");
    QuadratureTable q;
    q.h = grid.h;
    q.s = k.s;
    const double diam = grid.domain.diameter();
    // smallest J with (J+1/2)h >= diam, so x +- y is exterior beyond R
    const int J = static_cast<int>(std::ceil(diam / grid.h - 0.5 - 1e-12));
    q.R = (J + 0.5) * grid.h;
    q.weights.resize(J);
    for (int j = 1; j <= J; ++j)
        q.weights[j - 1] = 2.0 * cell_mass((j - 0.5) * grid.h, (j + 0.5) * grid.h, k.s);
    q.tail_mass = 2.0 * std::pow(q.R, -2.0 * k.s) / (2.0 * k.s);
    return q;
}

} // namespace nonloc
