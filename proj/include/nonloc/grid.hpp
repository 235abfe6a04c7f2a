#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "nonloc/errors.hpp"

namespace nonloc {

using Point = std::array<double, 2>; // [0] used in 1D, both in 2D

/// Axis-aligned interval (dim=1) or box (dim=2). Boxes keep the distance
/// function exact and satisfy the exterior ball condition.
struct Domain {
    int dim = 1;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{0.0, 0.0};

    static Domain interval(double a, double b);
    static Domain box(double ax, double bx, double ay, double by);

    double length(int axis) const { return hi[axis] - lo[axis]; }
    double diameter() const;
    bool contains(const Point& p) const;
};

/// Uniform lattice of interior nodes, lexicographic ordering.
struct Grid {
    Domain domain;
    double h = 0.0;
    std::array<int, 2> shape{0, 1}; // nodes per axis; shape[1]==1 in 1D
    std::vector<Point> nodes;

    int node_count() const { return shape[0] * shape[1]; }
    int index(int ix, int iy = 0) const { return ix + shape[0] * iy; }
    Point coord(int ix, int iy = 0) const;
    bool inside(int ix, int iy = 0) const {
        return ix >= 0 && ix < shape[0] && iy >= 0 && iy < shape[1];
    }
};

/// build_grid enforces that h divides each axis length (to rounding) and that
/// at least 3 interior nodes exist per axis.
Grid build_grid(const Domain& domain, double h);

/// Convenience: interval grid with n interior nodes, h = (b-a)/(n+1).
Grid interval_grid(double a, double b, int n_nodes);

/// Node values on the interior lattice; evaluation anywhere outside the node
/// set (in particular outside the domain) returns exactly 0.
struct GridFunction {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(std::shared_ptr<const Grid> g)
        : grid(std::move(g)), values(grid->node_count(), 0.0) {}
    GridFunction(std::shared_ptr<const Grid> g, std::vector<double> v)
        : grid(std::move(g)), values(std::move(v)) {}

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }

    /// Lattice evaluation with exterior-zero extension (1D index).
    double at_ext(int ix) const {
        return (ix >= 0 && ix < grid->shape[0]) ? values[ix] : 0.0;
    }
    double at_ext(int ix, int iy) const {
        return grid->inside(ix, iy) ? values[grid->index(ix, iy)] : 0.0;
    }

    double sup_norm() const;
    double max() const;
    double min() const;
};

GridFunction zeros_like(const GridFunction& u);

/// Exact Euclidean distance to the boundary at every node (min over faces).
GridFunction distance_to_boundary(const std::shared_ptr<const Grid>& grid);

/// Barrier xi = d^beta in the collar {d < delta}, constant plateau inside,
/// zero outside the domain.
struct BarrierParams {
    double beta = 0.0;
    double delta = 0.0;
    double cap = 0.0; // delta^beta, so xi is continuous across the seam

    /// Validates beta in (0, 2s) and delta against the domain width.
    static BarrierParams make(double beta, double delta, double s, const Domain& domain);
};

GridFunction barrier_xi(const std::shared_ptr<const Grid>& grid, const BarrierParams& p);

} // namespace nonloc
