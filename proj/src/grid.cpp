#include "nonloc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nonloc {

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw config_error("domain: lower endpoint must be below upper endpoint");
    Domain d;
    d.dim = 1;
    d.lo = {a, 0.0};
    d.hi = {b, 0.0};
    return d;
}

Domain Domain::box(double ax, double bx, double ay, double by) {
    if (!(ax < bx && ay < by))
        throw config_error("domain: lower endpoint must be below upper endpoint on each axis");
    Domain d;
    d.dim = 2;
    d.lo = {ax, ay};
    d.hi = {bx, by};
    return d;
}

double Domain::diameter() const {
    if (dim == 1) return length(0);
    return std::hypot(length(0), length(1));
}

bool Domain::contains(const Point& p) const {
    for (int a = 0; a < dim; ++a)
        if (!(p[a] > lo[a] && p[a] < hi[a])) return false;
    return true;
}

Point Grid::coord(int ix, int iy) const {
    Point p{domain.lo[0] + (ix + 1) * h, 0.0};
    if (domain.dim == 2) p[1] = domain.lo[1] + (iy + 1) * h;
    return p;
}

Grid build_grid(const Domain& domain, double h) {
    if (!(h > 0.0)) throw config_error("build_grid: spacing must be positive");
    Grid g;
    g.domain = domain;
    g.h = h;
    std::array<int, 2> n{1, 1};
    for (int a = 0; a < domain.dim; ++a) {
        const double len = domain.length(a);
        const double q = len / h;
        const long cells = std::lround(q);
        if (std::abs(q - static_cast<double>(cells)) > 1e-9 * std::max(1.0, q))
            throw config_error("build_grid: spacing does not divide the axis length");
        if (cells - 1 < 3)
            throw config_error("build_grid: spacing too coarse, fewer than 3 interior nodes per axis");
        n[a] = static_cast<int>(cells) - 1;
    }
    g.shape = {n[0], domain.dim == 2 ? n[1] : 1};
    g.nodes.reserve(g.node_count());
    for (int iy = 0; iy < g.shape[1]; ++iy)
        for (int ix = 0; ix < g.shape[0]; ++ix)
            g.nodes.push_back(g.coord(ix, iy));
    return g;
}

Grid interval_grid(double a, double b, int n_nodes) {
    if (n_nodes < 3) throw config_error("interval_grid: need at least 3 interior nodes");
    return build_grid(Domain::interval(a, b), (b - a) / (n_nodes + 1));
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values) m = std::max(m, v);
    return m;
}

double GridFunction::min() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : values) m = std::min(m, v);
    return m;
}

GridFunction zeros_like(const GridFunction& u) { return GridFunction(u.grid); }

GridFunction distance_to_boundary(const std::shared_ptr<const Grid>& grid) {
    GridFunction d(grid);
    const Domain& dom = grid->domain;
    for (int i = 0; i < grid->node_count(); ++i) {
        const Point& p = grid->nodes[i];
        double best = std::numeric_limits<double>::infinity();
        for (int a = 0; a < dom.dim; ++a)
            best = std::min({best, p[a] - dom.lo[a], dom.hi[a] - p[a]});
        d[i] = best;
    }
    return d;
}

BarrierParams BarrierParams::make(double beta, double delta, double s, const Domain& domain) {
    if (!(beta > 0.0 && beta < 2.0 * s))
        throw config_error("barrier: exponent beta must lie in (0, 2s)");
    double width = std::numeric_limits<double>::infinity();
    for (int a = 0; a < domain.dim; ++a) width = std::min(width, domain.length(a));
    if (!(delta > 0.0 && delta < 0.5 * width))
        throw config_error("barrier: collar width delta must lie in (0, half the domain width)");
    BarrierParams p;
    p.beta = beta;
    p.delta = delta;
    p.cap = std::pow(delta, beta);
    return p;
}

GridFunction barrier_xi(const std::shared_ptr<const Grid>& grid, const BarrierParams& p) {
    GridFunction xi(grid);
    GridFunction d = distance_to_boundary(grid);
    for (int i = 0; i < xi.size(); ++i)
        xi[i] = d[i] < p.delta ? std::pow(d[i], p.beta) : p.cap;
    return xi;
}

} // namespace nonloc
