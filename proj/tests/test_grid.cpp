#include "doctest.h"

#include <cmath>
#include <random>

#include "nonloc/grid.hpp"

using namespace nonloc;

TEST_CASE("interval grid enumerates interior lattice points") {
    Grid g = build_grid(Domain::interval(-1.0, 1.0), 0.5);
    REQUIRE(g.node_count() == 3);
    CHECK(g.nodes[0][0] == doctest::Approx(-0.5));
    CHECK(g.nodes[1][0] == doctest::Approx(0.0));
    CHECK(g.nodes[2][0] == doctest::Approx(0.5));
}

TEST_CASE("too coarse spacing is a configuration error") {
    CHECK_THROWS_AS(build_grid(Domain::interval(-1.0, 1.0), 1.5), config_error);
    CHECK_THROWS_AS(build_grid(Domain::interval(-1.0, 1.0), 0.5 + 1e-3), config_error);
}

TEST_CASE("2D unit square with h=0.25 has a 3x3 lattice") {
    Grid g = build_grid(Domain::box(0.0, 1.0, 0.0, 1.0), 0.25);
    CHECK(g.node_count() == 9);
    CHECK(g.shape[0] == 3);
    CHECK(g.shape[1] == 3);
}

TEST_CASE("distance to boundary is exact on boxes") {
    auto g1 = std::make_shared<const Grid>(build_grid(Domain::interval(-1.0, 1.0), 0.5));
    GridFunction d1 = distance_to_boundary(g1);
    CHECK(d1[1] == doctest::Approx(1.0)); // node 0
    CHECK(d1[2] == doctest::Approx(0.5)); // node 0.5

    auto g2 = std::make_shared<const Grid>(build_grid(Domain::box(0.0, 1.0, 0.0, 1.0), 0.25));
    GridFunction d2 = distance_to_boundary(g2);
    CHECK(d2[g2->index(0, 1)] == doctest::Approx(0.25)); // node (0.25, 0.5)
}

TEST_CASE("distance is 1-Lipschitz across node pairs") {
    auto g = std::make_shared<const Grid>(build_grid(Domain::box(0.0, 2.0, 0.0, 1.0), 0.125));
    GridFunction d = distance_to_boundary(g);
    for (int i = 0; i < g->node_count(); ++i)
        for (int j = 0; j < g->node_count(); ++j) {
            const double dx = g->nodes[i][0] - g->nodes[j][0];
            const double dy = g->nodes[i][1] - g->nodes[j][1];
            CHECK(std::abs(d[i] - d[j]) <= std::hypot(dx, dy) + 1e-14);
        }
}

TEST_CASE("barrier: collar power law, plateau, exterior zero") {
    auto g = std::make_shared<const Grid>(interval_grid(-1.0, 1.0, 199));
    BarrierParams p = BarrierParams::make(0.5, 0.1, 0.75, g->domain);
    GridFunction xi = barrier_xi(g, p);
    GridFunction d = distance_to_boundary(g);
    for (int i = 0; i < xi.size(); ++i) {
        if (d[i] < p.delta)
            CHECK(xi[i] == doctest::Approx(std::pow(d[i], 0.5)));
        else
            CHECK(xi[i] == doctest::Approx(std::pow(0.1, 0.5)));
        CHECK(xi[i] > 0.0);
    }
    CHECK(xi.at_ext(-1) == 0.0);
    CHECK(xi.at_ext(xi.size()) == 0.0);
    CHECK(xi.at_ext(10 * xi.size()) == 0.0);
}

TEST_CASE("barrier is monotone in d within the collar") {
    auto g = std::make_shared<const Grid>(interval_grid(-1.0, 1.0, 99));
    BarrierParams p = BarrierParams::make(0.8, 0.3, 0.6, g->domain);
    GridFunction xi = barrier_xi(g, p);
    GridFunction d = distance_to_boundary(g);
    for (int i = 0; i < xi.size(); ++i)
        for (int j = 0; j < xi.size(); ++j)
            if (d[i] < p.delta && d[j] < p.delta && d[i] <= d[j])
                CHECK(xi[i] <= xi[j] + 1e-15);
}

TEST_CASE("barrier exponent out of range rejected") {
    Domain dom = Domain::interval(-1.0, 1.0);
    CHECK_THROWS_AS(BarrierParams::make(1.3, 0.1, 0.6, dom), config_error); // beta >= 2s
    CHECK_THROWS_AS(BarrierParams::make(-0.1, 0.1, 0.6, dom), config_error);
    CHECK_THROWS_AS(BarrierParams::make(0.5, 1.5, 0.6, dom), config_error); // delta too wide
}
