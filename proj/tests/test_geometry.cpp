#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "parab/geometry.hpp"

using namespace parab;

TEST_CASE("1-D ball lattice by construction") {
    auto dom = make_ball_domain(1, 1.0, 0.5, /*band_m=*/1);
    REQUIRE(dom->node_count() == 5);
    std::set<double> xs;
    for (NodeId i = 0; i < dom->node_count(); ++i) xs.insert(dom->point(i)[0]);
    CHECK(xs == std::set<double>({-1.0, -0.5, 0.0, 0.5, 1.0}));

    std::set<double> interior;
    for (NodeId i = 0; i < dom->node_count(); ++i)
        if (dom->is_interior(i)) interior.insert(dom->point(i)[0]);
    CHECK(interior == std::set<double>({-0.5, 0.0, 0.5}));
}

TEST_CASE("domain measure approaches the ball volume") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 128);
    CHECK(dom->measure() == doctest::Approx(M_PI).epsilon(0.02));

    auto coarse = make_ball_domain(2, 1.0, 1.0 / 64);
    const double err_c = std::abs(coarse->measure() - M_PI);
    const double err_f = std::abs(dom->measure() - M_PI);
    CHECK(err_f <= err_c);  // refinement does not regress

    auto d3 = make_ball_domain(3, 1.0, 1.0 / 16);
    CHECK(d3->measure() == doctest::Approx(4.0 / 3.0 * M_PI).epsilon(0.05));
}

TEST_CASE("refinement consistency: measure difference is O(h)") {
    // constant fit once at radius 1 in n = 2 and frozen
    const double C = 9.0;
    for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
        auto a = make_ball_domain(2, 1.0, h);
        auto b = make_ball_domain(2, 1.0, h / 2);
        CHECK(std::abs(a->measure() - b->measure()) <= C * h);
    }
}

TEST_CASE("make_ball_domain rejects bad input") {
    CHECK_THROWS_AS(make_ball_domain(2, 1.0, 0.3), std::invalid_argument);   // h > r/4
    CHECK_THROWS_AS(make_ball_domain(0, 1.0, 0.1), std::invalid_argument);   // n
    CHECK_THROWS_AS(make_ball_domain(2, -1.0, 0.1), std::invalid_argument);  // radius
    CHECK_THROWS_AS(make_ball_domain(2, 1.0, -0.1), std::invalid_argument);  // h
}

TEST_CASE("interior and boundary-adjacent nodes partition the domain") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 16);
    long interior = 0;
    for (NodeId i = 0; i < dom->node_count(); ++i) {
        CHECK(norm(dom->point(i)) <= 1.0 + dom->spacing() / 2);
        if (dom->is_interior(i)) {
            ++interior;
            CHECK(dom->boundary_distance(i) >= 2 * dom->spacing() - 1e-12);
        } else {
            CHECK(dom->boundary_distance(i) < 2 * dom->spacing() + 1e-12);
        }
    }
    CHECK(interior == dom->interior_count());
    CHECK(interior > 0);
    CHECK(interior < dom->node_count());
}

TEST_CASE("measure of masks") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 128);
    ContactSet empty(dom);
    CHECK(measure(empty) == 0.0);

    ContactSet full = mask_where(dom, [](const Vec&) { return true; });
    CHECK(measure(full) == doctest::Approx(M_PI).epsilon(0.02));

    ContactSet half = mask_where(dom, [](const Vec& x) { return x[0] > 0.0; });
    CHECK(measure(half) == doctest::Approx(M_PI / 2).epsilon(0.03));

    // additivity over disjoint masks
    ContactSet other = half.complement();
    CHECK(measure(half) + measure(other) == doctest::Approx(measure(full)));
}

TEST_CASE("measure monotonicity under inclusion") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 32);
    ContactSet small = ball_mask(dom, 0.4);
    ContactSet big = ball_mask(dom, 0.8);
    CHECK(small.subset_of(big));
    CHECK(measure(small) <= measure(big));
}

TEST_CASE("paraboloid evaluation") {
    Paraboloid constant{0.0, {0, 0, 0}, 3.0};
    CHECK(eval_paraboloid(constant, {0.7, -2.0, 0}) == 3.0);

    Paraboloid down{-2.0, {0, 0, 0}, 0.0};
    CHECK(eval_paraboloid(down, {1, 0, 0}) == -1.0);

    // vertex at -y/a, maximum value by completing the square
    Paraboloid p{-4.0, {4, 0, 0}, 0.0};
    const Vec v = p.vertex();
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == 0.0);
    CHECK(eval_paraboloid(p, v) == doctest::Approx(2.0));
}

TEST_CASE("vertex identity: max over nodes lands next to -y/a") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 32);
    Paraboloid p{-3.0, {1.2, -0.6, 0}, 0.25};
    const Vec v = p.vertex();
    NodeId best = 0;
    double best_val = -1e300;
    for (NodeId i = 0; i < dom->node_count(); ++i) {
        const double val = p.eval(dom->point(i));
        if (val > best_val) {
            best_val = val;
            best = i;
        }
    }
    CHECK(norm(dom->point(best) - v) <= dom->spacing() * std::sqrt(2.0) + 1e-12);
}

TEST_CASE("grid function guards") {
    auto dom = make_ball_domain(1, 1.0, 0.25);
    CHECK_THROWS_AS(GridFunction(dom, std::vector<double>(3, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction(dom, [](const Vec&) { return std::nan(""); }),
                    std::invalid_argument);
    GridFunction u(dom, [](const Vec& x) { return x[0]; });
    CHECK(u.max() == 1.0);
    CHECK(u.min() == -1.0);
    CHECK(u.osc() == 2.0);
}
