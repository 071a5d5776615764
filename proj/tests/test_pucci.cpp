#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "parab/pucci.hpp"

using namespace parab;

namespace {

std::mt19937_64 rng(20240811);

SymMatrix random_sym(int n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    SymMatrix m = SymMatrix::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, u(rng));
    return m;
}

// A = Q diag(a) Q^T with a_i in [1, lambda], Q a product of plane rotations
SymMatrix random_admissible(int n, double lambda) {
    std::uniform_real_distribution<double> ua(1.0, lambda);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
    double q[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto rotate = [&](int a, int b) {
        const double th = uth(rng), c = std::cos(th), s = std::sin(th);
        for (int k = 0; k < 3; ++k) {
            const double qa = q[k][a], qb = q[k][b];
            q[k][a] = c * qa - s * qb;
            q[k][b] = s * qa + c * qb;
        }
    };
    rotate(0, 1);
    if (n == 3) {
        rotate(0, 2);
        rotate(1, 2);
    }
    double d[3] = {ua(rng), ua(rng), ua(rng)};
    SymMatrix m = SymMatrix::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0;
            for (int k = 0; k < n; ++k) s += q[i][k] * d[k] * q[j][k];
            m.set(i, j, s);
        }
    return m;
}

double trace_product(const SymMatrix& a, const SymMatrix& b) {
    double s = 0;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) s += a(i, j) * b(i, j);
    return s;
}

}  // namespace

TEST_CASE("closed-form eigenvalues satisfy the characteristic polynomial") {
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 100; ++trial) {
            const SymMatrix m = random_sym(n);
            const auto ev = eigenvalues(m);
            double sum = 0;
            for (int i = 0; i < n; ++i) sum += ev[i];
            CHECK(sum == doctest::Approx(m.trace()).epsilon(1e-12));
            for (int i = 0; i + 1 < n; ++i) CHECK(ev[i] <= ev[i + 1]);
            // residual of det(A - lambda I)
            for (int i = 0; i < n; ++i) {
                if (n == 2) {
                    const double r = (m(0, 0) - ev[i]) * (m(1, 1) - ev[i]) - m(0, 1) * m(0, 1);
                    CHECK(std::abs(r) <= 1e-11);
                } else {
                    const double a = m(0, 0) - ev[i], b = m(1, 1) - ev[i], c = m(2, 2) - ev[i];
                    const double d = m(0, 1), f = m(0, 2), g = m(1, 2);
                    const double r = a * (b * c - g * g) - d * (d * c - g * f) + f * (d * g - b * f);
                    CHECK(std::abs(r) <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("pucci operator examples") {
    const PucciParams p2{2.0, 2};
    CHECK(pucci_minus(SymMatrix::identity(2), PucciParams{1.0, 2}) == doctest::Approx(2.0));
    CHECK(pucci_minus(SymMatrix::identity(2), PucciParams{7.0, 2}) == doctest::Approx(2.0));
    CHECK(pucci_minus(SymMatrix::diag(2, 1.0, -1.0), p2) == doctest::Approx(-1.0));
    CHECK(pucci_minus(SymMatrix::zero(2), p2) == 0.0);

    CHECK(pucci_plus(SymMatrix::diag(2, 1.0, -1.0), p2) == doctest::Approx(1.0));
    CHECK(pucci_plus(SymMatrix::identity(2), PucciParams{3.0, 2}) == doctest::Approx(6.0));
}

TEST_CASE("operator envelope: M- <= tr(AN) <= M+ for admissible A") {
    for (int n : {2, 3}) {
        const double lambda = 3.0;
        const PucciParams p{lambda, n};
        for (int trial = 0; trial < 200; ++trial) {
            const SymMatrix N = random_sym(n);
            const SymMatrix A = random_admissible(n, lambda);
            const double mid = trace_product(A, N);
            CHECK(pucci_minus(N, p) <= mid + 1e-10);
            CHECK(mid <= pucci_plus(N, p) + 1e-10);
        }
    }
}

TEST_CASE("M+ is the exact reflection of M-") {
    const PucciParams p{2.5, 3};
    for (int trial = 0; trial < 50; ++trial) {
        const SymMatrix N = random_sym(3);
        CHECK(pucci_plus(N, p) == -pucci_minus(-N, p));
    }
}

TEST_CASE("positive homogeneity and superadditivity of M-") {
    const PucciParams p{2.0, 2};
    for (int trial = 0; trial < 100; ++trial) {
        const SymMatrix N = random_sym(2);
        for (double t : {0.0, 0.5, 2.0, 17.0}) {
            CHECK(pucci_minus(N.scaled(t), p) ==
                  doctest::Approx(t * pucci_minus(N, p)).epsilon(1e-12).scale(1.0));
        }
        const SymMatrix M = random_sym(2);
        CHECK(pucci_minus(N + M, p) >= pucci_minus(N, p) + pucci_minus(M, p) - 1e-10);
    }
}

TEST_CASE("discrete Hessian is exact on quadratics") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 32);
    Paraboloid q{-3.0, {0.5, -1.0, 0}, 2.0};
    GridFunction u(dom, [&](const Vec& x) { return q.eval(x); });
    const NodeId id = dom->node_at({3, -2, 0});
    REQUIRE(id >= 0);
    const SymMatrix m = discrete_hessian(u, id);
    CHECK(m(0, 0) == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(m(1, 1) == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(std::abs(m(0, 1)) <= 1e-9);

    GridFunction xy(dom, [](const Vec& x) { return x[0] * x[1]; });
    const SymMatrix mxy = discrete_hessian(xy, id);
    CHECK(mxy(0, 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(mxy(0, 0)) <= 1e-9);
}

TEST_CASE("discrete Hessian of |x|^4 at e1/2") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 128);
    GridFunction u(dom, [](const Vec& x) { return norm2(x) * norm2(x); });
    const NodeId id = dom->node_at({64, 0, 0});
    REQUIRE(id >= 0);
    const SymMatrix m = discrete_hessian(u, id);
    // d11 = 4|x|^2 + 8 x1^2 = 3, d22 = 4|x|^2 = 1 at (1/2, 0)
    CHECK(std::abs(m(0, 0) - 3.0) <= 1e-3);
    CHECK(std::abs(m(1, 1) - 1.0) <= 1e-3);
}

TEST_CASE("discrete Hessian rejects boundary-adjacent nodes") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 16);
    GridFunction u(dom, [](const Vec&) { return 0.0; });
    NodeId band = -1;
    for (NodeId i = 0; i < dom->node_count(); ++i)
        if (!dom->is_interior(i)) band = i;
    REQUIRE(band >= 0);
    CHECK_THROWS_AS(discrete_hessian(u, band), std::invalid_argument);
}

TEST_CASE("supersolution checker on model inputs") {
    const double h = 1.0 / 128;
    auto dom = make_ball_domain(2, 1.0, h);
    const PucciParams p{1.0, 2};

    GridFunction cone(dom, [](const Vec& x) { return 1.0 - norm(x); });
    const auto rep = check_supersolution(cone, p, 10.0 * h);
    CHECK(rep.violating == 0);
    CHECK(rep.checked > 0);

    GridFunction bowl(dom, [](const Vec& x) { return 0.5 * norm2(x); });
    const auto rep2 = check_supersolution(bowl, p, 0.5);
    CHECK(rep2.violating == rep2.checked);  // M-(I) = n = 2 > tau everywhere
    CHECK(rep2.max_violation == doctest::Approx(2.0).epsilon(1e-6));

    GridFunction affine(dom, [](const Vec& x) { return 3.0 * x[0] - x[1] + 0.25; });
    const auto rep3 = check_supersolution(affine, p, 0.0);
    CHECK(rep3.violating == 0);
}

TEST_CASE("minimum of two supersolutions still checks out") {
    const double h = 1.0 / 64;
    auto dom = make_ball_domain(2, 1.0, h);
    const PucciParams p{2.0, 2};
    GridFunction cone(dom, [](const Vec& x) { return 1.0 - norm(x); });
    Paraboloid q{-2.0, {0.3, 0, 0}, 0.9};
    GridFunction mixed(dom, [&](const Vec& x) { return std::min(1.0 - norm(x), q.eval(x)); });
    const auto rep = check_supersolution(mixed, p, 10.0 * h * mixed.osc());
    CHECK(rep.violating == 0);
}

TEST_CASE("wide-stencil solver reproduces affine data") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 16);
    const PucciParams p{1.0, 2};
    auto res = solve_pucci_dirichlet(dom, [](const Vec& x) { return x[0]; }, p, 8, 1e-10);
    CHECK(res.converged);
    double err = 0;
    for (NodeId i = 0; i < dom->node_count(); ++i)
        err = std::max(err, std::abs(res.u[i] - dom->point(i)[0]));
    CHECK(err <= 1e-6);
}

TEST_CASE("wide-stencil solver: constants and the maximum principle") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 16);
    const PucciParams p{3.0, 2};
    auto res = solve_pucci_dirichlet(dom, [](const Vec&) { return 0.75; }, p, 8, 1e-10);
    for (NodeId i = 0; i < dom->node_count(); ++i)
        CHECK(res.u[i] == doctest::Approx(0.75).epsilon(1e-8));

    auto g = [](const Vec& x) { return std::sin(3 * x[0]) + 0.5 * std::cos(2 * x[1]); };
    auto res2 = solve_pucci_dirichlet(dom, g, p, 8, 1e-9);
    double lo = 1e300, hi = -1e300;
    for (NodeId i = 0; i < dom->node_count(); ++i)
        if (!dom->is_interior(i)) {
            lo = std::min(lo, res2.u[i]);
            hi = std::max(hi, res2.u[i]);
        }
    for (NodeId i = 0; i < dom->node_count(); ++i) {
        CHECK(res2.u[i] >= lo - 1e-9);
        CHECK(res2.u[i] <= hi + 1e-9);
    }
    // solver output is a discrete supersolution at the documented tolerance
    const auto rep =
        check_supersolution(res2.u, p, 10.0 * dom->spacing() * res2.u.osc());
    CHECK(rep.violating == 0);
}

TEST_CASE("solver rejects bad arguments") {
    auto dom = make_ball_domain(2, 1.0, 1.0 / 8);
    const PucciParams p{1.0, 2};
    CHECK_THROWS_AS(solve_pucci_dirichlet(dom, [](const Vec&) { return 0.0; }, p, 2, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_pucci_dirichlet(dom, [](const Vec&) { return 0.0; }, p, 8, 0.0),
                    std::invalid_argument);
}

TEST_CASE("gallery: barrier values from the closed form") {
    const PucciParams p{2.0, 2};  // p = n lambda = 4
    auto dom = make_ball_domain(2, 4.0, 1.0 / 32);
    GridFunction w = gallery("barrier", p, dom);

    const NodeId at_one = dom->node_at({32, 0, 0});
    REQUIRE(at_one >= 0);
    CHECK(w[at_one] == doctest::Approx(1.0).epsilon(1e-12));

    for (NodeId i = 0; i < dom->node_count(); ++i) {
        const double r = norm(dom->point(i));
        if (r >= 4.0 - 1e-12) CHECK(w[i] < 0.0);
        if (r < 1.0 - 1e-12) CHECK(w[i] > 1.0);
    }
}

TEST_CASE("gallery: barrier is a discrete subsolution away from the pole") {
    const double h = 1.0 / 32;
    const PucciParams p{2.0, 2};
    auto dom = make_ball_domain(2, 4.0, h);
    GridFunction w = gallery("barrier", p, dom);
    const double pw = p.n * p.lambda;
    const double norm_c = 1.0 - std::pow(2.0, -pw);
    long checked = 0;
    for (NodeId i = 0; i < dom->node_count(); ++i) {
        if (!dom->is_interior(i)) continue;
        const double r = norm(dom->point(i));
        if (r < 4 * h - 1e-12 || r > 3.0 + 1e-12) continue;
        const double val = pucci_minus(discrete_hessian(w, i), p);
        CHECK(val > 0.0);
        if (r >= 16 * h) {
            const double analytic =
                pw * std::pow(r, -pw - 2.0) * (pw + 1.0 - p.lambda * (p.n - 1)) / norm_c;
            CHECK(val == doctest::Approx(analytic).epsilon(0.05));
        }
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("gallery: ass_block and unknown names") {
    const PucciParams p{3.0, 2};
    auto dom = make_ball_domain(2, 1.0, 1.0 / 32);
    GridFunction b = gallery("ass_block", p, dom);
    const NodeId origin = dom->node_at({0, 0, 0});
    CHECK(b[origin] == doctest::Approx(-1.0));
    CHECK_THROWS_AS(gallery("no_such_member", p, dom), std::invalid_argument);
}

TEST_CASE("every supersolution gallery member passes the checker") {
    const double h = 1.0 / 64;
    for (double lambda : {1.0, 2.0}) {
        const PucciParams p{lambda, 2};
        auto dom = make_ball_domain(2, 1.0, h);
        for (const auto& name : gallery_supersolutions(p)) {
            CAPTURE(name);
            GridFunction u = gallery(name, p, dom);
            const auto rep = check_supersolution(u, p, 10.0 * h * std::max(1.0, u.osc()));
            CHECK(rep.violating == 0);
        }
    }
}

TEST_CASE("harnack gallery members are nonnegative with positive center value") {
    const PucciParams p{2.0, 2};
    auto dom = make_ball_domain(2, 4.0, 1.0 / 16);
    for (const auto& name : gallery_harnack_members(p)) {
        CAPTURE(name);
        GridFunction u = gallery(name, p, dom);
        CHECK(u.min() >= 0.0);
        CHECK(u[dom->node_at({0, 0, 0})] > 0.0);
        const auto rep = check_supersolution(u, p, 10.0 * dom->spacing() * std::max(1.0, u.osc()));
        CHECK(rep.violating == 0);
    }
}
