#include <doctest.h>

#include <cmath>
#include <vector>

#include "mflift/errors.hpp"
#include "mflift/legendre.hpp"
#include "mflift/rng.hpp"

using namespace mflift;

namespace {

std::vector<double> qrange(double lo, double hi, double step) {
    std::vector<double> q;
    for (double v = lo; v <= hi + step / 2; v += step) q.push_back(v);
    return q;
}

GridFunction sample_double_parabola(double step) {
    GridFunction f = GridFunction::on_range(-2.0, 2.0, step);
    for (std::size_t i = 0; i < f.size(); ++i)
        f.values[i] = double_parabola(f.h(i));
    return f;
}

} // namespace

TEST_CASE("single-point spectrum transforms to a line through the origin") {
    GridFunction f = GridFunction::on_range(0.0, 1.0, 0.25);
    for (auto& v : f.values) v = kNegInfinity;
    f.values[2] = 1.0;  // f(0.5) = d = 1
    const auto q = qrange(-3, 3, 0.5);
    const auto fstar = legendre_transform(f, q, 1);
    for (std::size_t i = 0; i < q.size(); ++i)
        CHECK(fstar[i] == doctest::Approx(q[i] * 0.5).epsilon(1e-12));
}

TEST_CASE("double parabola conjugate matches the closed form") {
    const GridFunction f = sample_double_parabola(1e-3);
    const auto q = qrange(-10, 10, 0.125);
    const auto fstar = legendre_transform(f, q, 1);
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double qq = q[i];
        const double want = std::abs(qq) <= 2.0
                                ? -std::abs(qq) - qq * qq / 4.0
                                : 1.0 - 2.0 * std::abs(qq);
        CHECK(std::abs(fstar[i] - want) <= 2e-3 * std::max(1.0, std::abs(qq)));
    }
}

TEST_CASE("constant plateau gives the linear envelope") {
    GridFunction f = GridFunction::on_range(0.0, 1.0, 1e-3);
    for (auto& v : f.values) v = 1.0;
    const auto q = qrange(-4, 4, 0.25);
    const auto fstar = legendre_transform(f, q, 1);
    for (std::size_t i = 0; i < q.size(); ++i)
        CHECK(fstar[i] ==
              doctest::Approx(std::min(q[i] * 0.0, q[i] * 1.0)).epsilon(1e-9));
}

TEST_CASE("double transform of the double parabola hits the paper values") {
    const GridFunction f = sample_double_parabola(1e-3);
    const auto q = qrange(-20, 20, 0.01);
    const GridFunction hull = double_legendre(f, q, 1);
    CHECK(hull.values[hull.index_of(0.0)] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(hull.values[hull.index_of(-1.0)] ==
          doctest::Approx(1.0).epsilon(1e-3));
    CHECK(hull.values[hull.index_of(1.5)] ==
          doctest::Approx(0.75).epsilon(1e-3));
}

TEST_CASE("a concave parabola is a fixed point of the double transform") {
    GridFunction f = GridFunction::on_range(-1.0, 1.0, 1e-3);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double h = f.h(i);
        f.values[i] = 0.8 - 2.0 * (h - 0.2) * (h - 0.2);
    }
    const auto q = qrange(-30, 30, 0.01);
    const GridFunction hull = double_legendre(f, q, 1);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(hull.values[i] - f.values[i]) <= 30.0 * 1e-3);
}

TEST_CASE("lifted transform reproduces the analytic branch values") {
    const GridFunction f = sample_double_parabola(1e-3);
    const auto q = qrange(-30, 30, 0.01);

    const GFunction g1 = make_gfunction(GFunction::Shape::Parabola, 1.0, 0.0);
    const GridFunction l1 = lifted_double_legendre(f, g1, q, 1);
    CHECK(l1.values[l1.index_of(0.0)] == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(l1.values[l1.index_of(0.5)] == doctest::Approx(0.75).epsilon(2e-3));

    const GFunction g0 = make_gfunction(GFunction::Shape::Parabola, 0.0, 0.0);
    const GridFunction l0 = lifted_double_legendre(f, g0, q, 1);
    const GridFunction hull = double_legendre(f, q, 1);
    for (std::size_t i = 0; i < l0.size(); ++i)
        CHECK(l0.values[i] == hull.values[i]);
}

TEST_CASE("lifted transform matches analytic_double_parabola across gammas") {
    const GridFunction f = sample_double_parabola(1e-3);
    const auto q = qrange(-50, 50, 0.01);
    for (double gamma : {0.0, 1.0, 3.0, 10.0}) {
        const GFunction g =
            make_gfunction(GFunction::Shape::Parabola, gamma, 0.0);
        const GridFunction lg = lifted_double_legendre(f, g, q, 1);
        double sup = 0.0;
        for (std::size_t i = 0; i < lg.size(); ++i) {
            const double want = analytic_double_parabola(gamma, lg.h(i));
            if (!std::isfinite(want)) continue;
            sup = std::max(sup, std::abs(lg.values[i] - want));
        }
        CHECK(sup <= 2e-2);
    }
}

TEST_CASE("pointwise envelope basics and the gamma sweep at the dip") {
    const GridFunction f = sample_double_parabola(1e-3);
    const auto q = qrange(-50, 50, 0.01);

    std::vector<GridFunction> singles{f};
    const GridFunction same = pointwise_envelope(singles);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(same.values[i] == f.values[i]);

    GridFunction lower = f;
    for (auto& v : lower.values)
        if (v != kNegInfinity) v -= 0.25;
    std::vector<GridFunction> pair{f, lower};
    const GridFunction env2 = pointwise_envelope(pair);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(env2.values[i] == lower.values[i]);

    std::vector<GridFunction> family;
    for (double gamma : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
        const GFunction g =
            make_gfunction(GFunction::Shape::Parabola, gamma, 0.0);
        family.push_back(lifted_double_legendre(f, g, q, 1));
    }
    const GridFunction env = pointwise_envelope(family);
    CHECK(env.values[env.index_of(0.0)] ==
          doctest::Approx(1.0 / 1001.0).epsilon(5e-3));

    GridFunction othergrid = GridFunction::on_range(-1.0, 1.0, 1e-3);
    std::vector<GridFunction> bad{f, othergrid};
    CHECK_THROWS_AS(pointwise_envelope(bad), InvalidInputError);
}

TEST_CASE("analytic double parabola branch values") {
    CHECK(analytic_double_parabola(0.0, 0.0) == 1.0);
    CHECK(analytic_double_parabola(1.0, 0.0) == 0.5);
    CHECK(analytic_double_parabola(3.0, 0.25) ==
          doctest::Approx(0.4375).epsilon(1e-15));
    CHECK(analytic_double_parabola(0.0, -1.0) == 1.0);
    CHECK(analytic_double_parabola(0.0, 1.5) == doctest::Approx(0.75));
    CHECK(analytic_double_parabola(2.0, 3.0) == kNegInfinity);
    CHECK_THROWS_AS(analytic_double_parabola(-1.0, 0.0),
                    InvalidParameterError);
}

TEST_CASE("transform properties on random piecewise grids") {
    Rng rng(2024);
    const auto q = qrange(-25, 25, 0.05);
    for (int trial = 0; trial < 10; ++trial) {
        GridFunction f = GridFunction::on_range(-1.0, 1.0, 5e-3);
        for (auto& v : f.values)
            v = rng.uniform() < 0.05 ? kNegInfinity : rng.normal() * 0.4;

        bool any = false;
        for (double v : f.values) any |= std::isfinite(v);
        if (!any) continue;

        const GridFunction hull = double_legendre(f, q, 1);

        // concavity of the double transform
        for (std::size_t i = 1; i + 1 < hull.size(); ++i) {
            const double second = hull.values[i - 1] - 2.0 * hull.values[i] +
                                  hull.values[i + 1];
            CHECK(second <= 1e-9);
        }
        // dominance up to grid resolution
        const double slack = 25.0 * 5e-3;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f.values[i] != kNegInfinity)
                CHECK(hull.values[i] >= f.values[i] - slack);

        // order reversal: f <= f2 pointwise implies f* >= f2*
        GridFunction f2 = f;
        for (auto& v : f2.values)
            if (v != kNegInfinity) v += 0.3;
        const auto fs = legendre_transform(f, q, 1);
        const auto f2s = legendre_transform(f2, q, 1);
        for (std::size_t i = 0; i < q.size(); ++i) CHECK(fs[i] >= f2s[i]);

        // lifted transform still dominates f on the grid
        const GFunction g =
            make_gfunction(GFunction::Shape::Parabola, 2.0, 0.1);
        const GridFunction lg = lifted_double_legendre(f, g, q, 1);
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f.values[i] != kNegInfinity)
                CHECK(lg.values[i] >= f.values[i] - slack);
    }
}

TEST_CASE("chain ordering hull >= lifted >= f when q covers the slopes") {
    // Coarse grid with bounded values keeps every supporting slope within
    // the q range, which the chain inequality needs.
    Rng rng(515);
    const auto q = qrange(-25, 25, 0.05);
    for (int trial = 0; trial < 10; ++trial) {
        GridFunction f = GridFunction::on_range(-1.0, 1.0, 0.1);
        for (auto& v : f.values) v = 0.5 * rng.uniform();
        const GridFunction hull = double_legendre(f, q, 1);
        const GFunction g =
            make_gfunction(GFunction::Shape::Parabola, 2.0, 0.1);
        const GridFunction lg = lifted_double_legendre(f, g, q, 1);
        // q-grid rounding perturbs kinky hulls by up to q_step * h_range
        const double chain_tol = 0.05 * 2.0 + 1e-9;
        const double slack = 25.0 * 0.1;
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(hull.values[i] >= lg.values[i] - chain_tol);
            CHECK(lg.values[i] >= f.values[i] - slack);
        }
    }
}

TEST_CASE("all -infinity input is rejected") {
    GridFunction f = GridFunction::on_range(0.0, 1.0, 0.1);
    for (auto& v : f.values) v = kNegInfinity;
    CHECK_THROWS_AS(legendre_transform(f, {0.0, 1.0}, 1), InvalidInputError);
}

TEST_CASE("equality of lifted transform where f+g is concave") {
    // f concave enough that f+g stays concave: lifted == f up to grid effects
    GridFunction f = GridFunction::on_range(-0.5, 0.5, 1e-3);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double h = f.h(i);
        f.values[i] = 1.0 - 4.0 * h * h;
    }
    const auto q = qrange(-40, 40, 0.02);
    const GFunction g = make_gfunction(GFunction::Shape::Parabola, 1.0, 0.0);
    const GridFunction lg = lifted_double_legendre(f, g, q, 1);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(lg.values[i] - f.values[i]) <= 40.0 * 1e-3 + 1e-6);
}
