#include <doctest.h>

#include "etherphase/numerics.hpp"

#include <cmath>

using namespace etherphase;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    // degree 2k-1 is exact for a k-point rule; sin over a period as a smooth case
    auto cube = [](double t) { return t * t * t - 0.5 * t; };
    CHECK(gl_integrate(cube, 0.0, 1.0, 4, 1) == doctest::Approx(0.25 - 0.25).epsilon(1e-14));
    auto s = [](double t) { return std::sin(t); };
    CHECK(gl_integrate(s, 0.0, M_PI, 8, 4) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fd_gradient on a quadratic") {
    auto f = [](const Vec& z) { return z[0] * z[0] + 3.0 * z[0] * z[1]; };
    Vec z(2);
    z << 1.0, -2.0;
    Vec g = fd_gradient(f, z);
    CHECK(g[0] == doctest::Approx(2.0 * 1.0 + 3.0 * -2.0).epsilon(1e-8));
    CHECK(g[1] == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("newton_solve on a 2d root with damped steps") {
    auto F = [](const Vec& z) -> Vec {
        Vec r(2);
        r << z[0] * z[0] - 2.0, z[0] * z[1] - 1.0;
        return r;
    };
    Vec x0(2);
    x0 << 3.0, 3.0;
    Vec x = newton_solve(F, x0, {});
    CHECK(x[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(x[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("newton_solve reports the last residual on failure") {
    auto F = [](const Vec& z) -> Vec {
        Vec r(1);
        r << z[0] * z[0] * z[0];  // triple root: Newton converges too slowly
        return r;
    };
    Vec x0(1);
    x0 << 1.0;
    NewtonOptions opts;
    opts.max_iter = 3;
    CHECK_THROWS_AS(newton_solve(F, x0, opts), IterationLimitError);
}

TEST_CASE("dense trajectory interpolates a circular orbit") {
    // z' = (-p, q) traces a circle; check against the closed form mid-interval
    auto field = [](const Vec& z, double) -> Vec {
        Vec v(2);
        v << -z[1], z[0];
        return v;
    };
    Vec z0(2);
    z0 << 1.0, 0.0;
    DenseTrajectory traj = DenseTrajectory::integrate(field, z0, 0.0, 1.0, 64);
    Vec mid = traj.at(0.37);
    CHECK(mid[0] == doctest::Approx(std::cos(0.37)).epsilon(1e-7));
    CHECK(mid[1] == doctest::Approx(std::sin(0.37)).epsilon(1e-7));
    CHECK((traj.at(1.0) - traj.at(1.0)).norm() == 0.0);
}

TEST_CASE("reverse and segment curve helpers") {
    Vec a(2), b(2);
    a << 0, 0;
    b << 2, 4;
    CurveFn c = segment_curve(a, b);
    CurveFn r = reverse_curve(c);
    CHECK((r(0.25) - c(0.75)).norm() == doctest::Approx(0.0));
}
