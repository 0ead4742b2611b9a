#include <doctest.h>

#include "etherphase/fixtures.hpp"
#include "etherphase/groupoid.hpp"

using namespace etherphase;

namespace {
Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}
const Mat kPsi = (Mat(2, 2) << 0, 1, -1, 0).finished();
const Mat kOmega = (Mat(2, 2) << 0, -1, 1, 0).finished();
}  // namespace

TEST_CASE("flat source and target maps are half-Poisson shifts") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    CHECK((left_map(E, {v2(0, 0), v2(0, 2)}) - v2(1, 0)).norm() < 1e-10);
    CHECK((right_map(E, {v2(0, 0), v2(0, 2)}) - v2(-1, 0)).norm() < 1e-10);
    // l(x,p) = s_x(r(x,p)) always
    GroupoidElement m{v2(0.3, -0.2), v2(0.4, 0.5)};
    CHECK((left_map(E, m) - reflection(E, m.base, right_map(E, m))).norm() < 1e-9);
}

TEST_CASE("bracket table of the source/target maps") {
    for (const auto& name : {"euclid_weyl_2n", "darboux_pullback", "torsion_const"}) {
        EtherStructure E = make_fixture(name, {});
        CHECK(lie_engel_residual(E, {v2(0.25, -0.15), v2(0.1, 0.12)}) < 1e-6);
    }
}

TEST_CASE("flat multiplication solves the affine junction system") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    // closed form: base = (x+y)/2 + psi (p - xi)/4, momentum = omega(x-y) + (p+xi)/2
    Vec x = v2(0.0, 0.0), p = v2(0.0, 2.0);
    GroupoidElement m2{x, p};
    // pick a composable m1: r(m1) free, need l(m1) = r(m2) = x - psi p/2
    Vec y = v2(0.5, -0.3);
    Vec lm2r = Vec(x - 0.5 * kPsi * p);
    // solve xi so l(y,xi) = r(m2), from l(y,xi) = y + psi xi / 2
    Vec xi = Vec(2.0 * kOmega * (lm2r - y));
    GroupoidElement m1{y, xi};
    CHECK((left_map(E, m1) - right_map(E, m2)).norm() < 1e-10);
    GroupoidElement prod = groupoid_multiply(E, m2, m1);
    Vec base_cf = Vec(0.5 * (x + y) + 0.25 * kPsi * (p - xi));
    Vec mom_cf = Vec(kOmega * (x - y) + 0.5 * (p + xi));
    CHECK((prod.base - base_cf).norm() < 1e-8);
    CHECK((prod.momentum - mom_cf).norm() < 1e-8);
}

TEST_CASE("non-composable factors are rejected") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    GroupoidElement m2{v2(0, 0), v2(0, 2)};
    GroupoidElement m1{v2(0.5, 0.5), v2(0.4, 0.0)};
    CHECK_THROWS_AS(groupoid_multiply(E, m2, m1), DomainError);
}

TEST_CASE("units and inverses behave") {
    EtherStructure E = make_fixture("darboux_pullback", {});
    GroupoidElement m{v2(0.3, -0.1), v2(0.12, 0.2)};
    GroupoidElement mi = groupoid_inverse(E, m);
    GroupoidElement e = groupoid_multiply(E, m, mi);
    CHECK(e.momentum.norm() < 1e-8);
    CHECK((e.base - left_map(E, m)).norm() < 1e-8);
    GroupoidElement u = groupoid_unit(E, v2(0.4, 0.2));
    CHECK(u.momentum.norm() == 0.0);
    CHECK((left_map(E, u) - u.base).norm() < 1e-10);
}

TEST_CASE("section product carries the composed differential") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    double alpha = 0.4, beta = 0.7;
    LagrangianSection lam1{linear_phase(v2(0, alpha))};
    LagrangianSection lam2{linear_phase(v2(0, beta))};
    Vec x = v2(0.3, 0.6);
    GroupoidElement m = lagrangian_product_point(E, lam2, lam1, x);
    CHECK((m.base - x).norm() < 1e-9);
    CHECK((m.momentum - v2(0, alpha + beta)).norm() < 1e-7);
}
