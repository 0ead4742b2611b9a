#include <doctest.h>

#include "etherphase/fixtures.hpp"
#include "etherphase/phase_product.hpp"

#include <cmath>

using namespace etherphase;

namespace {
Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}
}  // namespace

TEST_CASE("flat triangle vertices come from the alternating sum") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    Vec x = v2(0.1, 0.2), y = v2(0.5, -0.1), z = v2(-0.3, 0.4);
    TriangleVertices tv = triangle_vertices(E, x, y, z);
    CHECK((tv.A - (x - y + z)).norm() < 1e-9);
    CHECK((tv.B - (-x + y + z)).norm() < 1e-9);
    CHECK((tv.C - (x + y - z)).norm() < 1e-9);
}

TEST_CASE("flat triangle phase magnitude is twice the symplectic area") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    double val = triangle_phase(E, v2(0, 0), v2(1, 0), v2(0, 1));
    CHECK(std::abs(std::abs(val) - 2.0) < 1e-8);
    // degenerate mid-points give zero
    CHECK(triangle_phase(E, v2(0.2, 0.2), v2(0.2, 0.2), v2(0.2, 0.2)) == 0.0);
}

TEST_CASE("triangle phase is cyclic in its mid-points") {
    EtherStructure E = make_fixture("darboux_pullback", {});
    Vec x = v2(0.1, 0.2), y = v2(0.4, -0.1), z = v2(-0.2, 0.3);
    double a = triangle_phase(E, x, y, z);
    CHECK(a == doctest::Approx(triangle_phase(E, y, z, x)).epsilon(1e-8));
    CHECK(a == doctest::Approx(triangle_phase(E, z, x, y)).epsilon(1e-8));
}

TEST_CASE("collinear mid-points cross zero continuously") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    Vec y = v2(-0.5, 0), z = v2(0.5, 0);
    double prev = triangle_phase(E, v2(-0.2, 0.1), y, z);
    for (double h : {0.05, 0.0, -0.05}) {
        double val = triangle_phase(E, v2(0.0, h), y, z);
        CHECK(std::abs(val - prev) < 0.5);
        prev = val;
    }
    CHECK(std::abs(triangle_phase(E, v2(0.0, 0.0), y, z)) < 1e-9);
}

TEST_CASE("product of two momentum phases is the phase of the doubled shift") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    PhaseFunction p = linear_phase(v2(0, 1));  // phase of translation by (1,0)
    Vec x = v2(0.3, 0.7);
    Vec x0 = v2(0, 0);
    SymplecticMap g2 = translation_map(v2(2, 0));
    double expect = phase_product(E, p, p, x0) + normalized_phase(E, g2, x, x0);
    CHECK(phase_product(E, p, p, x) == doctest::Approx(expect).epsilon(1e-8));
    // the gradient of the product is the doubled covector
    ProductResult r = phase_product_detail(E, p, p, x);
    CHECK(r.stationary_residual < 1e-5);
    CHECK_FALSE(r.multi_branch);
}

TEST_CASE("constant phases are units for the product") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    PhaseFunction p = linear_phase(v2(0.2, -0.1));
    Vec x = v2(0.4, 0.1);
    CHECK(phase_product(E, p, constant_phase(0.0), x) ==
          doctest::Approx(p.value(x)).epsilon(1e-9));
    CHECK(phase_product(E, constant_phase(0.0), p, x) ==
          doctest::Approx(p.value(x)).epsilon(1e-9));
}

TEST_CASE("product matches flow-time additivity for the oscillator") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    HamiltonianSystem osc{[](const Vec& z) { return 0.5 * z.squaredNorm(); },
                          [](const Vec& z) { return z; }};
    double t = 0.3, tau = 0.25;
    Vec x = v2(0.5, -0.2);
    auto phi_at = [&](double tt) {
        PhaseFunction p;
        p.value = [&E, &osc, tt](const Vec& u) { return dynamic_phase(E, osc, u, tt); };
        p.gradient = [&E, &osc, tt](const Vec& u) {
            return phase_gradient(E, flow_map(osc, E.fix, tt), u);
        };
        return p;
    };
    double prod = phase_product_maps(E, phi_at(tau), flow_map(osc, E.fix, tau), phi_at(t),
                                     flow_map(osc, E.fix, t), x)
                      .value;
    CHECK(prod == doctest::Approx(dynamic_phase(E, osc, x, t + tau)).epsilon(1e-6));
}
