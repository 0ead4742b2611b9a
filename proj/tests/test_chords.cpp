#include <doctest.h>

#include "etherphase/chords.hpp"
#include "etherphase/fixtures.hpp"

#include <cmath>

using namespace etherphase;

namespace {
Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}
const double kRoot = std::sqrt(0.75);
// circular-segment area cut off by the vertical chord through q = 0.5
const double kSegment = std::acos(0.5) - 0.5 * kRoot;
}  // namespace

TEST_CASE("unit-circle chord through an interior point") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    LagrangianCurve circ = circle_curve(1.0, Vec::Zero(2));
    ChordResult r = chord_phase(E, circ, v2(0.5, 0.0));
    // straight vertical chord; the labeled first foot is the upper one
    CHECK((r.a - v2(0.5, kRoot)).norm() < 1e-8);
    CHECK((r.b - v2(0.5, -kRoot)).norm() < 1e-8);
    CHECK(r.value == doctest::Approx(kSegment).epsilon(1e-6));
}

TEST_CASE("chord value vanishes on the curve itself") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    LagrangianCurve circ = circle_curve(1.0, Vec::Zero(2));
    for (double s : {0.2, 1.7, 4.4})
        CHECK(std::abs(chord_phase(E, circ, circ.at(s)).value) < 1e-8);
}

TEST_CASE("the chord gradient is the generator at the first foot") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    LagrangianCurve circ = circle_curve(1.0, Vec::Zero(2));
    Vec x = v2(0.4, 0.25);
    Vec g = chord_gradient(E, circ, x);
    const double h = 1e-4;
    for (int k = 0; k < 2; ++k) {
        Vec d = Vec::Zero(2);
        d[k] = h;
        double fd = (chord_phase(E, circ, Vec(x + d)).value -
                     chord_phase(E, circ, Vec(x - d)).value) /
                    (2 * h);
        CHECK(std::abs(fd - g[k]) < 1e-5);
    }
}

TEST_CASE("chord value matches the direct segment-area formula off axis") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    LagrangianCurve circ = circle_curve(1.0, Vec::Zero(2));
    // any interior point at distance d from the center cuts off a segment of
    // area arccos(d) - d*sqrt(1-d^2); the phase only sees the chord, so the
    // value is invariant under rotating the evaluation point
    double d = 0.35;
    double expect = std::acos(d) - d * std::sqrt(1 - d * d);
    for (double ang : {0.0, 1.1, 2.9}) {
        Vec x = v2(d * std::cos(ang), d * std::sin(ang));
        CHECK(std::abs(chord_phase(E, circ, x).value) ==
              doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("the center of the circle has no unique chord") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    LagrangianCurve circ = circle_curve(1.0, Vec::Zero(2));
    CHECK_THROWS_AS(chord_phase(E, circ, v2(0.0, 0.0)), AmbiguityError);
}

TEST_CASE("chord feet satisfy the level-set Hamilton-Jacobi system") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    LagrangianCurve circ = circle_curve(1.0, Vec::Zero(2));
    std::vector<ScalarField> levels{[](const Vec& z) { return 0.5 * z.squaredNorm(); }};
    Vec energies(1);
    energies << 0.5;
    for (auto& x : {v2(0.5, 0.1), v2(-0.2, 0.6), v2(0.3, -0.4)})
        CHECK(chord_hj_residual(E, circ, levels, energies, x) < 1e-6);
}

TEST_CASE("flow product of the chord function reduces to it at t=0") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    LagrangianCurve circ = circle_curve(1.0, Vec::Zero(2));
    HamiltonianSystem osc{[](const Vec& z) { return 0.5 * z.squaredNorm(); },
                          [](const Vec& z) { return z; }};
    Vec x = v2(0.45, 0.15);
    CHECK(chord_flow_product(E, circ, osc, x, 0.0) ==
          doctest::Approx(chord_phase(E, circ, x).value).epsilon(1e-9));
    // small-time evolution solves the time-dependent HJ equation
    auto phi = [&](const Vec& u, double tau) {
        return chord_flow_product(E, circ, osc, u, tau);
    };
    CHECK(hj_residual(E, osc, phi, x, 0.3) < 1e-4);
}

TEST_CASE("chords on the bent chart match the flat ones through the chart map") {
    double eps = 0.3;
    EtherStructure Eb = make_fixture("darboux_pullback", {{"eps", eps}});
    EtherStructure Ef = make_fixture("euclid_weyl_2n", {});
    LagrangianCurve flat_circ = circle_curve(1.0, Vec::Zero(2));
    // the image curve in the bent chart
    LagrangianCurve bent;
    bent.param = [eps](double s) {
        return v2(std::cos(s), std::sin(s) + eps * std::cos(s) * std::cos(s));
    };
    bent.s_lo = 0;
    bent.s_hi = 2 * M_PI;
    bent.periodic = true;
    Vec x = v2(0.5, 0.0);
    Vec xb = v2(0.5, 0.0 + eps * 0.25);
    double flat = chord_phase(Ef, flat_circ, x).value;
    double bentv = chord_phase(Eb, bent, xb).value;
    CHECK(bentv == doctest::Approx(flat).epsilon(1e-6));
}
