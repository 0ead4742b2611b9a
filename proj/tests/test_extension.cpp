#include <doctest.h>

#include "etherphase/extension.hpp"
#include "etherphase/fixtures.hpp"

using namespace etherphase;

namespace {
Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

// a linear phase gives a pure translation whose extension is not a graph over
// (x, y); a quadratic term keeps the graph intersection nondegenerate
PhaseFunction quad_phase(const Vec& c, const Mat& S) {
    PhaseFunction p;
    p.value = [c, S](const Vec& z) { return c.dot(z) + 0.5 * z.dot(S * z); };
    p.gradient = [c, S](const Vec& z) -> Vec { return c + S * z; };
    return p;
}

Mat bend2(double d, double o) {
    Mat S = d * Mat::Identity(2, 2);
    S(0, 1) += o;
    S(1, 0) += o;
    S(1, 1) = -d * 0.8;
    return S;
}
}  // namespace

TEST_CASE("two-point extension gradients match the generating field") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    LagrangianSection lam{quad_phase(v2(0, 0.3), bend2(0.3, 0.08))};
    Vec x = v2(0.2, 0.1), y = v2(-0.1, 0.4);
    ExtensionResult r = extension_phase_section(E, lam, x, y);
    // gradients of the two-point function: the generating field from x at the
    // image foot, minus the field from y at the preimage foot
    const double h = 1e-4;
    for (int k = 0; k < 2; ++k) {
        Vec d = Vec::Zero(2);
        d[k] = h;
        double dx = (extension_phase_section(E, lam, Vec(x + d), y).value -
                     extension_phase_section(E, lam, Vec(x - d), y).value) /
                    (2 * h);
        double dy = (extension_phase_section(E, lam, x, Vec(y + d)).value -
                     extension_phase_section(E, lam, x, Vec(y - d)).value) /
                    (2 * h);
        CHECK(std::abs(dx - ether_eval(E, x, r.a)[k]) < 1e-5);
        CHECK(std::abs(dy + ether_eval(E, y, r.b)[k]) < 1e-5);
    }
    // intersection data is consistent with the graph condition
    CHECK((r.a - reflection(E, x, reflection(E, y, r.b))).norm() < 1e-8);
    CHECK((r.Z - midpoint(E, r.a, r.b)).norm() < 1e-8);
}

TEST_CASE("restriction to the stationary second argument recovers the phase") {
    EtherStructure E = make_fixture("darboux_pullback", {});
    LagrangianSection lam{quad_phase(v2(0.06, -0.08), bend2(0.25, 0.05))};
    Vec x = v2(0.3, -0.2);
    Vec y = extension_restriction_point(E, lam, x);
    CHECK(extension_phase_section(E, lam, x, y).value ==
          doctest::Approx(lam.phi.value(x)).epsilon(1e-7));
    const double h = 1e-4;
    for (int k = 0; k < 2; ++k) {
        Vec d = Vec::Zero(2);
        d[k] = h;
        double dy = (extension_phase_section(E, lam, x, Vec(y + d)).value -
                     extension_phase_section(E, lam, x, Vec(y - d)).value) /
                    (2 * h);
        CHECK(std::abs(dy) < 1e-5);
    }
}

TEST_CASE("operator calculus identities hold on sampled elements") {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    LagrangianSection lam1{quad_phase(v2(0, 0.08), bend2(0.3, 0.08))};
    LagrangianSection lam2{quad_phase(v2(-0.06, 0.1), bend2(0.22, -0.06))};
    auto recs = operator_calculus_check(E, lam1, lam2, 20, 99);
    CHECK(recs.size() == 6);
    for (const auto& r : recs) {
        INFO(r.name);
        CHECK(r.samples_ok >= 15);
        CHECK(r.max_residual < 1e-5);
    }
}
