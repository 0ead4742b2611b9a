#pragma once

#include "etherphase/ether.hpp"

namespace etherphase {

// point transformation with optional closed-form Jacobian / inverse
struct SymplecticMap {
    std::function<Vec(const Vec&)> apply;
    std::function<Mat(const Vec&)> jacobian;
    std::function<Vec(const Vec&)> inverse;

    Vec operator()(const Vec& z) const { return apply(z); }
    Mat jac(const Vec& z, double h = kFdStep) const {
        return jacobian ? jacobian(z) : fd_jacobian(apply, z, h);
    }
};

SymplecticMap identity_map();
SymplecticMap compose_maps(const SymplecticMap& outer, const SymplecticMap& inner);
SymplecticMap translation_map(const Vec& a);

// || J^T omega(g(z)) J - omega(z) ||_max with J by FD unless closed form given
double symplecticity_residual(const SymplecticFixture& fix, const SymplecticMap& g,
                              const Vec& z, double h = kFdStep);

struct PhaseFunction {
    ScalarField value;
    VectorField gradient;  // FD of value when empty

    double operator()(const Vec& x) const { return value(x); }
    Vec grad(const Vec& x, double h = kFdStep) const {
        return gradient ? gradient(x) : fd_gradient(value, x, h);
    }
};

PhaseFunction constant_phase(double c);
PhaseFunction linear_phase(const Vec& covector);  // x -> <covector, x>

struct HamiltonianSystem {
    ScalarField H;
    VectorField gradH;  // FD when empty
    int steps_per_unit = 128;

    Vec grad(const Vec& z, double h = kFdStep) const {
        return gradH ? gradH(z) : fd_gradient(H, z, h);
    }
};

// trajectory of the Hamiltonian flow from z over [0, t]
DenseTrajectory flow_trajectory(const HamiltonianSystem& sys, const SymplecticFixture& fix,
                                const Vec& z, double t);
Vec flow(const HamiltonianSystem& sys, const SymplecticFixture& fix, const Vec& z,
         double t);
SymplecticMap flow_map(const HamiltonianSystem& sys, const SymplecticFixture& fix,
                       double t);

// the point x~ swapped with gamma(x~) by the reflection centered at x
Vec fixed_midpoint(const EtherStructure& E, const SymplecticMap& gamma, const Vec& x);

// gradient of the phase function of gamma at x: H_x(gamma(x~))
Vec phase_gradient(const EtherStructure& E, const SymplecticMap& gamma, const Vec& x);

// membrane-area phase of gamma normalized at y, with a custom connecting curve
// c from x~ to y~ (straight chart segment by default)
double normalized_phase(const EtherStructure& E, const SymplecticMap& gamma, const Vec& x,
                        const Vec& y);
double normalized_phase(const EtherStructure& E, const SymplecticMap& gamma, const Vec& x,
                        const Vec& y, const CurveFn& c);

// the transformation generated by a phase function: gamma(z) = s_w(z) where w
// solves grad Phi(w) = H_w(s_w(z))
Vec map_from_phase(const EtherStructure& E, const PhaseFunction& phi, const Vec& z);
SymplecticMap map_from_phase(const EtherStructure& E, const PhaseFunction& phi);

// membrane reconstruction of a phase value from its own induced map; contract:
// result == phi(x)
double membrane_representation(const EtherStructure& E, const PhaseFunction& phi,
                               const Vec& x, const Vec& y);

// phase function of a Hamiltonian flow at time t (trajectory + geodesic membrane
// minus t*H on the trajectory side)
double dynamic_phase(const EtherStructure& E, const HamiltonianSystem& sys, const Vec& x,
                     double t);

// | t(H(z) - H(w)) - area(two trajectory arcs + connecting curve and its image) |
double poincare_cartan_residual(const EtherStructure& E, const HamiltonianSystem& sys,
                                const Vec& z, const Vec& w, double t);

// PhaseFunction wrapper of a map: value via membranes, gradient via the
// fixed-midpoint formula; value(y_base) = 0
PhaseFunction phase_of_map(const EtherStructure& E, const SymplecticMap& gamma,
                           const Vec& y_base);

// line integral of x -> phase_gradient along the straight segment y -> x
double integrate_phase_gradient(const EtherStructure& E, const SymplecticMap& gamma,
                                const Vec& y, const Vec& x, int gl_order = 8,
                                int panels = 8);

}  // namespace etherphase
