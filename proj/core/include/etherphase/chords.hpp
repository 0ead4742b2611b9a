#pragma once

#include "etherphase/groupoid.hpp"
#include "etherphase/phase_product.hpp"

namespace etherphase {

// parametrized embedded curve; in a 2-dimensional chart every embedded curve
// is Lagrangian
struct LagrangianCurve {
    std::function<Vec(double)> param;
    double s_lo = 0, s_hi = 1;
    bool periodic = false;

    Vec at(double s) const { return param(s); }
    double period() const { return s_hi - s_lo; }
};

LagrangianCurve circle_curve(double radius, const Vec& center);

struct ChordResult {
    Vec a, b;        // chord feet on the curve, s_x(b) = a
    double sa, sb;   // their parameters
    double value = 0;  // enclosed-area phase (only set by chord_phase)
};

// the chord of lam through the reflection center x; feet labeled so that the
// closing arc b -> a in increasing parameter direction is the shorter one
// (for non-periodic curves: so that the arc runs in increasing direction);
// with that labeling the phase gradient at x is H_x(a)
ChordResult chord_find(const EtherStructure& E, const LagrangianCurve& lam, const Vec& x);

// signed area enclosed by the chord geodesic a -> b and the curve arc b -> a
ChordResult chord_phase(const EtherStructure& E, const LagrangianCurve& lam, const Vec& x);

Vec chord_gradient(const EtherStructure& E, const LagrangianCurve& lam, const Vec& x);

// residual of the stationary Hamilton-Jacobi system for a curve given as the
// joint level set H_j = E_j
double chord_hj_residual(const EtherStructure& E, const LagrangianCurve& lam,
                         const std::vector<ScalarField>& levels, const Vec& energies,
                         const Vec& x);

// phase of the flow-propagated chord function: geodesic through x from lam to
// flow_t(lam), the trajectory arc back, and the closing arc on lam, minus t*H
// on the trajectory side
double chord_flow_product(const EtherStructure& E, const LagrangianCurve& lam,
                          const HamiltonianSystem& sys, const Vec& x, double t);

// membrane form of the product of a map's phase (normalized at y) with the
// chord function; y must satisfy fixed_midpoint(gamma, y) in lam
double chord_map_product(const EtherStructure& E, const LagrangianCurve& lam,
                         const SymplecticMap& gamma, const Vec& x, const Vec& y);

// point y near lam.at(s_seed) whose fixed mid-point under gamma lies on lam
Vec chord_anchor_point(const EtherStructure& E, const LagrangianCurve& lam,
                       const SymplecticMap& gamma, double s_seed);

// chord function packaged as a PhaseFunction (value by membrane, gradient by
// the chord-foot formula)
PhaseFunction chord_phase_function(const EtherStructure& E, const LagrangianCurve& lam);

}  // namespace etherphase
