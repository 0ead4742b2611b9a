#pragma once

#include "etherphase/chords.hpp"

namespace etherphase {

struct ExtensionResult {
    double value = 0;
    Vec a, b, Z;  // intersection pair and the mid-point of their geodesic
};

// two-point generating function of the extension of a section: value of the
// section's phase at Z plus the triangle area with mid-points (Z, y, x)
ExtensionResult extension_phase_section(const EtherStructure& E,
                                        const LagrangianSection& lam, const Vec& x,
                                        const Vec& y);

// same with the chord function of a curve as the first summand
ExtensionResult extension_phase_chord(const EtherStructure& E, const LagrangianCurve& lam,
                                      const Vec& x, const Vec& y);

// same with the dynamic phase of a flow as the first summand
ExtensionResult extension_phase_flow(const EtherStructure& E, const HamiltonianSystem& sys,
                                     double t, const Vec& x, const Vec& y);

// the y at which the two-point extension of a section is stationary in y and
// restricts to the section's phase at x
Vec extension_restriction_point(const EtherStructure& E, const LagrangianSection& lam,
                                const Vec& x);

struct OperatorCheckRecord {
    std::string name;
    double max_residual = 0;
    int samples_ok = 0;
    int samples_failed = 0;
};

// pointwise verification, at random composable configurations, of the
// action/composition laws of extended sections (unit; the two actions; the two
// composition laws; commutation of mixed factors)
std::vector<OperatorCheckRecord> operator_calculus_check(const EtherStructure& E,
                                                         const LagrangianSection& lam1,
                                                         const LagrangianSection& lam2,
                                                         int samples, uint64_t seed);

}  // namespace etherphase
