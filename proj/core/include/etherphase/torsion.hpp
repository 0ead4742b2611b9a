#pragma once

#include "etherphase/extension.hpp"
#include "etherphase/report.hpp"

namespace etherphase {

// constant-coefficient non-involutive structure; b = 0 reduces to the flat
// Weyl fixture
EtherStructure make_torsion_fixture(double b);

// inversive curve through the center point x from s_x^{-1}(Exp_x(v)) to
// Exp_x(v); same object ether_geodesic produces on a non-involutive structure
Polyline internal_geodesic(const EtherStructure& E, const Vec& x, const Vec& v,
                           int segments);

// re-runs the membrane identity suite with center-points and internal
// geodesics: phase gradient vs membrane, dynamic phase difference law,
// product gradient and unit laws, Hamilton-Jacobi residual
CheckReport torsion_phase_suite(const EtherStructure& E, uint64_t seed, int samples = 6);

}  // namespace etherphase
