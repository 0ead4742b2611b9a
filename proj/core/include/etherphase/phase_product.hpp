#pragma once

#include "etherphase/phase_maps.hpp"

namespace etherphase {

struct TriangleVertices {
    Vec A, B, C;
};

// vertices of the three-geodesic triangle with side mid-points z (A-B),
// y (B-C), x (C-A): A is the fixed point of s_x . s_y . s_z
TriangleVertices triangle_vertices(const EtherStructure& E, const Vec& x, const Vec& y,
                                   const Vec& z);

// signed area of the triangle membrane, boundary oriented A -> B -> C -> A
double triangle_phase(const EtherStructure& E, const Vec& x, const Vec& y, const Vec& z);

struct ProductResult {
    double value = 0;
    Vec x_tilde, x_prime, x_dprime;  // inner fixed point and the two side mid-points
    double stationary_residual = 0;  // posterior check of the stationary system
    bool multi_branch = false;       // a second Newton seed found a different branch
};

// noncommutative product of phase functions at x; geometrically constructed
// from the mid-points of the composed transformations
ProductResult phase_product_detail(const EtherStructure& E, const PhaseFunction& phi2,
                                   const PhaseFunction& phi1, const Vec& x);
double phase_product(const EtherStructure& E, const PhaseFunction& phi2,
                     const PhaseFunction& phi1, const Vec& x);

// same product with the maps supplied directly (avoids re-deriving them from
// the phases when the caller already has them)
ProductResult phase_product_maps(const EtherStructure& E, const PhaseFunction& phi2,
                                 const SymplecticMap& gamma2, const PhaseFunction& phi1,
                                 const SymplecticMap& gamma1, const Vec& x);

}  // namespace etherphase
