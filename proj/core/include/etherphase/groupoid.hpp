#pragma once

#include "etherphase/phase_maps.hpp"

namespace etherphase {

struct GroupoidElement {
    Vec base;      // x
    Vec momentum;  // p
};

// z with H_x(z) = p
Vec left_map(const EtherStructure& E, const GroupoidElement& m);
// dual fibration; l(x,-p) when involutive, s_x^{-1}(l(x,p)) otherwise
Vec right_map(const EtherStructure& E, const GroupoidElement& m);

// max-norm of the canonical T*X bracket relations of (l, r): l Poissonian,
// r anti-Poissonian, l and r commuting
double lie_engel_residual(const EtherStructure& E, const GroupoidElement& m,
                          double h = 1e-4);

GroupoidElement groupoid_unit(const EtherStructure& E, const Vec& base);
// element satisfying the two-sided inverse laws; (x,-p) when involutive,
// solved from the unit conditions otherwise
GroupoidElement groupoid_inverse(const EtherStructure& E, const GroupoidElement& m);

// product of m2 (left factor) and m1 (right factor); requires r(m2) = l(m1)
GroupoidElement groupoid_multiply(const EtherStructure& E, const GroupoidElement& m2,
                                  const GroupoidElement& m1,
                                  double composability_tol = 1e-7);

// graph of the differential of a phase function, as a section of T*X
struct LagrangianSection {
    PhaseFunction phi;
    GroupoidElement at(const Vec& x, double h = kFdStep) const {
        return {x, phi.grad(x, h)};
    }
};

LagrangianSection zero_section();

// point of the groupoid product of two sections with a prescribed base;
// contract: momentum equals the gradient of the phase product there
GroupoidElement lagrangian_product_point(const EtherStructure& E,
                                         const LagrangianSection& lam2,
                                         const LagrangianSection& lam1, const Vec& x);

// same solve, also exposing the two section factors it found
struct SectionProduct {
    GroupoidElement product, m2, m1;
};
SectionProduct lagrangian_product_detail(const EtherStructure& E,
                                         const LagrangianSection& lam2,
                                         const LagrangianSection& lam1, const Vec& x);

// base w on a section with r(section(w)) = target (side = 'r') or
// l(section(w)) = target (side = 'l')
Vec section_base_with(const EtherStructure& E, const LagrangianSection& lam, char side,
                      const Vec& target, const Vec& seed);

// Hamilton-Jacobi residual | d/dt Phi(x,t) + H(l(x, d_x Phi(x,t))) |
double hj_residual(const EtherStructure& E, const HamiltonianSystem& sys,
                   const std::function<double(const Vec&, double)>& phi, const Vec& x,
                   double t, double dt = 1e-3);

}  // namespace etherphase
