#pragma once

#include "etherphase/fixture.hpp"

#include <memory>

namespace etherphase {

using TwoPointField = std::function<Vec(const Vec&, const Vec&)>;

// Christoffel symbols at a point: gamma[l](j,k) = Gamma^l_{jk}
struct ConnectionTensor {
    std::vector<Mat> gamma;
    double operator()(int l, int j, int k) const { return gamma[l](j, k); }
    int dim() const { return static_cast<int>(gamma.size()); }
    double max_abs() const {
        double m = 0;
        for (const Mat& g : gamma) m = std::max(m, g.cwiseAbs().maxCoeff());
        return m;
    }
};

// A covector-valued Hamiltonian H_x(z) over a chart together with the family of
// reflections (inversions when not involutive) it generates.  Closed forms, when
// present, take precedence over the generic integration/solve paths.
struct EtherStructure {
    SymplecticFixture fix;
    bool involutive = true;
    TwoPointField H;  // H_x(z), components indexed like dx^j

    // optional closed forms
    TwoPointField reflect_cf;               // s_x(z)
    TwoPointField reflect_inv_cf;           // s_x^{-1}(z)
    std::function<Vec(const Vec&, const Vec&, double)> exp_cf;  // Exp_x(v t)
    TwoPointField log_cf;                   // Exp_x^{-1}(z)
    TwoPointField left_cf;                  // l(x,p)
    std::function<Mat(const Vec&, const Vec&)> dzH_cf;  // D_z H_x(z)

    std::string description;
    int ode_steps = 64;      // RK4 steps for (3.4) and Exp integration
    double newton_tol = 1e-11;
    double h_fd = kFdStep;

    Mat dzH(const Vec& x, const Vec& z) const;
    void require_near(const Vec& x, const Vec& z, const char* what) const {
        fix.require_in_domain(x, what);
        fix.require_in_domain(z, what);
        if ((z - x).norm() > fix.validity_radius)
            throw DomainError(std::string(what) + ": point outside validity radius");
    }
};

Vec ether_eval(const EtherStructure& E, const Vec& x, const Vec& z);

// max-norm of d_x H + (1/2){H ^ H} at (x,z)
double zero_curvature_residual(const EtherStructure& E, const Vec& x, const Vec& z);

Vec reflection(const EtherStructure& E, const Vec& x, const Vec& z);
Vec reflection_inverse(const EtherStructure& E, const Vec& x, const Vec& z);

// reflection by integrating the dynamic equation along a caller-supplied x-path
// (used by the path-independence checks); path(0)=z .. path(1)=x
Vec reflection_along(const EtherStructure& E, const CurveFn& x_path, const Vec& z,
                     int steps = 0);

Vec exp_map(const EtherStructure& E, const Vec& x, const Vec& v, double t);
Vec log_map(const EtherStructure& E, const Vec& x, const Vec& z);

// x such that s_x(b) = a
Vec midpoint(const EtherStructure& E, const Vec& a, const Vec& b);

// smooth curve from y to z through the mid/center-point x, where s_x(y) = z;
// built from the forward Exp arc and its s_x^{-1} image
CurveFn geodesic_curve(const EtherStructure& E, const Vec& x, const Vec& y, const Vec& z);

// sampled geodesic through x with endpoint Exp_x(v); degenerate when v = 0
Polyline ether_geodesic(const EtherStructure& E, const Vec& x, const Vec& v, int segments);

// g_{x,y}(z) = s_x(s_y(z))
Vec ether_translation(const EtherStructure& E, const Vec& x, const Vec& y, const Vec& z);

// Hamiltonian reconstructed from a reflection family by the line-integral formula
Vec ether_from_reflections(const SymplecticFixture& fix, const TwoPointField& s_family,
                           const Vec& x, const Vec& z, int gl_order = 16);

ConnectionTensor connection_from_family(const EtherStructure& E, const Vec& x,
                                        double h2 = 1e-3);

}  // namespace etherphase
