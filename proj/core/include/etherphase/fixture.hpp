#pragma once

#include "etherphase/numerics.hpp"

#include <vector>

namespace etherphase {

struct Polyline {
    std::vector<Vec> vertices;
    bool closed = false;
};

// Chart description of a symplectic structure: form omega (antisymmetric matrix
// field), a chosen primitive theta with d(theta) = omega, Poisson tensor
// psi = omega^{-1}, and a box domain the solvers must not leave.
struct SymplecticFixture {
    std::string name;
    int dim = 2;  // 2n
    MatrixField omega;
    VectorField theta;
    MatrixField psi;  // defaults to omega(z).inverse() when empty
    Vec box_lo, box_hi;
    double validity_radius = 0.5;

    Mat omega_at(const Vec& z) const { return omega(z); }
    Mat psi_at(const Vec& z) const { return psi ? psi(z) : Mat(omega(z).inverse()); }
    bool in_domain(const Vec& z) const {
        if (z.size() != dim || !z.allFinite()) return false;
        for (int i = 0; i < dim; ++i)
            if (z[i] < box_lo[i] || z[i] > box_hi[i]) return false;
        return true;
    }
    void require_in_domain(const Vec& z, const char* what) const {
        if (!in_domain(z)) throw DomainError(std::string(what) + ": point outside chart domain");
    }
};

// {f,g}(z) = grad f . Psi . grad g
double poisson_bracket(const SymplecticFixture& fix, const ScalarField& f,
                       const ScalarField& g, const Vec& z, double h_fd = kFdStep);

// int_path theta, composite Gauss-Legendre on each segment
double line_integral_theta(const SymplecticFixture& fix, const Polyline& path,
                           int gl_order = 8);

// int_0^1 theta(c(t)).c'(t) dt for a smooth parametric curve; c' by central FD
double curve_integral_theta(const SymplecticFixture& fix, const CurveFn& c,
                            int gl_order = 8, int panels = 8);

// RK4 path of dx/dt = field(x,t); the returned polyline carries steps+1 vertices
Polyline integrate_ode(const SymplecticFixture& fix,
                       const std::function<Vec(const Vec&, double)>& field,
                       const Vec& x0, double t0, double t1, int steps);

// Hamiltonian vector field under the project-wide sign convention (fixed by the
// Euclidean reflection/translation gates): X_H = -Psi grad H.
Vec hamiltonian_field(const SymplecticFixture& fix, const ScalarField& H, const Vec& z,
                      double h_fd = kFdStep);
Vec hamiltonian_field(const SymplecticFixture& fix, const VectorField& gradH, const Vec& z);

// Signed symplectic area enclosed by a membrane boundary, computed as a theta
// line integral over the listed pieces (Stokes).  The overall sign is fixed by
// the Euclidean translation gate; the text's listing order corresponds to the
// opposite traversal.
inline constexpr double kMembraneSign = -1.0;

double membrane_area(const SymplecticFixture& fix, const std::vector<CurveFn>& boundary,
                     int gl_order = 8, int panels = 8);

}  // namespace etherphase
