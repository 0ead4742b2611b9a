#include "etherphase/fixture.hpp"

#include <cmath>

namespace etherphase {

double poisson_bracket(const SymplecticFixture& fix, const ScalarField& f,
                       const ScalarField& g, const Vec& z, double h_fd) {
    fix.require_in_domain(z, "poisson_bracket");
    Vec gf = fd_gradient(f, z, h_fd);
    Vec gg = fd_gradient(g, z, h_fd);
    return gf.dot(fix.psi_at(z) * gg);
}

double line_integral_theta(const SymplecticFixture& fix, const Polyline& path,
                           int gl_order) {
    if (path.vertices.size() < 2) return 0.0;
    for (const Vec& v : path.vertices) fix.require_in_domain(v, "line_integral_theta");
    const GaussLegendre& gl = gauss_legendre(gl_order);
    double total = 0;
    size_t n = path.vertices.size();
    size_t segs = path.closed ? n : n - 1;
    for (size_t s = 0; s < segs; ++s) {
        const Vec& a = path.vertices[s];
        const Vec& b = path.vertices[(s + 1) % n];
        Vec d = b - a;
        if (d.norm() == 0) continue;
        for (int i = 0; i < gl_order; ++i) {
            double t = 0.5 * (1 + gl.nodes[i]);
            total += 0.5 * gl.weights[i] * fix.theta(a + t * d).dot(d);
        }
    }
    return total;
}

double curve_integral_theta(const SymplecticFixture& fix, const CurveFn& c,
                            int gl_order, int panels) {
    const double h = 1e-4;  // parameter-space FD step for c'
    auto integrand = [&](double t) {
        double tp = std::min(t + h, 1.0), tm = std::max(t - h, 0.0);
        Vec d = (c(tp) - c(tm)) / (tp - tm);
        return fix.theta(c(t)).dot(d);
    };
    return gl_integrate(integrand, 0.0, 1.0, gl_order, panels);
}

Polyline integrate_ode(const SymplecticFixture& fix,
                       const std::function<Vec(const Vec&, double)>& field,
                       const Vec& x0, double t0, double t1, int steps) {
    DenseTrajectory tr = DenseTrajectory::integrate(field, x0, t0, t1, steps);
    Polyline p;
    p.vertices = tr.nodes();
    return p;
}

Vec hamiltonian_field(const SymplecticFixture& fix, const ScalarField& H, const Vec& z,
                      double h_fd) {
    return -(fix.psi_at(z) * fd_gradient(H, z, h_fd));
}

Vec hamiltonian_field(const SymplecticFixture& fix, const VectorField& gradH, const Vec& z) {
    return -(fix.psi_at(z) * gradH(z));
}

double membrane_area(const SymplecticFixture& fix, const std::vector<CurveFn>& boundary,
                     int gl_order, int panels) {
    double sum = 0;
    for (const CurveFn& c : boundary) sum += curve_integral_theta(fix, c, gl_order, panels);
    return kMembraneSign * sum;
}

}  // namespace etherphase
