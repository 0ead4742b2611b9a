#include "etherphase/phase_maps.hpp"

#include <cmath>

namespace etherphase {

SymplecticMap identity_map() {
    SymplecticMap g;
    g.apply = [](const Vec& z) { return z; };
    g.jacobian = [](const Vec& z) { return Mat(Mat::Identity(z.size(), z.size())); };
    g.inverse = g.apply;
    return g;
}

SymplecticMap compose_maps(const SymplecticMap& outer, const SymplecticMap& inner) {
    SymplecticMap g;
    g.apply = [outer, inner](const Vec& z) { return outer.apply(inner.apply(z)); };
    if (outer.jacobian && inner.jacobian)
        g.jacobian = [outer, inner](const Vec& z) -> Mat {
            return outer.jacobian(inner.apply(z)) * inner.jacobian(z);
        };
    if (outer.inverse && inner.inverse)
        g.inverse = [outer, inner](const Vec& z) { return inner.inverse(outer.inverse(z)); };
    return g;
}

SymplecticMap translation_map(const Vec& a) {
    SymplecticMap g;
    g.apply = [a](const Vec& z) -> Vec { return z + a; };
    g.jacobian = [a](const Vec&) { return Mat(Mat::Identity(a.size(), a.size())); };
    g.inverse = [a](const Vec& z) -> Vec { return z - a; };
    return g;
}

double symplecticity_residual(const SymplecticFixture& fix, const SymplecticMap& g,
                              const Vec& z, double h) {
    Mat J = g.jac(z, h);
    Mat R = J.transpose() * fix.omega_at(g.apply(z)) * J - fix.omega_at(z);
    return R.cwiseAbs().maxCoeff();
}

PhaseFunction constant_phase(double c) {
    PhaseFunction p;
    p.value = [c](const Vec&) { return c; };
    p.gradient = [](const Vec& x) { return Vec(Vec::Zero(x.size())); };
    return p;
}

PhaseFunction linear_phase(const Vec& covector) {
    PhaseFunction p;
    p.value = [covector](const Vec& x) { return covector.dot(x); };
    p.gradient = [covector](const Vec&) { return covector; };
    return p;
}

DenseTrajectory flow_trajectory(const HamiltonianSystem& sys, const SymplecticFixture& fix,
                                const Vec& z, double t) {
    auto field = [&sys, &fix](const Vec& u, double) -> Vec {
        return -fix.psi_at(u) * sys.grad(u);
    };
    int steps = std::max(32, int(std::ceil(std::abs(t) * sys.steps_per_unit)));
    DenseTrajectory traj = DenseTrajectory::integrate(field, z, 0.0, t, steps);
    if (!traj.back().allFinite() || !fix.in_domain(traj.back()))
        throw NumericError("flow: trajectory left the chart domain");
    return traj;
}

Vec flow(const HamiltonianSystem& sys, const SymplecticFixture& fix, const Vec& z,
         double t) {
    if (t == 0.0) return z;
    return flow_trajectory(sys, fix, z, t).back();
}

SymplecticMap flow_map(const HamiltonianSystem& sys, const SymplecticFixture& fix,
                       double t) {
    SymplecticMap g;
    g.apply = [sys, fix, t](const Vec& z) { return flow(sys, fix, z, t); };
    g.inverse = [sys, fix, t](const Vec& z) { return flow(sys, fix, z, -t); };
    return g;
}

Vec fixed_midpoint(const EtherStructure& E, const SymplecticMap& gamma, const Vec& x) {
    auto F = [&E, &gamma, &x](const Vec& w) -> Vec {
        Vec gw = gamma.apply(w);
        return (E.involutive ? reflection(E, x, gw) : reflection_inverse(E, x, gw)) - w;
    };
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    // the fixed point is stationary for the membrane phase, so a stalled
    // iterate at the noise floor of a composed map is still fine for values
    opts.accept_tol = 1e-6;
    try {
        return newton_solve(F, x, opts);
    } catch (const IterationLimitError& e) {
        throw IterationLimitError("fixed_midpoint: map too far from identity", e.last_residual);
    } catch (const DomainError&) {
        // Newton left the chart before converging: same diagnosis for callers
        throw IterationLimitError("fixed_midpoint: map too far from identity", -1.0);
    }
}

Vec phase_gradient(const EtherStructure& E, const SymplecticMap& gamma, const Vec& x) {
    Vec xt = fixed_midpoint(E, gamma, x);
    return ether_eval(E, x, gamma.apply(xt));
}

double normalized_phase(const EtherStructure& E, const SymplecticMap& gamma, const Vec& x,
                        const Vec& y) {
    Vec xt = fixed_midpoint(E, gamma, x);
    Vec yt = fixed_midpoint(E, gamma, y);
    return normalized_phase(E, gamma, x, y, segment_curve(xt, yt));
}

double normalized_phase(const EtherStructure& E, const SymplecticMap& gamma, const Vec& x,
                        const Vec& y, const CurveFn& c) {
    if ((x - y).norm() == 0.0) return 0.0;
    Vec xt = fixed_midpoint(E, gamma, x);
    Vec yt = fixed_midpoint(E, gamma, y);
    // membrane boundary: c, geodesic y~ -> gamma(y~) through y, gamma(c)
    // reversed, geodesic gamma(x~) -> x~ through x
    std::vector<CurveFn> pieces;
    pieces.push_back(c);
    pieces.push_back(geodesic_curve(E, y, yt, gamma.apply(yt)));
    pieces.push_back([&gamma, &c](double t) { return gamma.apply(c(1.0 - t)); });
    pieces.push_back(reverse_curve(geodesic_curve(E, x, xt, gamma.apply(xt))));
    return membrane_area(E.fix, pieces);
}

Vec map_from_phase(const EtherStructure& E, const PhaseFunction& phi, const Vec& z) {
    // grad Phi(w) = H_w(s_w(z)); reduces to grad Phi(w) + H_w(z) = 0 when the
    // reflections are involutive
    auto F = [&E, &phi, &z](const Vec& w) -> Vec {
        return phi.grad(w, E.h_fd) - ether_eval(E, w, reflection(E, w, z));
    };
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    // FD gradients carry quadrature noise well above the solver tolerance;
    // accept a stalled iterate once it is at the noise floor
    opts.accept_tol = phi.gradient ? 1e-8 : 1e-6;
    Vec w;
    try {
        w = newton_solve(F, z, opts);
    } catch (const IterationLimitError& e) {
        throw IterationLimitError("map_from_phase: phase too far from constant",
                                  e.last_residual);
    }
    return reflection(E, w, z);
}

SymplecticMap map_from_phase(const EtherStructure& E, const PhaseFunction& phi) {
    SymplecticMap g;
    g.apply = [&E, phi](const Vec& z) { return map_from_phase(E, phi, z); };
    return g;
}

double membrane_representation(const EtherStructure& E, const PhaseFunction& phi,
                               const Vec& x, const Vec& y) {
    SymplecticMap gamma = map_from_phase(E, phi);
    return normalized_phase(E, gamma, x, y) + phi.value(y);
}

double dynamic_phase(const EtherStructure& E, const HamiltonianSystem& sys, const Vec& x,
                     double t) {
    if (t == 0.0) return 0.0;
    SymplecticMap gt = flow_map(sys, E.fix, t);
    Vec xt = fixed_midpoint(E, gt, x);
    DenseTrajectory traj = flow_trajectory(sys, E.fix, xt, t);
    std::vector<CurveFn> pieces;
    pieces.push_back([traj, t](double u) { return traj.at(u * t); });
    pieces.push_back(reverse_curve(geodesic_curve(E, x, xt, traj.back())));
    return membrane_area(E.fix, pieces) - t * sys.H(xt);
}

double poincare_cartan_residual(const EtherStructure& E, const HamiltonianSystem& sys,
                                const Vec& z, const Vec& w, double t) {
    DenseTrajectory tz = flow_trajectory(sys, E.fix, z, t);
    DenseTrajectory tw = flow_trajectory(sys, E.fix, w, t);
    SymplecticMap gt = flow_map(sys, E.fix, t);
    CurveFn c = segment_curve(z, w);
    std::vector<CurveFn> pieces;
    pieces.push_back([tz, t](double u) { return tz.at(u * t); });
    pieces.push_back([&gt, c](double u) { return gt.apply(c(u)); });
    pieces.push_back([tw, t](double u) { return tw.at((1.0 - u) * t); });
    pieces.push_back(reverse_curve(c));
    double area = membrane_area(E.fix, pieces);
    return std::abs(area - t * (sys.H(z) - sys.H(w)));
}

PhaseFunction phase_of_map(const EtherStructure& E, const SymplecticMap& gamma,
                           const Vec& y_base) {
    PhaseFunction p;
    p.value = [&E, gamma, y_base](const Vec& x) {
        return normalized_phase(E, gamma, x, y_base);
    };
    p.gradient = [&E, gamma](const Vec& x) { return phase_gradient(E, gamma, x); };
    return p;
}

double integrate_phase_gradient(const EtherStructure& E, const SymplecticMap& gamma,
                                const Vec& y, const Vec& x, int gl_order, int panels) {
    Vec d = x - y;
    auto f = [&](double t) {
        return phase_gradient(E, gamma, Vec(y + t * d)).dot(d);
    };
    return gl_integrate(f, 0.0, 1.0, gl_order, panels);
}

}  // namespace etherphase
