#include "etherphase/phase_product.hpp"

namespace etherphase {

TriangleVertices triangle_vertices(const EtherStructure& E, const Vec& x, const Vec& y,
                                   const Vec& z) {
    auto F = [&](const Vec& w) -> Vec {
        return reflection(E, x, reflection(E, y, reflection(E, z, w))) - w;
    };
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    Vec seed = x - y + z;
    Vec A;
    try {
        A = newton_solve(F, seed, opts);
    } catch (const IterationLimitError& e) {
        throw IterationLimitError("triangle_vertices: mid-points too spread",
                                  e.last_residual);
    }
    TriangleVertices tv;
    tv.A = A;
    tv.B = reflection(E, z, A);
    tv.C = reflection(E, y, tv.B);
    return tv;
}

double triangle_phase(const EtherStructure& E, const Vec& x, const Vec& y, const Vec& z) {
    TriangleVertices tv = triangle_vertices(E, x, y, z);
    if ((tv.A - tv.B).norm() < 1e-14 && (tv.B - tv.C).norm() < 1e-14) return 0.0;
    std::vector<CurveFn> pieces;
    pieces.push_back(geodesic_curve(E, z, tv.A, tv.B));
    pieces.push_back(geodesic_curve(E, y, tv.B, tv.C));
    pieces.push_back(geodesic_curve(E, x, tv.C, tv.A));
    return membrane_area(E.fix, pieces);
}

ProductResult phase_product_maps(const EtherStructure& E, const PhaseFunction& phi2,
                                 const SymplecticMap& gamma2, const PhaseFunction& phi1,
                                 const SymplecticMap& gamma1, const Vec& x) {
    SymplecticMap gamma = compose_maps(gamma2, gamma1);
    ProductResult res;
    res.x_tilde = fixed_midpoint(E, gamma, x);
    Vec g1 = gamma1.apply(res.x_tilde);       // gamma'(x~)
    Vec g = gamma2.apply(g1);                  // gamma(x~)
    res.x_prime = midpoint(E, g1, res.x_tilde);
    res.x_dprime = midpoint(E, g, g1);
    // triangle x~ -> gamma'(x~) -> gamma(x~) -> x~ with side mid-points
    // x', x'', x; the last side is traversed against its canonical direction
    std::vector<CurveFn> pieces;
    double area = 0;
    if ((g - res.x_tilde).norm() > 1e-14 || (g1 - res.x_tilde).norm() > 1e-14) {
        pieces.push_back(geodesic_curve(E, res.x_prime, res.x_tilde, g1));
        pieces.push_back(geodesic_curve(E, res.x_dprime, g1, g));
        pieces.push_back(reverse_curve(geodesic_curve(E, x, res.x_tilde, g)));
        area = membrane_area(E.fix, pieces);
    }
    res.value = phi2.value(res.x_dprime) + phi1.value(res.x_prime) + area;
    return res;
}

ProductResult phase_product_detail(const EtherStructure& E, const PhaseFunction& phi2,
                                   const PhaseFunction& phi1, const Vec& x) {
    SymplecticMap g1 = map_from_phase(E, phi1);
    SymplecticMap g2 = map_from_phase(E, phi2);
    ProductResult res = phase_product_maps(E, phi2, g2, phi1, g1, x);

    if (E.involutive) {
        // posterior check: the computed mid-points are a stationary point of
        // G(u,v) = phi2(u) + phi1(v) + triangle area with mid-points (u, v, x)
        auto G = [&](const Vec& u, const Vec& v) {
            return phi2.value(u) + phi1.value(v) + triangle_phase(E, u, v, x);
        };
        const double h = 1e-4;
        double r = 0;
        for (int i = 0; i < x.size(); ++i) {
            Vec du = Vec::Zero(x.size());
            du[i] = h;
            r = std::max(r, std::abs(G(res.x_dprime + du, res.x_prime) -
                                     G(res.x_dprime - du, res.x_prime)) / (2 * h));
            r = std::max(r, std::abs(G(res.x_dprime, res.x_prime + du) -
                                     G(res.x_dprime, res.x_prime - du)) / (2 * h));
        }
        res.stationary_residual = r;
    }

    // second seed for the inner fixed point; a distinct converged branch means
    // the product is ambiguous at this x
    SymplecticMap gamma = compose_maps(g2, g1);
    try {
        auto F = [&](const Vec& w) -> Vec {
            Vec gw = gamma.apply(w);
            return (E.involutive ? reflection(E, x, gw) : reflection_inverse(E, x, gw)) - w;
        };
        NewtonOptions opts;
        opts.tol = E.newton_tol;
        Vec alt = newton_solve(F, Vec(x + Vec::Constant(x.size(), 0.05)), opts);
        if ((alt - res.x_tilde).norm() > 1e-6) res.multi_branch = true;
    } catch (const std::exception&) {
        // the probe seed failing says nothing about the main branch
    }
    return res;
}

double phase_product(const EtherStructure& E, const PhaseFunction& phi2,
                     const PhaseFunction& phi1, const Vec& x) {
    SymplecticMap g1 = map_from_phase(E, phi1);
    SymplecticMap g2 = map_from_phase(E, phi2);
    return phase_product_maps(E, phi2, g2, phi1, g1, x).value;
}

}  // namespace etherphase
