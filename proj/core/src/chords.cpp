#include "etherphase/chords.hpp"

#include <cmath>

namespace etherphase {

namespace {

double wrap_span(const LagrangianCurve& lam, double from, double to) {
    double span = to - from;
    if (lam.periodic) {
        double T = lam.period();
        span = std::fmod(span, T);
        if (span < 0) span += T;
    }
    return span;
}

// arc of lam from parameter `from` to `to`, increasing direction (wrapping)
CurveFn arc_curve(const LagrangianCurve& lam, double from, double to) {
    double span = wrap_span(lam, from, to);
    return [lam, from, span](double t) { return lam.at(from + t * span); };
}

// Newton for chord parameters (sa, sb): s_x(lam(sb)) = lam(sa)
Vec solve_chord(const EtherStructure& E, const LagrangianCurve& lam, const Vec& x,
                double sa0, double sb0) {
    auto F = [&](const Vec& s) -> Vec {
        return reflection(E, x, lam.at(s[1])) - lam.at(s[0]);
    };
    Vec seed(2);
    seed << sa0, sb0;
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    opts.fd_step = 1e-6;
    return newton_solve(F, seed, opts);
}

double canonical_param(const LagrangianCurve& lam, double s) {
    if (!lam.periodic) return s;
    double T = lam.period();
    double r = std::fmod(s - lam.s_lo, T);
    if (r < 0) r += T;
    return lam.s_lo + r;
}

}  // namespace

LagrangianCurve circle_curve(double radius, const Vec& center) {
    LagrangianCurve c;
    c.param = [radius, center](double s) -> Vec {
        Vec z(2);
        z << center[0] + radius * std::cos(s), center[1] + radius * std::sin(s);
        return z;
    };
    c.s_lo = 0;
    c.s_hi = 2 * M_PI;
    c.periodic = true;
    return c;
}

ChordResult chord_find(const EtherStructure& E, const LagrangianCurve& lam, const Vec& x) {
    const int K = 72;
    double T = lam.s_hi - lam.s_lo;
    double best = 1e300, s1 = lam.s_lo, s2 = lam.s_lo;
    std::vector<Vec> pts(K);
    for (int i = 0; i < K; ++i) pts[i] = lam.at(lam.s_lo + T * i / (lam.periodic ? K : K - 1));
    for (int i = 0; i < K; ++i)
        for (int j = i; j < K; ++j) {
            double d = (0.5 * (pts[i] + pts[j]) - x).norm();
            if (d < best) {
                best = d;
                s1 = lam.s_lo + T * i / (lam.periodic ? K : K - 1);
                s2 = lam.s_lo + T * j / (lam.periodic ? K : K - 1);
            }
        }
    Vec r1 = solve_chord(E, lam, x, s1, s2);
    Vec r2 = solve_chord(E, lam, x, s2, s1);
    auto key = [&](const Vec& r) {
        double u = canonical_param(lam, r[0]), v = canonical_param(lam, r[1]);
        return std::make_pair(std::min(u, v), std::max(u, v));
    };
    auto k1 = key(r1), k2 = key(r2);
    if (std::abs(k1.first - k2.first) > 1e-6 || std::abs(k1.second - k2.second) > 1e-6)
        throw AmbiguityError("chord_find: distinct chords from independent seeds");
    if (lam.periodic) {
        // a rotated probe seed catches continua of chords (e.g. circle center)
        try {
            Vec r3 = solve_chord(E, lam, x, s1 + T / 4, s2 + T / 4);
            Vec a1 = lam.at(k1.first), b1 = lam.at(k1.second);
            Vec a3 = lam.at(canonical_param(lam, r3[0]));
            Vec b3 = lam.at(canonical_param(lam, r3[1]));
            double same = std::min((a3 - a1).norm() + (b3 - b1).norm(),
                                   (a3 - b1).norm() + (b3 - a1).norm());
            // near-degenerate chords are only pinned to ~sqrt(tol); genuine
            // second chords sit a macroscopic distance away
            if (same > 1e-3)
                throw AmbiguityError("chord_find: chord through this point is not unique");
        } catch (const IterationLimitError&) {
        } catch (const ConditioningError&) {
        } catch (const NumericError&) {
        }
    }

    double sa = canonical_param(lam, r1[0]), sb = canonical_param(lam, r1[1]);
    if (E.involutive) {
        // both labelings solve the equations; pick the one whose closing arc
        // b -> a (increasing) is shorter, or runs forward when not periodic
        bool swap = lam.periodic ? wrap_span(lam, sb, sa) > wrap_span(lam, sa, sb)
                                 : sa < sb;
        if (swap) std::swap(sa, sb);
    }
    ChordResult res;
    res.sa = sa;
    res.sb = sb;
    res.a = lam.at(sa);
    res.b = lam.at(sb);
    return res;
}

ChordResult chord_phase(const EtherStructure& E, const LagrangianCurve& lam, const Vec& x) {
    ChordResult res = chord_find(E, lam, x);
    if ((res.a - res.b).norm() < 1e-12) {
        res.value = 0;
        return res;
    }
    std::vector<CurveFn> pieces;
    pieces.push_back(geodesic_curve(E, x, res.a, res.b));
    pieces.push_back(arc_curve(lam, res.sb, res.sa));
    res.value = membrane_area(E.fix, pieces);
    return res;
}

Vec chord_gradient(const EtherStructure& E, const LagrangianCurve& lam, const Vec& x) {
    return ether_eval(E, x, chord_find(E, lam, x).a);
}

double chord_hj_residual(const EtherStructure& E, const LagrangianCurve& lam,
                         const std::vector<ScalarField>& levels, const Vec& energies,
                         const Vec& x) {
    Vec p = chord_gradient(E, lam, x);
    Vec lz = left_map(E, {x, p}), rz = right_map(E, {x, p});
    double res = 0;
    for (size_t j = 0; j < levels.size(); ++j) {
        res = std::max(res, std::abs(levels[j](lz) - energies[j]));
        res = std::max(res, std::abs(levels[j](rz) - energies[j]));
    }
    return res;
}

double chord_flow_product(const EtherStructure& E, const LagrangianCurve& lam,
                          const HamiltonianSystem& sys, const Vec& x, double t) {
    if (t == 0.0) return chord_phase(E, lam, x).value;
    ChordResult seed = chord_find(E, lam, x);
    // geodesic through x from lam(s) to flow_t(lam(u))
    auto F = [&](const Vec& su) -> Vec {
        return reflection(E, x, lam.at(su[0])) - flow(sys, E.fix, lam.at(su[1]), t);
    };
    Vec s0(2);
    s0 << seed.sa, seed.sb;
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    opts.fd_step = 1e-6;
    Vec su = newton_solve(F, s0, opts);
    double s = su[0], u = su[1];
    Vec ytil = lam.at(s);
    DenseTrajectory traj = flow_trajectory(sys, E.fix, lam.at(u), t);
    std::vector<CurveFn> pieces;
    pieces.push_back(geodesic_curve(E, x, ytil, traj.back()));
    pieces.push_back([traj, t](double v) { return traj.at((1.0 - v) * t); });
    pieces.push_back(arc_curve(lam, canonical_param(lam, u), canonical_param(lam, s)));
    return membrane_area(E.fix, pieces) - t * sys.H(lam.at(u));
}

Vec chord_anchor_point(const EtherStructure& E, const LagrangianCurve& lam,
                       const SymplecticMap& gamma, double s_seed) {
    // y = lam(s_seed) + nu * n restricted to the normal line; unknowns (nu, s)
    const double ds = 1e-5;
    Vec p0 = lam.at(s_seed);
    Vec tang = (lam.at(s_seed + ds) - lam.at(s_seed - ds)) / (2 * ds);
    Vec n(2);
    n << -tang[1], tang[0];
    n.normalize();
    auto F = [&](const Vec& v) -> Vec {
        Vec y = p0 + v[0] * n;
        return fixed_midpoint(E, gamma, y) - lam.at(v[1]);
    };
    Vec seed(2);
    seed << 0.0, s_seed;
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    opts.fd_step = 1e-6;
    Vec v = newton_solve(F, seed, opts);
    return p0 + v[0] * n;
}

double chord_map_product(const EtherStructure& E, const LagrangianCurve& lam,
                         const SymplecticMap& gamma, const Vec& x, const Vec& y) {
    auto geo_solve = [&](const Vec& c, const ChordResult& seed) -> Vec {
        auto F = [&](const Vec& su) -> Vec {
            return reflection(E, c, lam.at(su[0])) - gamma.apply(lam.at(su[1]));
        };
        Vec s0(2);
        s0 << seed.sa, seed.sb;
        NewtonOptions opts;
        opts.tol = E.newton_tol;
        opts.fd_step = 1e-6;
        return newton_solve(F, s0, opts);
    };
    Vec sx = geo_solve(x, chord_find(E, lam, x));
    Vec sy = geo_solve(y, chord_find(E, lam, y));
    Vec ax = lam.at(sx[0]), wx = gamma.apply(lam.at(sx[1]));
    Vec ay = lam.at(sy[0]), wy = gamma.apply(lam.at(sy[1]));
    std::vector<CurveFn> pieces;
    pieces.push_back(geodesic_curve(E, x, ax, wx));
    CurveFn img_arc = arc_curve(lam, canonical_param(lam, sx[1]), canonical_param(lam, sy[1]));
    pieces.push_back([&gamma, img_arc](double t) { return gamma.apply(img_arc(t)); });
    pieces.push_back(reverse_curve(geodesic_curve(E, y, ay, wy)));
    pieces.push_back(arc_curve(lam, canonical_param(lam, sy[0]), canonical_param(lam, sx[0])));
    return membrane_area(E.fix, pieces);
}

PhaseFunction chord_phase_function(const EtherStructure& E, const LagrangianCurve& lam) {
    PhaseFunction p;
    p.value = [&E, lam](const Vec& x) { return chord_phase(E, lam, x).value; };
    p.gradient = [&E, lam](const Vec& x) { return chord_gradient(E, lam, x); };
    return p;
}

}  // namespace etherphase
