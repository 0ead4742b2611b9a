#include "etherphase/groupoid.hpp"

namespace etherphase {

Vec left_map(const EtherStructure& E, const GroupoidElement& m) {
    if (E.left_cf) return E.left_cf(m.base, m.momentum);
    auto F = [&](const Vec& z) -> Vec { return ether_eval(E, m.base, z) - m.momentum; };
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    Vec seed = m.base + 0.5 * E.fix.psi_at(m.base) * m.momentum;
    try {
        return newton_solve(F, seed, opts);
    } catch (const IterationLimitError& e) {
        throw IterationLimitError("left_map: momentum outside fibration neighborhood",
                                  e.last_residual);
    }
}

Vec right_map(const EtherStructure& E, const GroupoidElement& m) {
    if (E.involutive) return left_map(E, {m.base, -m.momentum});
    return reflection_inverse(E, m.base, left_map(E, m));
}

double lie_engel_residual(const EtherStructure& E, const GroupoidElement& m, double h) {
    const int n2 = E.fix.dim;
    auto L = [&](const Vec& x, const Vec& p) { return left_map(E, {x, p}); };
    auto R = [&](const Vec& x, const Vec& p) { return right_map(E, {x, p}); };
    Mat Lx(n2, n2), Lp(n2, n2), Rx(n2, n2), Rp(n2, n2);
    for (int i = 0; i < n2; ++i) {
        Vec d = Vec::Zero(n2);
        d[i] = h;
        Lx.col(i) = (L(m.base + d, m.momentum) - L(m.base - d, m.momentum)) / (2 * h);
        Lp.col(i) = (L(m.base, m.momentum + d) - L(m.base, m.momentum - d)) / (2 * h);
        Rx.col(i) = (R(m.base + d, m.momentum) - R(m.base - d, m.momentum)) / (2 * h);
        Rp.col(i) = (R(m.base, m.momentum + d) - R(m.base, m.momentum - d)) / (2 * h);
    }
    // {F_j, G_k} = sum_i dF_j/dp_i dG_k/dx_i - dF_j/dx_i dG_k/dp_i
    Mat Bll = Lp * Lx.transpose() - Lx * Lp.transpose();
    Mat Brr = Rp * Rx.transpose() - Rx * Rp.transpose();
    Mat Blr = Lp * Rx.transpose() - Lx * Rp.transpose();
    Vec lm = L(m.base, m.momentum), rm = R(m.base, m.momentum);
    double res = (Bll - E.fix.psi_at(lm)).cwiseAbs().maxCoeff();
    res = std::max(res, (Brr - Mat(E.fix.psi_at(rm).transpose())).cwiseAbs().maxCoeff());
    return std::max(res, Blr.cwiseAbs().maxCoeff());
}

GroupoidElement groupoid_unit(const EtherStructure& E, const Vec& base) {
    return {base, Vec::Zero(E.fix.dim)};
}

GroupoidElement groupoid_inverse(const EtherStructure& E, const GroupoidElement& m) {
    if (E.involutive) return {m.base, Vec(-m.momentum)};
    const int n2 = E.fix.dim;
    Vec lm = left_map(E, m), rm = right_map(E, m);
    auto F = [&](const Vec& v) -> Vec {
        GroupoidElement w{v.head(n2), v.tail(n2)};
        Vec res(2 * n2);
        res.head(n2) = left_map(E, w) - rm;
        res.tail(n2) = right_map(E, w) - lm;
        return res;
    };
    Vec seed(2 * n2);
    seed << m.base, -m.momentum;
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    Vec v = newton_solve(F, seed, opts);
    return {v.head(n2), v.tail(n2)};
}

GroupoidElement groupoid_multiply(const EtherStructure& E, const GroupoidElement& m2,
                                  const GroupoidElement& m1, double composability_tol) {
    Vec lm2 = left_map(E, m2), rm2 = right_map(E, m2);
    Vec lm1 = left_map(E, m1), rm1 = right_map(E, m1);
    if ((rm2 - lm1).norm() > composability_tol)
        throw DomainError("groupoid_multiply: factors are not composable");
    const int n2 = E.fix.dim;
    auto F = [&](const Vec& v) -> Vec {
        GroupoidElement w{v.head(n2), v.tail(n2)};
        Vec res(2 * n2);
        res.head(n2) = left_map(E, w) - lm2;
        res.tail(n2) = right_map(E, w) - rm1;
        return res;
    };
    Vec z0 = midpoint(E, lm2, rm1);
    Vec seed(2 * n2);
    seed << z0, ether_eval(E, z0, lm2);
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    Vec v = newton_solve(F, seed, opts);
    return {v.head(n2), v.tail(n2)};
}

LagrangianSection zero_section() {
    return {constant_phase(0.0)};
}

SectionProduct lagrangian_product_detail(const EtherStructure& E,
                                         const LagrangianSection& lam2,
                                         const LagrangianSection& lam1, const Vec& x) {
    const int n2 = E.fix.dim;
    auto F = [&](const Vec& v) -> Vec {
        GroupoidElement e2{v.segment(0, n2), lam2.phi.grad(v.segment(0, n2), E.h_fd)};
        GroupoidElement e1{v.segment(n2, n2), lam1.phi.grad(v.segment(n2, n2), E.h_fd)};
        GroupoidElement prod{x, v.segment(2 * n2, n2)};
        Vec res(3 * n2);
        res.segment(0, n2) = right_map(E, e2) - left_map(E, e1);
        res.segment(n2, n2) = left_map(E, prod) - left_map(E, e2);
        res.segment(2 * n2, n2) = right_map(E, prod) - right_map(E, e1);
        return res;
    };
    Vec seed(3 * n2);
    seed << x, x, Vec(lam2.phi.grad(x, E.h_fd) + lam1.phi.grad(x, E.h_fd));
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    Vec v = newton_solve(F, seed, opts);
    SectionProduct sp;
    sp.product = {x, v.segment(2 * n2, n2)};
    sp.m2 = {v.segment(0, n2), lam2.phi.grad(v.segment(0, n2), E.h_fd)};
    sp.m1 = {v.segment(n2, n2), lam1.phi.grad(v.segment(n2, n2), E.h_fd)};
    return sp;
}

GroupoidElement lagrangian_product_point(const EtherStructure& E,
                                         const LagrangianSection& lam2,
                                         const LagrangianSection& lam1, const Vec& x) {
    return lagrangian_product_detail(E, lam2, lam1, x).product;
}

Vec section_base_with(const EtherStructure& E, const LagrangianSection& lam, char side,
                      const Vec& target, const Vec& seed) {
    auto F = [&](const Vec& w) -> Vec {
        GroupoidElement m = lam.at(w, E.h_fd);
        return (side == 'r' ? right_map(E, m) : left_map(E, m)) - target;
    };
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    return newton_solve(F, seed, opts);
}

double hj_residual(const EtherStructure& E, const HamiltonianSystem& sys,
                   const std::function<double(const Vec&, double)>& phi, const Vec& x,
                   double t, double dt) {
    Vec dphi = fd_gradient([&](const Vec& u) { return phi(u, t); }, x, E.h_fd);
    double dphidt = (phi(x, t + dt) - phi(x, t - dt)) / (2 * dt);
    return std::abs(dphidt + sys.H(left_map(E, {x, dphi})));
}

}  // namespace etherphase
