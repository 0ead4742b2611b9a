#include "etherphase/ether.hpp"

#include <cmath>

namespace etherphase {

Mat EtherStructure::dzH(const Vec& x, const Vec& z) const {
    if (dzH_cf) return dzH_cf(x, z);
    return fd_jacobian([&](const Vec& w) { return H(x, w); }, z, h_fd);
}

Vec ether_eval(const EtherStructure& E, const Vec& x, const Vec& z) {
    E.require_near(x, z, "ether_eval");
    Vec h = E.H(x, z);
    if (!h.allFinite()) throw NumericError("ether_eval: non-finite value");
    return h;
}

double zero_curvature_residual(const EtherStructure& E, const Vec& x, const Vec& z) {
    E.require_near(x, z, "zero_curvature_residual");
    const int n = E.fix.dim;
    // X(j,k) = d/dx_j H_k
    Mat X(n, n);
    Vec xp = x, xm = x;
    for (int j = 0; j < n; ++j) {
        xp[j] = x[j] + E.h_fd;
        xm[j] = x[j] - E.h_fd;
        X.row(j) = ((E.H(xp, z) - E.H(xm, z)) / (2 * E.h_fd)).transpose();
        xp[j] = x[j];
        xm[j] = x[j];
    }
    Mat D = E.dzH(x, z);                       // D(j,m) = dH_j/dz_m
    Mat B = D * E.fix.psi_at(z) * D.transpose();  // B(j,k) = {H_j, H_k}
    Mat R = X - X.transpose() + B;
    return R.cwiseAbs().maxCoeff();
}

namespace {

// right-hand side of the dynamic reflection equation along an x-path:
// ds/dtau = (D_z H_{x(tau)}(s) Psi(s))^T x'(tau)
Vec dynamic_rhs(const EtherStructure& E, const Vec& x, const Vec& xdot, const Vec& s) {
    Mat D = E.dzH(x, s);
    return (D * E.fix.psi_at(s)).transpose() * xdot;
}

}  // namespace

Vec reflection_along(const EtherStructure& E, const CurveFn& x_path, const Vec& z,
                     int steps) {
    if (steps <= 0) steps = E.ode_steps;
    const double h = 1e-6;
    auto field = [&](const Vec& s, double tau) {
        double tp = std::min(tau + h, 1.0), tm = std::max(tau - h, 0.0);
        Vec xdot = (x_path(tp) - x_path(tm)) / (tp - tm);
        return dynamic_rhs(E, x_path(tau), xdot, s);
    };
    DenseTrajectory tr = DenseTrajectory::integrate(field, z, 0.0, 1.0, steps);
    return tr.back();
}

Vec reflection(const EtherStructure& E, const Vec& x, const Vec& z) {
    E.require_near(x, z, "reflection");
    if (E.reflect_cf) return E.reflect_cf(x, z);
    Vec d = x - z;
    auto field = [&](const Vec& s, double tau) {
        return dynamic_rhs(E, z + tau * d, d, s);
    };
    Vec out = DenseTrajectory::integrate(field, z, 0.0, 1.0, E.ode_steps).back();
    if (!E.fix.in_domain(out)) throw NumericError("reflection: left chart domain");
    return out;
}

Vec reflection_inverse(const EtherStructure& E, const Vec& x, const Vec& z) {
    if (E.reflect_inv_cf) return E.reflect_inv_cf(x, z);
    if (E.involutive) return reflection(E, x, z);
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    return newton_solve([&](const Vec& w) -> Vec { return reflection(E, x, w) - z; },
                        2 * x - z, opts);
}

Vec exp_map(const EtherStructure& E, const Vec& x, const Vec& v, double t) {
    if (v.norm() * std::abs(t) == 0) return x;
    if (E.exp_cf) return E.exp_cf(x, v, t);
    auto field = [&](const Vec& z, double) -> Vec {
        // Hamiltonian field of (1/2) v.H_x under the locked sign convention
        return -0.5 * (E.fix.psi_at(z) * (E.dzH(x, z).transpose() * v));
    };
    return DenseTrajectory::integrate(field, x, 0.0, t, E.ode_steps).back();
}

Vec log_map(const EtherStructure& E, const Vec& x, const Vec& z) {
    if (E.log_cf) return E.log_cf(x, z);
    if ((z - x).norm() < 1e-15) return Vec::Zero(x.size());
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    opts.fd_step = 1e-6;
    return newton_solve([&](const Vec& v) -> Vec { return exp_map(E, x, v, 1.0) - z; }, z - x,
                        opts);
}

Vec midpoint(const EtherStructure& E, const Vec& a, const Vec& b) {
    if ((a - b).norm() < 1e-15) return a;
    NewtonOptions opts;
    opts.tol = E.newton_tol;
    return newton_solve([&](const Vec& x) -> Vec { return reflection(E, x, b) - a; },
                        0.5 * (a + b), opts);
}

CurveFn geodesic_curve(const EtherStructure& E, const Vec& x, const Vec& y, const Vec& z) {
    if ((y - x).norm() < 1e-14 && (z - x).norm() < 1e-14) {
        Vec xc = x;
        return [xc](double) { return xc; };
    }
    Vec v = log_map(E, x, z);
    std::shared_ptr<DenseTrajectory> fwd;
    std::function<Vec(double)> plus;  // sigma^+(t) = Exp_x(v t)
    if (E.exp_cf) {
        plus = [&E, x, v](double t) { return E.exp_cf(x, v, t); };
    } else {
        auto field = [&E, x, v](const Vec& w, double) -> Vec {
            return -0.5 * (E.fix.psi_at(w) * (E.dzH(x, w).transpose() * v));
        };
        fwd = std::make_shared<DenseTrajectory>(
            DenseTrajectory::integrate(field, x, 0.0, 1.0, E.ode_steps));
        plus = [fwd](double t) { return fwd->at(t); };
    }
    const EtherStructure* Ep = &E;
    Vec xc = x;
    return [Ep, xc, plus](double t) -> Vec {
        if (t >= 0.5) return plus(2 * t - 1);
        return reflection_inverse(*Ep, xc, plus(1 - 2 * t));
    };
}

Polyline ether_geodesic(const EtherStructure& E, const Vec& x, const Vec& v, int segments) {
    Polyline p;
    if (v.norm() == 0) {
        p.vertices.push_back(x);
        return p;
    }
    Vec z = exp_map(E, x, v, 1.0);
    Vec y = reflection_inverse(E, x, z);
    CurveFn c = geodesic_curve(E, x, y, z);
    p.vertices.reserve(segments + 1);
    for (int i = 0; i <= segments; ++i) p.vertices.push_back(c(double(i) / segments));
    return p;
}

Vec ether_translation(const EtherStructure& E, const Vec& x, const Vec& y, const Vec& z) {
    return reflection(E, x, reflection(E, y, z));
}

Vec ether_from_reflections(const SymplecticFixture& fix, const TwoPointField& s_family,
                           const Vec& x, const Vec& z, int gl_order) {
    const int n = fix.dim;
    const double h = kFdStep;
    Vec d = z - x;
    auto integrand = [&](double tau, Vec& out) {
        Vec zp = x + tau * d;
        Vec sz = s_family(x, zp);
        Vec wd = fix.omega_at(zp) * d;  // (omega dz')_k
        // rows j: d s^k / d x_j evaluated at sz
        Vec xp = x, xm = x;
        for (int j = 0; j < n; ++j) {
            xp[j] = x[j] + h;
            xm[j] = x[j] - h;
            Vec ds = (s_family(xp, sz) - s_family(xm, sz)) / (2 * h);
            out[j] = ds.dot(wd);
            xp[j] = x[j];
            xm[j] = x[j];
        }
    };
    const GaussLegendre& gl = gauss_legendre(gl_order);
    Vec total = Vec::Zero(n), tmp(n);
    for (int i = 0; i < gl_order; ++i) {
        double tau = 0.5 * (1 + gl.nodes[i]);
        integrand(tau, tmp);
        total += 0.5 * gl.weights[i] * tmp;
    }
    return total;
}

ConnectionTensor connection_from_family(const EtherStructure& E, const Vec& x, double h2) {
    const int n = E.fix.dim;
    ConnectionTensor ct;
    ct.gamma.assign(n, Mat::Zero(n, n));
    auto s = [&](const Vec& xx, const Vec& zz) { return reflection(E, xx, zz); };
    if (E.involutive) {
        // Gamma(z) = -1/2 D_z^2 s_x(z) | x=z
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                Vec zpp = x, zpm = x, zmp = x, zmm = x;
                zpp[j] += h2; zpp[k] += h2;
                zpm[j] += h2; zpm[k] -= h2;
                zmp[j] -= h2; zmp[k] += h2;
                zmm[j] -= h2; zmm[k] -= h2;
                Vec second = (s(x, zpp) - s(x, zpm) - s(x, zmp) + s(x, zmm)) / (4 * h2 * h2);
                for (int l = 0; l < n; ++l) {
                    ct.gamma[l](j, k) = -0.5 * second[l];
                    ct.gamma[l](k, j) = ct.gamma[l](j, k);
                }
            }
        return ct;
    }
    // general family: mixed z,x second derivatives contracted with the inverse
    // first-derivative blocks at the diagonal
    Mat Dz = fd_jacobian([&](const Vec& zz) { return s(x, zz); }, x, h2);
    Mat Dx = fd_jacobian([&](const Vec& xx) { return s(xx, x); }, x, h2);
    Mat Az = Dz.inverse();
    Mat Ax = Dx.inverse();
    std::vector<Mat> M(n, Mat::Zero(n, n));  // M[l](m,r) = d^2 s^l / dz_m dx_r
    for (int m = 0; m < n; ++m)
        for (int r = 0; r < n; ++r) {
            Vec xp = x, xm = x, zp = x, zm = x;
            xp[r] += h2; xm[r] -= h2;
            zp[m] += h2; zm[m] -= h2;
            Vec second = (s(xp, zp) - s(xp, zm) - s(xm, zp) + s(xm, zm)) / (4 * h2 * h2);
            for (int l = 0; l < n; ++l) M[l](m, r) = second[l];
        }
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double sum = 0;
                for (int m = 0; m < n; ++m)
                    for (int r = 0; r < n; ++r) sum += M[l](m, r) * Az(m, k) * Ax(r, j);
                ct.gamma[l](j, k) = -sum;
            }
    return ct;
}

}  // namespace etherphase
