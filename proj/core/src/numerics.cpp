#include "etherphase/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace etherphase {

Vec fd_gradient(const ScalarField& f, const Vec& z, double h) {
    Vec g(z.size());
    Vec zp = z, zm = z;
    for (int i = 0; i < z.size(); ++i) {
        zp[i] = z[i] + h;
        zm[i] = z[i] - h;
        g[i] = (f(zp) - f(zm)) / (2 * h);
        zp[i] = z[i];
        zm[i] = z[i];
    }
    if (!g.allFinite()) throw NumericError("non-finite gradient");
    return g;
}

Mat fd_jacobian(const VectorField& F, const Vec& z, double h) {
    Vec zp = z, zm = z;
    Mat J;
    for (int i = 0; i < z.size(); ++i) {
        zp[i] = z[i] + h;
        zm[i] = z[i] - h;
        Vec col = (F(zp) - F(zm)) / (2 * h);
        if (J.size() == 0) J.resize(col.size(), z.size());
        J.col(i) = col;
        zp[i] = z[i];
        zm[i] = z[i];
    }
    if (!J.allFinite()) throw NumericError("non-finite Jacobian");
    return J;
}

namespace {

GaussLegendre compute_gl(int order) {
    // Newton iteration on Legendre polynomials, standard recurrence
    GaussLegendre gl;
    gl.nodes.resize(order);
    gl.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = 0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            pp = order * (x * p0 - p1) / (x * x - 1);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = x;
        gl.weights[i] = 2.0 / ((1 - x * x) * pp * pp);
    }
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
    return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int order, int panels) {
    const GaussLegendre& gl = gauss_legendre(order);
    double sum = 0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double mid = lo + 0.5 * h;
        for (int i = 0; i < order; ++i)
            sum += gl.weights[i] * f(mid + 0.5 * h * gl.nodes[i]);
    }
    return sum * 0.5 * h;
}

Vec newton_solve(const VectorField& F, const Vec& x0, const NewtonOptions& opts) {
    Vec x = x0;
    Vec r = F(x);
    if (!r.allFinite()) throw NumericError("newton: non-finite residual at seed");
    double rn = r.norm();
    for (int it = 0; it < opts.max_iter; ++it) {
        if (rn < opts.tol) return x;
        Mat J = opts.jacobian ? opts.jacobian(x) : fd_jacobian(F, x, opts.fd_step);
        Eigen::FullPivLU<Mat> lu(J);
        if (lu.rcond() < 1e-14) {
            if (rn < opts.accept_tol) return x;
            throw ConditioningError("newton: singular Jacobian");
        }
        Vec dx = lu.solve(-r);
        // halving line search
        double step = 1.0;
        for (int ls = 0; ls < 30; ++ls) {
            Vec xt = x + step * dx;
            Vec rt = F(xt);
            if (rt.allFinite() && rt.norm() < rn) {
                x = xt;
                r = rt;
                rn = r.norm();
                break;
            }
            step *= 0.5;
            if (ls == 29) {
                if (rn < opts.accept_tol) return x;
                throw IterationLimitError("newton: line search stalled", rn);
            }
        }
    }
    if (rn < opts.tol || rn < opts.accept_tol) return x;
    throw IterationLimitError("newton: iteration limit", rn);
}

DenseTrajectory DenseTrajectory::integrate(
    const std::function<Vec(const Vec&, double)>& field, const Vec& x0, double t0,
    double t1, int steps) {
    DenseTrajectory tr;
    tr.t0_ = t0;
    tr.t1_ = t1;
    tr.dt_ = (t1 - t0) / steps;
    tr.states_.reserve(steps + 1);
    tr.derivs_.reserve(steps + 1);
    Vec x = x0;
    Vec k1 = field(x, t0);
    tr.states_.push_back(x);
    tr.derivs_.push_back(k1);
    for (int i = 0; i < steps; ++i) {
        double t = t0 + i * tr.dt_;
        double h = tr.dt_;
        Vec k2 = field(x + 0.5 * h * k1, t + 0.5 * h);
        Vec k3 = field(x + 0.5 * h * k2, t + 0.5 * h);
        Vec k4 = field(x + h * k3, t + h);
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
        if (!x.allFinite())
            throw NumericError("ode: non-finite state at t=" + std::to_string(t + h));
        k1 = field(x, t + h);
        tr.states_.push_back(x);
        tr.derivs_.push_back(k1);
    }
    return tr;
}

Vec DenseTrajectory::at(double t) const {
    if (states_.size() == 1) return states_[0];
    double u = (t - t0_) / dt_;
    int i = static_cast<int>(std::floor(u));
    int n = static_cast<int>(states_.size()) - 2;
    if (i < 0) i = 0;
    if (i > n) i = n;
    double s = u - i;
    // cubic Hermite on [t_i, t_{i+1}]
    const Vec& p0 = states_[i];
    const Vec& p1 = states_[i + 1];
    Vec m0 = dt_ * derivs_[i];
    Vec m1 = dt_ * derivs_[i + 1];
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * m0 +
           (-2 * s3 + 3 * s2) * p1 + (s3 - s2) * m1;
}

Vec DenseTrajectory::derivative(double t) const {
    if (states_.size() == 1) return Vec::Zero(states_[0].size());
    double u = (t - t0_) / dt_;
    int i = static_cast<int>(std::floor(u));
    int n = static_cast<int>(states_.size()) - 2;
    if (i < 0) i = 0;
    if (i > n) i = n;
    double s = u - i;
    const Vec& p0 = states_[i];
    const Vec& p1 = states_[i + 1];
    Vec m0 = dt_ * derivs_[i];
    Vec m1 = dt_ * derivs_[i + 1];
    double s2 = s * s;
    Vec d = (6 * s2 - 6 * s) * p0 + (3 * s2 - 4 * s + 1) * m0 +
            (-6 * s2 + 6 * s) * p1 + (3 * s2 - 2 * s) * m1;
    return d / dt_;
}

}  // namespace etherphase
