#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace etherphase {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

using ScalarField = std::function<double(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;
using MatrixField = std::function<Mat(const Vec&)>;
// parametric curve on [0,1]
using CurveFn = std::function<Vec(double)>;

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};
struct IterationLimitError : std::runtime_error {
    IterationLimitError(const std::string& msg, double residual)
        : std::runtime_error(msg + " (last residual " + std::to_string(residual) + ")"),
          last_residual(residual) {}
    double last_residual;
};
struct ConditioningError : std::runtime_error {
    explicit ConditioningError(const std::string& msg) : std::runtime_error(msg) {}
};
struct AmbiguityError : std::runtime_error {
    explicit AmbiguityError(const std::string& msg) : std::runtime_error(msg) {}
};
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// default step for central finite differences
inline constexpr double kFdStep = 1e-5;

Vec fd_gradient(const ScalarField& f, const Vec& z, double h = kFdStep);
Mat fd_jacobian(const VectorField& F, const Vec& z, double h = kFdStep);

// Gauss-Legendre nodes/weights on [-1,1]; computed once per order and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

// integral of f over [a,b], composite GL with `panels` subintervals
double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int order = 8, int panels = 1);

struct NewtonOptions {
    double tol = 1e-12;
    // residual level still treated as converged when progress stalls (noisy F)
    double accept_tol = 0;
    int max_iter = 50;
    double fd_step = kFdStep;
    // closed-form Jacobian; FD when empty
    std::function<Mat(const Vec&)> jacobian;
};

// damped Newton with halving line search; returns x with ||F(x)|| < tol
Vec newton_solve(const VectorField& F, const Vec& x0, const NewtonOptions& opts = {});

// fixed-step RK4 trajectory of dx/dt = field(x,t) with dense cubic-Hermite output
class DenseTrajectory {
public:
    DenseTrajectory() = default;
    static DenseTrajectory integrate(const std::function<Vec(const Vec&, double)>& field,
                                     const Vec& x0, double t0, double t1, int steps);
    Vec at(double t) const;          // state at time t (clamped to [t0,t1])
    Vec derivative(double t) const;  // field value along the stored solution
    const std::vector<Vec>& nodes() const { return states_; }
    double t0() const { return t0_; }
    double t1() const { return t1_; }
    Vec front() const { return states_.front(); }
    Vec back() const { return states_.back(); }

private:
    double t0_ = 0, t1_ = 1, dt_ = 1;
    std::vector<Vec> states_;
    std::vector<Vec> derivs_;
};

inline CurveFn reverse_curve(CurveFn c) {
    return [c = std::move(c)](double t) { return c(1.0 - t); };
}

inline CurveFn segment_curve(Vec a, Vec b) {
    return [a = std::move(a), b = std::move(b)](double t) -> Vec { return a + t * (b - a); };
}

}  // namespace etherphase
