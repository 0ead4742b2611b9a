#include "etherphase/fixtures.hpp"

#include <cmath>
#include <sstream>

namespace etherphase {

namespace {

Mat standard_omega(int dim) {
    // omega = sum dp_i ^ dq_i in coordinates (q1,p1,q2,p2,...)
    Mat O = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; i += 2) {
        O(i, i + 1) = -1;
        O(i + 1, i) = 1;
    }
    return O;
}

Vec standard_theta(const Vec& z) {
    Vec t = Vec::Zero(z.size());
    for (int i = 0; i < z.size(); i += 2) t[i] = z[i + 1];  // p dq
    return t;
}

double get(const std::map<std::string, double>& params, const std::string& key,
           double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
}

EtherStructure make_euclid(int n) {
    const int dim = 2 * n;
    Mat O = standard_omega(dim);
    Mat P = O.inverse();
    EtherStructure E;
    E.fix.name = "euclid_weyl_2n";
    E.fix.dim = dim;
    E.fix.omega = [O](const Vec&) { return O; };
    E.fix.psi = [P](const Vec&) { return P; };
    E.fix.theta = standard_theta;
    E.fix.box_lo = Vec::Constant(dim, -5.0);
    E.fix.box_hi = Vec::Constant(dim, 5.0);
    E.fix.validity_radius = 10.0;
    E.involutive = true;
    E.H = [O](const Vec& x, const Vec& z) -> Vec { return 2 * O * (z - x); };
    E.dzH_cf = [O](const Vec&, const Vec&) { return Mat(2 * O); };
    E.reflect_cf = [](const Vec& x, const Vec& z) -> Vec { return 2 * x - z; };
    E.reflect_inv_cf = E.reflect_cf;
    E.exp_cf = [](const Vec& x, const Vec& v, double t) -> Vec { return x + v * t; };
    E.log_cf = [](const Vec& x, const Vec& z) -> Vec { return z - x; };
    E.left_cf = [P](const Vec& x, const Vec& p) -> Vec { return x + 0.5 * P * p; };
    E.description =
        "flat Weyl structure: H_x(z) = 2*omega*(z-x), s_x(z) = 2x-z, "
        "Exp_x(vt) = x+vt, l(x,p) = x + psi*p/2";
    return E;
}

// chart diffeomorphism for the pullback fixture
struct Bend {
    double eps;
    Vec fwd(const Vec& z) const {
        Vec w = z;
        w[1] += eps * z[0] * z[0];
        return w;
    }
    Vec inv(const Vec& w) const {
        Vec z = w;
        z[1] -= eps * w[0] * w[0];
        return z;
    }
    Mat jac(const Vec& z) const {
        Mat J = Mat::Identity(2, 2);
        J(1, 0) = 2 * eps * z[0];
        return J;
    }
};

EtherStructure make_darboux(double eps) {
    Mat O = standard_omega(2);
    Mat P = O.inverse();
    Bend b{eps};
    EtherStructure E;
    E.fix.name = "darboux_pullback";
    E.fix.dim = 2;
    E.fix.omega = [O](const Vec&) { return O; };  // the bend is symplectic
    E.fix.psi = [P](const Vec&) { return P; };
    E.fix.theta = standard_theta;
    E.fix.box_lo = Vec::Constant(2, -3.0);
    E.fix.box_hi = Vec::Constant(2, 3.0);
    E.fix.validity_radius = 2.0;
    E.involutive = true;
    E.H = [O, b](const Vec& X, const Vec& Z) -> Vec {
        Vec x = b.inv(X);
        return b.jac(x).transpose().inverse() * (2 * O * (b.inv(Z) - x));
    };
    E.dzH_cf = [O, b](const Vec& X, const Vec& Z) -> Mat {
        return b.jac(b.inv(X)).transpose().inverse() * 2 * O * b.jac(b.inv(Z)).inverse();
    };
    E.reflect_cf = [b](const Vec& X, const Vec& Z) -> Vec {
        return b.fwd(2 * b.inv(X) - b.inv(Z));
    };
    E.reflect_inv_cf = E.reflect_cf;
    E.exp_cf = [b](const Vec& X, const Vec& v, double t) -> Vec {
        Vec x = b.inv(X);
        return b.fwd(x + t * (b.jac(x).inverse() * v));
    };
    E.log_cf = [b](const Vec& X, const Vec& Z) -> Vec {
        Vec x = b.inv(X);
        return b.jac(x) * (b.inv(Z) - x);
    };
    E.left_cf = [P, b](const Vec& X, const Vec& pc) -> Vec {
        Vec x = b.inv(X);
        return b.fwd(x + 0.5 * P * (b.jac(x).transpose() * pc));
    };
    E.description =
        "Euclidean Weyl structure conjugated by the symplectic bend "
        "(q,p) -> (q, p + eps*q^2); exact oracle via conjugation";
    return E;
}

// stereographic chart of the unit sphere (projection from the south pole)
struct SphereChart {
    Eigen::Vector3d lift(const Vec& z) const {
        double r2 = z.squaredNorm();
        return Eigen::Vector3d(2 * z[0], 2 * z[1], 1 - r2) / (1 + r2);
    }
    Vec drop(const Eigen::Vector3d& P) const {
        Vec z(2);
        z[0] = P[0] / (1 + P[2]);
        z[1] = P[1] / (1 + P[2]);
        return z;
    }
    Vec reflect(const Vec& x, const Vec& z) const {
        Eigen::Vector3d a = lift(x), p = lift(z);
        return drop(2 * a.dot(p) * a - p);
    }
};

EtherStructure make_sphere() {
    SphereChart sc;
    EtherStructure E;
    E.fix.name = "sphere_chart";
    E.fix.dim = 2;
    E.fix.omega = [](const Vec& z) -> Mat {
        double f = 4.0 / std::pow(1 + z.squaredNorm(), 2);
        Mat O(2, 2);
        O << 0, -f, f, 0;
        return O;
    };
    E.fix.psi = [](const Vec& z) -> Mat {
        double g = std::pow(1 + z.squaredNorm(), 2) / 4.0;
        Mat P(2, 2);
        P << 0, g, -g, 0;
        return P;
    };
    E.fix.theta = [](const Vec& z) -> Vec {
        double h = 2.0 / (1 + z.squaredNorm());
        Vec t(2);
        t << h * z[1], -h * z[0];
        return t;
    };
    E.fix.box_lo = Vec::Constant(2, -0.6);
    E.fix.box_hi = Vec::Constant(2, 0.6);
    E.fix.validity_radius = 0.5;
    E.involutive = true;
    E.reflect_cf = [sc](const Vec& x, const Vec& z) { return sc.reflect(x, z); };
    E.reflect_inv_cf = E.reflect_cf;
    E.description =
        "hemisphere in the stereographic chart, round area form, geodesic "
        "(rotation-by-pi) reflections; H via the reconstruction integral";
    E.ode_steps = 48;
    auto refl = E.reflect_cf;
    E.H = [fix = E.fix, refl](const Vec& x, const Vec& z) -> Vec {
        return ether_from_reflections(fix, refl, x, z, 16);
    };
    return E;
}

EtherStructure make_torsion(double b) {
    if (std::abs(b) >= 2.0) throw ConfigError("torsion_const: require |b| < 2");
    Mat O = standard_omega(2);
    Mat P = O.inverse();
    Mat A = 2 * O;
    A(0, 0) += b;
    if (std::abs(A.determinant()) < 1e-12) throw ConfigError("torsion_const: degenerate A");
    Mat N = Mat::Identity(2, 2) - (A * P).transpose();
    Mat Ninv = N.inverse();
    EtherStructure E;
    E.fix.name = "torsion_const";
    E.fix.dim = 2;
    E.fix.omega = [O](const Vec&) { return O; };
    E.fix.psi = [P](const Vec&) { return P; };
    E.fix.theta = standard_theta;
    E.fix.box_lo = Vec::Constant(2, -5.0);
    E.fix.box_hi = Vec::Constant(2, 5.0);
    E.fix.validity_radius = 10.0;
    E.involutive = (b == 0.0);
    E.H = [A](const Vec& x, const Vec& z) -> Vec { return A * (z - x); };
    E.dzH_cf = [A](const Vec&, const Vec&) { return A; };
    E.reflect_cf = [N](const Vec& x, const Vec& z) -> Vec { return x + N * (z - x); };
    E.reflect_inv_cf = [Ninv](const Vec& x, const Vec& z) -> Vec {
        return x + Ninv * (z - x);
    };
    Mat Ev = -0.5 * P * A.transpose();
    E.exp_cf = [Ev](const Vec& x, const Vec& v, double t) -> Vec { return x + t * Ev * v; };
    Mat Evinv = Ev.inverse();
    E.log_cf = [Evinv](const Vec& x, const Vec& z) -> Vec { return Evinv * (z - x); };
    Mat Ainv = A.inverse();
    E.left_cf = [Ainv](const Vec& x, const Vec& p) -> Vec { return x + Ainv * p; };
    std::ostringstream os;
    os << "constant-coefficient internal Hamiltonian H_x(z) = A(z-x), A = 2*omega + "
          "diag(b,0), b = "
       << b << "; inversion s_x(z) = x + N(z-x), N = [[" << N(0, 0) << "," << N(0, 1)
       << "],[" << N(1, 0) << "," << N(1, 1) << "]], involutive = "
       << (E.involutive ? "true" : "false");
    E.description = os.str();
    return E;
}

}  // namespace

EtherStructure make_fixture(const std::string& name,
                            const std::map<std::string, double>& params) {
    if (name == "euclid_weyl_2n") return make_euclid(int(get(params, "n", 1)));
    if (name == "darboux_pullback") return make_darboux(get(params, "eps", 0.3));
    if (name == "sphere_chart") return make_sphere();
    if (name == "torsion_const") return make_torsion(get(params, "b", 1.0));
    std::string msg = "unknown fixture '" + name + "'; available:";
    for (const auto& n : fixture_names()) msg += " " + n;
    throw ConfigError(msg);
}

std::vector<std::string> fixture_names() {
    return {"euclid_weyl_2n", "darboux_pullback", "sphere_chart", "torsion_const"};
}

std::string describe_fixture(const std::string& name,
                             const std::map<std::string, double>& params) {
    EtherStructure E = make_fixture(name, params);
    std::ostringstream os;
    os << "fixture: " << E.fix.name << "\n"
       << "dim: " << E.fix.dim << "\n"
       << "involutive: " << (E.involutive ? "true" : "false") << "\n"
       << "validity radius: " << E.fix.validity_radius << "\n"
       << "conventions: omega(standard plane) = [[0,-1],[1,0]] in (q,p); theta "
          "primitive with d(theta) = omega; X_H = -psi*grad H (sign fixed by the "
          "Euclidean translation gate)\n"
       << E.description << "\n";
    return os.str();
}

EtherStructure corrupt_scale_H(const EtherStructure& E, double factor) {
    EtherStructure C = E;
    auto H0 = E.H;
    C.H = [H0, factor](const Vec& x, const Vec& z) -> Vec { return factor * H0(x, z); };
    C.dzH_cf = nullptr;
    auto d0 = E.dzH_cf;
    if (d0)
        C.dzH_cf = [d0, factor](const Vec& x, const Vec& z) -> Mat {
            return factor * d0(x, z);
        };
    C.description = E.description + " [CORRUPTED: H scaled by " + std::to_string(factor) + "]";
    return C;
}

Vec sampling_halfwidth(const EtherStructure& E) {
    if (E.fix.name == "sphere_chart") return Vec::Constant(E.fix.dim, 0.25);
    if (E.fix.name == "darboux_pullback") return Vec::Constant(E.fix.dim, 0.7);
    return Vec::Constant(E.fix.dim, 1.0);
}

}  // namespace etherphase
