#include "etherphase/verify.hpp"

#include "etherphase/chords.hpp"
#include "etherphase/extension.hpp"
#include "etherphase/fixtures.hpp"
#include "etherphase/groupoid.hpp"
#include "etherphase/phase_product.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace etherphase {

namespace {

struct Suite {
    const EtherStructure& E;
    CheckReport& report;
    std::mt19937_64 rng;
    Vec half;
    bool sphere;

    Suite(const EtherStructure& e, CheckReport& r, uint64_t seed)
        : E(e), report(r), rng(seed), half(sampling_halfwidth(e)),
          sphere(e.fix.name == "sphere_chart") {}

    Vec pt(double scale = 1.0) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        // the curved chart only has room for reflections of nearby pairs
        double s = sphere ? 0.3 * scale : scale;
        Vec z(E.fix.dim);
        for (int i = 0; i < E.fix.dim; ++i) z[i] = s * half[i] * u(rng);
        // keep reflected pairs inside the validity ball: |s_x(z)| <~ 2|x|+|z|
        double cap = E.fix.validity_radius / 3.0;
        if (z.norm() > cap) z *= cap / z.norm();
        return z;
    }
    double uni(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    template <typename F>
    void run(const std::string& id, int n, double tol, F&& body,
             bool expected_fail = false, const std::string& note = "") {
        CheckRecord r;
        r.id = id;
        r.samples = n;
        r.tolerance = tol;
        r.expected_fail = expected_fail;
        r.note = note;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.max_residual = body(n);
        } catch (const std::exception& e) {
            r.max_residual = std::numeric_limits<double>::infinity();
            r.note = e.what();
        }
        r.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        r.pass = r.max_residual < r.tolerance;
        report.records.push_back(r);
    }

    double tl(double base, double relaxed) const { return sphere ? relaxed : base; }
};

SymplecticMap small_flow_map(const EtherStructure& E, const Vec& coeffs, double t) {
    // polynomial Hamiltonian with gentle coefficients
    HamiltonianSystem sys;
    sys.H = [coeffs](const Vec& z) {
        double v = 0.5 * coeffs[0] * z.squaredNorm() + coeffs[1] * z[0] +
                   coeffs[2] * z[z.size() - 1];
        if (coeffs.size() > 3) v += 0.25 * coeffs[3] * z[0] * z[0];
        return v;
    };
    return flow_map(sys, E.fix, t);
}

void involutive_suite(Suite& S, const VerifyOptions& opts) {
    const EtherStructure& E = S.E;
    const int n2 = E.fix.dim;

    S.run("eq2.1-zero-curvature", opts.samples, S.tl(1e-6, 1e-4), [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i)
            r = std::max(r, zero_curvature_residual(E, S.pt(), S.pt()));
        return r;
    });

    S.run("eq2.2-boundary", opts.samples, S.tl(1e-6, 1e-4), [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec x = S.pt();
            r = std::max(r, ether_eval(E, x, x).norm());
            Mat D = E.dzH(x, x);
            r = std::max(r, (D - Mat(2 * E.fix.omega_at(x))).cwiseAbs().maxCoeff());
        }
        return r;
    });

    S.run("eq2.3-skew", opts.samples, S.tl(1e-8, 1e-6), [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec x = S.pt(), z = S.pt();
            r = std::max(r, (ether_eval(E, x, reflection(E, x, z)) + ether_eval(E, x, z)).norm());
        }
        return r;
    });

    S.run("eq2.4-fixed-point", opts.samples, 1e-9, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec x = S.pt();
            r = std::max(r, (reflection(E, x, x) - x).norm());
        }
        return r;
    });

    S.run("eq2.5-involution", opts.samples, 1e-8, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec x = S.pt(), z = S.pt();
            r = std::max(r, (reflection(E, x, reflection(E, x, z)) - z).norm());
        }
        return r;
    });

    S.run("thm2.1ii-symplectic", opts.samples / 2, 1e-6, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec x = S.pt();
            SymplecticMap sx;
            sx.apply = [&](const Vec& z) { return reflection(E, x, z); };
            r = std::max(r, symplecticity_residual(E.fix, sx, S.pt()));
        }
        return r;
    });

    S.run("eq2.7-reconstruction", std::max(3, opts.samples_small), S.tl(1e-6, 1e-5),
          [&](int n) {
              double r = 0;
              auto fam = [&](const Vec& x, const Vec& z) { return reflection(E, x, z); };
              for (int i = 0; i < n; ++i) {
                  Vec x = S.pt(0.7), z = S.pt(0.7);
                  int order = S.sphere ? 32 : 16;
                  r = std::max(r, (ether_from_reflections(E.fix, fam, x, z, order) -
                                   ether_eval(E, x, z))
                                      .norm());
              }
              return r;
          });

    S.run("eq2.8-exp-reflection", opts.samples_small, S.tl(1e-7, 1e-6), [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec x = S.pt(0.6), v = S.pt(0.5);
            Vec plus = exp_map(E, x, v, 1.0), minus = exp_map(E, x, v, -1.0);
            r = std::max(r, (reflection(E, x, plus) - minus).norm());
            r = std::max(r, (ether_eval(E, x, plus) + ether_eval(E, x, minus)).norm());
            Vec w = log_map(E, x, plus);
            r = std::max(r, (w - v).norm());
        }
        return r;
    });

    S.run("eq3.4-path-independence", std::max(3, opts.samples_small / 2), S.tl(1e-7, 1e-4),
          [&](int n) {
              double r = 0;
              for (int i = 0; i < n; ++i) {
                  Vec x = S.pt(0.6), z = S.pt(0.6);
                  Vec mid = 0.5 * (x + z) + 0.15 * S.pt(0.3);
                  CurveFn straight = segment_curve(z, x);
                  CurveFn bent = [z, mid, x](double t) -> Vec {
                      double a = (1 - t) * (1 - t), b = 2 * t * (1 - t), c = t * t;
                      return a * z + b * mid + c * x;
                  };
                  Vec s1 = reflection_along(E, straight, z);
                  Vec s2 = reflection_along(E, bent, z);
                  r = std::max(r, (s1 - s2).norm());
                  r = std::max(r, (s1 - reflection(E, x, z)).norm());
              }
              return r;
          });

    S.run("thm3.1i-roundtrip", opts.samples_small, 1e-8, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec c(4);
            c << S.uni(0.5, 1.0), S.uni(-0.1, 0.1), S.uni(-0.1, 0.1), S.uni(-0.2, 0.2);
            SymplecticMap g = small_flow_map(E, c, S.uni(0.05, 0.2));
            Vec x = S.pt(0.6);
            Vec xt = fixed_midpoint(E, g, x);
            r = std::max(r, (reflection(E, x, xt) - g.apply(xt)).norm());
        }
        return r;
    });

    S.run("thm3.1ii-closed", std::max(2, opts.samples_small / 2), 1e-5, [&](int n) {
        double r = 0;
        const double h = 1e-4;
        for (int i = 0; i < n; ++i) {
            Vec c(4);
            c << S.uni(0.5, 1.0), S.uni(-0.1, 0.1), S.uni(-0.1, 0.1), 0.0;
            SymplecticMap g = small_flow_map(E, c, 0.15);
            Vec x = S.pt(0.5);
            Mat J(n2, n2);
            for (int k = 0; k < n2; ++k) {
                Vec d = Vec::Zero(n2);
                d[k] = h;
                J.col(k) = (phase_gradient(E, g, Vec(x + d)) -
                            phase_gradient(E, g, Vec(x - d))) /
                           (2 * h);
            }
            r = std::max(r, (J - Mat(J.transpose())).cwiseAbs().maxCoeff());
        }
        return r;
    });

    S.run("thm3.2i-membrane-gradient", std::max(2, opts.samples_small / 2),
          S.tl(1e-6, 1e-5), [&](int n) {
              double r = 0;
              for (int i = 0; i < n; ++i) {
                  Vec c(4);
                  c << S.uni(0.5, 1.0), S.uni(-0.1, 0.1), 0.0, 0.0;
                  SymplecticMap g = small_flow_map(E, c, 0.15);
                  Vec x = S.pt(0.5), y = S.pt(0.5);
                  r = std::max(r, std::abs(normalized_phase(E, g, x, y) -
                                           integrate_phase_gradient(E, g, y, x)));
              }
              return r;
          });

    S.run("thm3.2ii-cocycle", std::max(2, opts.samples_small / 2), 1e-6, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec c(4);
            c << S.uni(0.5, 1.0), S.uni(-0.1, 0.1), 0.0, 0.0;
            double t = S.uni(0.05, 0.2);
            SymplecticMap g = small_flow_map(E, c, t);
            Vec x = S.pt(0.5), y = S.pt(0.5), w = S.pt(0.5);
            r = std::max(r, std::abs(normalized_phase(E, g, y, x) +
                                     normalized_phase(E, g, x, y)));
            r = std::max(r, std::abs(normalized_phase(E, g, x, y) +
                                     normalized_phase(E, g, y, w) +
                                     normalized_phase(E, g, w, x)));
            SymplecticMap ginv = small_flow_map(E, c, -t);
            r = std::max(r, std::abs(normalized_phase(E, ginv, x, y) +
                                     normalized_phase(E, g, x, y)));
        }
        return r;
    });

    S.run("thm5.1-map-roundtrip", opts.samples_small, S.tl(1e-6, 1e-5), [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec c(4);
            c << S.uni(0.5, 1.0), S.uni(-0.1, 0.1), S.uni(-0.1, 0.1), 0.0;
            SymplecticMap g = small_flow_map(E, c, S.uni(0.05, 0.2));
            PhaseFunction phi = phase_of_map(E, g, S.pt(0.3));
            Vec z = S.pt(0.5);
            r = std::max(r, (map_from_phase(E, phi, z) - g.apply(z)).norm());
        }
        return r;
    });

    S.run("cor5.2-membrane-representation", std::max(2, opts.samples_small / 2),
          S.tl(1e-6, 1e-5), [&](int n) {
              double r = 0;
              for (int i = 0; i < n; ++i) {
                  Vec cov = S.pt(0.12);
                  PhaseFunction phi = linear_phase(cov);
                  if (S.sphere) phi = linear_phase(Vec(0.05 * cov / std::max(cov.norm(), 1e-9)));
                  Vec x = S.pt(0.5), y = S.pt(0.5);
                  r = std::max(r, std::abs(membrane_representation(E, phi, x, y) -
                                           phi.value(x)));
              }
              return r;
          });
}

void dynamics_suite(Suite& S, const VerifyOptions& opts) {
    const EtherStructure& E = S.E;
    HamiltonianSystem osc{[](const Vec& z) { return 0.5 * z.squaredNorm(); },
                          [](const Vec& z) { return z; }};

    S.run("eq4.2-flow-phase", std::max(2, opts.samples_small / 2), S.tl(1e-6, 1e-5),
          [&](int n) {
              double r = 0;
              for (int i = 0; i < n; ++i) {
                  double t = S.uni(0.1, 0.4);
                  HamiltonianSystem sys = osc;
                  if (S.sphere)
                      sys = HamiltonianSystem{[](const Vec& z) { return 0.1 * z[0]; },
                                              [](const Vec& z) {
                                                  Vec g = Vec::Zero(z.size());
                                                  g[0] = 0.1;
                                                  return g;
                                              }};
                  SymplecticMap gt = flow_map(sys, E.fix, t);
                  Vec x = S.pt(0.5), y = S.pt(0.5);
                  r = std::max(r, std::abs(normalized_phase(E, gt, x, y) -
                                           (dynamic_phase(E, sys, x, t) -
                                            dynamic_phase(E, sys, y, t))));
              }
              return r;
          });

    S.run("eq4.3-poincare-cartan", std::max(2, opts.samples_small / 2), S.tl(1e-6, 1e-5),
          [&](int n) {
              double r = 0;
              for (int i = 0; i < n; ++i) {
                  HamiltonianSystem sys = osc;
                  if (S.sphere)
                      sys = HamiltonianSystem{[](const Vec& z) { return 0.1 * z[1]; }};
                  r = std::max(r, poincare_cartan_residual(E, sys, S.pt(0.5), S.pt(0.5),
                                                          S.uni(0.1, 0.4)));
              }
              return r;
          });

    S.run("eq7.5-hj", std::max(2, opts.samples_small / 2), 1e-4, [&](int n) {
        double r = 0;
        auto phi = [&](const Vec& u, double tau) { return dynamic_phase(E, osc, u, tau); };
        for (int i = 0; i < n; ++i)
            r = std::max(r, hj_residual(E, osc, phi, S.pt(0.5), S.uni(0.2, 0.6)));
        return r;
    });
}

void product_suite(Suite& S, const VerifyOptions& opts) {
    const EtherStructure& E = S.E;
    const int n2 = E.fix.dim;

    S.run("eq6.1-triangle", std::max(2, opts.samples_small / 2), S.tl(1e-6, 1e-5),
          [&](int n) {
              double r = 0;
              for (int i = 0; i < n; ++i) {
                  Vec y = S.pt(0.4);
                  Vec z = y + S.pt(0.15);
                  Vec x = y + S.pt(0.3);
                  SymplecticMap g;
                  g.apply = [&E, y, z](const Vec& w) {
                      return ether_translation(E, y, z, w);
                  };
                  r = std::max(r, std::abs(triangle_phase(E, x, y, z) -
                                           normalized_phase(E, g, x, y)));
              }
              return r;
          });

    S.run("thm6.1i-unit", 3, 1e-8, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            PhaseFunction p = linear_phase(S.pt(0.12));
            Vec x = S.pt(0.5);
            r = std::max(r, std::abs(phase_product(E, p, constant_phase(0), x) - p.value(x)));
            r = std::max(r, std::abs(phase_product(E, constant_phase(0), p, x) - p.value(x)));
        }
        return r;
    });

    S.run("thm6.1i-assoc", std::max(2, opts.samples_small / 3), 1e-5, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            PhaseFunction p1 = linear_phase(S.pt(0.1));
            PhaseFunction p2 = linear_phase(S.pt(0.1));
            PhaseFunction p3 = linear_phase(S.pt(0.1));
            Vec x = S.pt(0.4);
            // the inner products generate the composed maps; handing that
            // gradient over avoids nesting finite differences of quadratures
            SymplecticMap g21 = compose_maps(map_from_phase(E, p2), map_from_phase(E, p1));
            SymplecticMap g32 = compose_maps(map_from_phase(E, p3), map_from_phase(E, p2));
            PhaseFunction p21{[&](const Vec& u) { return phase_product(E, p2, p1, u); },
                              [&, g21](const Vec& u) -> Vec { return phase_gradient(E, g21, u); }};
            PhaseFunction p32{[&](const Vec& u) { return phase_product(E, p3, p2, u); },
                              [&, g32](const Vec& u) -> Vec { return phase_gradient(E, g32, u); }};
            double lhs = phase_product(E, p3, p21, x);
            double rhs = phase_product(E, p32, p1, x);
            r = std::max(r, std::abs(lhs - rhs));
        }
        return r;
    });

    S.run("eq6.4-gradient", std::max(2, opts.samples_small / 2), 1e-5, [&](int n) {
        double r = 0;
        const double h = 1e-3;
        for (int i = 0; i < n; ++i) {
            PhaseFunction p1 = linear_phase(S.pt(0.1));
            PhaseFunction p2 = linear_phase(S.pt(0.1));
            Vec x = S.pt(0.4);
            SymplecticMap g1 = map_from_phase(E, p1);
            SymplecticMap g2 = map_from_phase(E, p2);
            SymplecticMap g = compose_maps(g2, g1);
            Vec expected = phase_gradient(E, g, x);
            Vec fd(n2);
            for (int k = 0; k < n2; ++k) {
                Vec d = Vec::Zero(n2);
                d[k] = h;
                fd[k] = (phase_product(E, p2, p1, Vec(x + d)) -
                         phase_product(E, p2, p1, Vec(x - d))) /
                        (2 * h);
            }
            r = std::max(r, (fd - expected).norm());
        }
        return r;
    });

    S.run("eq6.6-group-law", std::max(2, opts.samples_small / 3), 1e-5, [&](int n) {
        double r = 0;
        HamiltonianSystem osc{[](const Vec& z) { return 0.5 * z.squaredNorm(); },
                              [](const Vec& z) { return z; }};
        for (int i = 0; i < n; ++i) {
            double t = S.uni(-0.4, 0.4), tau = S.uni(-0.4, 0.4);
            Vec x = S.pt(0.5);
            auto phi_at = [&](double tt) {
                PhaseFunction p;
                p.value = [&E, &osc, tt](const Vec& u) {
                    return dynamic_phase(E, osc, u, tt);
                };
                p.gradient = [&E, &osc, tt](const Vec& u) {
                    return phase_gradient(E, flow_map(osc, E.fix, tt), u);
                };
                return p;
            };
            double lhs = dynamic_phase(E, osc, x, t + tau);
            double rhs = phase_product_maps(E, phi_at(tau), flow_map(osc, E.fix, tau),
                                            phi_at(t), flow_map(osc, E.fix, t), x)
                             .value;
            r = std::max(r, std::abs(lhs - rhs));
        }
        return r;
    });

    S.run("eq6.8-normalized-composition", std::max(2, opts.samples_small / 3), 1e-5,
          [&](int n) {
              double r = 0;
              for (int i = 0; i < n; ++i) {
                  Vec c1(4), c2(4);
                  c1 << S.uni(0.5, 1.0), S.uni(-0.1, 0.1), 0.0, 0.0;
                  c2 << S.uni(0.5, 1.0), 0.0, S.uni(-0.1, 0.1), 0.0;
                  SymplecticMap g1 = small_flow_map(E, c1, 0.15);
                  SymplecticMap g2 = small_flow_map(E, c2, 0.15);
                  SymplecticMap g = compose_maps(g2, g1);
                  Vec y = S.pt(0.4), x = S.pt(0.4);
                  Vec yt = fixed_midpoint(E, g, y);
                  Vec g1yt = g1.apply(yt);
                  Vec yp = midpoint(E, g1yt, yt);
                  Vec ypp = midpoint(E, g.apply(yt), g1yt);
                  double lhs = phase_product_maps(E, phase_of_map(E, g2, ypp), g2,
                                                  phase_of_map(E, g1, yp), g1, x)
                                   .value;
                  double rhs = normalized_phase(E, g, x, y) + triangle_phase(E, y, ypp, yp);
                  r = std::max(r, std::abs(lhs - rhs));
              }
              return r;
          });
}

void groupoid_suite(Suite& S, const VerifyOptions& opts) {
    const EtherStructure& E = S.E;
    const int n2 = E.fix.dim;

    S.run("eq7.2-left-right", opts.samples / 2, 1e-7, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            GroupoidElement m{S.pt(0.6), S.pt(0.2)};
            r = std::max(r, (left_map(E, m) - reflection(E, m.base, right_map(E, m))).norm());
        }
        return r;
    });

    S.run("eq7.3-lie-engel", std::min(opts.samples, S.sphere ? 20 : 100), 1e-6, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i)
            r = std::max(r, lie_engel_residual(E, {S.pt(0.6), S.pt(0.15)}));
        return r;
    });

    S.run("eq7.4-expansion", opts.samples_small, 1e-5, [&](int n) {
        double r = 0;
        const double h = 1e-4;
        for (int i = 0; i < n; ++i) {
            Vec x = S.pt(0.6);
            r = std::max(r, (left_map(E, {x, Vec(Vec::Zero(n2))}) - x).norm());
            Mat J(n2, n2);
            for (int k = 0; k < n2; ++k) {
                Vec d = Vec::Zero(n2);
                d[k] = h;
                J.col(k) = (left_map(E, {x, d}) - left_map(E, {x, Vec(-d)})) / (2 * h);
            }
            r = std::max(r, (J - Mat(0.5 * E.fix.psi_at(x))).cwiseAbs().maxCoeff());
        }
        return r;
    });

    if (S.sphere) {
        S.run("eq7.4-expansion-order2", 3, 1e-3, [&](int n) {
            double r = 0;
            const double h = 5e-3;
            for (int i = 0; i < n; ++i) {
                Vec x = S.pt(0.5);
                ConnectionTensor G = connection_from_family(E, x);
                Mat psi = E.fix.psi_at(x);
                for (int a = 0; a < n2; ++a)
                    for (int b = a; b < n2; ++b) {
                        Vec da = Vec::Zero(n2), db = Vec::Zero(n2);
                        da[a] = h;
                        db[b] = h;
                        Vec second =
                            (left_map(E, {x, Vec(da + db)}) - left_map(E, {x, Vec(da - db)}) -
                             left_map(E, {x, Vec(db - da)}) +
                             left_map(E, {x, Vec(-da - db)})) /
                            (4 * h * h);
                        for (int k = 0; k < n2; ++k) {
                            double expect = 0;
                            for (int ai = 0; ai < n2; ++ai)
                                for (int bi = 0; bi < n2; ++bi)
                                    expect -= 0.25 * G(k, ai, bi) * psi(ai, a) * psi(bi, b);
                            r = std::max(r, std::abs(second[k] - expect));
                        }
                    }
            }
            return r;
        });

        S.run("eq2.2-second-order", 3, 1e-4, [&](int n) {
            // mixed second z-derivatives of H at the diagonal against the
            // connection contracted with 2*omega
            double r = 0;
            const double h = 1e-3;
            for (int i = 0; i < n; ++i) {
                Vec x = S.pt(0.5);
                ConnectionTensor G = connection_from_family(E, x);
                Mat om = E.fix.omega_at(x);
                for (int a = 0; a < n2; ++a)
                    for (int b = a; b < n2; ++b) {
                        Vec da = Vec::Zero(n2), db = Vec::Zero(n2);
                        da[a] = h;
                        db[b] = h;
                        Vec second = (ether_eval(E, x, Vec(x + da + db)) -
                                      ether_eval(E, x, Vec(x + da - db)) -
                                      ether_eval(E, x, Vec(x - da + db)) +
                                      ether_eval(E, x, Vec(x - da - db))) /
                                     (4 * h * h);
                        for (int j = 0; j < n2; ++j) {
                            double expect = 0;
                            for (int mi = 0; mi < n2; ++mi)
                                expect += 2 * om(j, mi) * G(mi, a, b);
                            r = std::max(r, std::abs(second[j] - expect));
                        }
                    }
            }
            return r;
        });
    }

    S.run("eq7.8-groupoid-axioms", opts.samples_small, 1e-7, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            GroupoidElement m1{S.pt(0.5), S.pt(0.15)};
            // composable left factor: solve its momentum so r(m2) = l(m1)
            Vec lm1 = left_map(E, m1);
            Vec x2 = S.pt(0.5);
            auto Fp = [&](const Vec& p) -> Vec {
                return right_map(E, {x2, p}) - lm1;
            };
            NewtonOptions no;
            no.tol = E.newton_tol;
            Vec p2 = newton_solve(Fp, Vec(-m1.momentum), no);
            GroupoidElement m2{x2, p2};
            GroupoidElement prod = groupoid_multiply(E, m2, m1);
            r = std::max(r, (left_map(E, prod) - left_map(E, m2)).norm());
            r = std::max(r, (right_map(E, prod) - right_map(E, m1)).norm());

            // unit laws at both ends
            GroupoidElement ul = groupoid_multiply(E, groupoid_unit(E, left_map(E, m1)), m1);
            GroupoidElement ur = groupoid_multiply(E, m1, groupoid_unit(E, right_map(E, m1)));
            r = std::max(r, (ul.base - m1.base).norm() + (ul.momentum - m1.momentum).norm());
            r = std::max(r, (ur.base - m1.base).norm() + (ur.momentum - m1.momentum).norm());

            // inverse law
            GroupoidElement iv = groupoid_multiply(E, m1, groupoid_inverse(E, m1));
            r = std::max(r, iv.momentum.norm());
            r = std::max(r, (iv.base - left_map(E, m1)).norm());

            // associativity with a third composable factor
            Vec rm1 = right_map(E, m1);
            Vec x0 = S.pt(0.5);
            auto Fp0 = [&](const Vec& p) -> Vec { return left_map(E, {x0, p}) - rm1; };
            Vec p0 = newton_solve(Fp0, Vec(m1.momentum), no);
            GroupoidElement m0{x0, p0};
            GroupoidElement a = groupoid_multiply(E, groupoid_multiply(E, m2, m1), m0);
            GroupoidElement b = groupoid_multiply(E, m2, groupoid_multiply(E, m1, m0));
            r = std::max(r, (a.base - b.base).norm() + (a.momentum - b.momentum).norm());
        }
        return r;
    });

    S.run("thm7.3-product-section", std::max(2, opts.samples_small / 2), 1e-5, [&](int n) {
        double r = 0;
        const double h = 1e-3;
        for (int i = 0; i < n; ++i) {
            PhaseFunction p1 = linear_phase(S.pt(0.1));
            PhaseFunction p2 = linear_phase(S.pt(0.1));
            Vec x = S.pt(0.4);
            GroupoidElement m = lagrangian_product_point(E, {p2}, {p1}, x);
            Vec fd(n2);
            for (int k = 0; k < n2; ++k) {
                Vec d = Vec::Zero(n2);
                d[k] = h;
                fd[k] = (phase_product(E, p2, p1, Vec(x + d)) -
                         phase_product(E, p2, p1, Vec(x - d))) /
                        (2 * h);
            }
            r = std::max(r, (m.momentum - fd).norm());

            // zero section as right unit; inverse phase composes to zero section
            GroupoidElement mu = lagrangian_product_point(E, {p2}, zero_section(), x);
            r = std::max(r, (mu.momentum - p2.grad(x)).norm());
            PhaseFunction pneg = linear_phase(Vec(-p1.grad(x)));
            GroupoidElement mz = lagrangian_product_point(E, {pneg}, {p1}, x);
            r = std::max(r, mz.momentum.norm());
        }
        return r;
    });
}

void chord_suite(Suite& S, const VerifyOptions& opts) {
    const EtherStructure& E = S.E;
    bool euclid = E.fix.name == "euclid_weyl_2n" && E.fix.dim == 2;
    LagrangianCurve circ = circle_curve(1.0, Vec::Zero(2));
    if (E.fix.name == "darboux_pullback") {
        // image of a centered circle under the chart bend stays embedded
        LagrangianCurve base = circle_curve(1.0, Vec::Zero(2));
        circ.param = [base](double s) -> Vec {
            Vec z = base.at(s);
            Vec w = z;
            w[1] += 0.3 * z[0] * z[0];
            return w;
        };
        circ.s_lo = 0;
        circ.s_hi = 2 * M_PI;
        circ.periodic = true;
    }

    if (euclid) {
        S.run("eq8.2-chord", 1, 1e-6, [&](int) {
            Vec x(2);
            x << 0.5, 0.0;
            double expected = std::acos(0.5) - 0.5 * std::sqrt(0.75);
            return std::abs(chord_phase(E, circ, x).value - expected);
        });

        S.run("eq8.11-chord-hj", opts.samples_small, 1e-6, [&](int n) {
            std::vector<ScalarField> lev{[](const Vec& z) { return 0.5 * z.squaredNorm(); }};
            Vec en(1);
            en << 0.5;
            double r = 0;
            for (int i = 0; i < n; ++i) {
                double ang = S.uni(0, 2 * M_PI), rad = S.uni(0.3, 0.7);
                Vec x(2);
                x << rad * std::cos(ang), rad * std::sin(ang);
                r = std::max(r, chord_hj_residual(E, circ, lev, en, x));
            }
            return r;
        });

        S.run("eq8.13-chord-flow-product", 2, 1e-4, [&](int n) {
            HamiltonianSystem osc{[](const Vec& z) { return 0.5 * z.squaredNorm(); },
                                  [](const Vec& z) { return z; }};
            double r = 0;
            for (int i = 0; i < n; ++i) {
                Vec x(2);
                double ang = S.uni(0, 2 * M_PI);
                double rad = S.uni(0.35, 0.55);
                x << rad * std::cos(ang), rad * std::sin(ang);
                double t = S.uni(0.1, 0.4);
                r = std::max(r, std::abs(chord_flow_product(E, circ, osc, x, 0.0) -
                                         chord_phase(E, circ, x).value));
                // the evolved chord function is pinned down by its t=0 value
                // together with the evolution equation, checked at time t
                auto phi = [&](const Vec& u, double tau) {
                    return chord_flow_product(E, circ, osc, u, tau);
                };
                r = std::max(r, hj_residual(E, osc, phi, x, t));
            }
            return r;
        });
    }

    S.run("eq8.3-chord-gradient", std::max(2, opts.samples_small / 2), 1e-5, [&](int n) {
        double r = 0;
        const double h = 1e-4;
        for (int i = 0; i < n; ++i) {
            double ang = S.uni(0, 2 * M_PI), rad = S.uni(0.35, 0.6);
            Vec x(2);
            x << rad * std::cos(ang), rad * std::sin(ang);
            if (E.fix.name == "darboux_pullback") x[1] += 0.3 * x[0] * x[0];
            Vec expected = chord_gradient(E, circ, x);
            Vec fd(2);
            for (int k = 0; k < 2; ++k) {
                Vec d = Vec::Zero(2);
                d[k] = h;
                fd[k] = (chord_phase(E, circ, Vec(x + d)).value -
                         chord_phase(E, circ, Vec(x - d)).value) /
                        (2 * h);
            }
            r = std::max(r, (fd - expected).norm());
        }
        return r;
    });

    S.run("eq8.2-boundary", opts.samples_small, 1e-8, [&](int n) {
        double r = 0;
        for (int i = 0; i < n; ++i) {
            Vec x = circ.at(S.uni(0, 2 * M_PI));
            r = std::max(r, std::abs(chord_phase(E, circ, x).value));
        }
        return r;
    });
}

// section with a genuinely curved transformation: a purely linear phase makes
// the two-graph intersection below degenerate (parallel affine graphs)
PhaseFunction quad_phase(const Vec& c, const Mat& Ssym) {
    PhaseFunction p;
    p.value = [c, Ssym](const Vec& z) { return c.dot(z) + 0.5 * z.dot(Ssym * z); };
    p.gradient = [c, Ssym](const Vec& z) -> Vec { return c + Ssym * z; };
    return p;
}

void extension_suite(Suite& S, const VerifyOptions& opts) {
    const EtherStructure& E = S.E;
    const int n2 = E.fix.dim;
    auto rand_quad = [&]() {
        Mat Ssym = 0.3 * Mat::Identity(n2, n2);
        Ssym(0, n2 - 1) += 0.08;
        Ssym(n2 - 1, 0) += 0.08;
        Ssym(n2 - 1, n2 - 1) = -0.25;
        return quad_phase(S.pt(0.1), Ssym);
    };

    S.run("eq9.3-extension-gradients", std::max(2, opts.samples_small / 2), 1e-5,
          [&](int n) {
              double r = 0;
              const double h = 1e-3;
              for (int i = 0; i < n; ++i) {
                  LagrangianSection lam{rand_quad()};
                  Vec x = S.pt(0.4);
                  Vec y = x + S.pt(0.15);
                  ExtensionResult ext = extension_phase_section(E, lam, x, y);
                  Vec fdx(n2), fdy(n2);
                  for (int k = 0; k < n2; ++k) {
                      Vec d = Vec::Zero(n2);
                      d[k] = h;
                      fdx[k] = (extension_phase_section(E, lam, Vec(x + d), y).value -
                                extension_phase_section(E, lam, Vec(x - d), y).value) /
                               (2 * h);
                      fdy[k] = (extension_phase_section(E, lam, x, Vec(y + d)).value -
                                extension_phase_section(E, lam, x, Vec(y - d)).value) /
                               (2 * h);
                  }
                  r = std::max(r, (fdx - ether_eval(E, x, ext.a)).norm());
                  r = std::max(r, (fdy + ether_eval(E, y, ext.b)).norm());
              }
              return r;
          });

    S.run("eq9.5-restriction", std::max(2, opts.samples_small / 2), 1e-6, [&](int n) {
        double r = 0;
        const double h = 2e-4;  // truncation at the stationary point scales like h^2
        for (int i = 0; i < n; ++i) {
            LagrangianSection lam{rand_quad()};
            Vec x = S.pt(0.4);
            Vec y = extension_restriction_point(E, lam, x);
            r = std::max(r, std::abs(extension_phase_section(E, lam, x, y).value -
                                     lam.phi.value(x)));
            for (int k = 0; k < n2; ++k) {
                Vec d = Vec::Zero(n2);
                d[k] = h;
                double dy = (extension_phase_section(E, lam, x, Vec(y + d)).value -
                             extension_phase_section(E, lam, x, Vec(y - d)).value) /
                            (2 * h);
                r = std::max(r, std::abs(dy));
            }
        }
        return r;
    });

    S.run("thm9.2-operator-calculus", std::max(20, opts.samples * 2 / 10), 1e-5,
          [&](int n) {
              LagrangianSection lam1{linear_phase(Vec(0.08 * Vec::Ones(n2)))};
              Vec c2 = Vec::Zero(n2);
              c2[0] = -0.06;
              c2[n2 - 1] = 0.1;
              LagrangianSection lam2{linear_phase(c2)};
              auto recs = operator_calculus_check(E, lam1, lam2, n, 777);
              double r = 0;
              for (const auto& rec : recs) {
                  r = std::max(r, rec.max_residual);
                  if (rec.samples_ok == 0) r = std::max(r, 1.0);
              }
              return r;
          });
}

}  // namespace

CheckReport run_verify(const VerifyOptions& opts) {
    EtherStructure E = make_fixture(opts.fixture, opts.params);
    if (opts.corrupt_scale != 0.0) E = corrupt_scale_H(E, opts.corrupt_scale);
    if (opts.newton_tol > 0) E.newton_tol = opts.newton_tol;
    CheckReport report;
    report.fixture = opts.fixture;
    Suite S(E, report, opts.seed);

    if (!E.involutive) {
        // torsion structure: structure equations, then the center-point suite
        S.run("eq2.1-zero-curvature", opts.samples, 1e-6, [&](int n) {
            double r = 0;
            for (int i = 0; i < n; ++i)
                r = std::max(r, zero_curvature_residual(E, S.pt(), S.pt()));
            return r;
        });
        S.run("eq2.4-fixed-point", opts.samples, 1e-9, [&](int n) {
            double r = 0;
            for (int i = 0; i < n; ++i) {
                Vec x = S.pt();
                r = std::max(r, (reflection(E, x, x) - x).norm());
            }
            return r;
        });
        S.run("thm2.1ii-symplectic", opts.samples / 2, 1e-6, [&](int n) {
            double r = 0;
            for (int i = 0; i < n; ++i) {
                Vec x = S.pt();
                SymplecticMap sx;
                sx.apply = [&](const Vec& z) { return reflection(E, x, z); };
                r = std::max(r, symplecticity_residual(E.fix, sx, S.pt()));
            }
            return r;
        });
        CheckReport tors = torsion_phase_suite(E, opts.seed + 1, opts.samples_small);
        for (auto& rec : tors.records) report.records.push_back(rec);
        return report;
    }

    involutive_suite(S, opts);
    dynamics_suite(S, opts);
    product_suite(S, opts);
    groupoid_suite(S, opts);
    if (E.fix.dim == 2 && !S.sphere) chord_suite(S, opts);
    if (!S.sphere) extension_suite(S, opts);

    if (E.fix.name == "sphere_chart") {
        S.run("eq10.1-connection-levi-civita", 3, 1e-4, [&](int n) {
            // conformal chart metric: Christoffels of exp(2*phi)*delta with
            // phi = log(2/(1+|z|^2))
            double r = 0;
            for (int i = 0; i < n; ++i) {
                Vec x = S.pt(0.5);
                ConnectionTensor G = connection_from_family(E, x);
                double denom = 1 + x.squaredNorm();
                Vec dphi = Vec(-2.0 * x / denom);
                for (int k = 0; k < 2; ++k)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            double expect = (k == a ? dphi[b] : 0.0) +
                                            (k == b ? dphi[a] : 0.0) -
                                            (a == b ? dphi[k] : 0.0);
                            r = std::max(r, std::abs(G(k, a, b) - expect));
                        }
            }
            return r;
        });
    }

    return report;
}

}  // namespace etherphase
