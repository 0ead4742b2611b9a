// command-line driver: verification suite, grid computations, fixture info
#include <CLI11.hpp>
#include <json.hpp>

#include "etherphase/chords.hpp"
#include "etherphase/fixtures.hpp"
#include "etherphase/phase_product.hpp"
#include "etherphase/verify.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

using nlohmann::json;
using namespace etherphase;

namespace {

int thread_cap() {
    int hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ETHERPHASE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return std::min(v, hw);
    }
    return hw;
}

struct GridSpec {
    double qmin = -0.9, qmax = 0.9;
    double pmin = -0.9, pmax = 0.9;
    int nq = 21, np = 21;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    auto axis = [](const std::string& part, double& lo, double& hi, int& n) {
        double a, b;
        int m;
        if (std::sscanf(part.c_str(), "%lf:%lf:%d", &a, &b, &m) != 3 || m < 2 || !(a < b))
            throw ConfigError("bad grid axis '" + part + "' (want min:max:n)");
        lo = a;
        hi = b;
        n = m;
    };
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("grid wants two comma-separated axes");
    axis(s.substr(0, comma), g.qmin, g.qmax, g.nq);
    axis(s.substr(comma + 1), g.pmin, g.pmax, g.np);
    return g;
}

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ConfigError("unknown config key '" + it.key() + "' in " + where);
}

struct Config {
    VerifyOptions verify;
    std::string experiment = "verify";
    GridSpec grid;
    double t = 0.5;  // flow time for dynamic-phase / hj grids
};

Config load_config(const std::string& path) {
    Config cfg;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in, nullptr, true, true);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    reject_unknown(doc, {"fixture", "seed", "samples", "samples_small", "corrupt",
                         "tolerances", "experiment", "grid", "t", "output"},
                   "top level");
    if (doc.contains("fixture")) {
        const json& f = doc["fixture"];
        reject_unknown(f, {"name", "params"}, "fixture");
        if (f.contains("name")) cfg.verify.fixture = f["name"].get<std::string>();
        if (f.contains("params"))
            for (auto it = f["params"].begin(); it != f["params"].end(); ++it)
                cfg.verify.params[it.key()] = it.value().get<double>();
    }
    if (doc.contains("seed")) cfg.verify.seed = doc["seed"].get<uint64_t>();
    if (doc.contains("samples")) cfg.verify.samples = doc["samples"].get<int>();
    if (doc.contains("samples_small"))
        cfg.verify.samples_small = doc["samples_small"].get<int>();
    if (doc.contains("corrupt")) {
        reject_unknown(doc["corrupt"], {"scale_H"}, "corrupt");
        if (doc["corrupt"].contains("scale_H"))
            cfg.verify.corrupt_scale = doc["corrupt"]["scale_H"].get<double>();
    }
    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        reject_unknown(t, {"tol_newton", "tol_identity", "h_fd", "quadrature_order",
                           "ode_steps"},
                       "tolerances");
        for (auto it = t.begin(); it != t.end(); ++it)
            if (it.value().get<double>() <= 0)
                throw ConfigError("tolerance '" + it.key() + "' must be positive");
        if (t.contains("tol_newton")) cfg.verify.newton_tol = t["tol_newton"].get<double>();
    }
    if (doc.contains("experiment")) {
        cfg.experiment = doc["experiment"].get<std::string>();
        static const std::vector<std::string> known{"verify",  "phase", "product",
                                                    "chord",   "groupoid",
                                                    "torsion", "hj"};
        if (std::find(known.begin(), known.end(), cfg.experiment) == known.end())
            throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        reject_unknown(g, {"q", "p"}, "grid");
        auto axis = [](const json& a, double& lo, double& hi, int& n) {
            if (!a.is_array() || a.size() != 3) throw ConfigError("grid axis wants [min,max,n]");
            lo = a[0].get<double>();
            hi = a[1].get<double>();
            n = a[2].get<int>();
            if (n < 2 || !(lo < hi)) throw ConfigError("grid axis wants min<max, n>=2");
        };
        if (g.contains("q")) axis(g["q"], cfg.grid.qmin, cfg.grid.qmax, cfg.grid.nq);
        if (g.contains("p")) axis(g["p"], cfg.grid.pmin, cfg.grid.pmax, cfg.grid.np);
    }
    if (doc.contains("t")) cfg.t = doc["t"].get<double>();
    return cfg;
}

struct GridRow {
    double q = 0, p = 0;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string reason = "ok";
};

std::vector<GridRow> sweep(const GridSpec& g,
                           const std::function<double(const Vec&)>& f) {
    std::vector<GridRow> rows(static_cast<size_t>(g.nq) * g.np);
    int nthreads = thread_cap();
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= g.nq) return;
            double q = g.qmin + (g.qmax - g.qmin) * i / (g.nq - 1);
            for (int j = 0; j < g.np; ++j) {
                double p = g.pmin + (g.pmax - g.pmin) * j / (g.np - 1);
                GridRow& row = rows[static_cast<size_t>(i) * g.np + j];
                row.q = q;
                row.p = p;
                Vec x(2);
                x << q, p;
                try {
                    row.value = f(x);
                } catch (const AmbiguityError& e) {
                    row.reason = "ambiguous";
                } catch (const IterationLimitError&) {
                    row.reason = "no-convergence";
                } catch (const DomainError&) {
                    row.reason = "domain-exit";
                } catch (const std::exception&) {
                    row.reason = "numeric-error";
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < nthreads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return rows;
}

void write_rows(const std::vector<GridRow>& rows, const std::string& quantity,
                const std::string& path, const std::string& format) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!path.empty()) {
        file.open(path);
        if (!file) throw ConfigError("cannot open output file " + path);
        out = &file;
    }
    if (format == "csv") {
        *out << "# quantity: " << quantity << "\n";
        *out << "# columns: q,p,value,reason (value is NaN when reason != ok)\n";
        out->precision(15);
        for (const auto& r : rows)
            *out << r.q << "," << r.p << "," << r.value << "," << r.reason << "\n";
    } else {
        for (const auto& r : rows) {
            json rec{{"q", r.q}, {"p", r.p}, {"reason", r.reason}};
            if (std::isfinite(r.value))
                rec["value"] = r.value;
            else
                rec["value"] = nullptr;
            *out << rec.dump() << "\n";
        }
    }
}

int do_verify(const Config& cfg, const std::string& out_path, const std::string& format) {
    CheckReport report = run_verify(cfg.verify);
    for (const auto& r : report.records) {
        bool ok = r.expected_fail ? !r.pass : r.pass;
        std::cout << (ok ? "PASS " : "FAIL ") << r.id
                  << (r.expected_fail ? " (expected-fail)" : "") << "  max_residual="
                  << r.max_residual << " tol=" << r.tolerance << "\n";
    }
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw ConfigError("cannot open output file " + out_path);
        if (format == "csv")
            write_report_csv(file, report);
        else
            write_report_jsonl(file, report);
    }
    bool ok = report.all_pass();
    std::cout << (ok ? "all checks passed" : "CHECK FAILURES PRESENT") << " ("
              << report.records.size() << " identities, fixture " << report.fixture
              << ")\n";
    return ok ? 0 : 1;
}

int do_compute(const Config& cfg, const std::string& quantity,
               const std::string& out_path, const std::string& format) {
    EtherStructure E = make_fixture(cfg.verify.fixture, cfg.verify.params);
    std::function<double(const Vec&)> f;
    if (quantity == "chord_phase") {
        auto lam = std::make_shared<LagrangianCurve>(circle_curve(1.0, Vec::Zero(2)));
        f = [&E, lam](const Vec& x) { return chord_phase(E, *lam, x).value; };
    } else if (quantity == "dynamic_phase") {
        auto sys = std::make_shared<HamiltonianSystem>(
            HamiltonianSystem{[](const Vec& z) { return 0.5 * z.squaredNorm(); },
                              [](const Vec& z) { return z; }});
        double t = cfg.t;
        f = [&E, sys, t](const Vec& x) { return dynamic_phase(E, *sys, x, t); };
    } else if (quantity == "triangle_phase") {
        Vec y(2), z(2);
        y << 1, 0;
        z << 0, 1;
        f = [&E, y, z](const Vec& x) { return triangle_phase(E, x, y, z); };
    } else if (quantity == "hj_residual") {
        auto sys = std::make_shared<HamiltonianSystem>(
            HamiltonianSystem{[](const Vec& z) { return 0.5 * z.squaredNorm(); },
                              [](const Vec& z) { return z; }});
        double t = cfg.t;
        f = [&E, sys, t](const Vec& x) {
            return hj_residual(
                E, *sys,
                [&E, sys](const Vec& u, double tau) { return dynamic_phase(E, *sys, u, tau); },
                x, t);
        };
    } else if (quantity == "phase_product") {
        Vec c1(E.fix.dim), c2(E.fix.dim);
        c1.setZero();
        c2.setZero();
        c1[E.fix.dim - 1] = 0.1;
        c2[0] = -0.1;
        auto p1 = std::make_shared<PhaseFunction>(linear_phase(c1));
        auto p2 = std::make_shared<PhaseFunction>(linear_phase(c2));
        f = [&E, p1, p2](const Vec& x) { return phase_product(E, *p2, *p1, x); };
    } else {
        throw ConfigError("unknown quantity '" + quantity +
                          "' (chord_phase|dynamic_phase|triangle_phase|phase_product|hj_residual)");
    }
    write_rows(sweep(cfg.grid, f), quantity, out_path, format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"etherphase: reflections, membrane phases, phase products, groupoids"};
    app.require_subcommand(1);

    std::string fixture, config_path, out_path, format = "csv", grid_str, quantity =
                                                                              "chord_phase";
    uint64_t seed = 0;
    bool have_seed = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--fixture", fixture, "fixture name");
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_path, "output path (default stdout/none)");
        sub->add_option("--format", format, "csv|jsonl")
            ->check(CLI::IsMember({"csv", "jsonl"}));
        sub->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) {
            have_seed = true;
        });
    };

    CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
    add_common(verify);
    CLI::App* compute = app.add_subcommand("compute", "grid sweep of one quantity");
    add_common(compute);
    compute->add_option("--grid", grid_str, "qmin:qmax:n,pmin:pmax:n");
    compute->add_option("--quantity", quantity,
                        "chord_phase|dynamic_phase|triangle_phase|phase_product|hj_residual");
    CLI::App* describe = app.add_subcommand("describe", "print fixture metadata");
    describe->add_option("--fixture", fixture, "fixture name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Config cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!fixture.empty()) cfg.verify.fixture = fixture;
        if (have_seed) cfg.verify.seed = seed;
        if (!grid_str.empty()) cfg.grid = parse_grid(grid_str);

        if (app.got_subcommand("describe")) {
            std::cout << describe_fixture(cfg.verify.fixture, cfg.verify.params);
            return 0;
        }
        if (app.got_subcommand("verify")) return do_verify(cfg, out_path, format);
        return do_compute(cfg, quantity, out_path, format);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
