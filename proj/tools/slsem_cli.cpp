// Command-line front end for the slsem shared library. Parses a config,
// dispatches to the analysis/solver C API and emits one CSV or JSON artifact
// per invocation. Exit codes: 0 success, 1 config error, 2 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slsem.h"

namespace {

using nlohmann::json;

struct CliError {
    int exitCode;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

[[noreturn]] void failStatus(slsem_status st) {
    const std::string msg = std::string(slsem_status_name(st)) + ": " + slsem_last_error();
    // Invalid arguments are configuration mistakes; everything else is numerical.
    fail(st == SLSEM_ERR_INVALID_ARGUMENT ? 1 : 2, msg);
}

void check(slsem_status st) {
    if (st != SLSEM_OK) failStatus(st);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Options {
    int p = 1;
    std::string nodes = "chebyshev";
    int elements = 10;
    double cfl = 0.1;
    std::string cflRef = "min_spacing";
    std::string omega = "upwind";
    double tEnd = 1.0;
    int terms = 13;
    double waveSpeed = 1.0;
    double dx = 0.0;  // 0: command default (1/K for runs, 1 for analyses)
    std::string output;
    std::string format = "csv";
    std::string elementsRange = "10:50:10";
    std::string cflGrid = "0.05:2.4:0.05";
    std::string bracket = "0.05:3.9";
    std::string bc = "zero_neighbor";
    std::string mode = "both";
    int thetaPoints = 2048;
};

slsem_config buildConfig(const Options& opt, double dxDefault) {
    slsem_config cfg{};
    cfg.degree = opt.p;
    if (opt.nodes == "chebyshev") {
        cfg.nodes = SLSEM_NODES_CHEBYSHEV;
    } else if (opt.nodes == "uniform") {
        cfg.nodes = SLSEM_NODES_UNIFORM;
    } else if (opt.nodes.rfind("alpha:", 0) == 0) {
        cfg.nodes = SLSEM_NODES_ALPHA;
        try {
            cfg.alpha = std::stod(opt.nodes.substr(6));
        } catch (...) {
            fail(1, "invalid --nodes alpha value: " + opt.nodes);
        }
    } else {
        fail(1, "invalid --nodes (expected chebyshev, uniform or alpha:<float>): " + opt.nodes);
    }
    cfg.wave_speed = opt.waveSpeed;
    cfg.element_width = opt.dx > 0.0 ? opt.dx : dxDefault;
    cfg.cfl = opt.cfl;
    if (opt.cflRef == "min_spacing") {
        cfg.cfl_ref = SLSEM_CFL_MIN_SPACING;
    } else if (opt.cflRef == "element") {
        cfg.cfl_ref = SLSEM_CFL_ELEMENT;
    } else {
        fail(1, "invalid --cfl-ref (expected min_spacing or element): " + opt.cflRef);
    }
    if (opt.omega == "upwind") {
        cfg.omega_is_upwind = 1;
    } else {
        cfg.omega_is_upwind = 0;
        try {
            cfg.omega = std::stod(opt.omega);
        } catch (...) {
            fail(1, "invalid --omega (expected upwind or a number): " + opt.omega);
        }
    }
    if (cfg.cfl <= 0.0) fail(1, "--cfl must be positive");
    if (opt.terms < 2) fail(1, "--terms must be at least 2");
    return cfg;
}

std::vector<double> parseRange(const std::string& text, const char* what) {
    double lo = 0, hi = 0, stepv = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &stepv) != 3 || stepv <= 0 || hi < lo)
        fail(1, std::string("invalid ") + what + " range (expected <lo>:<hi>:<step>): " + text);
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = lo + i * stepv;
        if (v > hi + 1e-12 * stepv) break;
        out.push_back(v);
    }
    return out;
}

std::pair<double, double> parseBracket(const std::string& text) {
    double lo = 0, hi = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf", &lo, &hi) != 2 || !(hi > lo))
        fail(1, "invalid --bracket (expected <lo>:<hi>): " + text);
    return {lo, hi};
}

// Scheme handle with RAII.
struct Scheme {
    slsem_scheme* h = nullptr;
    explicit Scheme(const slsem_config& cfg) { check(slsem_scheme_create(&cfg, &h)); }
    ~Scheme() { slsem_scheme_destroy(h); }
    Scheme(const Scheme&) = delete;
    Scheme& operator=(const Scheme&) = delete;
};

struct Artifact {
    std::string command;
    std::vector<std::pair<std::string, std::string>> header;  // provenance comments
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void head(const std::string& key, const std::string& value) { header.emplace_back(key, value); }
    void head(const std::string& key, double value) { header.emplace_back(key, fmt(value)); }

    void writeCsv(std::ostream& os) const {
        os << "# slsem " << command;
        for (const auto& [k, v] : header) os << " " << k << "=" << v;
        os << "\n";
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << columns[c] << (c + 1 < columns.size() ? "," : "");
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << row[c] << (c + 1 < row.size() ? "," : "");
            os << "\n";
        }
    }

    void writeJson(std::ostream& os) const {
        json j;
        j["command"] = command;
        json hd = json::object();
        for (const auto& [k, v] : header) hd[k] = v;
        j["header"] = hd;
        j["columns"] = columns;
        json rws = json::array();
        for (const auto& row : rows) {
            json r = json::array();
            for (const auto& cell : row) r.push_back(cell);
            rws.push_back(r);
        }
        j["rows"] = rws;
        os << j.dump(2) << "\n";
    }
};

void writeArtifact(const Artifact& art, const Options& opt, const std::string& summary) {
    std::string path = opt.output;
    if (path.empty()) path = art.command + (opt.format == "json" ? ".json" : ".csv");
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(1, "cannot open output file: " + path);
    if (opt.format == "csv") {
        art.writeCsv(os);
    } else if (opt.format == "json") {
        art.writeJson(os);
    } else {
        fail(1, "invalid --format (expected csv or json): " + opt.format);
    }
    os.flush();
    if (!os) fail(1, "failed writing output file: " + path);
    std::cout << art.command << ": " << summary << " -> " << path << "\n";
}

void addCommonHeader(Artifact& art, const Options& opt, const slsem_config& cfg,
                     double resolvedOmega, double dMin, double nu, double dt) {
    art.head("p", std::to_string(opt.p));
    art.head("nodes", opt.nodes);
    art.head("cfl", opt.cfl);
    art.head("cfl_ref", opt.cflRef);
    art.head("omega", opt.omega);
    art.head("omega_resolved", resolvedOmega);
    art.head("a", cfg.wave_speed);
    art.head("dx", cfg.element_width);
    art.head("d_min", dMin);
    art.head("nu", nu);
    art.head("dt", dt);
}

int cmdSimulate(const Options& opt) {
    slsem_config cfg = buildConfig(opt, 1.0 / std::max(1, opt.elements));
    slsem_sim* sim = nullptr;
    check(slsem_sim_create(&cfg, opt.elements, &sim));
    slsem_run_report rep{};
    const slsem_status st = slsem_sim_run(sim, opt.tEnd, &rep);
    if (st != SLSEM_OK) {
        slsem_sim_destroy(sim);
        failStatus(st);
    }
    const int n = slsem_sim_node_count(sim);
    std::vector<double> x(n), q(n), qe(n);
    check(slsem_sim_solution(sim, x.data(), q.data(), qe.data()));

    Artifact art;
    art.command = "simulate";
    addCommonHeader(art, opt, cfg, rep.resolved_omega, rep.d_min, rep.nu, rep.dt);
    art.head("elements", std::to_string(opt.elements));
    art.head("t_end", opt.tEnd);
    art.head("steps", std::to_string(static_cast<long long>(rep.steps)));
    art.head("l2_error", rep.l2_error);
    art.head("nodal_rms_error", rep.nodal_rms_error);
    art.head("mass", rep.mass);
    art.head("initial_norm", rep.initial_norm);
    art.head("final_norm", rep.final_norm);
    art.head("cond_vstar", rep.cond_vstar);
    art.head("diverged", rep.diverged ? "1" : "0");
    art.columns = {"x", "t", "q", "q_exact"};
    for (int i = 0; i < n; ++i)
        art.rows.push_back({fmt(x[i]), fmt(opt.tEnd), fmt(q[i]), fmt(qe[i])});
    slsem_sim_destroy(sim);

    writeArtifact(art, opt, "l2_error=" + fmt(rep.l2_error) +
                                (rep.diverged ? " (diverged)" : ""));
    return rep.diverged ? 2 : 0;
}

int cmdConvergence(const Options& opt) {
    slsem_config cfg = buildConfig(opt, 1.0);
    const std::vector<double> kd = parseRange(opt.elementsRange, "--elements-list");
    std::vector<int> ks;
    for (const double v : kd) ks.push_back(static_cast<int>(std::lround(v)));
    if (ks.size() < 2) fail(1, "--elements-list must contain at least two mesh sizes");
    std::vector<double> errs(ks.size()), rms(ks.size());
    double order = 0.0;
    check(slsem_convergence_study(&cfg, ks.data(), static_cast<int>(ks.size()), opt.tEnd,
                                  errs.data(), rms.data(), &order));

    // Resolved omega depends on K through dt; echo the first mesh's value.
    slsem_config probe = cfg;
    probe.element_width = 1.0 / ks.front();
    Scheme scheme(probe);

    Artifact art;
    art.command = "convergence";
    addCommonHeader(art, opt, cfg, slsem_scheme_resolved_omega(scheme.h),
                    slsem_scheme_d_min(scheme.h), slsem_scheme_nu(scheme.h),
                    slsem_scheme_dt(scheme.h));
    art.head("t_end", opt.tEnd);
    art.head("est_order", order);
    art.columns = {"K", "P", "l2_error", "nodal_rms", "est_order"};
    for (std::size_t i = 0; i < ks.size(); ++i)
        art.rows.push_back({std::to_string(ks[i]), std::to_string(opt.p), fmt(errs[i]),
                            fmt(rms[i]), fmt(order)});
    writeArtifact(art, opt, "est_order=" + fmt(order));
    return 0;
}

int cmdMea(const Options& opt) {
    slsem_config cfg = buildConfig(opt, 1.0);
    Scheme scheme(cfg);
    std::vector<double> a(opt.terms + 1), b(opt.terms + 1);
    check(slsem_mea(scheme.h, opt.terms, a.data(), b.data()));

    Artifact art;
    art.command = "mea";
    addCommonHeader(art, opt, cfg, slsem_scheme_resolved_omega(scheme.h),
                    slsem_scheme_d_min(scheme.h), slsem_scheme_nu(scheme.h),
                    slsem_scheme_dt(scheme.h));
    art.head("terms", std::to_string(opt.terms));
    art.columns = {"m", "a_m", "b_m"};
    for (int m = 1; m <= opt.terms; ++m)
        art.rows.push_back({std::to_string(m), fmt(a[m]), fmt(b[m])});
    writeArtifact(art, opt, "a_1=" + fmt(a[1]) + " a_2=" + fmt(a[2]));
    return 0;
}

int cmdDispersion(const Options& opt) {
    slsem_config cfg = buildConfig(opt, 1.0);
    Scheme scheme(cfg);
    const int n = opt.thetaPoints;
    if (n < 2) fail(1, "--theta-points must be at least 2");
    std::vector<double> thetas(n);
    for (int i = 0; i < n; ++i) thetas[i] = M_PI * static_cast<double>(i + 1) / n;

    Artifact art;
    art.command = "dispersion";
    addCommonHeader(art, opt, cfg, slsem_scheme_resolved_omega(scheme.h),
                    slsem_scheme_d_min(scheme.h), slsem_scheme_nu(scheme.h),
                    slsem_scheme_dt(scheme.h));
    art.head("terms", std::to_string(opt.terms));
    art.head("theta_points", std::to_string(n));
    art.columns = {"theta", "re_kstar_dx", "im_kstar_dx", "mode", "terms"};

    std::vector<double> re(n), im(n);
    const bool wantExact = opt.mode == "both" || opt.mode == "exact_symbol";
    const bool wantTrunc = opt.mode == "both" || opt.mode == "me_truncated";
    if (!wantExact && !wantTrunc)
        fail(1, "invalid --mode (expected both, exact_symbol or me_truncated): " + opt.mode);
    if (wantExact) {
        check(slsem_dispersion(scheme.h, thetas.data(), n, SLSEM_DISPERSION_EXACT_SYMBOL,
                               opt.terms, re.data(), im.data()));
        for (int i = 0; i < n; ++i)
            art.rows.push_back({fmt(thetas[i]), fmt(re[i]), fmt(im[i]), "exact_symbol", "0"});
    }
    if (wantTrunc) {
        check(slsem_dispersion(scheme.h, thetas.data(), n, SLSEM_DISPERSION_ME_TRUNCATED,
                               opt.terms, re.data(), im.data()));
        for (int i = 0; i < n; ++i)
            art.rows.push_back({fmt(thetas[i]), fmt(re[i]), fmt(im[i]), "me_truncated",
                                std::to_string(opt.terms)});
    }
    writeArtifact(art, opt, "points=" + std::to_string(n) + " mode=" + opt.mode);
    return 0;
}

int cmdVn(const Options& opt) {
    slsem_config cfg = buildConfig(opt, 1.0);
    const auto [lo, hi] = parseBracket(opt.bracket);
    double limit = 0.0;
    check(slsem_vn_stability_limit(cfg.degree, cfg.nodes, cfg.alpha, cfg.omega_is_upwind,
                                   cfg.omega, cfg.cfl_ref, lo, hi, &limit));

    Artifact art;
    art.command = "vn";
    // The artifact sweeps max|g| over a 33-point cfl grid across the bracket.
    constexpr int kSweep = 33;
    std::vector<std::pair<double, double>> sweep;
    for (int i = 0; i < kSweep; ++i) {
        const double cfl = lo + (hi - lo) * static_cast<double>(i) / (kSweep - 1);
        slsem_config probe = cfg;
        probe.cfl = cfl;
        Scheme scheme(probe);
        double mg = 0.0;
        check(slsem_scheme_max_abs_symbol(scheme.h, &mg));
        sweep.emplace_back(cfl, mg);
    }
    slsem_config echo = cfg;
    echo.cfl = limit;
    Scheme scheme(echo);
    addCommonHeader(art, opt, cfg, slsem_scheme_resolved_omega(scheme.h),
                    slsem_scheme_d_min(scheme.h), slsem_scheme_nu(scheme.h),
                    slsem_scheme_dt(scheme.h));
    art.head("bracket", opt.bracket);
    art.head("limit", limit);
    art.columns = {"cfl", "max_abs_g"};
    for (const auto& [cfl, mg] : sweep) art.rows.push_back({fmt(cfl), fmt(mg)});
    writeArtifact(art, opt, "limit=" + fmt(limit));
    return 0;
}

int cmdSpectrum(const Options& opt) {
    slsem_config cfg = buildConfig(opt, 1.0);
    const std::vector<double> cfls = parseRange(opt.cflGrid, "--cfl-grid");
    if (cfls.empty()) fail(1, "--cfl-grid produced no points");
    slsem_bc bc;
    if (opt.bc == "periodic") {
        bc = SLSEM_BC_PERIODIC;
    } else if (opt.bc == "zero_neighbor") {
        bc = SLSEM_BC_ZERO_NEIGHBOR;
    } else {
        fail(1, "invalid --bc (expected periodic or zero_neighbor): " + opt.bc);
    }
    const std::size_t width = static_cast<std::size_t>(opt.p) + 1;
    std::vector<double> re(cfls.size() * width), im(cfls.size() * width);
    double merge = 0.0;
    int hasMerge = 0;
    check(slsem_spectrum_sweep(cfg.degree, cfg.nodes, cfg.alpha, cfg.omega_is_upwind, cfg.omega,
                               cfg.cfl_ref, bc, cfls.data(), static_cast<int>(cfls.size()),
                               re.data(), im.data(), &merge, &hasMerge));

    slsem_config echo = cfg;
    echo.cfl = cfls.front();
    Scheme scheme(echo);
    Artifact art;
    art.command = "spectrum";
    addCommonHeader(art, opt, cfg, slsem_scheme_resolved_omega(scheme.h),
                    slsem_scheme_d_min(scheme.h), slsem_scheme_nu(scheme.h),
                    slsem_scheme_dt(scheme.h));
    art.head("bc", opt.bc);
    art.head("merge_point", hasMerge ? fmt(merge) : std::string("none"));
    art.columns = {"cfl", "index", "re_lambda", "im_lambda"};
    for (std::size_t i = 0; i < cfls.size(); ++i)
        for (std::size_t j = 0; j < width; ++j)
            art.rows.push_back({fmt(cfls[i]), std::to_string(j), fmt(re[i * width + j]),
                                fmt(im[i * width + j])});
    writeArtifact(art, opt,
                  "merge_point=" + (hasMerge ? fmt(merge) : std::string("none")));
    return 0;
}

int cmdStencil(const Options& opt) {
    slsem_config cfg = buildConfig(opt, 1.0);
    Scheme scheme(cfg);
    const int n = slsem_scheme_stencil_size(scheme.h);
    std::vector<double> deltas(n), weights(n);
    check(slsem_scheme_stencil(scheme.h, deltas.data(), weights.data()));

    Artifact art;
    art.command = "stencil";
    addCommonHeader(art, opt, cfg, slsem_scheme_resolved_omega(scheme.h),
                    slsem_scheme_d_min(scheme.h), slsem_scheme_nu(scheme.h),
                    slsem_scheme_dt(scheme.h));
    art.head("entries", std::to_string(n));
    art.columns = {"delta", "weight"};
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        art.rows.push_back({fmt(deltas[i]), fmt(weights[i])});
        sum += weights[i];
    }
    writeArtifact(art, opt, "entries=" + std::to_string(n) + " weight_sum=" + fmt(sum));
    return 0;
}

void addCommonOptions(CLI::App* cmd, Options& opt, bool withElements, bool withTEnd) {
    cmd->add_option("--p", opt.p, "polynomial degree P");
    cmd->add_option("--nodes", opt.nodes, "node distribution: chebyshev|uniform|alpha:<float>");
    cmd->add_option("--cfl", opt.cfl, "Courant number");
    cmd->add_option("--cfl-ref", opt.cflRef, "Courant reference: min_spacing|element");
    cmd->add_option("--omega", opt.omega, "flux-correction factor: upwind|<float>");
    cmd->add_option("--a", opt.waveSpeed, "wave speed");
    cmd->add_option("--dx", opt.dx, "element width (analysis commands; default 1)");
    cmd->add_option("--output", opt.output, "artifact path (default <command>.<format>)");
    cmd->add_option("--format", opt.format, "artifact format: csv|json");
    if (withElements) cmd->add_option("--elements", opt.elements, "element count K");
    if (withTEnd) cmd->add_option("--t-end", opt.tEnd, "final time");
    cmd->set_config("--config", "", "config file of key = value lines (flags override)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-Lagrangian spectral element advection: runs and discrete analysis"};
    app.require_subcommand(1);

    Options opt;

    CLI::App* simulate = app.add_subcommand("simulate", "advect the sine test case and report errors");
    addCommonOptions(simulate, opt, true, true);

    CLI::App* convergence = app.add_subcommand("convergence", "mesh-refinement error study");
    addCommonOptions(convergence, opt, false, true);
    convergence->add_option("--elements-list", opt.elementsRange, "mesh sizes <lo>:<hi>:<step>");

    CLI::App* mea = app.add_subcommand("mea", "modified-equation truncation coefficients");
    addCommonOptions(mea, opt, false, false);
    mea->add_option("--terms", opt.terms, "truncation order M");

    CLI::App* dispersion = app.add_subcommand("dispersion", "effective-wavenumber curves");
    addCommonOptions(dispersion, opt, false, false);
    dispersion->add_option("--terms", opt.terms, "ME truncation order");
    dispersion->add_option("--theta-points", opt.thetaPoints, "grid size on (0, pi]");
    dispersion->add_option("--mode", opt.mode, "both|exact_symbol|me_truncated");

    CLI::App* vn = app.add_subcommand("vn", "von Neumann stability limit in cfl");
    addCommonOptions(vn, opt, false, false);
    vn->add_option("--bracket", opt.bracket, "bisection bracket <lo>:<hi>");

    CLI::App* spectrum = app.add_subcommand("spectrum", "recursion-matrix eigenvalue sweep");
    addCommonOptions(spectrum, opt, false, false);
    spectrum->add_option("--cfl-grid", opt.cflGrid, "sweep grid <lo>:<hi>:<step>");
    spectrum->add_option("--bc", opt.bc, "periodic|zero_neighbor");

    CLI::App* stencil = app.add_subcommand("stencil", "center-node update weights");
    addCommonOptions(stencil, opt, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (simulate->parsed()) return cmdSimulate(opt);
        if (convergence->parsed()) return cmdConvergence(opt);
        if (mea->parsed()) return cmdMea(opt);
        if (dispersion->parsed()) return cmdDispersion(opt);
        if (vn->parsed()) return cmdVn(opt);
        if (spectrum->parsed()) return cmdSpectrum(opt);
        if (stencil->parsed()) return cmdStencil(opt);
        std::cerr << "config error: no command given\n";
        return 1;
    } catch (const CliError& e) {
        std::cerr << (e.exitCode == 1 ? "config error: " : "numerical failure: ") << e.message
                  << "\n";
        return e.exitCode;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
