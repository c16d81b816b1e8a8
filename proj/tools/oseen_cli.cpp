// oseen: command-line driver for the half-plane and whole-plane solvers and the verification suites.
//
// Exit codes: 0 ok, 2 usage or validation error, 3 numerical failure or a failed threshold.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oseen/analysis.hpp"
#include "oseen/config.hpp"
#include "oseen/experiments.hpp"
#include "oseen/halfplane.hpp"
#include "oseen/parallel.hpp"
#include "oseen/report.hpp"
#include "oseen/wholeplane.hpp"

namespace fs = std::filesystem;
using namespace oseen;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

int fail_with(const std::string& code, int exit_code, const std::string& message) {
    std::cerr << Json{{"error", code}, {"exit_code", exit_code}, {"message", message}}.dump() << "\n";
    return exit_code;
}

RVec load_signal(const std::string& spec, const SpatialGrid1D& grid, std::uint64_t seed) {
    if (fs::exists(spec) || spec.find('/') != std::string::npos || spec.find(".csv") != std::string::npos) {
        return read_boundary_csv(spec, grid);
    }
    return named_signal(spec, grid, seed);
}

double relative_change(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

Json grid_json(const SpatialGrid1D& g) { return Json{{"L", g.half_width()}, {"n", g.size()}}; }

void print_status(const std::string& what, bool ok) { std::cout << (ok ? "PASS " : "FAIL ") << what << "\n"; }

// ---------------------------------------------------------------------------

int cmd_solve(const RunConfig& cfg, const fs::path& out) {
    const OseenParams P = cfg.params();
    const SpatialGrid1D grid = cfg.grid();
    const auto seed = cfg.count("seed");
    const bool slip = cfg.str("solve.boundary") == "slip";
    const RVec first = load_signal(cfg.str("solve.b"), grid, seed);
    const RVec second = load_signal(cfg.str("solve.d"), grid, seed);
    const BoundarySignal s1(grid, first, slip ? SignalKind::SlipB : SignalKind::DirichletD1);
    const BoundarySignal s2(grid, second, slip ? SignalKind::NormalD : SignalKind::DirichletD2);
    const HeightLevels levels =
        cfg.explicit_levels().value_or(default_levels(P, s1, s2, cfg.count("levels.count"), cfg.num("levels.t_min")));
    const SolutionFields sol =
        slip ? solve_slip(P, s1, s2, grid, levels)
             : solve_dirichlet(P, s1, s2, grid, levels,
                               cfg.str("solve.model") == "oseen" ? DirichletModel::Oseen : DirichletModel::Reduced);
    const ResidualReport res = residual(P, sol);
    if (!all_finite(sol.u1) || !all_finite(sol.u2) || !all_finite(sol.p)) {
        throw NumericalError("solve: non-finite field values");
    }

    fs::create_directories(out);
    if (cfg.str("solve.format") == "csv") {
        std::ofstream os(out / "fields.csv", std::ios::binary);
        write_csv(os, sol);
    } else {
        std::ofstream os(out / "fields.bin", std::ios::binary);
        write_binary(os, sol);
    }
    const double pde_tol = cfg.num("solve.pde_tol"), div_tol = cfg.num("solve.div_tol"), bc_tol = cfg.num("solve.bc_tol");
    const bool ok = res.pde_residual_linf < pde_tol && res.divergence_linf < div_tol &&
                    res.bc_slip_residual_linf < bc_tol && res.bc_normal_residual_linf < bc_tol;
    Json j{{"params", to_json(P)},
           {"grid", grid_json(grid)},
           {"levels", {{"count", levels.size()}, {"top", levels.top()}}},
           {"boundary", cfg.str("solve.boundary")},
           {"residuals", to_json(res)},
           {"thresholds", {{"pde", pde_tol}, {"divergence", div_tol}, {"bc", bc_tol}}},
           {"warnings", sol.warnings},
           {"pass", ok}};
    write_text(out / "residual.json", json_text(j));
    print_status("solve residuals", ok);
    return ok ? kOk : kNumerical;
}

// ---------------------------------------------------------------------------

struct SweepOutcome {
    Json summary;
    bool ok = true;
};

template <class Sweep>
SweepOutcome run_sweep(const RunConfig& cfg, const fs::path& out, const std::string& name, const std::vector<double>& exps,
                       Sweep&& sweep) {
    const OseenParams P = cfg.params();
    const auto seed = cfg.count("seed");
    const std::size_t size = cfg.count("verify.corpus_size");
    SweepGrid base{SpatialGrid1D(cfg.num("verify.sweep_L"), cfg.count("verify.sweep_n")), cfg.count("levels.count"),
                   cfg.num("levels.t_min"), false};
    const SweepGrid fine = base.refined();
    const auto data_on = [&](const SpatialGrid1D& g) {
        auto all = corpus_pairs(g, seed);
        if (size == 0 || size > all.size()) throw ArgumentError("verify.corpus_size must be in 1..20");
        all.resize(size);
        return all;
    };
    const auto rows = sweep(P, data_on(base.grid), exps, base);
    const auto rows_fine = sweep(P, data_on(fine.grid), exps, fine);
    write_text(out / (name + ".csv"), estimate_csv(rows).str());
    write_text(out / (name + "_refined.csv"), estimate_csv(rows_fine).str());
    SweepOutcome o;
    const double tol = cfg.num("verify.refine_tol");
    Json per = Json::object();
    for (double e : exps) {
        const double m = max_ratio(rows, e), mf = max_ratio(rows_fine, e);
        const double change = relative_change(m, mf);
        const bool ok = std::isfinite(m) && std::isfinite(mf) && change < tol;
        o.ok = o.ok && ok;
        per[fmt(e)] = Json{{"max_ratio", m}, {"max_ratio_refined", mf}, {"relative_change", change}, {"pass", ok}};
        print_status(name + " exponent " + fmt(e) + " max ratio " + fmt(m) + " change " + fmt(change), ok);
    }
    o.summary = Json{{"params", to_json(P)},
                     {"regime", to_string(regime_of(P))},
                     {"grid", grid_json(base.grid)},
                     {"exponents", per},
                     {"refine_tol", tol},
                     {"pass", o.ok}};
    return o;
}

int verify_pressure(const RunConfig& cfg, const fs::path& out) {
    auto o = run_sweep(cfg, out, "pressure", cfg.list("verify.r_list"),
                       [](auto&&... a) { return pressure_estimate_sweep(a...); });
    write_text(out / "pressure.json", json_text(o.summary));
    return o.ok ? kOk : kNumerical;
}

int verify_velocity(const RunConfig& cfg, const fs::path& out) {
    auto o = run_sweep(cfg, out, "velocity", cfg.list("verify.s_list"),
                       [](auto&&... a) { return velocity_estimate_sweep(a...); });
    write_text(out / "velocity.json", json_text(o.summary));
    return o.ok ? kOk : kNumerical;
}

int verify_trace(const RunConfig& cfg, const fs::path& out) {
    const OseenParams P = cfg.params();
    if (!(P.a2 < 0.0)) throw RegimeError("verify trace: the trace theorem requires a2 < 0");
    const double p = cfg.num("verify.trace_p");
    const auto seed = cfg.count("seed");
    const TraceGrid base, fine = base.refined();
    const TraceReport r = trace_theorem_check(P, trace_forcings(base, 8, seed), p);
    const TraceReport rf = trace_theorem_check(P, trace_forcings(fine, 8, seed), p);
    write_text(out / "trace.csv", trace_csv(r).str());
    write_text(out / "trace_refined.csv", trace_csv(rf).str());
    const double change = relative_change(r.max_ratio, rf.max_ratio);
    const double tol = cfg.num("verify.trace_tol");
    const bool match = r.max_mismatch < tol && rf.max_mismatch < tol;
    const bool stable = change < cfg.num("verify.refine_tol");
    print_status("trace vs whole-plane solver, max mismatch " + fmt(std::max(r.max_mismatch, rf.max_mismatch)), match);
    print_status("trace multiplier constant decays like exp(a2 s/4)", r.multiplier_decay_ok);
    print_status("trace estimate max ratio " + fmt(r.max_ratio) + " change " + fmt(change), stable);
    const bool ok = match && stable && r.multiplier_decay_ok;
    Json j{{"params", to_json(P)},
           {"p", p},
           {"max_ratio", r.max_ratio},
           {"max_ratio_refined", rf.max_ratio},
           {"relative_change", change},
           {"max_mismatch", std::max(r.max_mismatch, rf.max_mismatch)},
           {"s", r.s_values},
           {"multiplier_constant", r.multiplier_constant},
           {"multiplier_constant_lambda_plus", r.multiplier_constant_plus},
           {"multiplier_decay_ok", r.multiplier_decay_ok},
           {"pass", ok}};
    write_text(out / "trace.json", json_text(j));
    return ok ? kOk : kNumerical;
}

int verify_asymptotics(const RunConfig& cfg, const fs::path& out) {
    const OseenParams P = cfg.params();
    std::vector<OseenParams> list;
    if (!(P.a1 == 0.0 && P.a2 == 0.0)) list.push_back(P);
    for (const OseenParams& q : {OseenParams{0.0, 1.0, P.f, {}}, OseenParams{1.0, 1.0, P.f, {}}, OseenParams{1.0, 0.0, P.f, {}},
                                 OseenParams{1.0, -1.0, P.f, {}}}) {
        list.push_back(q);
    }
    const auto rows = asymptotics_report(list, cfg.num("verify.asymptotics_tol"));
    write_text(out / "asymptotics.csv", asymptotics_csv(rows).str());
    bool ok = true;
    for (const auto& r : rows) {
        const bool row_ok = r.small_ok && r.large_ok;
        ok = ok && row_ok;
        print_status("asymptotics a1=" + fmt(r.params.a1) + " a2=" + fmt(r.params.a2) + " small slope " +
                         fmt(r.small_slope) + " large slope " + fmt(r.large_slope),
                     row_ok);
    }
    write_text(out / "asymptotics.json", json_text(Json{{"rows", rows.size()}, {"pass", ok}}));
    return ok ? kOk : kNumerical;
}

int verify_multipliers(const RunConfig& cfg, const fs::path& out) {
    const OseenParams P = cfg.params();
    const auto specs = estimate_multipliers(P, cfg.list("verify.t_list"));
    std::vector<MultiplierReport> reps(specs.size());
    parallel_for(specs.size(), [&](std::size_t i) { reps[i] = marcinkiewicz_report(specs[i]); });
    write_text(out / "multipliers.csv", multiplier_csv(reps).str());
    const double tol = cfg.num("verify.multiplier_tol");
    bool ok = true;
    Json list = Json::array();
    for (const auto& r : reps) {
        const bool row_ok = std::isfinite(r.M) && r.refinement_delta < tol;
        ok = ok && row_ok;
        Json j = to_json(r);
        j["pass"] = row_ok;
        // growth when the frequency range is widened signals an unbounded symbol
        j["range_stable"] = r.range_extension_delta < tol;
        list.push_back(j);
        print_status("multiplier " + r.name + " M " + fmt(r.M) + " refinement change " + fmt(r.refinement_delta), row_ok);
        if (r.range_extension_delta >= tol) {
            std::cout << "NOTE multiplier " << r.name << " grows by " << fmt(r.range_extension_delta)
                      << " when the frequency range is widened\n";
        }
    }
    write_text(out / "multipliers.json",
               json_text(Json{{"params", to_json(P)}, {"multipliers", list}, {"tolerance", tol}, {"pass", ok}}));
    return ok ? kOk : kNumerical;
}

int verify_kernels(const RunConfig& cfg, const fs::path& out) {
    const double L = cfg.num("verify.kernel_L");
    const std::size_t n0 = cfg.count("verify.kernel_n");
    const double tol = cfg.num("verify.kernel_tol");
    CsvTable t({"kernel", "t", "n", "sup_error", "band_tail", "n_used", "sup_error_used"});
    bool ok = true;
    Json list = Json::array();
    for (KernelKind kind : {KernelKind::PoissonDecay, KernelKind::PoissonDerivative, KernelKind::Heat,
                            KernelKind::HeatDerivative}) {
        for (double tt : cfg.list("verify.kernel_t")) {
            const KernelSpec K{kind, tt};
            const KernelCheck c = kernel_identity_check(K, SpatialGrid1D(L, n0), tol);
            // resolution rule: refine until the truncated band is below the tolerance
            const std::size_t n_used = std::max(n0, c.points_needed);
            const KernelCheck cu = n_used == n0 ? c : kernel_identity_check(K, SpatialGrid1D(L, n_used), tol);
            const bool row_ok = cu.sup_error < tol;
            ok = ok && row_ok;
            t.row() << to_string(kind) << tt << n0 << c.sup_error << c.band_tail << n_used << cu.sup_error;
            list.push_back(Json{{"kernel", to_string(kind)},
                                {"t", tt},
                                {"n", n0},
                                {"sup_error", c.sup_error},
                                {"n_used", n_used},
                                {"sup_error_used", cu.sup_error},
                                {"pass", row_ok}});
            print_status(std::string("kernel ") + to_string(kind) + " t=" + fmt(tt) + " n=" + std::to_string(n_used) +
                             " sup error " + fmt(cu.sup_error),
                         row_ok);
        }
    }
    write_text(out / "kernels.csv", t.str());
    write_text(out / "kernels.json", json_text(Json{{"L", L}, {"tolerance", tol}, {"checks", list}, {"pass", ok}}));
    return ok ? kOk : kNumerical;
}

int verify_j1(const RunConfig& cfg, const fs::path& out) {
    const SpatialGrid1D grid(cfg.num("verify.sweep_L"), 2 * cfg.count("verify.sweep_n"));
    const auto corpus = make_corpus(grid, cfg.count("seed"));
    const double slack = cfg.num("verify.j1_slack");
    const auto ps = cfg.list("verify.j1_p");
    const HeightLevels levels = j1_levels(grid);
    std::vector<J1Check> checks(corpus.size() * ps.size());
    parallel_for(checks.size(), [&](std::size_t q) {
        checks[q] = j1_bound_check(corpus[q / ps.size()].samples, grid, ps[q % ps.size()], levels);
    });
    CsvTable t({"datum", "p", "lhs", "rhs", "ratio", "constant", "seminorm"});
    double worst = 0.0;
    for (std::size_t q = 0; q < checks.size(); ++q) {
        const auto& c = checks[q];
        t.row() << corpus[q / ps.size()].name << ps[q % ps.size()] << c.lhs << c.rhs << c.ratio << c.constant << c.seminorm;
        worst = std::max(worst, c.ratio);
    }
    const bool ok = std::isfinite(worst) && worst <= slack;
    write_text(out / "j1.csv", t.str());
    write_text(out / "j1.json", json_text(Json{{"max_ratio", worst}, {"slack", slack}, {"grid", grid_json(grid)}, {"pass", ok}}));
    print_status("J1 bound max ratio " + fmt(worst), ok);
    return ok ? kOk : kNumerical;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, const fs::path& out) {
    fs::create_directories(out);
    if (suite == "pressure") return verify_pressure(cfg, out);
    if (suite == "velocity") return verify_velocity(cfg, out);
    if (suite == "trace") return verify_trace(cfg, out);
    if (suite == "asymptotics") return verify_asymptotics(cfg, out);
    if (suite == "multipliers") return verify_multipliers(cfg, out);
    if (suite == "kernels") return verify_kernels(cfg, out);
    if (suite == "j1") return verify_j1(cfg, out);
    throw ArgumentError("unknown verify suite '" + suite + "'");
}

// ---------------------------------------------------------------------------

int cmd_wake(const RunConfig& cfg, const fs::path& out) {
    const OseenParams P = cfg.params();
    if (P.a1 == 0.0 && P.a2 == 0.0) throw ArgumentError("wake: needs a nonzero convection vector");
    const SpatialGrid1D g(cfg.num("wake.L"), cfg.count("wake.n"));
    const WakeWindow w{cfg.num("wake.r_min"), cfg.num("wake.r_max")};
    const double tol = cfg.num("wake.transverse_tol");
    WakeProfile prof;
    bool ok = true;
    if (cfg.str("wake.domain") == "plane") {
        prof = wake_profile(P, point_source_field(P, g, g), w);
        ok = prof.anisotropy_ratio > cfg.num("wake.min_anisotropy") && std::abs(prof.transverse_ratio - 1.0) <= tol;
    } else {
        const BoundarySignal b(g, named_signal(cfg.str("wake.signal"), g, cfg.count("seed")), SignalKind::SlipB);
        const BoundarySignal d = BoundarySignal::zero(g, SignalKind::NormalD);
        const HeightLevels levels = HeightLevels::geometric(cfg.num("levels.t_min"), 1.05 * w.r_max, 2 * cfg.count("levels.count"));
        prof = wake_profile(P, solve_slip(P, b, d, g, levels), w);
        // mirror symmetry only holds without a tangential convection component
        if (P.a1 == 0.0) ok = std::abs(prof.anisotropy_ratio - 1.0) <= tol;
    }
    write_text(out / "wake.csv", wake_csv(prof).str());
    print_status("wake anisotropy " + fmt(prof.anisotropy_ratio) + " transverse " + fmt(prof.transverse_ratio), ok);
    return ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral Oseen solver with slip boundary conditions and verification suites"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    app.add_option("-c,--config", config_path, "config file (key = value lines with [section] headers)");
    app.add_option("-s,--set", sets, "override a key, e.g. --set params.a2=-1 (repeatable)");
    app.add_option("-o,--out", out_dir, "output directory (overrides output.dir)");

    auto* solve = app.add_subcommand("solve", "solve the half-plane problem and write fields plus residual.json");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "suite name")
        ->required()
        ->check(CLI::IsMember({"pressure", "velocity", "trace", "asymptotics", "multipliers", "kernels", "j1"}));
    auto* wake = app.add_subcommand("wake", "fit decay lengths along rays and write wake.csv");
    auto* config = app.add_subcommand("config", "configuration utilities");
    config->require_subcommand(1);
    auto* show = config->add_subcommand("show", "print the effective configuration with defaults");

    std::string footer = "\nConfiguration keys and defaults:\n";
    for (const auto& e : config_schema()) footer += "  " + e.key + " = " + e.value + "  (" + e.help + ")\n";
    footer += "\nExit codes: 0 ok, 2 usage/validation, 3 numerical failure or failed threshold.\n";
    app.footer(footer);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig() : RunConfig::load(config_path);
        for (const auto& s : sets) cfg.set_assignment(s);
        if (!out_dir.empty()) cfg.set("output.dir", out_dir);
        cfg.validate();
        set_max_threads(cfg.threads());
        const fs::path out = cfg.str("output.dir");

        if (*show) {
            std::cout << cfg.show();
            return kOk;
        }
        if (*solve) return cmd_solve(cfg, out);
        if (*verify) return cmd_verify(cfg, suite, out);
        if (*wake) {
            fs::create_directories(out);
            return cmd_wake(cfg, out);
        }
        (void)config;
        return kUsage;
    } catch (const RegimeError& e) {
        return fail_with("regime", kUsage, e.what());
    } catch (const CompatibilityError& e) {
        return fail_with("compatibility", kUsage, e.what());
    } catch (const ArgumentError& e) {
        return fail_with("validation", kUsage, e.what());
    } catch (const NumericalError& e) {
        return fail_with("numerical", kNumerical, e.what());
    } catch (const std::exception& e) {
        return fail_with("internal", kNumerical, e.what());
    }
}
