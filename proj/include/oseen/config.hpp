#pragma once

// Run configuration: flat `key = value` text with `[section]` headers.
// Keys are addressed as `section.key`; keys before the first header belong to no section.

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oseen/error.hpp"
#include "oseen/grids.hpp"
#include "oseen/halfplane.hpp"
#include "oseen/symbols.hpp"

namespace oseen {

struct ConfigEntry {
    std::string key;
    std::string value;  ///< default
    std::string help;
};

/// Every recognised key with its default. Order is the order `config show` prints.
inline const std::vector<ConfigEntry>& config_schema() {
    static const std::vector<ConfigEntry> schema = {
        {"seed", "2024", "corpus and spot-check RNG seed"},
        {"threads", "0", "maximum worker threads (0: all cores); OSEEN_THREADS overrides"},
        {"params.a1", "1", "convection component along the wall"},
        {"params.a2", "0", "convection component normal to the wall (regime selector)"},
        {"params.f", "1", "friction coefficient, > 0"},
        {"grid.L", "20", "half-width of the periodic x1 box"},
        {"grid.n", "1024", "x1 grid points (even)"},
        {"levels.count", "64", "height levels when generated automatically"},
        {"levels.t_min", "0.001", "first positive height"},
        {"levels.ratio", "0", "geometric ratio; 0 selects automatic levels up to the decay height"},
        {"levels.T", "0", "top height for ratio-generated levels"},
        {"solve.b", "gauss", "slip datum b (or D1): corpus name, or CSV file with columns x,value"},
        {"solve.d", "zero", "normal datum d (or D2): corpus name or CSV file"},
        {"solve.boundary", "slip", "slip | dirichlet"},
        {"solve.model", "reduced", "Dirichlet model: reduced | oseen"},
        {"solve.format", "csv", "field dump format: csv | binary"},
        {"solve.pde_tol", "1e-6", "threshold on the momentum residual"},
        {"solve.div_tol", "1e-10", "threshold on the divergence"},
        {"solve.bc_tol", "1e-8", "threshold on the boundary-condition residuals"},
        {"verify.corpus_size", "20", "number of corpus pairs used by the sweeps"},
        {"verify.sweep_L", "20", "x1 half-width for the estimate sweeps"},
        {"verify.sweep_n", "512", "x1 points for the estimate sweeps (refined run doubles it)"},
        {"verify.r_list", "2,3", "pressure exponents r"},
        {"verify.s_list", "3.5,4", "velocity exponents s"},
        {"verify.refine_tol", "0.1", "allowed relative change of the max ratio under refinement"},
        {"verify.t_list", "0,0.1,1,10", "heights for the multiplier bounds"},
        {"verify.multiplier_tol", "0.05", "allowed relative change of multiplier bounds under refinement"},
        {"verify.asymptotics_tol", "0.03", "relative tolerance on fitted eigenvalue slopes"},
        {"verify.kernel_L", "40", "x1 half-width for the kernel identities"},
        {"verify.kernel_n", "2048", "x1 points for the kernel identities"},
        {"verify.kernel_t", "0.1,1,10", "kernel heights"},
        {"verify.kernel_tol", "1e-6", "sup-error threshold for the kernel identities"},
        {"verify.j1_p", "2,3", "exponents for the J1 bound"},
        {"verify.j1_slack", "1.05", "allowed ratio for the J1 bound"},
        {"verify.trace_p", "2", "exponent of the trace estimate"},
        {"verify.trace_tol", "1e-6", "trace vs whole-plane solver agreement"},
        {"wake.domain", "plane", "plane | halfplane"},
        {"wake.L", "40", "box half-width (both directions for the plane)"},
        {"wake.n", "512", "grid points per direction"},
        {"wake.signal", "gauss", "half-plane slip datum b (d = 0)"},
        {"wake.r_min", "3", "start of the fit window"},
        {"wake.r_max", "15", "end of the fit window"},
        {"wake.min_anisotropy", "2", "plane: required downstream/upstream decay-length ratio"},
        {"wake.transverse_tol", "0.2", "plane: allowed deviation of the transverse ratio from 1"},
        {"output.dir", "oseen_out", "directory for reports and field dumps"},
    };
    return schema;
}

class RunConfig {
public:
    RunConfig() {
        for (const auto& e : config_schema()) values_[e.key] = e.value;
    }

    /// Parse config text; `origin` names the source in error messages.
    static RunConfig parse(const std::string& text, const std::string& origin = "config") {
        RunConfig cfg;
        cfg.merge(text, origin);
        return cfg;
    }

    static RunConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ArgumentError("cannot open config file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse(ss.str(), path);
    }

    void merge(const std::string& text, const std::string& origin = "config") {
        std::istringstream in(text);
        std::string line, section;
        for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const std::string where = origin + ":" + std::to_string(lineno);
            if (line.front() == '[') {
                if (line.back() != ']') throw ArgumentError(where + ": malformed section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ArgumentError(where + ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            set(section.empty() ? key : section + "." + key, trim(line.substr(eq + 1)), where);
        }
    }

    /// Set `section.key=value`.
    void set_assignment(const std::string& assignment) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos) throw ArgumentError("--set expects key=value, got '" + assignment + "'");
        set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), "--set");
    }

    void set(const std::string& key, const std::string& value, const std::string& where = "config") {
        if (!values_.count(key)) throw ArgumentError(where + ": unknown key '" + key + "'");
        values_[key] = value;
    }

    const std::string& str(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) throw ArgumentError("unknown config key '" + key + "'");
        return it->second;
    }

    double num(const std::string& key) const { return to_double(str(key), key); }

    std::size_t count(const std::string& key) const {
        const double v = num(key);
        if (!(v >= 0.0) || v != std::floor(v)) throw ArgumentError(key + ": expected a non-negative integer");
        return static_cast<std::size_t>(v);
    }

    std::vector<double> list(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(str(key));
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), key));
        if (out.empty()) throw ArgumentError(key + ": empty list");
        return out;
    }

    OseenParams params() const {
        OseenParams P{num("params.a1"), num("params.a2"), num("params.f"), {}};
        P.validate();
        return P;
    }

    SpatialGrid1D grid() const { return SpatialGrid1D(num("grid.L"), count("grid.n")); }

    /// Explicit levels when levels.ratio > 0, otherwise none (caller picks automatic levels).
    std::optional<HeightLevels> explicit_levels() const {
        const double ratio = num("levels.ratio");
        if (ratio == 0.0) return std::nullopt;
        return HeightLevels::geometric_ratio(num("levels.t_min"), ratio, num("levels.T"));
    }

    /// Threads from OSEEN_THREADS if set, else the `threads` key.
    unsigned threads() const {
        if (const char* env = std::getenv("OSEEN_THREADS")) {
            const double v = to_double(env, "OSEEN_THREADS");
            if (!(v >= 0.0) || v != std::floor(v)) throw ArgumentError("OSEEN_THREADS: expected a non-negative integer");
            return static_cast<unsigned>(v);
        }
        return static_cast<unsigned>(count("threads"));
    }

    /// Validate every typed key so errors surface before any compute.
    void validate() const {
        (void)params();
        (void)grid();
        (void)threads();
        (void)count("seed");
        (void)count("levels.count");
        if (!(num("levels.t_min") > 0.0)) throw ArgumentError("levels.t_min must be positive");
        (void)explicit_levels();
        for (const char* k : {"verify.r_list", "verify.s_list", "verify.t_list", "verify.kernel_t", "verify.j1_p"}) {
            (void)list(k);
        }
        const auto one_of = [&](const char* key, std::initializer_list<const char*> allowed) {
            for (const char* a : allowed) {
                if (str(key) == a) return;
            }
            throw ArgumentError(std::string(key) + ": unsupported value '" + str(key) + "'");
        };
        one_of("solve.boundary", {"slip", "dirichlet"});
        one_of("solve.model", {"reduced", "oseen"});
        one_of("solve.format", {"csv", "binary"});
        one_of("wake.domain", {"plane", "halfplane"});
        for (const auto& e : config_schema()) {
            if (e.key.rfind("solve.", 0) == 0 && e.key.size() > 4 && e.key.substr(e.key.size() - 4) == "_tol") (void)num(e.key);
        }
    }

    /// `key = value` lines grouped by section, with the help text as comments.
    std::string show() const {
        std::ostringstream os;
        std::string current;
        for (const auto& e : config_schema()) {
            const auto dot = e.key.find('.');
            const std::string section = dot == std::string::npos ? "" : e.key.substr(0, dot);
            const std::string name = dot == std::string::npos ? e.key : e.key.substr(dot + 1);
            if (section != current) {
                os << "\n[" << section << "]\n";
                current = section;
            }
            os << name << " = " << values_.at(e.key) << "  # " << e.help << "\n";
        }
        return os.str();
    }

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    static double to_double(const std::string& s, const std::string& key) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
            throw ArgumentError(key + ": expected a number, got '" + s + "'");
        }
        return v;
    }

    std::map<std::string, std::string> values_;
};

/// Boundary samples from a CSV file with header-optional columns `x,value`, interpolated
/// linearly onto the grid (zero outside the file's x range). Malformed lines report their number.
inline RVec read_boundary_csv(const std::string& path, const SpatialGrid1D& grid) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open boundary file '" + path + "'");
    std::vector<std::pair<double, double>> pts;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto comma = line.find(',');
        const auto fail = [&] {
            throw ArgumentError(path + ":" + std::to_string(lineno) + ": malformed CSV line '" + line + "'");
        };
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) fail();
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        char* e1 = nullptr;
        char* e2 = nullptr;
        const double x = std::strtod(a.c_str(), &e1);
        const double v = std::strtod(b.c_str(), &e2);
        const auto rest_blank = [](const char* p) {
            while (*p == ' ' || *p == '\t') ++p;
            return *p == '\0';
        };
        const bool ok = e1 != a.c_str() && e2 != b.c_str() && rest_blank(e1) && rest_blank(e2);
        if (!ok) {
            if (lineno == 1 && pts.empty()) continue;  // header
            fail();
        }
        if (!std::isfinite(x) || !std::isfinite(v)) fail();
        if (!pts.empty() && !(x > pts.back().first)) {
            throw ArgumentError(path + ":" + std::to_string(lineno) + ": x values must be strictly increasing");
        }
        pts.emplace_back(x, v);
    }
    if (pts.size() < 2) throw ArgumentError(path + ": need at least two data lines");
    RVec out(grid.size(), 0.0);
    std::size_t seg = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j);
        if (x < pts.front().first || x > pts.back().first) continue;
        while (seg + 2 < pts.size() && x > pts[seg + 1].first) ++seg;
        const auto [x0, v0] = pts[seg];
        const auto [x1, v1] = pts[seg + 1];
        out[j] = v0 + (v1 - v0) * (x - x0) / (x1 - x0);
    }
    return out;
}

}  // namespace oseen
