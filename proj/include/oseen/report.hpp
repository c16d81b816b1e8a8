#pragma once

// CSV and JSON serialization of reports. Numbers are written with %.17g and JSON
// object keys are sorted, so identical inputs give byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oseen/analysis.hpp"
#include "oseen/error.hpp"
#include "oseen/experiments.hpp"
#include "oseen/halfplane.hpp"

namespace oseen {

using Json = nlohmann::json;

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Rows of cells; the first row is the header.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

    CsvTable& row() {
        rows_.emplace_back();
        return *this;
    }
    CsvTable& operator<<(const std::string& s) {
        rows_.back().push_back(s);
        return *this;
    }
    CsvTable& operator<<(const char* s) { return *this << std::string(s); }
    CsvTable& operator<<(double v) { return *this << fmt(v); }
    CsvTable& operator<<(std::size_t v) { return *this << std::to_string(v); }
    CsvTable& operator<<(int v) { return *this << std::to_string(v); }
    CsvTable& operator<<(bool v) { return *this << std::string(v ? "1" : "0"); }

    std::string str() const {
        std::string out;
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) out += ',';
                out += r[i];
            }
            out += '\n';
        }
        return out;
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write '" + path.string() + "'");
    out << text;
}

/// Sorted keys, 2-space indent.
inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

inline Json to_json(const OseenParams& P) { return Json{{"a1", P.a1}, {"a2", P.a2}, {"f", P.f}}; }

inline Json to_json(const ResidualReport& r) {
    return Json{{"pde_residual_linf", r.pde_residual_linf},
                {"divergence_linf", r.divergence_linf},
                {"bc_slip_residual_linf", r.bc_slip_residual_linf},
                {"bc_normal_residual_linf", r.bc_normal_residual_linf}};
}

inline CsvTable estimate_csv(const std::vector<EstimateReport>& rows) {
    CsvTable t({"regime", "datum", "exponent", "lhs_norm", "rhs_norm", "ratio", "rhs_ablated", "ratio_ablated", "n", "L",
                "levels"});
    for (const auto& r : rows) {
        t.row() << to_string(r.regime) << r.datum << r.exponent << r.lhs_norm << r.rhs_norm << r.ratio
                << (r.rhs_ablated ? fmt(*r.rhs_ablated) : std::string()) << (r.ratio_ablated ? fmt(*r.ratio_ablated) : std::string())
                << r.n << r.L << r.levels;
    }
    return t;
}

inline CsvTable multiplier_csv(const std::vector<MultiplierReport>& rows) {
    CsvTable t({"name", "M", "M_refined", "refinement_delta", "range_extension_delta", "argmax_k", "argmax_t"});
    for (const auto& r : rows) {
        t.row() << r.name << r.M << r.M_refined << r.refinement_delta << r.range_extension_delta << r.argmax_k
                << r.argmax_t;
    }
    return t;
}

inline Json to_json(const MultiplierReport& r) {
    return Json{{"name", r.name},
                {"params", r.params},
                {"t_list", r.t_list},
                {"grid", {{"k_min", r.grid.k_min}, {"k_max", r.grid.k_max}, {"per_decade", r.grid.per_decade}}},
                {"M", r.M},
                {"M_refined", r.M_refined},
                {"refinement_delta", r.refinement_delta},
                {"range_extension_delta", r.range_extension_delta},
                {"argmax_k", r.argmax_k},
                {"argmax_t", r.argmax_t}};
}

inline CsvTable asymptotics_csv(const std::vector<AsymptoticsRow>& rows) {
    CsvTable t({"a1", "a2", "f", "regime", "small_slope", "small_expected", "small_coefficient", "large_slope",
                "large_expected", "small_ok", "large_ok"});
    for (const auto& r : rows) {
        t.row() << r.params.a1 << r.params.a2 << r.params.f << to_string(r.regime) << r.small_slope << r.small_expected
                << r.small_coefficient << r.large_slope << r.large_expected << r.small_ok << r.large_ok;
    }
    return t;
}

inline CsvTable wake_csv(const WakeProfile& w) {
    CsvTable t({"ray", "angle", "slope", "decay_length", "r_min", "r_max", "points"});
    for (const auto& r : w.rays) t.row() << r.name << r.angle << r.slope << r.decay_length << r.r_min << r.r_max << r.points;
    t.row() << "anisotropy_ratio" << "" << "" << w.anisotropy_ratio << "" << "" << "";
    t.row() << "transverse_ratio" << "" << "" << w.transverse_ratio << "" << "" << "";
    return t;
}

inline CsvTable trace_csv(const TraceReport& rep) {
    CsvTable t({"datum", "lhs", "rhs", "ratio", "solver_mismatch"});
    for (const auto& r : rep.rows) t.row() << r.datum << r.lhs << r.rhs << r.ratio << r.solver_mismatch;
    return t;
}

}  // namespace oseen
