#pragma once

// Drivers for the estimate sweeps, eigenvalue asymptotics, wake fits and the
// whole-plane trace and gradient checks. All randomness comes from a seeded
// mt19937_64 so reports are reproducible across platforms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oseen/analysis.hpp"
#include "oseen/error.hpp"
#include "oseen/grids.hpp"
#include "oseen/halfplane.hpp"
#include "oseen/norms.hpp"
#include "oseen/parallel.hpp"
#include "oseen/symbols.hpp"
#include "oseen/wholeplane.hpp"

namespace oseen {

// ---------------------------------------------------------------------------
// Signal corpus

/// Uniform double in [0, 1) from the top 53 bits (identical on every platform).
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

struct CorpusSignal {
    std::string name;
    RVec samples;
};

/// 20 smooth decaying signals: 5 Gaussians, 5 Gaussian derivatives,
/// 6 modulated Gaussians (frequencies 1, 2, 4) and 4 erf-smoothed boxes.
inline std::vector<CorpusSignal> make_corpus(const SpatialGrid1D& grid, std::uint64_t seed = 2024) {
    std::mt19937_64 rng(seed);
    std::vector<CorpusSignal> out;
    const auto add = [&](std::string name, auto&& fn) {
        RVec s(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) s[j] = fn(grid.x(j));
        out.push_back({std::move(name), std::move(s)});
    };
    for (int i = 0; i < 5; ++i) {
        const double c = uniform(rng, -2.0, 2.0), w = uniform(rng, 0.6, 1.6), a = uniform(rng, 0.5, 2.0);
        add("gauss" + std::to_string(i), [=](double x) { return a * std::exp(-(x - c) * (x - c) / (w * w)); });
    }
    for (int i = 0; i < 5; ++i) {
        const double c = uniform(rng, -2.0, 2.0), w = uniform(rng, 0.6, 1.6), a = uniform(rng, 0.5, 2.0);
        add("dgauss" + std::to_string(i),
            [=](double x) { return -a * 2.0 * (x - c) / (w * w) * std::exp(-(x - c) * (x - c) / (w * w)); });
    }
    const double omegas[3] = {1.0, 2.0, 4.0};
    for (int i = 0; i < 6; ++i) {
        const double om = omegas[i / 2];
        const double c = uniform(rng, -2.0, 2.0), w = uniform(rng, 0.8, 1.6), ph = uniform(rng, 0.0, 2.0 * kPi);
        add("mod" + std::to_string(static_cast<int>(om)) + "_" + std::to_string(i % 2),
            [=](double x) { return std::exp(-(x - c) * (x - c) / (w * w)) * std::cos(om * x + ph); });
    }
    for (int i = 0; i < 4; ++i) {
        const double c = uniform(rng, -1.5, 1.5), half = uniform(rng, 1.0, 2.5), e = uniform(rng, 0.4, 0.8);
        add("box" + std::to_string(i),
            [=](double x) { return 0.5 * (std::erf((x - c + half) / e) - std::erf((x - c - half) / e)); });
    }
    return out;
}

/// Subtract m * g, g a unit-mass Gaussian at the signal's centroid, so the result has zero mean.
inline RVec remove_mean(const RVec& s, const SpatialGrid1D& grid) {
    double mass = 0.0, first = 0.0, absmass = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        mass += s[j];
        first += std::abs(s[j]) * grid.x(j);
        absmass += std::abs(s[j]);
    }
    if (absmass == 0.0) return s;
    const double c = first / absmass;
    RVec g(s.size());
    double gmass = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        g[j] = std::exp(-(grid.x(j) - c) * (grid.x(j) - c));
        gmass += g[j];
    }
    RVec out(s);
    for (std::size_t j = 0; j < s.size(); ++j) out[j] -= mass / gmass * g[j];
    return out;
}

struct DataPair {
    std::string name;
    RVec b;
    RVec d;
};

/// Pair i: b = signal i, d = signal (i + 7) mod 20 with its mean removed.
inline std::vector<DataPair> corpus_pairs(const SpatialGrid1D& grid, std::uint64_t seed = 2024) {
    const auto c = make_corpus(grid, seed);
    std::vector<DataPair> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& dsrc = c[(i + 7) % c.size()];
        out.push_back({c[i].name + "/" + dsrc.name, c[i].samples, remove_mean(dsrc.samples, grid)});
    }
    return out;
}

/// Named signals for the command line: zero, gauss, dgauss, box, or any corpus member name.
inline RVec named_signal(const std::string& name, const SpatialGrid1D& grid, std::uint64_t seed = 2024) {
    const auto sample = [&](auto&& fn) {
        RVec s(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) s[j] = fn(grid.x(j));
        return s;
    };
    if (name == "zero") return RVec(grid.size(), 0.0);
    if (name == "gauss") return sample([](double x) { return std::exp(-x * x); });
    if (name == "dgauss") return sample([](double x) { return -2.0 * x * std::exp(-x * x); });
    if (name == "box") return sample([](double x) { return 0.5 * (std::erf((x + 1.0) / 0.5) - std::erf((x - 1.0) / 0.5)); });
    for (auto& s : make_corpus(grid, seed)) {
        if (s.name == name) return s.samples;
    }
    throw ArgumentError("unknown signal name '" + name + "'");
}

// ---------------------------------------------------------------------------
// Estimate sweeps

struct EstimateReport {
    Regime regime = Regime::Transitional;
    std::string datum;
    double exponent = 0.0;
    double lhs_norm = 0.0;
    double rhs_norm = 0.0;
    double ratio = 0.0;
    std::optional<double> rhs_ablated;  ///< rhs with a regime ingredient removed (diagnostic)
    std::optional<double> ratio_ablated;
    std::size_t n = 0;
    double L = 0.0;
    std::size_t levels = 0;
};

struct SweepGrid {
    SpatialGrid1D grid{20.0, 512};
    std::size_t level_count = 64;
    double t_min = 1e-3;
    bool refine_levels = false;  ///< insert geometric midpoints into the default levels

    SweepGrid refined() const { return {grid.refined(), level_count, t_min, true}; }
};

namespace detail {

inline HeightLevels sweep_levels(const OseenParams& P, const BoundarySignal& b, const BoundarySignal& d,
                                 const SweepGrid& sg) {
    const HeightLevels base = default_levels(P, b, d, sg.level_count, sg.t_min);
    return sg.refine_levels ? base.refined() : base;
}

inline double ratio_of(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; }

/// Pointwise Euclidean norm of several level-major fields.
inline RVec pointwise_magnitude(const std::vector<RVec>& parts) {
    RVec out(parts.front().size(), 0.0);
    for (const auto& f : parts) {
        for (std::size_t q = 0; q < out.size(); ++q) out[q] += f[q] * f[q];
    }
    for (auto& v : out) v = std::sqrt(v);
    return out;
}

/// Family {W^{c - e/r}_r : r in exps} keeping only positive orders.
inline void add_trace_members(SpaceFamily& fam, double c, double e, const std::vector<double>& exps, bool homogeneous) {
    for (double r : exps) {
        const double s = c - e / r;
        if (s > 0.0) fam.members.push_back(NormSpec{s, r, homogeneous, Domain::Line});
    }
}

}  // namespace detail

/// ||grad p||_{L^r(R^2_+)} against the regime's boundary norms of (b, d):
///   b in W^{1-1/r}_r (homogeneous);  d in W^{2-1/r}_r for a2 > 0, W^{2-1/r}_r cap W^{1-1/r}_r for a2 <= 0.
/// The ablated rhs drops the W^{1-1/r}_r part of d for a2 <= 0.
inline std::vector<EstimateReport> pressure_estimate_sweep(const OseenParams& P, const std::vector<DataPair>& data,
                                                           const std::vector<double>& r_list, const SweepGrid& sg = {}) {
    P.validate();
    for (double r : r_list) {
        if (!(r > 1.5)) throw ArgumentError("pressure_estimate_sweep: exponents must exceed 3/2");
    }
    const Regime regime = regime_of(P);
    std::vector<std::vector<EstimateReport>> rows(data.size());
    parallel_for(data.size(), [&](std::size_t i) {
        const BoundarySignal b(sg.grid, data[i].b, SignalKind::SlipB);
        const BoundarySignal d(sg.grid, data[i].d, SignalKind::NormalD);
        const HeightLevels levels = detail::sweep_levels(P, b, d, sg);
        const SolutionFields sol = solve_slip(P, b, d, sg.grid, levels);
        const auto& modal = *sol.modal;
        const RVec p1 = synthesize(sg.grid, levels, modal,
                                   [](double k, const ModalProfile& m, double t) { return cplx(0.0, k) * modal_p(m, t); });
        const RVec p2 = synthesize(sg.grid, levels, modal,
                                   [](double, const ModalProfile& m, double t) { return modal_p(m, t, 1); });
        const RVec gp = detail::pointwise_magnitude({p1, p2});
        for (double r : r_list) {
            EstimateReport rep;
            rep.regime = regime;
            rep.datum = data[i].name;
            rep.exponent = r;
            rep.n = sg.grid.size();
            rep.L = sg.grid.half_width();
            rep.levels = levels.size();
            rep.lhs_norm = lp_norm(gp, sg.grid, levels, r);
            const double nb = slobodeckii_seminorm(data[i].b, sg.grid, 1.0 - 1.0 / r, r);
            const double nd2 = slobodeckii_seminorm(data[i].d, sg.grid, 2.0 - 1.0 / r, r);
            double nd = nd2;
            if (P.a2 <= 0.0) {
                nd = std::max(nd2, slobodeckii_seminorm(data[i].d, sg.grid, 1.0 - 1.0 / r, r));
                rep.rhs_ablated = nb + nd2;
            }
            rep.rhs_norm = nb + nd;
            rep.ratio = detail::ratio_of(rep.lhs_norm, rep.rhs_norm);
            if (rep.rhs_ablated) rep.ratio_ablated = detail::ratio_of(rep.lhs_norm, *rep.rhs_ablated);
            rows[i].push_back(rep);
        }
    });
    std::vector<EstimateReport> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

/// Boundary-data families of the velocity estimate for exponent s (members over r in {3s/(3+s), s}):
///   a2 < 0:  b in W^{1-1/r}_r,                 d in W^{2-1/r}_r                  (inhomogeneous)
///   a2 = 0:  b in W^{1-1/r}_r,                 d in W^{2-1/r}_r cap W^{1-1/r}_r  (homogeneous)
///   a2 > 0:  b in W^{1-1/r}_r cap W^{1-2/r}_r, d in W^{2-1/r}_r cap W^{2-2/r}_r  (homogeneous)
/// Members with non-positive order are omitted.
struct VelocityFamilies {
    SpaceFamily b;
    SpaceFamily d;
    SpaceFamily b_ablated;  ///< a2 > 0: without 1-2/r;  a2 < 0: homogeneous counterpart
    SpaceFamily d_ablated;  ///< a2 > 0: without 2-2/r;  a2 < 0: homogeneous counterpart
};

inline VelocityFamilies velocity_families(const OseenParams& P, double s) {
    const auto A = velocity_exponents(s);
    VelocityFamilies f;
    if (P.a2 < 0.0) {
        detail::add_trace_members(f.b, 1.0, 1.0, A, false);
        detail::add_trace_members(f.d, 2.0, 1.0, A, false);
        detail::add_trace_members(f.b_ablated, 1.0, 1.0, A, true);
        detail::add_trace_members(f.d_ablated, 2.0, 1.0, A, true);
    } else if (P.a2 == 0.0) {
        detail::add_trace_members(f.b, 1.0, 1.0, A, true);
        detail::add_trace_members(f.d, 2.0, 1.0, A, true);
        detail::add_trace_members(f.d, 1.0, 1.0, A, true);
    } else {
        detail::add_trace_members(f.b, 1.0, 1.0, A, true);
        detail::add_trace_members(f.b, 1.0, 2.0, A, true);
        detail::add_trace_members(f.d, 2.0, 1.0, A, true);
        detail::add_trace_members(f.d, 2.0, 2.0, A, true);
        detail::add_trace_members(f.b_ablated, 1.0, 1.0, A, true);
        detail::add_trace_members(f.d_ablated, 2.0, 1.0, A, true);
    }
    return f;
}

/// ||grad^2 u||_{L^s(R^2_+)} (pointwise Frobenius norm of the Hessians of u1, u2) against the
/// regime's boundary families.
inline std::vector<EstimateReport> velocity_estimate_sweep(const OseenParams& P, const std::vector<DataPair>& data,
                                                           const std::vector<double>& s_list, const SweepGrid& sg = {}) {
    P.validate();
    for (double s : s_list) {
        if (!(s > 3.0)) throw ArgumentError("velocity_estimate_sweep: exponents must exceed 3");
    }
    const Regime regime = regime_of(P);
    std::vector<std::vector<EstimateReport>> rows(data.size());
    parallel_for(data.size(), [&](std::size_t i) {
        const BoundarySignal b(sg.grid, data[i].b, SignalKind::SlipB);
        const BoundarySignal d(sg.grid, data[i].d, SignalKind::NormalD);
        const HeightLevels levels = detail::sweep_levels(P, b, d, sg);
        const SolutionFields sol = solve_slip(P, b, d, sg.grid, levels);
        const auto& modal = *sol.modal;
        std::vector<RVec> parts;
        for (int comp = 0; comp < 2; ++comp) {
            const auto v = [comp](const ModalProfile& m, double t, int o) {
                return comp == 0 ? modal_v1(m, t, o) : modal_v2(m, t, o);
            };
            parts.push_back(synthesize(sg.grid, levels, modal,
                                       [&](double k, const ModalProfile& m, double t) { return -k * k * v(m, t, 0); }));
            const RVec mixed = synthesize(sg.grid, levels, modal, [&](double k, const ModalProfile& m, double t) {
                return cplx(0.0, k) * v(m, t, 1);
            });
            parts.push_back(mixed);
            parts.push_back(mixed);
            parts.push_back(synthesize(sg.grid, levels, modal,
                                       [&](double, const ModalProfile& m, double t) { return v(m, t, 2); }));
        }
        const RVec hess = detail::pointwise_magnitude(parts);
        for (double s : s_list) {
            const VelocityFamilies fam = velocity_families(P, s);
            EstimateReport rep;
            rep.regime = regime;
            rep.datum = data[i].name;
            rep.exponent = s;
            rep.n = sg.grid.size();
            rep.L = sg.grid.half_width();
            rep.levels = levels.size();
            rep.lhs_norm = lp_norm(hess, sg.grid, levels, s);
            rep.rhs_norm = family_norm(data[i].b, sg.grid, fam.b) + family_norm(data[i].d, sg.grid, fam.d);
            rep.ratio = detail::ratio_of(rep.lhs_norm, rep.rhs_norm);
            if (!fam.b_ablated.members.empty()) {
                rep.rhs_ablated = family_norm(data[i].b, sg.grid, fam.b_ablated) +
                                  family_norm(data[i].d, sg.grid, fam.d_ablated);
                rep.ratio_ablated = detail::ratio_of(rep.lhs_norm, *rep.rhs_ablated);
            }
            rows[i].push_back(rep);
        }
    });
    std::vector<EstimateReport> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

inline double max_ratio(const std::vector<EstimateReport>& rows, std::optional<double> exponent = std::nullopt) {
    double m = 0.0;
    for (const auto& r : rows) {
        if (!exponent || r.exponent == *exponent) m = std::max(m, r.ratio);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Eigenvalue asymptotics

struct AsymptoticsRow {
    OseenParams params;
    Regime regime = Regime::Transitional;
    double small_slope = 0.0;
    double small_expected = 0.0;
    double small_coefficient = 0.0;  ///< fitted -Re lambda_- / k^slope at the small window
    double large_slope = 0.0;
    double large_expected = 1.0;
    bool small_ok = false;
    bool large_ok = false;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LineFit fit_line(const RVec& x, const RVec& y) {
    if (x.size() < 2 || x.size() != y.size()) throw NumericalError("fit_line: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 0.0)) throw NumericalError("fit_line: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / den;
    return {slope, (sy - slope * sx) / n};
}

/// Log-log slope of -Re lambda_-(k) over [k_lo, k_hi] (positive k, `count` log-spaced points).
inline LineFit lambda_minus_slope(const OseenParams& P, double k_lo, double k_hi, std::size_t count = 41) {
    RVec x, y;
    for (std::size_t j = 0; j < count; ++j) {
        const double k = k_lo * std::pow(k_hi / k_lo, static_cast<double>(j) / static_cast<double>(count - 1));
        const double v = -lambda_minus(P, k).real();
        if (!(v > 0.0)) throw NumericalError("lambda_minus_slope: -Re lambda_- is not positive");
        x.push_back(std::log(k));
        y.push_back(std::log(v));
    }
    return fit_line(x, y);
}

/// Small-k exponent of -Re lambda_-: 2 (a2 > 0), 1/2 (a2 = 0, a1 != 0), 0 (a2 < 0); large-k exponent 1.
inline std::vector<AsymptoticsRow> asymptotics_report(const std::vector<OseenParams>& params_list,
                                                      double tolerance = 0.03) {
    std::vector<AsymptoticsRow> out;
    for (const auto& P : params_list) {
        P.validate();
        AsymptoticsRow row;
        row.params = P;
        row.regime = regime_of(P);
        row.small_expected = P.a2 > 0.0 ? 2.0 : (P.a2 == 0.0 ? 0.5 : 0.0);
        if (P.a2 == 0.0 && P.a1 == 0.0) throw ArgumentError("asymptotics_report: a1 = a2 = 0");
        const LineFit small = lambda_minus_slope(P, 1e-4, 1e-2);
        const LineFit large = lambda_minus_slope(P, 1e2, 1e4);
        row.small_slope = small.slope;
        row.small_coefficient = std::exp(small.intercept);
        row.large_slope = large.slope;
        const auto within = [&](double got, double want) {
            return want == 0.0 ? std::abs(got) < tolerance : std::abs(got - want) <= tolerance * want;
        };
        row.small_ok = within(row.small_slope, row.small_expected);
        row.large_ok = within(row.large_slope, row.large_expected);
        out.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Wake profiles

struct RayFit {
    std::string name;
    double angle = 0.0;  ///< radians from +x1
    double slope = 0.0;  ///< d ln|u| / dr
    double decay_length = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    std::size_t points = 0;
};

struct WakeProfile {
    std::vector<RayFit> rays;
    double anisotropy_ratio = 0.0;  ///< decay length downstream / upstream
    double transverse_ratio = 0.0;  ///< decay length of the two transverse rays
};

struct WakeWindow {
    double r_min = 3.0;
    double r_max = 15.0;
    double floor = 1e-250;  ///< |u| below this is not fitted
};

namespace detail {

inline RayFit fit_ray(std::string name, double angle, const RVec& r, const RVec& mag, const WakeWindow& w) {
    RVec x, y;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < w.r_min || r[i] > w.r_max) continue;
        if (!(mag[i] > w.floor) || !std::isfinite(mag[i])) continue;
        x.push_back(r[i]);
        y.push_back(std::log(mag[i]));
    }
    if (x.size() < 4) throw NumericalError("insufficient decay window along ray '" + name + "'");
    const LineFit f = fit_line(x, y);
    RayFit out;
    out.name = std::move(name);
    out.angle = angle;
    out.slope = f.slope;
    out.decay_length = f.slope < 0.0 ? -1.0 / f.slope : std::numeric_limits<double>::infinity();
    out.r_min = x.front();
    out.r_max = x.back();
    out.points = x.size();
    if (!std::isfinite(out.decay_length)) throw NumericalError("insufficient decay window: no decay along '" + out.name + "'");
    return out;
}

inline double bilinear(const PlaneField& F, double x1, double x2) {
    const double h1 = F.grid1.spacing(), h2 = F.grid2.spacing();
    const double s1 = (x1 + F.grid1.half_width()) / h1, s2 = (x2 + F.grid2.half_width()) / h2;
    const auto i1 = static_cast<std::ptrdiff_t>(std::floor(s1)), i2 = static_cast<std::ptrdiff_t>(std::floor(s2));
    if (i1 < 0 || i2 < 0 || i1 + 1 >= static_cast<std::ptrdiff_t>(F.n1()) ||
        i2 + 1 >= static_cast<std::ptrdiff_t>(F.n2())) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double f1 = s1 - static_cast<double>(i1), f2 = s2 - static_cast<double>(i2);
    const auto a = static_cast<std::size_t>(i1), b = static_cast<std::size_t>(i2);
    return (1 - f1) * (1 - f2) * F.at(a, b) + f1 * (1 - f2) * F.at(a + 1, b) + (1 - f1) * f2 * F.at(a, b + 1) +
           f1 * f2 * F.at(a + 1, b + 1);
}

/// Trigonometric interpolation of a periodic row at arbitrary x.
inline double trig_eval(const CVec& coeffs, const SpatialGrid1D& grid, double x) {
    const FrequencyGrid1D freq(grid);
    cplx s{};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i == freq.nyquist_index()) continue;
        s += coeffs[i] * std::exp(cplx(0.0, freq.k(i) * x));
    }
    return (s * kInvSqrt2Pi * freq.spacing()).real();
}

}  // namespace detail

/// Whole-plane fields: fits along +-a^ (downstream/upstream) and the two normals.
inline WakeProfile wake_profile(const OseenParams& P, const std::vector<const PlaneField*>& components,
                                const WakeWindow& w = {}) {
    P.validate();
    if (components.empty()) throw ArgumentError("wake_profile: no field components");
    const PlaneField& F = *components.front();
    const double amag = std::hypot(P.a1, P.a2);
    const double ax = P.a1 / amag, ay = P.a2 / amag;
    const double step = std::min(F.grid1.spacing(), F.grid2.spacing());
    const struct {
        const char* name;
        double dx, dy;
    } dirs[4] = {{"downstream", ax, ay}, {"upstream", -ax, -ay}, {"transverse+", -ay, ax}, {"transverse-", ay, -ax}};
    WakeProfile prof;
    for (const auto& d : dirs) {
        RVec r, mag;
        for (double s = w.r_min; s <= w.r_max + 1e-12; s += step) {
            double m2 = 0.0;
            for (const PlaneField* c : components) {
                const double v = detail::bilinear(*c, s * d.dx, s * d.dy);
                m2 += v * v;
            }
            r.push_back(s);
            mag.push_back(std::sqrt(m2));
        }
        prof.rays.push_back(detail::fit_ray(d.name, std::atan2(d.dy, d.dx), r, mag, w));
    }
    prof.anisotropy_ratio = prof.rays[0].decay_length / prof.rays[1].decay_length;
    prof.transverse_ratio = prof.rays[2].decay_length / prof.rays[3].decay_length;
    return prof;
}

inline WakeProfile wake_profile(const OseenParams& P, const PlaneField& u, const WakeWindow& w = {}) {
    return wake_profile(P, std::vector<const PlaneField*>{&u}, w);
}

/// Half-plane fields: rays from the origin at 30 (x1 > 0 side), 90 and 150 degrees.
/// anisotropy_ratio compares the 30 and 150 degree rays; transverse_ratio is 1 by construction
/// (the vertical ray is reported on its own).
inline WakeProfile wake_profile(const OseenParams& P, const SolutionFields& fields, const WakeWindow& w = {}) {
    P.validate();
    std::vector<CVec> c1(fields.nt()), c2(fields.nt());
    for (std::size_t l = 0; l < fields.nt(); ++l) {
        c1[l] = forward_transform(fields.row(fields.u1, l), fields.grid);
        c2[l] = forward_transform(fields.row(fields.u2, l), fields.grid);
    }
    const double angles[3] = {kPi / 6.0, kPi / 2.0, 5.0 * kPi / 6.0};
    const char* names[3] = {"right", "vertical", "left"};
    WakeProfile prof;
    for (int a = 0; a < 3; ++a) {
        RVec r, mag;
        for (std::size_t l = 0; l < fields.nt(); ++l) {
            const double t = fields.levels[l];
            if (t <= 0.0) continue;
            const double rr = t / std::sin(angles[a]);
            const double x1 = rr * std::cos(angles[a]);
            if (std::abs(x1) >= fields.grid.half_width()) continue;
            const double v1 = detail::trig_eval(c1[l], fields.grid, x1);
            const double v2 = detail::trig_eval(c2[l], fields.grid, x1);
            r.push_back(rr);
            mag.push_back(std::hypot(v1, v2));
        }
        prof.rays.push_back(detail::fit_ray(names[a], angles[a], r, mag, w));
    }
    prof.anisotropy_ratio = prof.rays[0].decay_length / prof.rays[2].decay_length;
    prof.transverse_ratio = 1.0;
    return prof;
}

// ---------------------------------------------------------------------------
// Trace theorem

struct TraceRow {
    std::string datum;
    double lhs = 0.0;  ///< ||u(., 0)||_{W^{2-1/p}_p} (inhomogeneous)
    double rhs = 0.0;  ///< ||f||_{L^p(R^2_+)}
    double ratio = 0.0;
    double solver_mismatch = 0.0;  ///< sup |duhamel_trace - solve_scalar(., 0)|
};

struct TraceReport {
    std::vector<TraceRow> rows;
    std::vector<double> s_values;
    std::vector<double> multiplier_constant;       ///< C_M(s) for Psi = Delta^{-1} e^{lambda_- s}
    std::vector<double> multiplier_constant_plus;  ///< same for the kernel Delta^{-1} e^{-lambda_+ s}
    bool multiplier_decay_ok = false;              ///< C_M(s) <= C_M(s0) e^{a2 (s - s0)/4}
    double max_ratio = 0.0;
    double max_mismatch = 0.0;
};

struct TraceGrid {
    SpatialGrid1D grid1{20.0, 256};
    SpatialGrid1D grid2{4.0, 256};

    TraceGrid refined() const { return {grid1.refined(), grid2.refined()}; }
};

/// Forcings f(x1, x2) = g(x1) e^{-30 (x2 - 1)^2}, g a mean-free corpus signal (`count` members spread over the corpus).
inline std::vector<std::pair<std::string, PlaneField>> trace_forcings(const TraceGrid& tg, std::size_t count = 8,
                                                                      std::uint64_t seed = 2024) {
    const auto corpus = make_corpus(tg.grid1, seed);
    std::vector<std::pair<std::string, PlaneField>> out;
    const std::size_t stride = std::max<std::size_t>(1, corpus.size() / count);
    for (std::size_t i = 0; i < corpus.size() && out.size() < count; i += stride) {
        const RVec g = remove_mean(corpus[i].samples, tg.grid1);
        PlaneField F(tg.grid1, tg.grid2);
        for (std::size_t j2 = 0; j2 < tg.grid2.size(); ++j2) {
            const double x2 = tg.grid2.x(j2);
            const double v = x2 > 0.0 ? std::exp(-30.0 * (x2 - 1.0) * (x2 - 1.0)) : 0.0;
            for (std::size_t j1 = 0; j1 < tg.grid1.size(); ++j1) F.at(j1, j2) = g[j1] * v;
        }
        out.emplace_back(corpus[i].name, std::move(F));
    }
    return out;
}

/// sup |duhamel_trace - solve_scalar(., x2 = 0)| for one forcing (grid2 must contain x2 = 0).
/// solve_scalar is periodic in x2, so the trace uses the x2-periodized Green's function unless
/// `free_space` is set (the free-space trace differs by the slowly decaying small-|xi| images).
inline double trace_solver_mismatch(const OseenParams& P, const PlaneField& F, bool free_space = false) {
    const RVec tr = free_space ? duhamel_trace(P, F) : duhamel_trace(P, F, 2.0 * F.grid2.half_width());
    const PlaneField u = solve_scalar(P, F);
    const std::size_t j0 = F.grid2.size() / 2;
    if (F.grid2.x(j0) != 0.0) throw ArgumentError("trace_solver_mismatch: x2 = 0 is not a grid row");
    double e = 0.0;
    for (std::size_t j1 = 0; j1 < F.n1(); ++j1) e = std::max(e, std::abs(tr[j1] - u.at(j1, j0)));
    return e;
}

inline TraceReport trace_theorem_check(const OseenParams& P, const std::vector<std::pair<std::string, PlaneField>>& forcings,
                                       double p = 2.0, const std::vector<double>& s_values = {1.0, 2.0, 4.0, 8.0}) {
    P.validate();
    if (!(P.a2 < 0.0)) throw RegimeError("trace_theorem_check: requires a2 < 0");
    TraceReport rep;
    rep.rows.resize(forcings.size());
    parallel_for(forcings.size(), [&](std::size_t i) {
        const auto& [name, F] = forcings[i];
        const RVec tr = duhamel_trace(P, F);
        TraceRow row;
        row.datum = name;
        row.lhs = norm(tr, F.grid1, NormSpec{2.0 - 1.0 / p, p, false, Domain::Line});
        row.rhs = lp_norm_upper(F, p);
        row.ratio = detail::ratio_of(row.lhs, row.rhs);
        row.solver_mismatch = trace_solver_mismatch(P, F);
        rep.rows[i] = row;
    });
    for (const auto& r : rep.rows) {
        rep.max_ratio = std::max(rep.max_ratio, r.ratio);
        rep.max_mismatch = std::max(rep.max_mismatch, r.solver_mismatch);
    }
    rep.s_values = s_values;
    for (double s : s_values) {
        rep.multiplier_constant.push_back(trace_multiplier_constant(P, s, TraceKernel::LambdaMinus));
        rep.multiplier_constant_plus.push_back(trace_multiplier_constant(P, s, TraceKernel::LambdaPlus));
    }
    rep.multiplier_decay_ok = true;
    for (std::size_t j = 0; j < s_values.size(); ++j) {
        const double bound = rep.multiplier_constant[0] * std::exp(P.a2 * (s_values[j] - s_values[0]) / 4.0);
        if (rep.multiplier_constant[j] > bound * (1.0 + 1e-12)) rep.multiplier_decay_ok = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Whole-plane estimate spot checks

/// Random mixture of `terms` Gaussians on the plane.
inline PlaneField gaussian_mixture(const SpatialGrid1D& g1, const SpatialGrid1D& g2, std::mt19937_64& rng,
                                   std::size_t terms = 3) {
    struct Bump {
        double c1, c2, w, a;
    };
    std::vector<Bump> bumps;
    for (std::size_t i = 0; i < terms; ++i) {
        bumps.push_back({uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), uniform(rng, 0.6, 1.5), uniform(rng, -1.0, 1.0)});
    }
    return PlaneField::sample(g1, g2, [&](double x1, double x2) {
        double v = 0.0;
        for (const auto& b : bumps) v += b.a * std::exp(-((x1 - b.c1) * (x1 - b.c1) + (x2 - b.c2) * (x2 - b.c2)) / (b.w * b.w));
        return v;
    });
}

struct SpotCheck {
    double max_constant = 0.0;
    std::size_t samples = 0;
};

/// max over random F of ||grad u||_{L^{3q/(3-q)}} / ||F||_{L^q} for the scalar problem.
inline SpotCheck scalar_gradient_estimate(const OseenParams& P, const SpatialGrid1D& g, double q = 2.0,
                                          std::size_t count = 20, std::uint64_t seed = 7) {
    if (!(q > 1.0 && q < 3.0)) throw ArgumentError("scalar_gradient_estimate: need 1 < q < 3");
    const double r = 3.0 * q / (3.0 - q);
    std::mt19937_64 rng(seed);
    SpotCheck out;
    for (std::size_t i = 0; i < count; ++i) {
        const PlaneField F = gaussian_mixture(g, g, rng);
        const PlaneField u = solve_scalar(P, F);
        const PlaneField u1 = plane_derivative(u, 1, 0), u2 = plane_derivative(u, 0, 1);
        PlaneField mag(g, g);
        for (std::size_t k = 0; k < mag.values.size(); ++k) mag.values[k] = std::hypot(u1.values[k], u2.values[k]);
        out.max_constant = std::max(out.max_constant, lp_norm(mag, r) / lp_norm(F, q));
        ++out.samples;
    }
    return out;
}

/// max over random (F, G = div w) of (lambda ||u,1|| + ||grad^2 u|| + ||grad p||) / (||F|| + ||G||_{W^1_2}), all L^2.
inline SpotCheck oseen_full_estimate(double lambda, const SpatialGrid1D& g, std::size_t count = 20,
                                     std::uint64_t seed = 11) {
    std::mt19937_64 rng(seed);
    SpotCheck out;
    const auto mag = [&](std::initializer_list<const PlaneField*> parts) {
        PlaneField m(g, g);
        for (const PlaneField* f : parts) {
            for (std::size_t k = 0; k < m.values.size(); ++k) m.values[k] += f->values[k] * f->values[k];
        }
        for (auto& v : m.values) v = std::sqrt(v);
        return m;
    };
    for (std::size_t i = 0; i < count; ++i) {
        const PlaneField F1 = gaussian_mixture(g, g, rng), F2 = gaussian_mixture(g, g, rng);
        const PlaneField w1 = gaussian_mixture(g, g, rng), w2 = gaussian_mixture(g, g, rng);
        const PlaneField a = plane_derivative(w1, 1, 0), b = plane_derivative(w2, 0, 1);
        PlaneField G(g, g);
        for (std::size_t k = 0; k < G.values.size(); ++k) G.values[k] = a.values[k] + b.values[k];
        const VelocityPressure s = solve_oseen_full(lambda, F1, F2, G);
        const PlaneField u11 = plane_derivative(s.u1, 1, 0);
        const PlaneField u21 = plane_derivative(s.u2, 1, 0);
        const PlaneField h[6] = {plane_derivative(s.u1, 2, 0), plane_derivative(s.u1, 1, 1), plane_derivative(s.u1, 0, 2),
                                 plane_derivative(s.u2, 2, 0), plane_derivative(s.u2, 1, 1), plane_derivative(s.u2, 0, 2)};
        const PlaneField p1 = plane_derivative(s.p, 1, 0), p2 = plane_derivative(s.p, 0, 1);
        const PlaneField G1 = plane_derivative(G, 1, 0), G2 = plane_derivative(G, 0, 1);
        const double lhs = lambda * lp_norm(mag({&u11, &u21}), 2.0) +
                           lp_norm(mag({&h[0], &h[1], &h[1], &h[2], &h[3], &h[4], &h[4], &h[5]}), 2.0) +
                           lp_norm(mag({&p1, &p2}), 2.0);
        const double gn = std::sqrt(std::pow(lp_norm(G, 2.0), 2) + std::pow(lp_norm(mag({&G1, &G2}), 2.0), 2));
        const double rhs = lp_norm(mag({&F1, &F2}), 2.0) + gn;
        out.max_constant = std::max(out.max_constant, lhs / rhs);
        ++out.samples;
    }
    return out;
}

}  // namespace oseen
