#pragma once

// Fourier multiplier bounds and the closed-form Poisson/heat kernels.
//
// One-dimensional bound (Marcinkiewicz):  M = sup_k max(|Phi(k)|, |k Phi'(k)|)
// Two-dimensional bound (Lizorkin):       M = sup_xi max_kappa |xi1|^{kappa1+beta} |xi2|^{kappa2+beta} |d^kappa Phi|
// Both are sampled on log-spaced grids; k Phi' is a central difference in ln k
// with one Richardson step.

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oseen/error.hpp"
#include "oseen/grids.hpp"
#include "oseen/norms.hpp"
#include "oseen/parallel.hpp"
#include "oseen/symbols.hpp"

namespace oseen {

// ---------------------------------------------------------------------------
// Cut-offs

/// C-infinity step: 0 for x <= 0, 1 for x >= 1.
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

/// 1 for |k| <= radius, 0 for |k| >= radius + width.
inline double smooth_cutoff(double k, double radius, double width = 1.0) {
    return 1.0 - smooth_step((std::abs(k) - radius) / width);
}

struct CutoffConfig {
    double zeta_radius = 1.0;  ///< small/large frequency split of the pressure term
    double pi_radius = 1.0;    ///< lower bound for the parabolic split radius L
    double width = 1.0;
};

// ---------------------------------------------------------------------------
// Multipliers

struct LogGrid {
    double k_min = 1e-4;
    double k_max = 1e4;
    std::size_t per_decade = 100;
    bool negative = true;  ///< also sample -k

    LogGrid refined() const { return {k_min, k_max, 2 * per_decade, negative}; }
    LogGrid extended(double factor) const { return {k_min / factor, k_max * factor, per_decade, negative}; }

    RVec points() const {
        const double decades = std::log10(k_max / k_min);
        const auto count = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade)));
        RVec ks;
        ks.reserve(2 * (count + 1));
        for (std::size_t j = 0; j <= count; ++j) {
            const double k = k_min * std::pow(10.0, decades * static_cast<double>(j) / static_cast<double>(count));
            ks.push_back(k);
            if (negative) ks.push_back(-k);
        }
        return ks;
    }
};

using Symbol1D = std::function<cplx(double k, double t)>;

struct MultiplierSpec {
    std::string name;
    Symbol1D symbol;
    RVec t_list{0.0};
    LogGrid grid;
    std::map<std::string, double> params;
};

struct MultiplierReport {
    std::string name;
    std::map<std::string, double> params;
    RVec t_list;
    LogGrid grid;
    double M = 0.0;
    double M_refined = 0.0;
    double refinement_delta = 0.0;        ///< |M(2x grid) - M| / M
    double range_extension_delta = 0.0;   ///< |M(range x100 each way) - M| / M
    double argmax_k = 0.0;
    double argmax_t = 0.0;
};

namespace detail {

/// k Phi'(k) = dPhi/d(ln k), central difference with Richardson extrapolation.
inline cplx log_derivative(const Symbol1D& phi, double k, double t, double eta) {
    const auto D = [&](double e) { return (phi(k * std::exp(e), t) - phi(k * std::exp(-e), t)) / (2.0 * e); };
    return (4.0 * D(0.5 * eta) - D(eta)) / 3.0;
}

struct SupResult {
    double value = 0.0;
    double k = 0.0;
    double t = 0.0;
};

inline SupResult marcinkiewicz_sup(const MultiplierSpec& spec, const LogGrid& grid) {
    const RVec ks = grid.points();
    const double eta = 0.5 * std::log(10.0) / static_cast<double>(grid.per_decade);
    std::vector<SupResult> best(ks.size());
    std::vector<char> bad(ks.size(), 0);
    parallel_for(ks.size(), [&](std::size_t i) {
        for (double t : spec.t_list) {
            const cplx v = spec.symbol(ks[i], t);
            const cplx d = log_derivative(spec.symbol, ks[i], t, eta);
            if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d))) {
                bad[i] = 1;
                continue;
            }
            const double m = std::max(std::abs(v), std::abs(d));
            if (m > best[i].value) best[i] = {m, ks[i], t};
        }
    });
    std::ostringstream offending;
    std::size_t nbad = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!bad[i]) continue;
        if (nbad < 8) offending << (nbad ? ", " : "") << ks[i];
        ++nbad;
    }
    if (nbad > 0) {
        throw NumericalError("multiplier '" + spec.name + "': non-finite values at k = " + offending.str() +
                             (nbad > 8 ? " ..." : ""));
    }
    SupResult out;
    for (const auto& b : best) {
        if (b.value > out.value) out = b;
    }
    return out;
}

}  // namespace detail

/// sup over the grid and the t-list of max(|Phi|, |k Phi'|).
inline double marcinkiewicz_bound(const MultiplierSpec& spec) { return detail::marcinkiewicz_sup(spec, spec.grid).value; }

inline MultiplierReport marcinkiewicz_report(const MultiplierSpec& spec) {
    const auto base = detail::marcinkiewicz_sup(spec, spec.grid);
    const auto fine = detail::marcinkiewicz_sup(spec, spec.grid.refined());
    const auto wide = detail::marcinkiewicz_sup(spec, spec.grid.extended(100.0));
    MultiplierReport r;
    r.name = spec.name;
    r.params = spec.params;
    r.t_list = spec.t_list;
    r.grid = spec.grid;
    r.M = base.value;
    r.M_refined = fine.value;
    r.refinement_delta = base.value > 0.0 ? std::abs(fine.value - base.value) / base.value : 0.0;
    r.range_extension_delta = base.value > 0.0 ? std::abs(wide.value - base.value) / base.value : 0.0;
    r.argmax_k = base.k;
    r.argmax_t = base.t;
    return r;
}

/// c* = inf over the grid of -Re lambda_-(k) / |k|.
inline double lambda_minus_linear_rate(const OseenParams& params, const LogGrid& grid) {
    double c = std::numeric_limits<double>::infinity();
    for (double k : grid.points()) c = std::min(c, -lambda_minus(params, k).real() / std::abs(k));
    return c;
}

struct ParabolicSplit {
    double L = 1.0;        ///< radius where the linear-rate bound takes over
    double L_tilde = 0.0;  ///< quadratic rate below L + width
};

/// For a2 > 0: L such that Re lambda_- + |k|/2 <= -|k|/4 for |k| >= L on the grid (at least
/// `min_radius`), and L~ = (1/2) min_{|k| <= L + width} (-Re lambda_-(k) / k^2).
inline ParabolicSplit parabolic_split(const OseenParams& params, const LogGrid& grid, double min_radius = 1.0,
                                      double width = 1.0) {
    if (!(params.a2 > 0.0)) throw RegimeError("parabolic_split: requires a2 > 0");
    RVec ks;
    for (double k : grid.points()) {
        if (k > 0.0) ks.push_back(k);
    }
    double L = ks.back();
    for (std::size_t i = ks.size(); i-- > 0;) {
        const auto ok = [&](double k) { return lambda_minus(params, k).real() + 0.5 * k <= -0.25 * k; };
        if (!ok(ks[i]) || !ok(-ks[i])) break;
        L = ks[i];
    }
    L = std::max(L, min_radius);
    double lt = std::numeric_limits<double>::infinity();
    for (double k : grid.points()) {
        if (std::abs(k) > L + width) continue;
        lt = std::min(lt, -lambda_minus(params, k).real() / (k * k));
    }
    return {L, 0.5 * lt};
}

namespace detail {

/// (a2 + 2|k| + Delta) sigma(k) (lambda3(-f + lambda3) + k^2) and (-f + lambda3 + lambda1).
inline std::pair<cplx, cplx> pressure_d_parts(const OseenParams& P, double k) {
    const EigenSet e = eigenvalues(P, k);
    const cplx num = (P.a2 + 2.0 * std::abs(k) + e.Delta) * sigma(k) * (e.lambda3 * (-P.f + e.lambda3) + k * k);
    return {num, -P.f + e.lambda3 + e.lambda1};
}

}  // namespace detail

/// Multiplier of the b-part of the pressure gradient:
///     phi1 = (a2 + 2|k| + Delta) lambda1 / (ik (-f + lambda3 + lambda1)),   lambda1/(ik) = i sigma(k).
inline cplx phi1(const OseenParams& P, double k) {
    const EigenSet e = eigenvalues(P, k);
    return (P.a2 + 2.0 * std::abs(k) + e.Delta) * cplx(0.0, sigma(k)) / (-P.f + e.lambda3 + e.lambda1);
}

/// Small-frequency multiplier of the d-part of the pressure gradient.
///   a2 > 0:  zeta * N / (-k^2 (-f + lambda3 + lambda1))   (acts on ik d^)
///   a2 <= 0: zeta * N / (-ik (-f + lambda3 + lambda1))    (acts on d^)
inline cplx phi21(const OseenParams& P, double k, const CutoffConfig& cut = {}) {
    const double z = smooth_cutoff(k, cut.zeta_radius, cut.width);
    if (z == 0.0) return 0.0;
    const auto [num, den] = detail::pressure_d_parts(P, k);
    if (P.a2 > 0.0) return z * num / (-k * k * den);
    return z * num / (-cplx(0.0, k) * den);
}

/// Large-frequency multiplier of the d-part: (1 - zeta) N / (-k^2 (-f + lambda3 + lambda1)), acts on ik d^.
inline cplx phi22(const OseenParams& P, double k, const CutoffConfig& cut = {}) {
    const double z = 1.0 - smooth_cutoff(k, cut.zeta_radius, cut.width);
    if (z == 0.0) return 0.0;
    const auto [num, den] = detail::pressure_d_parts(P, k);
    return z * num / (-k * k * den);
}

inline std::map<std::string, double> param_map(const OseenParams& P) {
    return {{"a1", P.a1}, {"a2", P.a2}, {"f", P.f}};
}

/// Every multiplier the pressure and velocity estimates rely on for the regime of P.
inline std::vector<MultiplierSpec> estimate_multipliers(const OseenParams& P, const RVec& t_list,
                                                        const CutoffConfig& cut = {}, const LogGrid& grid = {}) {
    P.validate();
    std::vector<MultiplierSpec> out;
    const auto base = param_map(P);
    auto with = [&](std::map<std::string, double> extra) {
        auto m = base;
        m.insert(extra.begin(), extra.end());
        return m;
    };
    const RVec no_t{0.0};
    out.push_back({"phi1", [P](double k, double) { return phi1(P, k); }, no_t, grid, base});
    out.push_back({"phi21", [P, cut](double k, double) { return phi21(P, k, cut); }, no_t, grid,
                   with({{"zeta_radius", cut.zeta_radius}})});
    out.push_back({"phi22", [P, cut](double k, double) { return phi22(P, k, cut); }, no_t, grid,
                   with({{"zeta_radius", cut.zeta_radius}})});
    out.push_back({"zeta", [cut](double k, double) { return cplx(smooth_cutoff(k, cut.zeta_radius, cut.width)); },
                   no_t, grid, with({{"radius", cut.zeta_radius}})});
    if (P.a2 <= 0.0) {
        const double c = 0.5 * lambda_minus_linear_rate(P, grid);
        out.push_back({"exp_lambda_minus_plus_c_abs_k",
                       [P, c](double k, double t) { return std::exp(t * (lambda_minus(P, k) + c * std::abs(k))); },
                       t_list, grid, with({{"c", c}})});
    } else {
        const ParabolicSplit split = parabolic_split(P, grid, cut.pi_radius, cut.width);
        const double L = split.L, lt = split.L_tilde, w = cut.width;
        out.push_back({"pi", [L, w](double k, double) { return cplx(smooth_cutoff(k, L, w)); }, no_t, grid,
                       with({{"L", L}})});
        out.push_back({"pi_exp_lambda_minus_plus_Lt_k2",
                       [P, L, lt, w](double k, double t) {
                           const double pi = smooth_cutoff(k, L, w);
                           if (pi == 0.0) return cplx{};
                           return pi * std::exp(t * (lambda_minus(P, k) + lt * k * k));
                       },
                       t_list, grid, with({{"L", L}, {"L_tilde", lt}})});
        out.push_back({"one_minus_pi_exp_lambda_minus_plus_half_abs_k",
                       [P, L, w](double k, double t) {
                           const double q = 1.0 - smooth_cutoff(k, L, w);
                           if (q == 0.0) return cplx{};
                           return q * std::exp(t * (lambda_minus(P, k) + 0.5 * std::abs(k)));
                       },
                       t_list, grid, with({{"L", L}})});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lizorkin

using Symbol2D = std::function<cplx(double xi1, double xi2)>;

struct LizorkinGrid {
    double k_min = 1e-4;
    double k_max = 1e4;
    std::size_t per_decade = 20;
};

/// max over kappa in {0,1}^2 and the four quadrants of |xi1|^{kappa1+beta}|xi2|^{kappa2+beta}|d^kappa Phi|.
inline double lizorkin_bound(const Symbol2D& phi, double beta, const LizorkinGrid& grid = {}) {
    if (!(beta >= 0.0 && beta < 1.0)) throw ArgumentError("lizorkin_bound: beta must lie in [0, 1)");
    LogGrid g1{grid.k_min, grid.k_max, grid.per_decade, false};
    const RVec ks = g1.points();
    const double eta = 0.5 * std::log(10.0) / static_cast<double>(grid.per_decade);
    // log-derivative along one axis with Richardson extrapolation
    const auto d1 = [&](double a, double b, double e) {
        return (phi(a * std::exp(e), b) - phi(a * std::exp(-e), b)) / (2.0 * e);
    };
    const auto d2 = [&](double a, double b, double e) {
        return (phi(a, b * std::exp(e)) - phi(a, b * std::exp(-e))) / (2.0 * e);
    };
    const auto d12 = [&](double a, double b, double e) {
        return (phi(a * std::exp(e), b * std::exp(e)) - phi(a * std::exp(e), b * std::exp(-e)) -
                phi(a * std::exp(-e), b * std::exp(e)) + phi(a * std::exp(-e), b * std::exp(-e))) /
               (4.0 * e * e);
    };
    const auto rich = [&](auto&& D, double a, double b) { return (4.0 * D(a, b, 0.5 * eta) - D(a, b, eta)) / 3.0; };
    RVec row_max(ks.size(), 0.0);
    std::vector<char> bad(ks.size(), 0);
    parallel_for(ks.size(), [&](std::size_t i) {
        for (double k2 : ks) {
            for (double s1 : {1.0, -1.0}) {
                for (double s2 : {1.0, -1.0}) {
                    const double a = s1 * ks[i], b = s2 * k2;
                    const double w = std::pow(std::abs(a), beta) * std::pow(std::abs(b), beta);
                    const double vals[4] = {std::abs(phi(a, b)), std::abs(rich(d1, a, b)), std::abs(rich(d2, a, b)),
                                            std::abs(rich(d12, a, b))};
                    for (double v : vals) {
                        if (!std::isfinite(v)) {
                            bad[i] = 1;
                            continue;
                        }
                        row_max[i] = std::max(row_max[i], w * v);
                    }
                }
            }
        }
    });
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (bad[i]) {
            throw NumericalError("lizorkin_bound: non-finite symbol values at |xi1| = " + std::to_string(ks[i]));
        }
    }
    return *std::max_element(row_max.begin(), row_max.end());
}

// ---------------------------------------------------------------------------
// Kernels
//
// Each kernel is an inverse transform K = F^{-1}[m] of a symbol m(k), with
// F^{-1}[m f^] = (2 pi)^{-1/2} K * f.

enum class KernelKind { PoissonDecay, PoissonDerivative, Heat, HeatDerivative };

inline const char* to_string(KernelKind k) {
    switch (k) {
        case KernelKind::PoissonDecay: return "poisson_decay";
        case KernelKind::PoissonDerivative: return "poisson_derivative";
        case KernelKind::Heat: return "heat";
        case KernelKind::HeatDerivative: return "heat_derivative";
    }
    return "?";
}

struct KernelSpec {
    KernelKind kind = KernelKind::PoissonDecay;
    double t = 1.0;

    void validate() const {
        if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("KernelSpec: t must be positive");
    }

    /// poisson_decay e^{-|k|t}, poisson_derivative ik e^{-|k|t}, heat e^{-tk^2}, heat_derivative ik e^{-tk^2}.
    cplx symbol(double k) const {
        switch (kind) {
            case KernelKind::PoissonDecay: return std::exp(-std::abs(k) * t);
            case KernelKind::PoissonDerivative: return cplx(0.0, k) * std::exp(-std::abs(k) * t);
            case KernelKind::Heat: return std::exp(-t * k * k);
            case KernelKind::HeatDerivative: return cplx(0.0, k) * std::exp(-t * k * k);
        }
        return 0.0;
    }

    /// Closed form on the whole line.
    double closed_form(double x) const {
        const double s2p = std::sqrt(2.0 / kPi);
        switch (kind) {
            case KernelKind::PoissonDecay: return s2p * t / (t * t + x * x);
            case KernelKind::PoissonDerivative: {
                const double q = t * t + x * x;
                return -s2p * 2.0 * x * t / (q * q);
            }
            case KernelKind::Heat: return std::exp(-x * x / (4.0 * t)) / (std::sqrt(2.0) * std::sqrt(t));
            case KernelKind::HeatDerivative:
                return -x * std::exp(-x * x / (4.0 * t)) / (2.0 * std::sqrt(2.0) * std::pow(t, 1.5));
        }
        return 0.0;
    }

    /// Sum of the closed form over the images x + 2Lm (what a period-2L transform reproduces).
    double periodized(double x, double L) const {
        const double s2p = std::sqrt(2.0 / kPi);
        const double a = kPi * t / L;
        const double th = kPi * x / L;
        switch (kind) {
            case KernelKind::PoissonDecay:
                return s2p * (kPi / (2.0 * L)) * std::sinh(a) / (std::cosh(a) - std::cos(th));
            case KernelKind::PoissonDerivative: {
                const double q = std::cosh(a) - std::cos(th);
                return -s2p * (kPi / (2.0 * L)) * (kPi / L) * std::sinh(a) * std::sin(th) / (q * q);
            }
            case KernelKind::Heat:
            case KernelKind::HeatDerivative: {
                const int images = 2 + static_cast<int>(std::ceil(std::sqrt(4.0 * t * 40.0) / (2.0 * L)));
                double s = 0.0;
                for (int m = -images; m <= images; ++m) s += closed_form(x + 2.0 * L * m);
                return s;
            }
        }
        return 0.0;
    }
};

/// Operator F^{-1}[m b^] by physical-space quadrature: (2 pi)^{-1/2} h sum_j K(x_i - x_j) b_j.
/// `periodic` uses the periodized kernel (matching the spectral route exactly up to band truncation);
/// otherwise the signal is taken as zero outside the grid.
inline RVec kernel_convolve(const KernelSpec& kernel, std::span<const double> signal, const SpatialGrid1D& grid,
                            bool periodic = false) {
    kernel.validate();
    detail::check_length(signal.size(), grid, "kernel_convolve");
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const double L = grid.half_width();
    // K depends on the lag only: tabulate lags -(n-1)..(n-1)
    RVec table(2 * n - 1);
    for (std::size_t q = 0; q < table.size(); ++q) {
        const double lag = (static_cast<double>(q) - static_cast<double>(n - 1)) * h;
        table[q] = periodic ? kernel.periodized(lag, L) : kernel.closed_form(lag);
    }
    RVec out(n);
    parallel_for(n, [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += table[i + (n - 1) - j] * signal[j];
        out[i] = kInvSqrt2Pi * h * acc;
    });
    return out;
}

/// Spectral route: multiply by the symbol and invert (Nyquist mode dropped).
inline RVec kernel_apply_spectral(const KernelSpec& kernel, std::span<const double> signal, const SpatialGrid1D& grid) {
    kernel.validate();
    const FrequencyGrid1D freq(grid);
    return apply_symbol(signal, grid, [&](double k) { return k == -freq.k_max() ? cplx{} : kernel.symbol(k); });
}

struct KernelCheck {
    double sup_error = 0.0;        ///< inverse transform of the sampled symbol vs the periodized closed form
    double sup_error_free = 0.0;   ///< same against the whole-line closed form (includes image effects)
    double band_tail = 0.0;        ///< (2 pi)^{-1/2} \int_{|k| > k_max} |m(k)| dk: truncation floor
    std::size_t points_needed = 0; ///< smallest power-of-two n on the same L with band_tail < tol
};

namespace detail {

inline double band_tail(const KernelSpec& K, double kmax) {
    const double t = K.t;
    switch (K.kind) {
        case KernelKind::PoissonDecay: return 2.0 * kInvSqrt2Pi * std::exp(-kmax * t) / t;
        case KernelKind::PoissonDerivative: return 2.0 * kInvSqrt2Pi * std::exp(-kmax * t) * (kmax / t + 1.0 / (t * t));
        case KernelKind::Heat: return kInvSqrt2Pi * std::sqrt(kPi / t) * std::erfc(kmax * std::sqrt(t));
        case KernelKind::HeatDerivative: return 2.0 * kInvSqrt2Pi * std::exp(-t * kmax * kmax) / (2.0 * t);
    }
    return 0.0;
}

}  // namespace detail

/// Inverse transform of the sampled symbol (all modes, including Nyquist) vs the closed forms.
inline KernelCheck kernel_identity_check(const KernelSpec& kernel, const SpatialGrid1D& grid, double tol = 1e-6) {
    kernel.validate();
    const FrequencyGrid1D freq(grid);
    CVec m(grid.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = kernel.symbol(freq.k(i));
    const CVec K = inverse_transform(m, grid);
    KernelCheck c;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j);
        c.sup_error = std::max(c.sup_error, std::abs(K[j] - kernel.periodized(x, grid.half_width())));
        c.sup_error_free = std::max(c.sup_error_free, std::abs(K[j] - kernel.closed_form(x)));
    }
    c.band_tail = detail::band_tail(kernel, freq.k_max());
    std::size_t n = 8;
    while (n < (std::size_t{1} << 26) &&
           detail::band_tail(kernel, kPi * static_cast<double>(n / 2) / grid.half_width()) >= tol) {
        n *= 2;
    }
    c.points_needed = n;
    return c;
}

// ---------------------------------------------------------------------------
// J1 bound

struct J1Check {
    double lhs = 0.0;       ///< ||J1||_{L^p(R x R_+)}
    double rhs = 0.0;       ///< constant * ||b||_{W^{1-1/p}_p} (homogeneous)
    double ratio = 0.0;     ///< lhs / rhs, 0 when rhs = 0
    double constant = 0.0;  ///< pi^{1/q} p^{-1/p}
    double seminorm = 0.0;
};

inline double j1_constant(double p) { return std::pow(kPi, 1.0 - 1.0 / p) * std::pow(p, -1.0 / p); }

/// Levels used for J1: t = 0, then geometric from h/8 to the grid half-width.
inline HeightLevels j1_levels(const SpatialGrid1D& grid, std::size_t count = 160) {
    return HeightLevels::geometric(grid.spacing() / 8.0, grid.half_width(), count);
}

/// J1(t, x) = \int 2yt / (t^2 + y^2)^2 b(x - y) dy, i.e. J1^ = -i pi k e^{-|k| t} b^, on every level.
inline RVec j1_field(std::span<const double> b, const SpatialGrid1D& grid, const HeightLevels& levels) {
    const CVec bh = forward_transform(b, grid);
    const FrequencyGrid1D freq(grid);
    const std::size_t n = grid.size();
    RVec out(levels.size() * n);
    parallel_for(levels.size(), [&](std::size_t l) {
        CVec c(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == freq.nyquist_index()) continue;
            const double k = freq.k(i);
            c[i] = cplx(0.0, -kPi * k) * std::exp(-std::abs(k) * levels[l]) * bh[i];
        }
        const RVec r = inverse_transform_real(c, grid);
        std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(l * n));
    });
    return out;
}

inline J1Check j1_bound_check(std::span<const double> b, const SpatialGrid1D& grid, double p,
                              const HeightLevels& levels) {
    detail::check_length(b.size(), grid, "j1_bound_check");
    if (!(p > 1.0)) throw ArgumentError("j1_bound_check: exponent p must exceed 1");
    if (!all_finite(b)) throw ArgumentError("j1_bound_check: non-finite signal");
    J1Check c;
    c.constant = j1_constant(p);
    const RVec J = j1_field(b, grid, levels);
    c.lhs = lp_norm(J, grid, levels, p);
    c.seminorm = slobodeckii_seminorm(b, grid, 1.0 - 1.0 / p, p);
    c.rhs = c.constant * c.seminorm;
    if (!std::isfinite(c.lhs) || !std::isfinite(c.rhs)) throw NumericalError("j1_bound_check: quadrature failure");
    c.ratio = c.rhs > 0.0 ? c.lhs / c.rhs : 0.0;
    return c;
}

inline J1Check j1_bound_check(std::span<const double> b, const SpatialGrid1D& grid, double p) {
    return j1_bound_check(b, grid, p, j1_levels(grid));
}

}  // namespace oseen
