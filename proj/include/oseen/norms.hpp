#pragma once

// Lp, Sobolev and Slobodeckii norms of sampled functions, and intersections of them.
//
// Line signals are treated as zero outside the grid cell range [-L - h/2, L - h/2).

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "oseen/error.hpp"
#include "oseen/grids.hpp"
#include "oseen/parallel.hpp"
#include "oseen/wholeplane.hpp"

namespace oseen {

enum class Domain { Line, HalfPlane, Plane };

struct NormSpec {
    double s = 0.0;
    double p = 2.0;
    bool homogeneous = false;
    Domain domain = Domain::Line;

    void validate() const {
        if (!(p > 1.0)) throw ArgumentError("NormSpec: exponent p must exceed 1");
        if (!(s >= 0.0) || !std::isfinite(s)) throw ArgumentError("NormSpec: order s must be finite and >= 0");
    }
    bool integer_order() const { return s == std::floor(s); }
};

/// Intersection of the member spaces, normed by the max of the member norms.
struct SpaceFamily {
    std::vector<NormSpec> members;
};

namespace detail {

inline void check_exponent(double p, const char* what) {
    if (!(p > 1.0)) throw ArgumentError(std::string(what) + ": exponent p must exceed 1, got " + std::to_string(p));
}

inline double pow_abs(double x, double p) {
    if (p == 2.0) return x * x;
    const double a = std::abs(x);
    if (p == 3.0) return a * a * a;
    return a == 0.0 ? 0.0 : std::pow(a, p);
}

inline double sum_pow(std::span<const double> v, double p) {
    double s = 0.0;
    for (double x : v) s += pow_abs(x, p);
    return s;
}

}  // namespace detail

/// (h sum |f|^p)^{1/p} on the line; p = inf gives the sup norm.
inline double lp_norm(std::span<const double> samples, const SpatialGrid1D& grid, double p) {
    detail::check_length(samples.size(), grid, "lp_norm");
    if (std::isinf(p)) return max_abs(samples);
    detail::check_exponent(p, "lp_norm");
    return std::pow(grid.spacing() * detail::sum_pow(samples, p), 1.0 / p);
}

/// Half-plane norm of a level-major field: height-level weights in x2, h in x1.
inline double lp_norm(std::span<const double> field, const SpatialGrid1D& grid, const HeightLevels& levels, double p) {
    if (field.size() != grid.size() * levels.size()) throw ArgumentError("lp_norm: field size mismatch");
    if (std::isinf(p)) return max_abs(field);
    detail::check_exponent(p, "lp_norm");
    double acc = 0.0;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        acc += levels.weight(l) * detail::sum_pow(field.subspan(l * grid.size(), grid.size()), p);
    }
    return std::pow(grid.spacing() * acc, 1.0 / p);
}

inline double lp_norm(const PlaneField& F, double p) {
    if (std::isinf(p)) return max_abs(F.values);
    detail::check_exponent(p, "lp_norm");
    return std::pow(F.grid1.spacing() * F.grid2.spacing() * detail::sum_pow(F.values, p), 1.0 / p);
}

/// Plane field restricted to rows with x2 > 0 (trapezoid in x2 with the x2 = 0 row at half weight).
inline double lp_norm_upper(const PlaneField& F, double p) {
    detail::check_exponent(p, "lp_norm_upper");
    double acc = 0.0;
    for (std::size_t j2 = 0; j2 < F.n2(); ++j2) {
        const double x2 = F.grid2.x(j2);
        if (x2 < 0.0) continue;
        const double w = (x2 == 0.0) ? 0.5 : 1.0;
        acc += w * detail::sum_pow(std::span<const double>(F.values).subspan(j2 * F.n1(), F.n1()), p);
    }
    return std::pow(F.grid1.spacing() * F.grid2.spacing() * acc, 1.0 / p);
}

struct SeminormParts {
    double value = 0.0;     ///< the seminorm
    double near = 0.0;      ///< |x - x'| < 2h contribution to value^p (Taylor estimate)
    double far = 0.0;       ///< lag >= 2h pairs inside the grid
    double outside = 0.0;   ///< pairs with one point outside the grid (signal is zero there)
};

/// Slobodeckii seminorm of D^{[s]} f with fractional part sigma = s - [s]:
///     ( \iint |g(x) - g(x')|^p / |x - x'|^{1 + p sigma} dx dx' )^{1/p},   g = D^{[s]} f.
///
/// |x - x'| < h0 = 2h: first-order Taylor expansion, 2 |g'(x)|^p h0^{p(1-sigma)} / (p(1-sigma)).
/// Otherwise: trapezoid over lags j >= 2 (half weight at j = 2), plus the closed-form
/// integral over x' outside the grid.
inline SeminormParts slobodeckii_parts(std::span<const double> samples, const SpatialGrid1D& grid, double s, double p) {
    detail::check_length(samples.size(), grid, "slobodeckii_seminorm");
    detail::check_exponent(p, "slobodeckii_seminorm");
    const double order = std::floor(s);
    const double sig = s - order;
    if (!(s > 0.0) || sig == 0.0) {
        throw ArgumentError("slobodeckii_seminorm: order must have a fractional part in (0,1); use sobolev_norm");
    }
    const RVec g = spectral_derivative(samples, grid, static_cast<int>(order));
    const RVec dg = spectral_derivative(g, grid, 1);
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const double h0 = 2.0 * h;
    const double L = grid.half_width();
    const double expo = 1.0 + p * sig;

    RVec lag_weight(n, 0.0);
    for (std::size_t j = 2; j < n; ++j) lag_weight[j] = (j == 2 ? 0.5 : 1.0) * h / std::pow(static_cast<double>(j) * h, expo);

    RVec near(n), far(n), outside(n);
    parallel_for(n, [&](std::size_t i) {
        near[i] = 2.0 * detail::pow_abs(dg[i], p) * std::pow(h0, p * (1.0 - sig)) / (p * (1.0 - sig));
        double acc = 0.0;
        for (std::size_t j = i + 2; j < n; ++j) acc += lag_weight[j - i] * detail::pow_abs(g[j] - g[i], p);
        for (std::size_t j = 0; j + 2 <= i; ++j) acc += lag_weight[i - j] * detail::pow_abs(g[j] - g[i], p);
        far[i] = acc;
        const double x = grid.x(i);
        const double left = x + L + 0.5 * h;
        const double right = L - 0.5 * h - x;
        outside[i] = 2.0 * detail::pow_abs(g[i], p) / (p * sig) * (std::pow(left, -p * sig) + std::pow(right, -p * sig));
    });
    SeminormParts parts;
    for (std::size_t i = 0; i < n; ++i) {
        parts.near += h * near[i];
        parts.far += h * far[i];
        parts.outside += h * outside[i];
    }
    parts.value = std::pow(parts.near + parts.far + parts.outside, 1.0 / p);
    return parts;
}

inline double slobodeckii_seminorm(std::span<const double> samples, const SpatialGrid1D& grid, double s, double p) {
    return slobodeckii_parts(samples, grid, s, p).value;
}

/// ||D^k f||_p.
inline double derivative_norm(std::span<const double> samples, const SpatialGrid1D& grid, int k, double p) {
    const RVec d = spectral_derivative(samples, grid, k);
    return lp_norm(d, grid, p);
}

/// W^k_p norm for integer k: (sum_{j <= k} ||D^j f||_p^p)^{1/p}.
inline double sobolev_norm(std::span<const double> samples, const SpatialGrid1D& grid, int k, double p) {
    detail::check_exponent(p, "sobolev_norm");
    if (k < 0) throw ArgumentError("sobolev_norm: negative order");
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += std::pow(derivative_norm(samples, grid, j, p), p);
    return std::pow(acc, 1.0 / p);
}

/// Norm of a line signal in W^s_p (inhomogeneous) or its homogeneous counterpart.
///
/// Homogeneous: ||D^s f||_p for integer s, the Slobodeckii seminorm otherwise.
/// Inhomogeneous: every derivative order up to [s] once, plus the seminorm for fractional s.
inline double norm(std::span<const double> samples, const SpatialGrid1D& grid, const NormSpec& spec) {
    spec.validate();
    if (spec.domain != Domain::Line) throw ArgumentError("norm: Sobolev orders are defined for line signals only");
    const int k = static_cast<int>(std::floor(spec.s));
    if (spec.integer_order()) {
        return spec.homogeneous ? derivative_norm(samples, grid, k, spec.p) : sobolev_norm(samples, grid, k, spec.p);
    }
    const double semi = slobodeckii_seminorm(samples, grid, spec.s, spec.p);
    if (spec.homogeneous) return semi;
    const double lower = sobolev_norm(samples, grid, k, spec.p);
    return std::pow(std::pow(lower, spec.p) + std::pow(semi, spec.p), 1.0 / spec.p);
}

inline double family_norm(std::span<const double> samples, const SpatialGrid1D& grid, const SpaceFamily& family) {
    if (family.members.empty()) throw ArgumentError("family_norm: empty family");
    double m = 0.0;
    for (const auto& spec : family.members) m = std::max(m, norm(samples, grid, spec));
    return m;
}

/// Exponent set {3s/(3+s), s} of the velocity estimates.
inline std::vector<double> velocity_exponents(double s) { return {3.0 * s / (3.0 + s), s}; }

/// Family { W^{order - 1/r}_r : r in exponents } (trace spaces for `order` derivatives).
inline SpaceFamily trace_family(double order, const std::vector<double>& exponents, bool homogeneous) {
    SpaceFamily fam;
    for (double r : exponents) fam.members.push_back(NormSpec{order - 1.0 / r, r, homogeneous, Domain::Line});
    return fam;
}

}  // namespace oseen
