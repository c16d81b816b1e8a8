#pragma once

// Whole-plane problems on a doubly periodic box (x1 from grid1, x2 from grid2):
//
//   scalar:  a.grad u - Delta u = F                        u^ = F^ / (i a.xi + |xi|^2)
//   Oseen:   a.grad u - Delta u + grad p = F, div u = G
//   trace:   u(x1, 0) for forcing supported in x2 > 0, by quadrature in x2 per x1-frequency
//
// 2D coefficients are stored [i2 * n1 + i1], both axes in centered order.

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "oseen/error.hpp"
#include "oseen/grids.hpp"
#include "oseen/parallel.hpp"
#include "oseen/symbols.hpp"

namespace oseen {

struct PlaneField {
    SpatialGrid1D grid1;
    SpatialGrid1D grid2;
    RVec values;  ///< n2 x n1, x2 outermost

    PlaneField(SpatialGrid1D g1, SpatialGrid1D g2) : grid1(g1), grid2(g2), values(g1.size() * g2.size(), 0.0) {}
    PlaneField(SpatialGrid1D g1, SpatialGrid1D g2, RVec v) : grid1(g1), grid2(g2), values(std::move(v)) {
        if (values.size() != grid1.size() * grid2.size()) throw ArgumentError("PlaneField: size mismatch");
    }

    template <class Fn>
    static PlaneField sample(const SpatialGrid1D& g1, const SpatialGrid1D& g2, Fn&& fn) {
        PlaneField p(g1, g2);
        for (std::size_t j2 = 0; j2 < g2.size(); ++j2) {
            for (std::size_t j1 = 0; j1 < g1.size(); ++j1) p.at(j1, j2) = fn(g1.x(j1), g2.x(j2));
        }
        return p;
    }

    std::size_t n1() const noexcept { return grid1.size(); }
    std::size_t n2() const noexcept { return grid2.size(); }
    double& at(std::size_t j1, std::size_t j2) { return values[j2 * grid1.size() + j1]; }
    double at(std::size_t j1, std::size_t j2) const { return values[j2 * grid1.size() + j1]; }
    bool same_grid(const PlaneField& o) const { return grid1 == o.grid1 && grid2 == o.grid2; }
};

struct VelocityPressure {
    PlaneField u1;
    PlaneField u2;
    PlaneField p;
};

namespace detail {

inline void check_plane(const PlaneField& F, const char* what) {
    if (!all_finite(F.values)) throw ArgumentError(std::string(what) + ": NaN or Inf in field");
}

}  // namespace detail

/// Unitary 2D transform (product of the 1D convention in each direction).
inline CVec forward_transform_2d(const PlaneField& F) {
    const std::size_t n1 = F.n1(), n2 = F.n2();
    CVec rows(n1 * n2);
    parallel_for(n2, [&](std::size_t j2) {
        const CVec r = forward_transform(std::span<const double>(F.values).subspan(j2 * n1, n1), F.grid1);
        std::copy(r.begin(), r.end(), rows.begin() + static_cast<std::ptrdiff_t>(j2 * n1));
    });
    CVec out(n1 * n2);
    parallel_for(n1, [&](std::size_t i1) {
        CVec col(n2);
        for (std::size_t j2 = 0; j2 < n2; ++j2) col[j2] = rows[j2 * n1 + i1];
        const CVec c = forward_transform(std::span<const cplx>(col), F.grid2);
        for (std::size_t i2 = 0; i2 < n2; ++i2) out[i2 * n1 + i1] = c[i2];
    });
    return out;
}

inline PlaneField inverse_transform_2d(const CVec& coeffs, const SpatialGrid1D& g1, const SpatialGrid1D& g2) {
    const std::size_t n1 = g1.size(), n2 = g2.size();
    if (coeffs.size() != n1 * n2) throw ArgumentError("inverse_transform_2d: size mismatch");
    CVec cols(n1 * n2);
    parallel_for(n1, [&](std::size_t i1) {
        CVec col(n2);
        for (std::size_t i2 = 0; i2 < n2; ++i2) col[i2] = coeffs[i2 * n1 + i1];
        const CVec c = inverse_transform(std::span<const cplx>(col), g2);
        for (std::size_t j2 = 0; j2 < n2; ++j2) cols[j2 * n1 + i1] = c[j2];
    });
    PlaneField out(g1, g2);
    parallel_for(n2, [&](std::size_t j2) {
        const RVec r = inverse_transform_real(std::span<const cplx>(cols).subspan(j2 * n1, n1), g1);
        std::copy(r.begin(), r.end(), out.values.begin() + static_cast<std::ptrdiff_t>(j2 * n1));
    });
    return out;
}

/// Multiply the 2D transform by symbol(xi1, xi2); Nyquist rows and columns are dropped.
template <class Symbol>
PlaneField apply_symbol_2d(const PlaneField& F, Symbol&& symbol) {
    CVec c = forward_transform_2d(F);
    const FrequencyGrid1D k1(F.grid1), k2(F.grid2);
    for (std::size_t i2 = 0; i2 < F.n2(); ++i2) {
        for (std::size_t i1 = 0; i1 < F.n1(); ++i1) {
            cplx& v = c[i2 * F.n1() + i1];
            v = (i1 == k1.nyquist_index() || i2 == k2.nyquist_index()) ? cplx{} : v * symbol(k1.k(i1), k2.k(i2));
        }
    }
    return inverse_transform_2d(c, F.grid1, F.grid2);
}

/// Spectral partial derivative d^{o1}_{x1} d^{o2}_{x2}.
inline PlaneField plane_derivative(const PlaneField& F, int o1, int o2) {
    return apply_symbol_2d(F, [&](double x1, double x2) {
        return std::pow(cplx(0.0, x1), o1) * std::pow(cplx(0.0, x2), o2);
    });
}

/// Scalar convection-diffusion a.grad u - Delta u = F; the mean (xi = 0) of u is set to 0.
inline PlaneField solve_scalar(const OseenParams& params, const PlaneField& F) {
    params.validate();
    detail::check_plane(F, "solve_scalar");
    return apply_symbol_2d(F, [&](double x1, double x2) -> cplx {
        if (x1 == 0.0 && x2 == 0.0) return 0.0;
        return 1.0 / cplx(x1 * x1 + x2 * x2, params.a1 * x1 + params.a2 * x2);
    });
}

/// Full Oseen system with convection a = (a1, a2) and divergence source G.
///
/// Pressure from the divergence of the momentum equation:
///     -|xi|^2 p^ = i xi.F^ - (i a.xi + |xi|^2) G^,
/// then u^ = (F^ - i xi p^) / (i a.xi + |xi|^2). Means of u and p are set to 0.
inline VelocityPressure solve_oseen_full(double a1, double a2, const PlaneField& F1, const PlaneField& F2,
                                         const PlaneField& G) {
    if (!std::isfinite(a1) || !std::isfinite(a2)) throw ArgumentError("solve_oseen_full: non-finite convection");
    if (!F1.same_grid(F2) || !F1.same_grid(G)) throw ArgumentError("solve_oseen_full: grid mismatch");
    detail::check_plane(F1, "solve_oseen_full(F1)");
    detail::check_plane(F2, "solve_oseen_full(F2)");
    detail::check_plane(G, "solve_oseen_full(G)");
    const CVec f1 = forward_transform_2d(F1), f2 = forward_transform_2d(F2), g = forward_transform_2d(G);
    const std::size_t n1 = F1.n1(), n2 = F1.n2();
    const FrequencyGrid1D k1(F1.grid1), k2(F1.grid2);
    const std::size_t zero = k2.zero_index() * n1 + k1.zero_index();
    const double gscale = G.grid1.spacing() * G.grid2.spacing() * kInvSqrt2Pi * kInvSqrt2Pi *
                          std::max(1.0, max_abs(G.values)) * static_cast<double>(n1 * n2);
    if (std::abs(g[zero]) > 1e-12 * gscale) {
        throw CompatibilityError("solve_oseen_full: divergence source G has nonzero mean");
    }
    CVec u1(n1 * n2), u2(n1 * n2), p(n1 * n2);
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
            const std::size_t q = i2 * n1 + i1;
            if (q == zero || i1 == k1.nyquist_index() || i2 == k2.nyquist_index()) continue;
            const double x1 = k1.k(i1), x2 = k2.k(i2);
            const double r2 = x1 * x1 + x2 * x2;
            const cplx S(r2, a1 * x1 + a2 * x2);
            const cplx ix1(0.0, x1), ix2(0.0, x2);
            p[q] = -(ix1 * f1[q] + ix2 * f2[q] - S * g[q]) / r2;
            u1[q] = (f1[q] - ix1 * p[q]) / S;
            u2[q] = (f2[q] - ix2 * p[q]) / S;
        }
    }
    return {inverse_transform_2d(u1, F1.grid1, F1.grid2), inverse_transform_2d(u2, F1.grid1, F1.grid2),
            inverse_transform_2d(p, F1.grid1, F1.grid2)};
}

/// The form with convection lambda * d/dx1 only.
inline VelocityPressure solve_oseen_full(double lambda, const PlaneField& F1, const PlaneField& F2, const PlaneField& G) {
    if (!(lambda > 0.0)) throw ArgumentError("solve_oseen_full: lambda must be positive");
    return solve_oseen_full(lambda, 0.0, F1, F2, G);
}

/// max over modes (excluding xi = 0 and Nyquist) of |i xi.u^ - G^|.
inline double divergence_defect(const PlaneField& u1, const PlaneField& u2, const PlaneField& G) {
    const CVec c1 = forward_transform_2d(u1), c2 = forward_transform_2d(u2), g = forward_transform_2d(G);
    const FrequencyGrid1D k1(u1.grid1), k2(u1.grid2);
    double worst = 0.0;
    for (std::size_t i2 = 0; i2 < u1.n2(); ++i2) {
        for (std::size_t i1 = 0; i1 < u1.n1(); ++i1) {
            if (i1 == k1.nyquist_index() || i2 == k2.nyquist_index()) continue;
            if (i1 == k1.zero_index() && i2 == k2.zero_index()) continue;
            const std::size_t q = i2 * u1.n1() + i1;
            const cplx d = cplx(0.0, k1.k(i1)) * c1[q] + cplx(0.0, k2.k(i2)) * c2[q] - g[q];
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

/// Boundary value u(x1, 0) of the scalar problem for forcing supported in x2 > 0 (a2 < 0).
///
/// Per x1-frequency xi, the whole-line Green's function in x2 gives
///     u^(xi, 0) = \int_0^inf Delta^{-1} e^{-lambda_+ s} f^(xi, s) ds,
/// evaluated by the trapezoid rule over the grid rows with x2 > 0.
///
/// With `period` P the Green's function is summed over x2-translates by P,
///     Delta^{-1} (e^{-lambda_+ s} / (1 - e^{-lambda_+ P}) + e^{lambda_- (P - s)} / (1 - e^{lambda_- P})),
/// which is the trace of the x2-periodic problem solved by solve_scalar. The xi = 0 mode is
/// then undetermined and set to 0.
inline RVec duhamel_trace(const OseenParams& params, const PlaneField& f, std::optional<double> period = std::nullopt) {
    params.validate();
    if (!(params.a2 < 0.0)) throw RegimeError("duhamel_trace: requires a2 < 0");
    detail::check_plane(f, "duhamel_trace");
    const std::size_t n1 = f.n1(), n2 = f.n2();
    for (std::size_t j2 = 0; j2 < n2; ++j2) {
        if (f.grid2.x(j2) > 0.0) continue;
        for (std::size_t j1 = 0; j1 < n1; ++j1) {
            if (std::abs(f.at(j1, j2)) >= 1e-12) {
                throw ArgumentError("duhamel_trace: forcing is not supported in x2 > 0");
            }
        }
    }
    std::vector<std::size_t> rows;
    for (std::size_t j2 = 0; j2 < n2; ++j2) {
        if (f.grid2.x(j2) > 0.0) rows.push_back(j2);
    }
    std::vector<CVec> fh(rows.size());
    parallel_for(rows.size(), [&](std::size_t r) {
        fh[r] = forward_transform(std::span<const double>(f.values).subspan(rows[r] * n1, n1), f.grid1);
    });
    const FrequencyGrid1D freq(f.grid1);
    const double h2 = f.grid2.spacing();
    CVec out(n1);
    parallel_for(n1, [&](std::size_t i) {
        if (i == freq.nyquist_index()) return;
        const EigenSet e = eigenvalues(params, freq.k(i));
        cplx acc{};
        if (period) {
            if (freq.k(i) == 0.0) return;
            const double P = *period;
            const cplx up = 1.0 / (1.0 - std::exp(-e.lambda_plus * P));
            const cplx down = 1.0 / (1.0 - std::exp(e.lambda3 * P));
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const double s = f.grid2.x(rows[r]);
                acc += h2 * (std::exp(-e.lambda_plus * s) * up + std::exp(e.lambda3 * (P - s)) * down) * fh[r][i];
            }
            out[i] = acc / e.Delta;
            return;
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const double s = f.grid2.x(rows[r]);
            const double w = (r + 1 == rows.size()) ? 0.5 * h2 : h2;
            acc += w * std::exp(-e.lambda_plus * s) * fh[r][i];
        }
        out[i] = acc / e.Delta;
    });
    return inverse_transform_real(out, f.grid1);
}

/// Which x2-kernel enters the trace multiplier constant.
enum class TraceKernel {
    LambdaMinus,  ///< Psi = Delta^{-1} e^{lambda_- s}
    LambdaPlus,   ///< Psi = Delta^{-1} e^{-lambda_+ s}, the kernel used by duhamel_trace
};

inline cplx trace_kernel(const OseenParams& params, double xi, double s, TraceKernel kind) {
    const EigenSet e = eigenvalues(params, xi);
    const cplx rate = (kind == TraceKernel::LambdaMinus) ? e.lambda3 : -e.lambda_plus;
    return std::exp(rate * s) / e.Delta;
}

/// C_M(s) = sup_xi (|Psi| + |xi dPsi/dxi|) on xi = 0 and +-[1e-4, 1e4] (log grid, `per_decade` points).
inline double trace_multiplier_constant(const OseenParams& params, double s, TraceKernel kind = TraceKernel::LambdaMinus,
                                        std::size_t per_decade = 200) {
    params.validate();
    if (!(params.a2 < 0.0)) throw RegimeError("trace_multiplier_constant: requires a2 < 0");
    const auto eval = [&](double xi) {
        const EigenSet e = eigenvalues(params, xi);
        // dDelta/dxi = 2 (2 xi + i a1) / Delta; dlambda_-/dxi = -dDelta/2; dlambda_+/dxi = +dDelta/2
        const cplx dD = 2.0 * cplx(2.0 * xi, params.a1) / e.Delta;
        const cplx rate = (kind == TraceKernel::LambdaMinus) ? e.lambda3 : -e.lambda_plus;
        const cplx drate = -0.5 * dD;
        const cplx psi = std::exp(rate * s) / e.Delta;
        const cplx dpsi = psi * (drate * s - dD / e.Delta);
        return std::abs(psi) + std::abs(xi * dpsi);
    };
    double sup = eval(0.0);
    const std::size_t count = 8 * per_decade;
    for (std::size_t j = 0; j <= count; ++j) {
        const double xi = std::pow(10.0, -4.0 + 8.0 * static_cast<double>(j) / static_cast<double>(count));
        sup = std::max({sup, eval(xi), eval(-xi)});
    }
    return sup;
}

/// Free-space fundamental solution of a.grad u - Delta u = delta:
///     E(x) = (2 pi)^{-1} e^{a.x/2} K0(|a||x|/2).
inline double fundamental_solution(const OseenParams& params, double x1, double x2) {
    const double r = std::hypot(x1, x2);
    const double amag = std::hypot(params.a1, params.a2);
    if (!(r > 0.0)) throw ArgumentError("fundamental_solution: singular at the origin");
    return std::exp(0.5 * (params.a1 * x1 + params.a2 * x2)) * std::cyl_bessel_k(0.0, 0.5 * amag * r) / (2.0 * kPi);
}

/// Response to a unit point source at the origin, sampled on the plane grid.
/// The grid point at the origin (if any) takes the value at radius h/2.
inline PlaneField point_source_field(const OseenParams& params, const SpatialGrid1D& g1, const SpatialGrid1D& g2) {
    params.validate();
    const double rmin = 0.5 * std::min(g1.spacing(), g2.spacing());
    return PlaneField::sample(g1, g2, [&](double x1, double x2) {
        if (std::hypot(x1, x2) < rmin) return fundamental_solution(params, rmin, 0.0);
        return fundamental_solution(params, x1, x2);
    });
}

}  // namespace oseen
