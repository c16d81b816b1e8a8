#pragma once

// Homogeneous Oseen system in the half-plane x2 > 0:
//
//     a1 u,1 + a2 u,2 - Delta u + grad p = 0,   div u = 0,
//     n.T(u,p).tau + f u.tau = b,   n.u = d   on x2 = 0,   u -> 0 at infinity,
//
// with n = (0,-1), tau = (1,0) and T = (grad u + grad u^T) + p I. On the flat
// boundary the tangential stress is pressure-free, so the conditions read
//     -(u1,2 + u2,1) + f u1 = b,    u2 = -d.
//
// Each Fourier mode is a sum of two exponentials in t = x2 (branches lambda1,
// lambda3). SolutionFields keeps that modal form next to the physical samples,
// so derivatives in x2 are taken analytically.

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "oseen/error.hpp"
#include "oseen/grids.hpp"
#include "oseen/symbols.hpp"

namespace oseen {

enum class SignalKind { SlipB, NormalD, DirichletD1, DirichletD2 };

struct BoundarySignal {
    SpatialGrid1D grid;
    RVec samples;
    SignalKind kind;

    BoundarySignal(SpatialGrid1D g, RVec s, SignalKind k) : grid(g), samples(std::move(s)), kind(k) {
        detail::check_length(samples.size(), grid, "BoundarySignal");
        if (!all_finite(samples)) throw ArgumentError("BoundarySignal: non-finite sample");
    }

    static BoundarySignal zero(const SpatialGrid1D& g, SignalKind k) { return {g, RVec(g.size(), 0.0), k}; }

    template <class Fn>
    static BoundarySignal sample(const SpatialGrid1D& g, SignalKind k, Fn&& fn) {
        RVec s(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) s[j] = fn(g.x(j));
        return {g, std::move(s), k};
    }
};

/// One exponential branch of a mode: v(t) = amp * e^{rate t}.
struct ModalBranch {
    cplx rate{};
    cplx v1{};
    cplx v2{};
    cplx p{};
};

/// Per-mode profile: sum of two branches (slot 0: lambda1, slot 1: lambda3).
using ModalProfile = std::array<ModalBranch, 2>;

enum class BoundaryKind { Slip, Dirichlet };

/// Which Dirichlet problem solve_dirichlet solves.
///   Reduced: pressure-free a.grad v - Delta v = 0 (both components decay with lambda_-).
///   Oseen:   full Oseen system with pressure and div v = 0 for the same Dirichlet data.
enum class DirichletModel { Reduced, Oseen };

struct SolutionFields {
    SpatialGrid1D grid;
    HeightLevels levels;
    RVec u1;  ///< levels.size() x grid.size(), row-major over levels
    RVec u2;
    RVec p;
    BoundaryKind boundary = BoundaryKind::Slip;
    RVec bc_first;   ///< b (slip) or D1 (Dirichlet) samples
    RVec bc_second;  ///< d (slip) or D2 (Dirichlet) samples
    std::optional<std::vector<ModalProfile>> modal;
    std::vector<std::string> warnings;

    std::size_t nx() const noexcept { return grid.size(); }
    std::size_t nt() const noexcept { return levels.size(); }
    std::size_t index(std::size_t level, std::size_t j) const noexcept { return level * grid.size() + j; }

    std::span<const double> row(const RVec& field, std::size_t level) const {
        return std::span<const double>(field).subspan(level * grid.size(), grid.size());
    }
};

struct ResidualReport {
    double pde_residual_linf = 0.0;
    double divergence_linf = 0.0;
    double bc_slip_residual_linf = 0.0;    ///< tangential condition (u1 = D1 for Dirichlet fields)
    double bc_normal_residual_linf = 0.0;  ///< normal condition (u2 = D2 for Dirichlet fields)
};

namespace detail {

inline void check_signal(const BoundarySignal& s, const SpatialGrid1D& grid, const char* name) {
    if (!(s.grid == grid)) throw ArgumentError(std::string(name) + ": signal grid does not match solver grid");
    if (!all_finite(s.samples)) throw ArgumentError(std::string(name) + ": NaN or Inf in boundary data");
}

inline void edge_warning(const BoundarySignal& s, const char* name, std::vector<std::string>& warnings) {
    if (!edge_decay_ok(s.samples)) {
        warnings.push_back(std::string(name) + ": |data| >= 1e-10 on the outer 5% of the grid; wrap-around aliasing possible");
    }
}

/// Value of sum_b amp_b(select) * rate_b^order * e^{rate_b t}.
template <class Select>
cplx branch_sum(const ModalProfile& m, double t, int order, Select&& select) {
    cplx s{};
    for (const auto& br : m) {
        const cplx a = select(br);
        if (a == cplx{}) continue;
        s += a * std::pow(br.rate, order) * std::exp(br.rate * t);
    }
    return s;
}

}  // namespace detail

/// Evaluate a per-mode spectral quantity on every level and return physical samples.
/// `quantity(k, profile, t)` returns the Fourier coefficient at frequency k and height t.
template <class Quantity>
RVec synthesize(const SpatialGrid1D& grid, const HeightLevels& levels, const std::vector<ModalProfile>& modal,
                Quantity&& quantity) {
    const FrequencyGrid1D freq(grid);
    const std::size_t n = grid.size();
    RVec out(levels.size() * n);
    CVec c(n);
    for (std::size_t l = 0; l < levels.size(); ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = (i == freq.nyquist_index()) ? cplx{} : quantity(freq.k(i), modal[i], levels[l]);
        }
        const RVec r = inverse_transform_real(c, grid);
        std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(l * n));
    }
    return out;
}

inline cplx modal_v1(const ModalProfile& m, double t, int dt = 0) {
    return detail::branch_sum(m, t, dt, [](const ModalBranch& b) { return b.v1; });
}
inline cplx modal_v2(const ModalProfile& m, double t, int dt = 0) {
    return detail::branch_sum(m, t, dt, [](const ModalBranch& b) { return b.v2; });
}
inline cplx modal_p(const ModalProfile& m, double t, int dt = 0) {
    return detail::branch_sum(m, t, dt, [](const ModalBranch& b) { return b.p; });
}

namespace detail {

inline void fill_physical(SolutionFields& s) {
    const auto& modal = *s.modal;
    s.u1 = synthesize(s.grid, s.levels, modal, [](double, const ModalProfile& m, double t) { return modal_v1(m, t); });
    s.u2 = synthesize(s.grid, s.levels, modal, [](double, const ModalProfile& m, double t) { return modal_v2(m, t); });
    s.p = synthesize(s.grid, s.levels, modal, [](double, const ModalProfile& m, double t) { return modal_p(m, t); });
}

inline double mean_tolerance(const CVec& hat) { return 1e-12 * std::max(1.0, max_abs(std::span<const cplx>(hat))); }

}  // namespace detail

/// Slip problem: modal solution with boundary coefficients U01, U03.
///
/// Zero mode: v1 = b^(0)/(f - lambda3(0)) e^{t lambda3(0)}, v2 = -d^(0), pressure 0.
/// A nonzero mean of d does not decay and is reported as a warning.
inline SolutionFields solve_slip(const OseenParams& params, const BoundarySignal& b, const BoundarySignal& d,
                                 const SpatialGrid1D& grid, const HeightLevels& levels) {
    params.validate();
    detail::check_signal(b, grid, "solve_slip(b)");
    detail::check_signal(d, grid, "solve_slip(d)");
    std::vector<std::string> warnings;
    detail::edge_warning(b, "b", warnings);
    detail::edge_warning(d, "d", warnings);

    const CVec bh = forward_transform(std::span<const double>(b.samples), grid);
    const CVec dh = forward_transform(std::span<const double>(d.samples), grid);
    const FrequencyGrid1D freq(grid);
    std::vector<ModalProfile> modal(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i == freq.nyquist_index()) continue;
        const double k = freq.k(i);
        const EigenSet e = eigenvalues(params, k);
        ModalProfile& m = modal[i];
        m[0].rate = e.lambda1;
        m[1].rate = e.lambda3;
        if (k == 0.0) {
            m[0].v2 = -dh[i];
            m[1].v1 = bh[i] / (params.f - e.lambda3);
            if (std::abs(dh[i]) > detail::mean_tolerance(dh)) {
                warnings.push_back("d has nonzero mean; the k = 0 normal velocity does not decay");
            }
            continue;
        }
        const auto [U01, U03] = boundary_coefficients(params, bh[i], dh[i], k);
        const cplx isig(0.0, sigma(k));
        m[0].v1 = U01;
        m[0].v2 = isig * U01;  // -ik/lambda1 = i sigma(k)
        m[0].p = -(params.a1 + isig * params.a2) * U01;
        m[1].v1 = U03;
        m[1].v2 = -cplx(0.0, k) / e.lambda3 * U03;
    }

    SolutionFields s{grid, levels, {}, {}, {}, BoundaryKind::Slip, b.samples, d.samples, std::move(modal), std::move(warnings)};
    detail::fill_physical(s);
    return s;
}

/// Dirichlet problem u(x1, 0) = (D1, D2); see DirichletModel.
inline SolutionFields solve_dirichlet(const OseenParams& params, const BoundarySignal& D1, const BoundarySignal& D2,
                                      const SpatialGrid1D& grid, const HeightLevels& levels,
                                      DirichletModel model = DirichletModel::Reduced) {
    params.validate();
    detail::check_signal(D1, grid, "solve_dirichlet(D1)");
    detail::check_signal(D2, grid, "solve_dirichlet(D2)");
    std::vector<std::string> warnings;
    detail::edge_warning(D1, "D1", warnings);
    detail::edge_warning(D2, "D2", warnings);

    const CVec h1 = forward_transform(std::span<const double>(D1.samples), grid);
    const CVec h2 = forward_transform(std::span<const double>(D2.samples), grid);
    const FrequencyGrid1D freq(grid);
    std::vector<ModalProfile> modal(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i == freq.nyquist_index()) continue;
        const double k = freq.k(i);
        const EigenSet e = eigenvalues(params, k);
        ModalProfile& m = modal[i];
        m[0].rate = e.lambda1;
        m[1].rate = e.lambda3;
        if (model == DirichletModel::Reduced) {
            m[1].v1 = h1[i];
            m[1].v2 = h2[i];
            continue;
        }
        if (k == 0.0) {
            m[0].v2 = h2[i];
            m[1].v1 = h1[i];
            if (std::abs(h2[i]) > detail::mean_tolerance(h2)) {
                warnings.push_back("D2 has nonzero mean; the k = 0 normal velocity does not decay");
            }
            continue;
        }
        // U01 + U03 = D1^,  i sigma U01 - (ik/lambda3) U03 = D2^
        const cplx isig(0.0, sigma(k));
        const cplx c3 = -cplx(0.0, k) / e.lambda3;
        const cplx U03 = (isig * h1[i] - h2[i]) / (isig - c3);
        const cplx U01 = h1[i] - U03;
        m[0].v1 = U01;
        m[0].v2 = isig * U01;
        m[0].p = -(params.a1 + isig * params.a2) * U01;
        m[1].v1 = U03;
        m[1].v2 = c3 * U03;
    }

    SolutionFields s{grid, levels, {}, {}, {}, BoundaryKind::Dirichlet, D1.samples, D2.samples, std::move(modal), std::move(warnings)};
    detail::fill_physical(s);
    return s;
}

namespace detail {

/// Finite-difference weights for the derivatives 0..max_order at z from nodes x (Fornberg).
inline std::vector<RVec> fd_weights(double z, std::span<const double> x, int max_order) {
    const std::size_t n = x.size();
    std::vector<RVec> c(static_cast<std::size_t>(max_order) + 1, RVec(n, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min<int>(static_cast<int>(i), max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

/// First and second x2-derivatives of a level-major field by 5-point stencils.
inline std::pair<RVec, RVec> fd_t_derivatives(const RVec& field, const HeightLevels& levels, std::size_t nx) {
    const std::size_t nt = levels.size();
    RVec d1(field.size()), d2(field.size());
    for (std::size_t l = 0; l < nt; ++l) {
        std::size_t start = (l < 2) ? 0 : l - 2;
        if (start + 5 > nt) start = nt - 5;
        const RVec nodes(levels.values().begin() + static_cast<std::ptrdiff_t>(start),
                         levels.values().begin() + static_cast<std::ptrdiff_t>(start + 5));
        const auto w = fd_weights(levels[l], nodes, 2);
        for (std::size_t j = 0; j < nx; ++j) {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t q = 0; q < 5; ++q) {
                const double v = field[(start + q) * nx + j];
                s1 += w[1][q] * v;
                s2 += w[2][q] * v;
            }
            d1[l * nx + j] = s1;
            d2[l * nx + j] = s2;
        }
    }
    return {std::move(d1), std::move(d2)};
}

inline RVec x_derivative_rows(const RVec& field, const SpatialGrid1D& grid, std::size_t nt, int order) {
    const std::size_t nx = grid.size();
    RVec out(field.size());
    for (std::size_t l = 0; l < nt; ++l) {
        const RVec r = spectral_derivative(std::span<const double>(field).subspan(l * nx, nx), grid, order);
        std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(l * nx));
    }
    return out;
}

}  // namespace detail

/// Sup-norm residuals of the interior equations and the boundary conditions.
///
/// x1-derivatives are spectral. x2-derivatives are analytic when the fields carry
/// their modal form and 5-point finite differences otherwise.
inline ResidualReport residual(const OseenParams& params, const SolutionFields& fields) {
    params.validate();
    if (fields.nt() < 5) throw ArgumentError("residual: need at least 5 height levels");
    const std::size_t nx = fields.nx();
    const std::size_t nt = fields.nt();
    const double a1 = params.a1, a2 = params.a2;
    ResidualReport rep;

    if (fields.modal) {
        const auto& modal = *fields.modal;
        const auto mom1 = [&](double k, const ModalProfile& m, double t) {
            const cplx ik(0.0, k);
            return (a1 * ik + k * k) * modal_v1(m, t) + a2 * modal_v1(m, t, 1) - modal_v1(m, t, 2) + ik * modal_p(m, t);
        };
        const auto mom2 = [&](double k, const ModalProfile& m, double t) {
            const cplx ik(0.0, k);
            return (a1 * ik + k * k) * modal_v2(m, t) + a2 * modal_v2(m, t, 1) - modal_v2(m, t, 2) + modal_p(m, t, 1);
        };
        const auto div = [](double k, const ModalProfile& m, double t) {
            return cplx(0.0, k) * modal_v1(m, t) + modal_v2(m, t, 1);
        };
        rep.pde_residual_linf = std::max(max_abs(synthesize(fields.grid, fields.levels, modal, mom1)),
                                         max_abs(synthesize(fields.grid, fields.levels, modal, mom2)));
        rep.divergence_linf = max_abs(synthesize(fields.grid, fields.levels, modal, div));
    } else {
        const auto [u1t, u1tt] = detail::fd_t_derivatives(fields.u1, fields.levels, nx);
        const auto [u2t, u2tt] = detail::fd_t_derivatives(fields.u2, fields.levels, nx);
        const auto [pt, ptt] = detail::fd_t_derivatives(fields.p, fields.levels, nx);
        (void)ptt;
        const RVec u1x = detail::x_derivative_rows(fields.u1, fields.grid, nt, 1);
        const RVec u1xx = detail::x_derivative_rows(fields.u1, fields.grid, nt, 2);
        const RVec u2x = detail::x_derivative_rows(fields.u2, fields.grid, nt, 1);
        const RVec u2xx = detail::x_derivative_rows(fields.u2, fields.grid, nt, 2);
        const RVec px = detail::x_derivative_rows(fields.p, fields.grid, nt, 1);
        for (std::size_t q = 0; q < nt * nx; ++q) {
            const double r1 = a1 * u1x[q] + a2 * u1t[q] - u1xx[q] - u1tt[q] + px[q];
            const double r2 = a1 * u2x[q] + a2 * u2t[q] - u2xx[q] - u2tt[q] + pt[q];
            rep.pde_residual_linf = std::max({rep.pde_residual_linf, std::abs(r1), std::abs(r2)});
            rep.divergence_linf = std::max(rep.divergence_linf, std::abs(u1x[q] + u2t[q]));
        }
    }

    if (fields.levels[0] != 0.0) return rep;  // no boundary row to check

    RVec u1_0(fields.row(fields.u1, 0).begin(), fields.row(fields.u1, 0).end());
    RVec u2_0(fields.row(fields.u2, 0).begin(), fields.row(fields.u2, 0).end());
    if (fields.boundary == BoundaryKind::Slip) {
        RVec u1t0(nx);
        if (fields.modal) {
            u1t0 = synthesize(fields.grid, HeightLevels({0.0, 1.0}), *fields.modal,
                              [](double, const ModalProfile& m, double t) { return modal_v1(m, t, 1); });
            u1t0.resize(nx);
        } else {
            const auto [u1t, u1tt] = detail::fd_t_derivatives(fields.u1, fields.levels, nx);
            std::copy(u1t.begin(), u1t.begin() + static_cast<std::ptrdiff_t>(nx), u1t0.begin());
        }
        const RVec u2x0 = spectral_derivative(u2_0, fields.grid, 1);
        for (std::size_t j = 0; j < nx; ++j) {
            const double slip = -(u1t0[j] + u2x0[j]) + params.f * u1_0[j] - fields.bc_first[j];
            const double normal = -u2_0[j] - fields.bc_second[j];
            rep.bc_slip_residual_linf = std::max(rep.bc_slip_residual_linf, std::abs(slip));
            rep.bc_normal_residual_linf = std::max(rep.bc_normal_residual_linf, std::abs(normal));
        }
    } else {
        for (std::size_t j = 0; j < nx; ++j) {
            rep.bc_slip_residual_linf = std::max(rep.bc_slip_residual_linf, std::abs(u1_0[j] - fields.bc_first[j]));
            rep.bc_normal_residual_linf = std::max(rep.bc_normal_residual_linf, std::abs(u2_0[j] - fields.bc_second[j]));
        }
    }
    return rep;
}

struct BoundaryTrace {
    RVec u1;
    RVec u2;
    RVec p;
};

inline BoundaryTrace trace(const SolutionFields& fields) {
    if (fields.levels[0] != 0.0) throw ArgumentError("trace: the first height level must be x2 = 0");
    const auto take = [&](const RVec& f) {
        const auto r = fields.row(f, 0);
        return RVec(r.begin(), r.end());
    };
    return {take(fields.u1), take(fields.u2), take(fields.p)};
}

/// Copy of `fields` without the modal representation (as if supplied externally).
inline SolutionFields strip_modal(SolutionFields fields) {
    fields.modal.reset();
    return fields;
}

/// Height T beyond which every active mode has decayed below `floor`.
///
/// Active modes are those where any of `spectra` exceeds 1e-14 of its maximum;
/// k = 0 and the Nyquist mode are excluded. T is capped at `t_cap`.
inline double decay_height(const OseenParams& params, const SpatialGrid1D& grid, std::span<const CVec> spectra,
                           double floor = 1e-14, double t_cap = 1e5) {
    const FrequencyGrid1D freq(grid);
    double slowest = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i == freq.nyquist_index() || i == freq.zero_index()) continue;
        bool active = false;
        for (const auto& s : spectra) {
            if (std::abs(s[i]) > 1e-14 * std::max(max_abs(std::span<const cplx>(s)), 1e-300)) active = true;
        }
        if (!active) continue;
        const EigenSet e = eigenvalues(params, freq.k(i));
        slowest = std::max({slowest, e.lambda1.real(), e.lambda3.real()});
    }
    if (!(slowest < 0.0)) return t_cap;
    return std::min(t_cap, std::log(floor) / slowest);
}

/// Default levels for boundary data (b, d): t = 0, then geometric from t_min to the decay height.
inline HeightLevels default_levels(const OseenParams& params, const BoundarySignal& first, const BoundarySignal& second,
                                   std::size_t count = 64, double t_min = 1e-3) {
    const std::array<CVec, 2> spectra{forward_transform(std::span<const double>(first.samples), first.grid),
                                      forward_transform(std::span<const double>(second.samples), second.grid)};
    const double T = std::max(decay_height(params, first.grid, spectra), 10.0 * t_min);
    return HeightLevels::geometric(t_min, T, count);
}

// ---------------------------------------------------------------------------
// Field dumps
//
// CSV: header "x1,x2,u1,u2,p", one row per sample, levels outermost.
// Binary (little-endian): 32-byte header
//     char magic[8] = "OSEENFLD", uint32 n, uint32 M, float64 L, float64 T,
// followed by M float64 level heights, then u1, u2, p as M*n float64 each.

inline constexpr char kFieldMagic[8] = {'O', 'S', 'E', 'E', 'N', 'F', 'L', 'D'};

inline void write_csv(std::ostream& os, const SpatialGrid1D& grid, const HeightLevels& levels, const RVec& u1,
                      const RVec& u2, const RVec& p) {
    os << "x1,x2,u1,u2,p\n";
    char buf[160];
    for (std::size_t l = 0; l < levels.size(); ++l) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const std::size_t q = l * grid.size() + j;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.x(j), levels[l], u1[q], u2[q], p[q]);
            os << buf;
        }
    }
}

inline void write_csv(std::ostream& os, const SolutionFields& s) { write_csv(os, s.grid, s.levels, s.u1, s.u2, s.p); }

inline void write_binary(std::ostream& os, const SpatialGrid1D& grid, const HeightLevels& levels, const RVec& u1,
                         const RVec& u2, const RVec& p) {
    const auto n = static_cast<std::uint32_t>(grid.size());
    const auto M = static_cast<std::uint32_t>(levels.size());
    const double L = grid.half_width();
    const double T = levels.top();
    os.write(kFieldMagic, 8);
    os.write(reinterpret_cast<const char*>(&n), 4);
    os.write(reinterpret_cast<const char*>(&M), 4);
    os.write(reinterpret_cast<const char*>(&L), 8);
    os.write(reinterpret_cast<const char*>(&T), 8);
    os.write(reinterpret_cast<const char*>(levels.values().data()), static_cast<std::streamsize>(8 * M));
    for (const RVec* f : {&u1, &u2, &p}) {
        os.write(reinterpret_cast<const char*>(f->data()), static_cast<std::streamsize>(8 * f->size()));
    }
}

inline void write_binary(std::ostream& os, const SolutionFields& s) {
    write_binary(os, s.grid, s.levels, s.u1, s.u2, s.p);
}

/// Reads a binary dump back; boundary data is not stored, so the result has no modal form.
inline SolutionFields read_binary(std::istream& is) {
    char magic[8];
    std::uint32_t n = 0, M = 0;
    double L = 0.0, T = 0.0;
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kFieldMagic, 8) != 0) throw ArgumentError("read_binary: bad magic");
    is.read(reinterpret_cast<char*>(&n), 4);
    is.read(reinterpret_cast<char*>(&M), 4);
    is.read(reinterpret_cast<char*>(&L), 8);
    is.read(reinterpret_cast<char*>(&T), 8);
    if (!is) throw ArgumentError("read_binary: truncated header");
    RVec t(M);
    is.read(reinterpret_cast<char*>(t.data()), static_cast<std::streamsize>(8 * M));
    const std::size_t count = static_cast<std::size_t>(n) * M;
    RVec u1(count), u2(count), p(count);
    for (RVec* f : {&u1, &u2, &p}) is.read(reinterpret_cast<char*>(f->data()), static_cast<std::streamsize>(8 * count));
    if (!is) throw ArgumentError("read_binary: truncated payload");
    SpatialGrid1D grid(L, n);
    return SolutionFields{grid, HeightLevels(std::move(t)), std::move(u1), std::move(u2), std::move(p),
                          BoundaryKind::Slip, RVec(n, 0.0), RVec(n, 0.0), std::nullopt, {}};
}

}  // namespace oseen
