#pragma once

// Uniform x1 grids, height levels, and the project-wide Fourier convention.
//
// Convention (unitary, angular frequency):
//     f^(k) = (2 pi)^{-1/2} \int e^{-ikx} f(x) dx
//     f(x)  = (2 pi)^{-1/2} \int e^{+ikx} f^(k) dk
// discretized on x_j = -L + j h, k_m = pi m / L, m = -n/2 .. n/2-1.
// Coefficients are stored in centered order: index i <-> m = i - n/2.
//
// Under this convention d/dx <-> ik and the non-normalized convolution
// (g * f)(x) = \int g(y) f(x-y) dy transforms to sqrt(2 pi) g^ f^.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <fftw3.h>

#include "oseen/error.hpp"

namespace oseen {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

inline constexpr double kPi = std::numbers::pi;
inline const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

class SpatialGrid1D {
public:
    SpatialGrid1D(double half_width, std::size_t n_points)
        : half_width_(half_width), n_(n_points) {
        if (!(half_width > 0.0) || !std::isfinite(half_width)) {
            throw ArgumentError("SpatialGrid1D: half width must be positive and finite");
        }
        if (n_points < 8 || n_points % 2 != 0) {
            throw ArgumentError("SpatialGrid1D: n_points must be even and >= 8, got " +
                                std::to_string(n_points));
        }
        spacing_ = 2.0 * half_width_ / static_cast<double>(n_);
    }

    double half_width() const noexcept { return half_width_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return spacing_; }
    double x(std::size_t j) const noexcept { return -half_width_ + static_cast<double>(j) * spacing_; }

    RVec points() const {
        RVec xs(n_);
        for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
        return xs;
    }

    /// Same grid with twice the resolution.
    SpatialGrid1D refined() const { return SpatialGrid1D(half_width_, 2 * n_); }

    bool operator==(const SpatialGrid1D& o) const noexcept {
        return n_ == o.n_ && half_width_ == o.half_width_;
    }

private:
    double half_width_;
    std::size_t n_;
    double spacing_;
};

/// Angular frequencies dual to a SpatialGrid1D, in centered order.
class FrequencyGrid1D {
public:
    explicit FrequencyGrid1D(const SpatialGrid1D& grid)
        : n_(grid.size()), dk_(kPi / grid.half_width()) {}

    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return dk_; }
    std::size_t zero_index() const noexcept { return n_ / 2; }
    std::size_t nyquist_index() const noexcept { return 0; }
    long mode(std::size_t i) const noexcept { return static_cast<long>(i) - static_cast<long>(n_ / 2); }
    double k(std::size_t i) const noexcept { return dk_ * static_cast<double>(mode(i)); }
    double k_max() const noexcept { return dk_ * static_cast<double>(n_ / 2); }

    RVec wavenumbers() const {
        RVec ks(n_);
        for (std::size_t i = 0; i < n_; ++i) ks[i] = k(i);
        return ks;
    }

private:
    std::size_t n_;
    double dk_;
};

/// Ordered x2 levels with quadrature weights for \int_{t_0}^{t_max} g(t) dt.
///
/// Weights: trapezoid on [0, t_1] when t_0 = 0, trapezoid in s = ln t above
/// (spectrally accurate for the exponential profiles on geometric levels).
class HeightLevels {
public:
    explicit HeightLevels(RVec levels) : t_(std::move(levels)) {
        if (t_.size() < 2) throw ArgumentError("HeightLevels: need at least 2 levels");
        if (t_.front() < 0.0) throw ArgumentError("HeightLevels: levels must be >= 0");
        for (std::size_t j = 1; j < t_.size(); ++j) {
            if (!(t_[j] > t_[j - 1])) throw ArgumentError("HeightLevels: levels must be strictly increasing");
        }
        w_.assign(t_.size(), 0.0);
        std::size_t start = 0;
        if (t_[0] == 0.0) {
            w_[0] += 0.5 * t_[1];
            w_[1] += 0.5 * t_[1];
            start = 1;
        }
        for (std::size_t j = start; j + 1 < t_.size(); ++j) {
            const double ds = std::log(t_[j + 1] / t_[j]);
            w_[j] += 0.5 * ds * t_[j];
            w_[j + 1] += 0.5 * ds * t_[j + 1];
        }
    }

    /// t = 0 followed by M-1 geometric levels t_min * ratio^j that reach T.
    static HeightLevels geometric(double t_min, double t_max, std::size_t count) {
        if (count < 3) throw ArgumentError("HeightLevels::geometric: need at least 3 levels");
        if (!(t_min > 0.0) || !(t_max > t_min)) {
            throw ArgumentError("HeightLevels::geometric: need 0 < t_min < T");
        }
        RVec t(count);
        t[0] = 0.0;
        const double ratio = std::pow(t_max / t_min, 1.0 / static_cast<double>(count - 2));
        for (std::size_t j = 1; j < count; ++j) t[j] = t_min * std::pow(ratio, static_cast<double>(j - 1));
        t.back() = t_max;
        return HeightLevels(std::move(t));
    }

    /// Same construction with a fixed ratio instead of a fixed count.
    static HeightLevels geometric_ratio(double t_min, double ratio, double t_max) {
        if (!(ratio > 1.0)) throw ArgumentError("HeightLevels: ratio must exceed 1");
        if (!(t_min > 0.0) || !(t_max > t_min)) {
            throw ArgumentError("HeightLevels::geometric_ratio: need 0 < t_min < T");
        }
        const auto steps = static_cast<std::size_t>(std::ceil(std::log(t_max / t_min) / std::log(ratio)));
        return geometric(t_min, t_max, steps + 2);
    }

    std::size_t size() const noexcept { return t_.size(); }
    double operator[](std::size_t j) const noexcept { return t_[j]; }
    double weight(std::size_t j) const noexcept { return w_[j]; }
    const RVec& values() const noexcept { return t_; }
    const RVec& weights() const noexcept { return w_; }
    double top() const noexcept { return t_.back(); }

    /// Doubled resolution: geometric midpoints inserted between existing levels.
    HeightLevels refined() const {
        RVec t;
        t.reserve(2 * t_.size());
        for (std::size_t j = 0; j + 1 < t_.size(); ++j) {
            t.push_back(t_[j]);
            t.push_back(t_[j] == 0.0 ? 0.5 * t_[j + 1] : std::sqrt(t_[j] * t_[j + 1]));
        }
        t.push_back(t_.back());
        return HeightLevels(std::move(t));
    }

private:
    RVec t_;
    RVec w_;
};

namespace detail {

// FFTW plans are created once per (n, sign) under a lock; execution with the
// new-array interface is thread-safe.
inline fftw_plan cached_plan(std::size_t n, int sign) {
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
    plans.emplace(key, plan);
    return plan;
}

inline void raw_dft(const cplx* in, cplx* out, std::size_t n, int sign) {
    fftw_execute_dft(cached_plan(n, sign),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

inline void check_length(std::size_t got, const SpatialGrid1D& grid, const char* what) {
    if (got != grid.size()) {
        throw ArgumentError(std::string(what) + ": length " + std::to_string(got) +
                            " does not match grid size " + std::to_string(grid.size()));
    }
}

}  // namespace detail

/// Unitary forward transform of samples on `grid` (centered coefficient order).
inline CVec forward_transform(std::span<const cplx> samples, const SpatialGrid1D& grid) {
    detail::check_length(samples.size(), grid, "forward_transform");
    const std::size_t n = grid.size();
    CVec raw(n);
    detail::raw_dft(samples.data(), raw.data(), n, FFTW_FORWARD);
    // x_j = -L + j h  =>  e^{-i k_m x_j} = (-1)^m e^{-2 pi i m j / n}
    const double scale = grid.spacing() * kInvSqrt2Pi;
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long m = static_cast<long>(i) - static_cast<long>(n / 2);
        const std::size_t src = static_cast<std::size_t>((m + static_cast<long>(n)) % static_cast<long>(n));
        const double parity = (m % 2 == 0) ? 1.0 : -1.0;
        out[i] = scale * parity * raw[src];
    }
    return out;
}

inline CVec forward_transform(std::span<const double> samples, const SpatialGrid1D& grid) {
    CVec c(samples.begin(), samples.end());
    return forward_transform(std::span<const cplx>(c), grid);
}

/// Exact inverse of forward_transform.
inline CVec inverse_transform(std::span<const cplx> coefficients, const SpatialGrid1D& grid) {
    detail::check_length(coefficients.size(), grid, "inverse_transform");
    const std::size_t n = grid.size();
    const double dk = kPi / grid.half_width();
    const double scale = dk * kInvSqrt2Pi;
    CVec raw(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long m = static_cast<long>(i) - static_cast<long>(n / 2);
        const std::size_t dst = static_cast<std::size_t>((m + static_cast<long>(n)) % static_cast<long>(n));
        const double parity = (m % 2 == 0) ? 1.0 : -1.0;
        raw[dst] = scale * parity * coefficients[i];
    }
    CVec out(n);
    detail::raw_dft(raw.data(), out.data(), n, FFTW_BACKWARD);
    return out;
}

/// Real part of the inverse transform (for coefficient sets of real fields).
inline RVec inverse_transform_real(std::span<const cplx> coefficients, const SpatialGrid1D& grid) {
    const CVec c = inverse_transform(coefficients, grid);
    RVec r(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) r[j] = c[j].real();
    return r;
}

/// Apply a Fourier symbol m(k) to real samples and return the real result.
template <class Symbol>
RVec apply_symbol(std::span<const double> samples, const SpatialGrid1D& grid, Symbol&& symbol) {
    CVec c = forward_transform(samples, grid);
    const FrequencyGrid1D freq(grid);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= symbol(freq.k(i));
    return inverse_transform_real(c, grid);
}

/// d^order f / dx^order by spectral differentiation; the Nyquist mode is dropped.
inline RVec spectral_derivative(std::span<const double> samples, const SpatialGrid1D& grid, int order) {
    if (order < 0) throw ArgumentError("spectral_derivative: negative order");
    if (order == 0) return RVec(samples.begin(), samples.end());
    CVec c = forward_transform(samples, grid);
    const FrequencyGrid1D freq(grid);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = (i == freq.nyquist_index()) ? cplx{} : c[i] * std::pow(cplx(0.0, freq.k(i)), order);
    }
    return inverse_transform_real(c, grid);
}

/// True when |f| < tol on the outer `fraction` of the grid on both ends.
inline bool edge_decay_ok(std::span<const double> samples, double tol = 1e-10, double fraction = 0.05) {
    const std::size_t n = samples.size();
    const auto band = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n))));
    for (std::size_t j = 0; j < band && j < n; ++j) {
        if (!(std::abs(samples[j]) < tol) || !(std::abs(samples[n - 1 - j]) < tol)) return false;
    }
    return true;
}

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

inline bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace oseen
