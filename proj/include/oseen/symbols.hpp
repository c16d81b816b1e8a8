#pragma once

// Closed-form functions of the frequency k for the half-plane Oseen problem
//
//     a1 u,1 + a2 u,2 - Delta u + grad p = 0,   div u = 0   in x2 > 0,
//
// transformed in x1 (k) with x2 -> t. The decaying eigenvalues are
//     lambda1 = -|k|,   lambda3 = (a2 - Delta) / 2,   Delta = sqrt(a2^2 + 4(k^2 + i a1 k)),
// with the principal square root (Re Delta >= 0).

#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "oseen/error.hpp"
#include "oseen/grids.hpp"

namespace oseen {

struct OseenParams {
    double a1 = 1.0;
    double a2 = 0.0;
    double f = 1.0;
    std::optional<double> v_inf;

    void validate() const {
        if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(f)) {
            throw ArgumentError("OseenParams: non-finite parameter");
        }
        if (!(a1 * a1 + a2 * a2 > 0.0)) throw ArgumentError("OseenParams: need a1^2 + a2^2 > 0");
        if (!(f > 0.0)) throw ArgumentError("OseenParams: friction f must be positive");
        if (v_inf && std::abs(a1 * a1 + a2 * a2 - (*v_inf) * (*v_inf)) > 1e-12) {
            throw ArgumentError("OseenParams: a1^2 + a2^2 must equal v_inf^2");
        }
    }
};

enum class Regime { Elliptic, Transitional, Parabolic };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::Elliptic: return "elliptic";
        case Regime::Transitional: return "transitional";
        case Regime::Parabolic: return "parabolic";
    }
    return "?";
}

/// Sign of a2 decides the boundary point type: a2 < 0 upstream, a2 > 0 wake side.
inline Regime regime_of(const OseenParams& params) {
    if (params.a2 < 0.0) return Regime::Elliptic;
    if (params.a2 > 0.0) return Regime::Parabolic;
    return Regime::Transitional;
}

inline double sigma(double k) { return (k > 0.0) ? 1.0 : ((k < 0.0) ? -1.0 : 0.0); }

struct EigenSet {
    cplx lambda1;
    cplx lambda3;
    cplx lambda_plus;
    cplx Delta;
};

inline cplx discriminant(const OseenParams& params, double k) {
    return std::sqrt(cplx(params.a2 * params.a2 + 4.0 * k * k, 4.0 * params.a1 * k));
}

inline EigenSet eigenvalues(const OseenParams& params, double k) {
    const cplx d = discriminant(params, k);
    return EigenSet{cplx(-std::abs(k), 0.0), 0.5 * (params.a2 - d), 0.5 * (params.a2 + d), d};
}

/// lambda_- of the pressure-free system; identical to lambda3.
inline cplx lambda_minus(const OseenParams& params, double k) { return eigenvalues(params, k).lambda3; }

struct BoundaryCoefficients {
    cplx U01;
    cplx U03;
};

/// Amplitudes of the e^{t lambda1} and e^{t lambda3} branches of v1 for slip data (b^, d^).
///
/// Valid for k != 0. The factor lambda1 / (ik) is evaluated as i sigma(k) so the
/// small-|k| limit does not lose digits.
inline BoundaryCoefficients boundary_coefficients(const OseenParams& params, cplx b_hat, cplx d_hat, double k) {
    if (k == 0.0) {
        throw ArgumentError("boundary_coefficients: k = 0 is handled by the zero-mode policy");
    }
    const EigenSet e = eigenvalues(params, k);
    const cplx ik(0.0, k);
    const cplx l1_over_ik(0.0, sigma(k));
    const cplx num = d_hat * (e.lambda3 * (-params.f + e.lambda3) + k * k) + ik * b_hat;
    const cplx den = (e.lambda3 - e.lambda1) * (-params.f + e.lambda3 + e.lambda1);
    const cplx U01 = l1_over_ik * num / den;
    const cplx U03 = (b_hat - ik * d_hat - (params.f - e.lambda1) * U01) / (params.f - e.lambda3);
    return {U01, U03};
}

struct DirichletData {
    cplx D1;
    cplx D2;
};

/// Boundary trace u(x1, 0) of the slip solution, per mode.
///
/// D1^ = (b^ - d^ (i sigma lambda3 + i k)) / (f - lambda1 - lambda3),  D2^ = -d^.
/// The denominator has real part >= f > 0, so every k (including 0) is regular.
inline DirichletData dirichlet_reduction(const OseenParams& params, cplx b_hat, cplx d_hat, double k) {
    const EigenSet e = eigenvalues(params, k);
    const cplx i(0.0, 1.0);
    const cplx D1 = (b_hat - d_hat * (i * sigma(k) * e.lambda3 + i * k)) / (params.f - e.lambda1 - e.lambda3);
    return {D1, -d_hat};
}

}  // namespace oseen
