#include <gtest/gtest.h>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <sstream>

#include "oseen/experiments.hpp"
#include "oseen/halfplane.hpp"

using namespace oseen;

namespace {

OseenParams params(double a1, double a2, double f = 1.0) { return OseenParams{a1, a2, f, {}}; }

const SpatialGrid1D kGrid(20.0, 512);

BoundarySignal gauss_signal(SignalKind kind, double c = 0.0, double w = 1.0, double a = 1.0) {
    return BoundarySignal::sample(kGrid, kind, [=](double x) { return a * std::exp(-(x - c) * (x - c) / (w * w)); });
}

BoundarySignal dgauss_signal(SignalKind kind) {
    return BoundarySignal::sample(kGrid, kind, [](double x) { return -2.0 * x * std::exp(-x * x); });
}

double max_diff(const RVec& a, const RVec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Single-mode slip problem solved by second-order finite differences on [0, T]:
/// the Oseen system reduces to (c + a2 D - D^2)(k^2 - D^2) v2 = 0, c = k^2 + i a1 k, with
/// v2(0) = -d, -(v1' + ik v2) + f v1 = b at t = 0 (v1 = i v2'/k) and v2 = v2' = 0 at t = T.
Eigen::VectorXcd fd_mode_v2(const OseenParams& P, double k, cplx b, cplx d, double T, int N) {
    using C = std::complex<double>;
    const double h = T / N;
    const C ik(0.0, k);
    const C c = k * k + C(0.0, P.a1 * k);
    // D^4 - a2 D^3 - (c + k^2) D^2 + a2 k^2 D + c k^2
    const C c4 = 1.0, c3 = -P.a2, c2 = -(c + k * k), c1 = P.a2 * k * k, c0 = c * k * k;
    std::vector<Eigen::Triplet<C>> trip;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(N + 1);
    trip.emplace_back(0, 0, 1.0);
    rhs[0] = -d;
    // -(i/k) v'' - ik v + (i f/k) v' = b with one-sided second-order stencils
    const C ivk(0.0, 1.0 / k), ifk(0.0, P.f / k);
    const double d1[3] = {-1.5 / h, 2.0 / h, -0.5 / h};
    const double d2[4] = {2.0 / (h * h), -5.0 / (h * h), 4.0 / (h * h), -1.0 / (h * h)};
    for (int j = 0; j < 4; ++j) {
        C v = -ivk * d2[j];
        if (j < 3) v += ifk * d1[j];
        if (j == 0) v -= ik;
        trip.emplace_back(1, j, v);
    }
    rhs[1] = b;
    const double h2 = h * h, h3 = h2 * h, h4 = h3 * h;
    const double s4[5] = {1, -4, 6, -4, 1}, s3[5] = {-0.5, 1, 0, -1, 0.5}, s2[5] = {0, 1, -2, 1, 0},
                 s1[5] = {0, -0.5, 0, 0.5, 0}, s0[5] = {0, 0, 1, 0, 0};
    for (int i = 2; i <= N - 2; ++i) {
        for (int q = 0; q < 5; ++q) {
            const C v = c4 * s4[q] / h4 + c3 * s3[q] / h3 + c2 * s2[q] / h2 + c1 * s1[q] / h + c0 * s0[q];
            if (v != C{}) trip.emplace_back(i, i - 2 + q, v);
        }
    }
    trip.emplace_back(N - 1, N, 1.5 / h);
    trip.emplace_back(N - 1, N - 1, -2.0 / h);
    trip.emplace_back(N - 1, N - 2, 0.5 / h);
    trip.emplace_back(N, N, 1.0);
    Eigen::SparseMatrix<C> A(N + 1, N + 1);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<C>> lu;
    lu.compute(A);
    EXPECT_EQ(lu.info(), Eigen::Success);
    return lu.solve(rhs);
}

}  // namespace

TEST(SolveSlip, ZeroDataGivesZeroFields) {
    const auto z1 = BoundarySignal::zero(kGrid, SignalKind::SlipB), z2 = BoundarySignal::zero(kGrid, SignalKind::NormalD);
    const auto s = solve_slip(params(1, 0), z1, z2, kGrid, HeightLevels::geometric(1e-3, 50.0, 32));
    EXPECT_EQ(max_abs(s.u1), 0.0);
    EXPECT_EQ(max_abs(s.u2), 0.0);
    EXPECT_EQ(max_abs(s.p), 0.0);
    const auto r = residual(params(1, 0), s);
    EXPECT_EQ(r.pde_residual_linf, 0.0);
    EXPECT_EQ(r.bc_slip_residual_linf, 0.0);
}

// Per-mode profile against an independent finite-difference solution of the mode ODE.
TEST(SolveSlip, ModeProfileMatchesFiniteDifferenceOracle) {
    for (const auto& P : {params(1, 0), params(1, -1), params(1, 1, 0.5), params(0.3, 2.0, 2.0)}) {
        for (double k : {1.0, -0.6, 2.5}) {
            const cplx b(0.7, -0.2), d(0.3, 0.4);
            const auto c = boundary_coefficients(P, b, d, k);
            const EigenSet e = eigenvalues(P, k);
            const double T = 30.0;
            const int N = 6000;
            const Eigen::VectorXcd v = fd_mode_v2(P, k, b, d, T, N);
            for (double t : {0.25, 1.0, 2.0, 4.0}) {
                const int j = static_cast<int>(std::lround(t / (T / N)));
                const cplx exact = cplx(0.0, sigma(k)) * c.U01 * std::exp(e.lambda1 * t) -
                                   cplx(0.0, k) / e.lambda3 * c.U03 * std::exp(e.lambda3 * t);
                EXPECT_NEAR(std::abs(v[j] - exact), 0.0, 2e-4 * (std::abs(exact) + 1e-2))
                    << "a=(" << P.a1 << "," << P.a2 << ") k=" << k << " t=" << t;
            }
        }
    }
}

TEST(SolveSlip, SingleModeDataStaysSingleMode) {
    const FrequencyGrid1D freq(kGrid);
    const double k0 = freq.k(freq.zero_index() + 5);
    const auto b = BoundarySignal::sample(kGrid, SignalKind::SlipB, [=](double x) { return std::cos(k0 * x); });
    const auto d = BoundarySignal::zero(kGrid, SignalKind::NormalD);
    const OseenParams P = params(1, 0);
    const auto s = solve_slip(P, b, d, kGrid, HeightLevels::geometric(1e-3, 40.0, 48));
    const auto r = residual(P, s);
    EXPECT_LT(r.pde_residual_linf, 1e-8);
    EXPECT_LT(r.divergence_linf, 1e-8);
    EXPECT_LT(r.bc_slip_residual_linf, 1e-8);
    EXPECT_LT(r.bc_normal_residual_linf, 1e-8);
    const CVec c = forward_transform(s.row(s.u1, 10), kGrid);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (std::abs(freq.k(i)) != k0) {
            EXPECT_LT(std::abs(c[i]), 1e-12);
        }
    }
}

TEST(SolveSlip, ResidualsOnCorpusSignals) {
    const auto corpus = make_corpus(kGrid);
    for (const auto& P : {params(1, 0), params(1, -1), params(1, 1)}) {
        for (std::size_t i = 0; i < corpus.size(); i += 4) {
            const BoundarySignal b(kGrid, corpus[i].samples, SignalKind::SlipB);
            const BoundarySignal d(kGrid, remove_mean(corpus[(i + 7) % 20].samples, kGrid), SignalKind::NormalD);
            const auto s = solve_slip(P, b, d, kGrid, default_levels(P, b, d));
            const auto r = residual(P, s);
            EXPECT_LT(r.pde_residual_linf, 1e-6);
            EXPECT_LT(r.divergence_linf, 1e-10);
            EXPECT_LT(r.bc_slip_residual_linf, 1e-8);
            EXPECT_LT(r.bc_normal_residual_linf, 1e-8);
            // decay at infinity; for a2 >= 0 the mean of b drives a uniform stream (lambda3(0) = 0)
            RVec top(s.row(s.u1, s.nt() - 1).begin(), s.row(s.u1, s.nt() - 1).end());
            double mean = 0.0;
            for (double v : top) mean += v / static_cast<double>(top.size());
            for (double& v : top) v -= mean;
            EXPECT_LT(max_abs(top), 1e-8);
            EXPECT_LT(max_abs(s.row(s.u2, s.nt() - 1)), 1e-8);
        }
    }
}

TEST(SolveSlip, NormalVelocityTraceIsMinusD) {
    const OseenParams P = params(1, 0.5);
    const auto b = gauss_signal(SignalKind::SlipB);
    const auto d = dgauss_signal(SignalKind::NormalD);
    const auto s = solve_slip(P, b, d, kGrid, default_levels(P, b, d));
    const BoundaryTrace tr = trace(s);
    for (std::size_t j = 0; j < kGrid.size(); ++j) EXPECT_NEAR(tr.u2[j], -d.samples[j], 1e-12);
}

TEST(SolveSlip, Linearity) {
    const OseenParams P = params(1, -0.5);
    const HeightLevels lv = HeightLevels::geometric(1e-3, 60.0, 32);
    const auto b1 = gauss_signal(SignalKind::SlipB), b2 = gauss_signal(SignalKind::SlipB, 1.0, 0.7, 2.0);
    const auto d1 = dgauss_signal(SignalKind::NormalD), d2 = BoundarySignal::zero(kGrid, SignalKind::NormalD);
    const double al = 0.3, be = -1.7;
    RVec bs(kGrid.size()), ds(kGrid.size());
    for (std::size_t j = 0; j < bs.size(); ++j) {
        bs[j] = al * b1.samples[j] + be * b2.samples[j];
        ds[j] = al * d1.samples[j] + be * d2.samples[j];
    }
    const auto s = solve_slip(P, BoundarySignal(kGrid, bs, SignalKind::SlipB), BoundarySignal(kGrid, ds, SignalKind::NormalD),
                              kGrid, lv);
    const auto s1 = solve_slip(P, b1, d1, kGrid, lv), s2 = solve_slip(P, b2, d2, kGrid, lv);
    for (std::size_t q = 0; q < s.u1.size(); ++q) {
        EXPECT_NEAR(s.u1[q], al * s1.u1[q] + be * s2.u1[q], 1e-12);
        EXPECT_NEAR(s.p[q], al * s1.p[q] + be * s2.p[q], 1e-12);
    }
}

// The pressure lives on the e^{lambda1 t} = e^{-|k| t} branch only.
TEST(SolveSlip, PressureIsPurePoissonProfile) {
    const OseenParams P = params(1, 1);
    const auto b = gauss_signal(SignalKind::SlipB), d = dgauss_signal(SignalKind::NormalD);
    const auto s = solve_slip(P, b, d, kGrid, HeightLevels::geometric(1e-3, 30.0, 32));
    const FrequencyGrid1D freq(kGrid);
    for (std::size_t i = 1; i < kGrid.size(); ++i) {
        const ModalProfile& m = (*s.modal)[i];
        EXPECT_EQ(m[1].p, cplx(0.0));
        EXPECT_EQ(m[0].rate, cplx(-std::abs(freq.k(i))));
    }
    // fitted from the physical field: p^(k, t) / p^(k, 0) = e^{-|k| t}
    const CVec p0 = forward_transform(s.row(s.p, 0), kGrid);
    const std::size_t l = 12;
    const CVec pl = forward_transform(s.row(s.p, l), kGrid);
    for (std::size_t i = 1; i < kGrid.size(); ++i) {
        if (std::abs(p0[i]) < 1e-6) continue;
        EXPECT_NEAR(std::abs(pl[i] / p0[i] - std::exp(-std::abs(freq.k(i)) * s.levels[l])), 0.0, 1e-10);
    }
}

TEST(SolveSlip, NonzeroMeanNormalDataWarns) {
    const OseenParams P = params(1, 0);
    const auto s = solve_slip(P, BoundarySignal::zero(kGrid, SignalKind::SlipB), gauss_signal(SignalKind::NormalD), kGrid,
                              HeightLevels::geometric(1e-3, 10.0, 16));
    ASSERT_FALSE(s.warnings.empty());
    EXPECT_NE(s.warnings.back().find("nonzero mean"), std::string::npos);
}

TEST(SolveSlip, RejectsMismatchedGrid) {
    const SpatialGrid1D other(10.0, 512);
    const auto b = BoundarySignal::zero(other, SignalKind::SlipB);
    EXPECT_THROW(solve_slip(params(1, 0), b, b, kGrid, HeightLevels::geometric(1e-3, 1.0, 8)), ArgumentError);
}

TEST(SolveDirichlet, ZeroData) {
    const auto z = BoundarySignal::zero(kGrid, SignalKind::DirichletD1);
    const auto s = solve_dirichlet(params(1, 0), z, z, kGrid, HeightLevels::geometric(1e-3, 10.0, 16));
    EXPECT_EQ(max_abs(s.u1), 0.0);
}

TEST(SolveDirichlet, ReducedProfileIsLambdaMinusExponential) {
    const OseenParams P = params(1, 0);
    const auto D1 = gauss_signal(SignalKind::DirichletD1);
    const auto D2 = BoundarySignal::zero(kGrid, SignalKind::DirichletD2);
    const auto s = solve_dirichlet(P, D1, D2, kGrid, HeightLevels::geometric(1e-3, 30.0, 32));
    EXPECT_EQ(max_abs(s.p), 0.0);
    const FrequencyGrid1D freq(kGrid);
    const CVec h = forward_transform(std::span<const double>(D1.samples), kGrid);
    const std::size_t l = 9;
    const CVec c = forward_transform(s.row(s.u1, l), kGrid);
    for (std::size_t i = 1; i < kGrid.size(); ++i) {
        EXPECT_NEAR(std::abs(c[i] - std::exp(s.levels[l] * lambda_minus(P, freq.k(i))) * h[i]), 0.0, 1e-12);
    }
    const auto r = residual(P, s);
    EXPECT_LT(r.bc_slip_residual_linf, 1e-12);
    EXPECT_LT(r.bc_normal_residual_linf, 1e-12);
}

// solve_slip(b, d) and the Oseen Dirichlet solve of the reduced data give the same velocity.
TEST(SolveDirichlet, SlipEquivalence) {
    const FrequencyGrid1D freq(kGrid);
    const auto corpus = make_corpus(kGrid);
    for (const auto& P : {params(1, 0), params(1, -1), params(0.5, 1, 2.0)}) {
        for (std::size_t i = 0; i < corpus.size(); i += 3) {
            const BoundarySignal b(kGrid, corpus[i].samples, SignalKind::SlipB);
            const BoundarySignal d(kGrid, remove_mean(corpus[(i + 7) % 20].samples, kGrid), SignalKind::NormalD);
            const CVec bh = forward_transform(std::span<const double>(b.samples), kGrid);
            const CVec dh = forward_transform(std::span<const double>(d.samples), kGrid);
            CVec D1(kGrid.size()), D2(kGrid.size());
            for (std::size_t m = 1; m < kGrid.size(); ++m) {
                const auto D = dirichlet_reduction(P, bh[m], dh[m], freq.k(m));
                D1[m] = D.D1;
                D2[m] = D.D2;
            }
            const BoundarySignal s1(kGrid, inverse_transform_real(D1, kGrid), SignalKind::DirichletD1);
            const BoundarySignal s2(kGrid, inverse_transform_real(D2, kGrid), SignalKind::DirichletD2);
            const HeightLevels lv = default_levels(P, b, d, 48);
            const auto slip = solve_slip(P, b, d, kGrid, lv);
            const auto dir = solve_dirichlet(P, s1, s2, kGrid, lv, DirichletModel::Oseen);
            EXPECT_LT(max_diff(slip.u1, dir.u1), 1e-10);
            EXPECT_LT(max_diff(slip.u2, dir.u2), 1e-10);
            const auto red = solve_dirichlet(P, s1, s2, kGrid, lv, DirichletModel::Reduced);
            EXPECT_LT(max_diff(trace(slip).u1, trace(red).u1), 1e-12);
        }
    }
}

TEST(Residual, FiniteDifferencePathAndLinearGrowth) {
    const OseenParams P = params(1, 0);
    const auto b = gauss_signal(SignalKind::SlipB), d = dgauss_signal(SignalKind::NormalD);
    const HeightLevels lv = HeightLevels::geometric(1e-3, 40.0, 160);
    const auto s = solve_slip(P, b, d, kGrid, lv);
    const auto fd = residual(P, strip_modal(s));
    EXPECT_LT(fd.pde_residual_linf, 1e-2);
    EXPECT_LT(fd.bc_normal_residual_linf, 1e-12);
    // perturbing p by eps * e^{-(x1^2 + t)} adds eps times a fixed residual
    auto perturbed = [&](double eps) {
        auto q = strip_modal(s);
        for (std::size_t l = 0; l < q.nt(); ++l) {
            for (std::size_t j = 0; j < q.nx(); ++j) {
                const double x = kGrid.x(j);
                q.p[q.index(l, j)] += eps * std::exp(-x * x - q.levels[l]);
            }
        }
        return residual(P, q).pde_residual_linf;
    };
    const double r1 = perturbed(1.0), r2 = perturbed(2.0);
    EXPECT_NEAR(r2 / r1, 2.0, 0.05);
}

TEST(Dumps, BinaryRoundTripAndCsvHeader) {
    const OseenParams P = params(1, 0);
    const auto b = gauss_signal(SignalKind::SlipB), d = dgauss_signal(SignalKind::NormalD);
    const auto s = solve_slip(P, b, d, kGrid, HeightLevels::geometric(1e-3, 20.0, 8));
    std::stringstream bin;
    write_binary(bin, s);
    const auto back = read_binary(bin);
    EXPECT_EQ(back.grid, s.grid);
    EXPECT_EQ(back.levels.values(), s.levels.values());
    EXPECT_EQ(back.u1, s.u1);
    EXPECT_EQ(back.p, s.p);
    std::stringstream bad("NOTMAGIC........");
    EXPECT_THROW(read_binary(bad), ArgumentError);
    std::stringstream csv;
    write_csv(csv, s);
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "x1,x2,u1,u2,p");
}

TEST(Levels, DecayHeightCoversSlowestMode) {
    const OseenParams P = params(1, 0);
    const auto b = gauss_signal(SignalKind::SlipB), d = BoundarySignal::zero(kGrid, SignalKind::NormalD);
    const HeightLevels lv = default_levels(P, b, d, 64, 1e-3);
    EXPECT_EQ(lv.size(), 64u);
    EXPECT_EQ(lv[0], 0.0);
    const FrequencyGrid1D freq(kGrid);
    const double slow = -lambda_minus(P, freq.spacing()).real();
    EXPECT_GE(lv.top() * slow, -std::log(1e-14) * 0.999);
}
