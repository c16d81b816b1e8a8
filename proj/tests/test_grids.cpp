#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oseen/grids.hpp"

using namespace oseen;

namespace {

RVec sample(const SpatialGrid1D& g, double (*fn)(double)) {
    RVec s(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) s[j] = fn(g.x(j));
    return s;
}

double gauss(double x) { return std::exp(-x * x); }

}  // namespace

TEST(SpatialGrid, PointsAndSpacing) {
    const SpatialGrid1D g(20.0, 512);
    EXPECT_DOUBLE_EQ(g.spacing(), 40.0 / 512.0);
    EXPECT_DOUBLE_EQ(g.x(0), -20.0);
    EXPECT_DOUBLE_EQ(g.x(256), 0.0);
    EXPECT_EQ(g.refined().size(), 1024u);
    EXPECT_DOUBLE_EQ(g.refined().half_width(), 20.0);
    EXPECT_EQ(g.points().size(), 512u);
}

TEST(SpatialGrid, RejectsBadArguments) {
    EXPECT_THROW(SpatialGrid1D(0.0, 16), ArgumentError);
    EXPECT_THROW(SpatialGrid1D(1.0, 15), ArgumentError);
    EXPECT_THROW(SpatialGrid1D(std::nan(""), 16), ArgumentError);
}

TEST(FrequencyGrid, CenteredOrdering) {
    const SpatialGrid1D g(10.0, 64);
    const FrequencyGrid1D f(g);
    EXPECT_DOUBLE_EQ(f.spacing(), kPi / 10.0);
    EXPECT_EQ(f.zero_index(), 32u);
    EXPECT_DOUBLE_EQ(f.k(f.zero_index()), 0.0);
    EXPECT_DOUBLE_EQ(f.k(f.nyquist_index()), -f.k_max());
    EXPECT_DOUBLE_EQ(f.k(33), kPi / 10.0);
}

TEST(Transform, ZeroSignal) {
    const SpatialGrid1D g(5.0, 32);
    const CVec c = forward_transform(RVec(32, 0.0), g);
    EXPECT_EQ(max_abs(std::span<const cplx>(c)), 0.0);
    EXPECT_EQ(max_abs(inverse_transform_real(CVec(32), g)), 0.0);
}

TEST(Transform, CosineHitsTwoModes) {
    const SpatialGrid1D g(8.0, 64);
    const FrequencyGrid1D f(g);
    RVec s(g.size());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = std::cos(kPi * g.x(j) / g.half_width());
    const CVec c = forward_transform(s, g);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (f.mode(i) == 1 || f.mode(i) == -1) {
            EXPECT_NEAR(std::abs(c[i]), std::abs(c[f.zero_index() + 1]), 1e-14);
            EXPECT_GT(std::abs(c[i]), 1.0);
        } else {
            EXPECT_LT(std::abs(c[i]), 1e-12);
        }
    }
}

// Under the unitary convention exp(-x^2) has transform exp(-k^2/4)/sqrt(2).
TEST(Transform, GaussianMatchesAnalyticTransform) {
    const SpatialGrid1D g(20.0, 512);
    const FrequencyGrid1D f(g);
    const CVec c = forward_transform(sample(g, gauss), g);
    for (std::size_t i = 1; i < c.size(); ++i) {
        const double k = f.k(i);
        EXPECT_NEAR(c[i].real(), std::exp(-k * k / 4.0) / std::sqrt(2.0), 1e-10);
        EXPECT_NEAR(c[i].imag(), 0.0, 1e-10);
    }
    // independent check: midpoint quadrature of the defining integral at k = 1.3
    double re = 0.0;
    const double h = 1e-3;
    for (double x = -12.0 + 0.5 * h; x < 12.0; x += h) re += std::cos(1.3 * x) * gauss(x) * h;
    EXPECT_NEAR(re * kInvSqrt2Pi, std::exp(-1.69 / 4.0) / std::sqrt(2.0), 1e-10);
}

TEST(Transform, InverseOfGaussianCoefficients) {
    const SpatialGrid1D g(20.0, 512);
    const FrequencyGrid1D f(g);
    CVec c(g.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::exp(-f.k(i) * f.k(i) / 4.0) / std::sqrt(2.0);
    const RVec s = inverse_transform_real(c, g);
    for (std::size_t j = 0; j < s.size(); ++j) EXPECT_NEAR(s[j], gauss(g.x(j)), 1e-10);
}

TEST(Transform, RoundTripRandom) {
    const SpatialGrid1D g(3.0, 128);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RVec s(g.size());
    for (auto& v : s) v = u(rng);
    const RVec back = inverse_transform_real(forward_transform(s, g), g);
    for (std::size_t j = 0; j < s.size(); ++j) EXPECT_NEAR(back[j], s[j], 1e-12);
}

TEST(Transform, Parseval) {
    const SpatialGrid1D g(6.0, 256);
    const FrequencyGrid1D f(g);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> nd;
    RVec s(g.size());
    for (auto& v : s) v = nd(rng);
    const CVec c = forward_transform(s, g);
    double a = 0.0, b = 0.0;
    for (double v : s) a += v * v * g.spacing();
    for (const auto& v : c) b += std::norm(v) * f.spacing();
    EXPECT_NEAR(a, b, 1e-10 * a);
}

TEST(Transform, LengthMismatchThrows) {
    const SpatialGrid1D g(3.0, 16);
    EXPECT_THROW(forward_transform(RVec(8, 0.0), g), ArgumentError);
    EXPECT_THROW(inverse_transform(CVec(8), g), ArgumentError);
}

TEST(SpectralDerivative, GaussianDerivatives) {
    const SpatialGrid1D g(20.0, 512);
    const RVec s = sample(g, gauss);
    const RVec d1 = spectral_derivative(s, g, 1);
    const RVec d2 = spectral_derivative(s, g, 2);
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double x = g.x(j);
        EXPECT_NEAR(d1[j], -2.0 * x * gauss(x), 1e-10);
        EXPECT_NEAR(d2[j], (4.0 * x * x - 2.0) * gauss(x), 1e-10);
    }
}

TEST(HeightLevels, WeightsIntegrateExponentials) {
    const HeightLevels lv = HeightLevels::geometric(1e-3, 60.0, 96);
    EXPECT_EQ(lv[0], 0.0);
    EXPECT_DOUBLE_EQ(lv.top(), 60.0);
    for (double rate : {0.1, 1.0, 5.0}) {
        double s = 0.0;
        for (std::size_t j = 0; j < lv.size(); ++j) s += lv.weight(j) * std::exp(-rate * lv[j]);
        EXPECT_NEAR(s, (1.0 - std::exp(-rate * 60.0)) / rate, 2e-3 / rate);
    }
    for (double w : lv.weights()) EXPECT_GT(w, 0.0);
}

TEST(HeightLevels, RefinedInsertsMidpoints) {
    const HeightLevels lv = HeightLevels::geometric(1e-2, 10.0, 12);
    const HeightLevels r = lv.refined();
    EXPECT_EQ(r.size(), 2 * lv.size() - 1);
    for (std::size_t j = 0; j < lv.size(); ++j) EXPECT_DOUBLE_EQ(r[2 * j], lv[j]);
}

TEST(HeightLevels, RejectsUnorderedLevels) {
    EXPECT_THROW(HeightLevels(RVec{0.0, 1.0, 1.0}), ArgumentError);
    EXPECT_THROW(HeightLevels(RVec{-1.0, 1.0}), ArgumentError);
    EXPECT_THROW(HeightLevels::geometric(1.0, 0.5, 10), ArgumentError);
}

TEST(EdgeDecay, DetectsTruncatedSignals) {
    const SpatialGrid1D g(20.0, 512);
    EXPECT_TRUE(edge_decay_ok(sample(g, gauss)));
    EXPECT_FALSE(edge_decay_ok(sample(g, [](double x) { return std::exp(-std::abs(x) / 5.0); })));
}
