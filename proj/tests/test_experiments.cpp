#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oseen/experiments.hpp"

using namespace oseen;

namespace {

OseenParams params(double a1, double a2, double f = 1.0) { return OseenParams{a1, a2, f, {}}; }

RVec gaussian(const SpatialGrid1D& g, double width, double center = 0.0) {
    RVec s(g.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double x = (g.x(j) - center) / width;
        s[j] = std::exp(-x * x);
    }
    return s;
}

RVec scaled(RVec v, double c) {
    for (double& x : v) x *= c;
    return v;
}

}  // namespace

TEST(Corpus, DeterministicAndDistinct) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(rng);
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
    const SpatialGrid1D g(20.0, 512);
    const auto a = make_corpus(g), b = make_corpus(g), c = make_corpus(g, 99);
    ASSERT_EQ(a.size(), 20u);
    std::set<std::string> names;
    for (std::size_t i = 0; i < a.size(); ++i) {
        names.insert(a[i].name);
        EXPECT_EQ(a[i].samples, b[i].samples);
        EXPECT_TRUE(edge_decay_ok(a[i].samples)) << a[i].name;
    }
    EXPECT_EQ(names.size(), 20u);
    EXPECT_NE(a[0].samples, c[0].samples);
    // parameter-defined: the refined grid samples the same functions
    const auto fine = make_corpus(g.refined());
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_DOUBLE_EQ(fine[3].samples[2 * j], a[3].samples[j]);
}

TEST(Corpus, RemoveMeanAndNamedSignals) {
    const SpatialGrid1D g(20.0, 512);
    const RVec m = remove_mean(gaussian(g, 1.3, 0.7), g);
    double mass = 0.0;
    for (double v : m) mass += v * g.spacing();
    EXPECT_NEAR(mass, 0.0, 1e-12);
    EXPECT_EQ(max_abs(named_signal("zero", g)), 0.0);
    EXPECT_EQ(named_signal("gauss", g).size(), g.size());
    for (const auto& c : make_corpus(g)) {
        if (c.name == "box2") {
            EXPECT_EQ(named_signal("box2", g), c.samples);
        }
    }
    EXPECT_THROW(named_signal("nope", g), ArgumentError);
    const auto pairs = corpus_pairs(g);
    ASSERT_EQ(pairs.size(), 20u);
    EXPECT_NE(pairs[0].name.find('/'), std::string::npos);
}

TEST(PressureSweep, ZeroDataAndScaleInvariance) {
    const SweepGrid sg;
    const RVec z(sg.grid.size(), 0.0);
    const RVec b = gaussian(sg.grid, 1.0), d = remove_mean(gaussian(sg.grid, 0.8, 0.5), sg.grid);
    const std::vector<DataPair> data{{"zero", z, z}, {"one", b, d}, {"three", scaled(b, 3.0), scaled(d, 3.0)}};
    for (const auto& P : {params(1, 0), params(1, -1), params(1, 1)}) {
        const auto rows = pressure_estimate_sweep(P, data, {2.0, 3.0}, sg);
        ASSERT_EQ(rows.size(), 6u);
        EXPECT_EQ(rows[0].ratio, 0.0);
        EXPECT_EQ(rows[0].lhs_norm, 0.0);
        for (std::size_t j = 2; j < 4; ++j) {
            EXPECT_GT(rows[j].ratio, 0.0);
            EXPECT_NEAR(rows[j + 2].ratio, rows[j].ratio, 1e-10 * rows[j].ratio);
            EXPECT_EQ(rows[j].regime, regime_of(P));
            EXPECT_EQ(rows[j].ratio_ablated.has_value(), P.a2 <= 0.0);
            if (rows[j].ratio_ablated) {
                EXPECT_GE(*rows[j].ratio_ablated, rows[j].ratio);
            }
        }
    }
    EXPECT_THROW(pressure_estimate_sweep(params(1, 0), data, {1.5}, sg), ArgumentError);
}

TEST(PressureSweep, CorpusRatiosStableUnderRefinement) {
    const SweepGrid sg;
    const SweepGrid fine = sg.refined();
    auto data = corpus_pairs(sg.grid);
    data.resize(3);
    auto fine_data = corpus_pairs(fine.grid);
    fine_data.resize(3);
    const OseenParams P = params(1, 0);
    for (double r : {2.0, 3.0}) {
        const double a = max_ratio(pressure_estimate_sweep(P, data, {r}, sg));
        const double b = max_ratio(pressure_estimate_sweep(P, fine_data, {r}, fine));
        EXPECT_LT(std::abs(a - b) / b, 0.1) << r;
    }
}

TEST(VelocityFamilies, MembersPerRegime) {
    const auto A = velocity_exponents(4.0);
    const auto e = velocity_families(params(1, -1), 4.0);
    ASSERT_EQ(e.b.members.size(), 2u);
    EXPECT_FALSE(e.b.members[0].homogeneous);
    EXPECT_TRUE(e.b_ablated.members[0].homogeneous);
    const auto t = velocity_families(params(1, 0), 4.0);
    EXPECT_EQ(t.d.members.size(), 4u);
    EXPECT_TRUE(t.b_ablated.members.empty());
    const auto p = velocity_families(params(1, 1), 4.0);
    // b: 1 - 1/r for both r, 1 - 2/r only for r = 4 (order 1 - 7/6 < 0 is dropped)
    ASSERT_EQ(p.b.members.size(), 3u);
    EXPECT_DOUBLE_EQ(p.b.members[2].s, 0.5);
    EXPECT_EQ(p.d.members.size(), 4u);
    EXPECT_DOUBLE_EQ(p.d.members[2].s, 2.0 - 2.0 / A[0]);
    EXPECT_EQ(p.d_ablated.members.size(), 2u);
}

// For a2 > 0 the W^{2-2/r} member dominates a wide d, so dropping it raises the ratio.
TEST(VelocitySweep, AblationRaisesRatioForWideNormalData) {
    const SweepGrid sg;
    const RVec z(sg.grid.size(), 0.0);
    const std::vector<DataPair> data{{"wide", z, gaussian(sg.grid, 3.0)}};
    const auto rows = velocity_estimate_sweep(params(1, 1), data, {4.0}, sg);
    ASSERT_EQ(rows.size(), 1u);
    ASSERT_TRUE(rows[0].ratio_ablated.has_value());
    EXPECT_GT(*rows[0].ratio_ablated, 1.2 * rows[0].ratio);
    EXPECT_THROW(velocity_estimate_sweep(params(1, 1), data, {3.0}, sg), ArgumentError);
}

TEST(VelocitySweep, ScaleInvariance) {
    const SweepGrid sg;
    const RVec b = gaussian(sg.grid, 1.0), d = remove_mean(gaussian(sg.grid, 0.8, 0.5), sg.grid);
    const std::vector<DataPair> data{{"one", b, d}, {"half", scaled(b, 0.5), scaled(d, 0.5)}};
    const auto rows = velocity_estimate_sweep(params(1, -1), data, {3.5}, sg);
    EXPECT_NEAR(rows[1].ratio, rows[0].ratio, 1e-10 * rows[0].ratio);
    EXPECT_DOUBLE_EQ(max_ratio(rows, 3.5), std::max(rows[0].ratio, rows[1].ratio));
    EXPECT_EQ(max_ratio(rows, 4.0), 0.0);
}

TEST(Asymptotics, SlopesPerRegime) {
    const auto rows = asymptotics_report({params(0, 1), params(1, 1), params(1, 0), params(1, -1), params(2, 0.5)});
    ASSERT_EQ(rows.size(), 5u);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.small_ok) << r.params.a1 << "," << r.params.a2 << " slope " << r.small_slope;
        EXPECT_TRUE(r.large_ok);
    }
    EXPECT_EQ(rows[2].small_expected, 0.5);
    EXPECT_EQ(rows[3].small_expected, 0.0);
    EXPECT_THROW(asymptotics_report({params(0, 0)}), ArgumentError);
    const LineFit f = fit_line({0.0, 1.0, 2.0}, {1.0, 3.0, 5.0});
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
}

TEST(Wake, PlaneFundamentalSolutionIsAnisotropic) {
    const SpatialGrid1D g(40.0, 512);
    const OseenParams P = params(1, 0);
    const WakeProfile w = wake_profile(P, point_source_field(P, g, g));
    ASSERT_EQ(w.rays.size(), 4u);
    EXPECT_GT(w.anisotropy_ratio, 2.0);
    EXPECT_NEAR(w.transverse_ratio, 1.0, 0.2);
    EXPECT_THROW(wake_profile(P, PlaneField(g, g)), NumericalError);
}

TEST(Trace, RegimeAndZeroForcing) {
    const TraceGrid tg;
    const std::vector<std::pair<std::string, PlaneField>> zero{{"zero", PlaneField(tg.grid1, tg.grid2)}};
    EXPECT_THROW(trace_theorem_check(params(1, 0), zero), RegimeError);
    const TraceReport r = trace_theorem_check(params(1, -1), zero);
    EXPECT_EQ(r.rows[0].ratio, 0.0);
    EXPECT_EQ(r.max_mismatch, 0.0);
}

TEST(Trace, CorpusForcings) {
    const TraceGrid tg;
    const auto forcings = trace_forcings(tg, 3);
    ASSERT_EQ(forcings.size(), 3u);
    const TraceReport r = trace_theorem_check(params(1, -1), forcings);
    EXPECT_LT(r.max_mismatch, 1e-10);
    EXPECT_TRUE(r.multiplier_decay_ok);
    EXPECT_GT(r.max_ratio, 0.0);
    EXPECT_EQ(r.multiplier_constant.size(), 4u);
}

TEST(SpotChecks, WholePlaneConstantsAreStable) {
    const OseenParams P = params(1, 0);
    const SpotCheck a = scalar_gradient_estimate(P, SpatialGrid1D(12.0, 128), 2.0, 5);
    const SpotCheck b = scalar_gradient_estimate(P, SpatialGrid1D(12.0, 256), 2.0, 5);
    EXPECT_EQ(a.samples, 5u);
    EXPECT_NEAR(a.max_constant / b.max_constant, 1.0, 0.02);
    EXPECT_THROW(scalar_gradient_estimate(P, SpatialGrid1D(12.0, 128), 3.0), ArgumentError);
    const SpotCheck c = oseen_full_estimate(1.0, SpatialGrid1D(12.0, 128), 4);
    EXPECT_TRUE(std::isfinite(c.max_constant));
    EXPECT_GT(c.max_constant, 0.0);
}
