#include <robust_pricing/oracle.hpp>
#include <robust_pricing/tailbound.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace robust_pricing;
using oracle::GridSpec;

TEST(GridSpec, RejectsTinyGrids) {
    EXPECT_THROW(GridSpec::make(2, 100), PricingError);
    EXPECT_THROW(GridSpec::make(100, 2), PricingError);
    EXPECT_NO_THROW(GridSpec::make(3, 3));
}

TEST(Simplex, SmallKnownProgram) {
    // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    lp::DenseSimplex lp({{1, 2, 1, 0}, {3, 1, 0, 1}}, {4, 6}, {-1, -1, 0, 0});
    const lp::Solution s = lp.solve();
    ASSERT_EQ(s.status, lp::Status::Optimal);
    EXPECT_NEAR(s.objective, -2.8, 1e-12);
    EXPECT_NEAR(s.x[0], 1.6, 1e-12);
    EXPECT_NEAR(s.x[1], 1.2, 1e-12);
}

TEST(Simplex, DetectsInfeasibility) {
    lp::DenseSimplex lp({{1, 1}}, {-1}, {1, 1});
    EXPECT_EQ(lp.solve().status, lp::Status::Infeasible);
}

TEST(LpWorstTail, MatchesClosedFormExample) {
    const MarketInfo m = MarketInfo::validate(0.5, 0.3, 0.3, 1.0);
    const oracle::LpTail t = oracle::lp_worst_tail(m, 0.3);
    EXPECT_NEAR(t.snapped_price, 0.3, 1e-12);
    EXPECT_NEAR(t.value, 0.307692, 2e-3);
}

TEST(LpWorstTail, ZeroVarianceBelowMean) {
    const MarketInfo m = MarketInfo::validate(0.5, 0.0, 0.0, 1.0);
    EXPECT_NEAR(oracle::lp_worst_tail(m, 0.3).value, 1.0, 1e-6);
}

TEST(LpWorstTail, ZeroAtBeta) {
    const MarketInfo m = MarketInfo::validate(0.5, 0.1, 0.3, 1.0);
    EXPECT_NEAR(oracle::lp_worst_tail(m, 1.0).value, 0.0, 1e-12);
}

TEST(LpWorstTail, AgreesWithWitnessTail) {
    std::mt19937_64 rng(111);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const double beta = 0.5 + 3 * u(rng);
        const double mu = beta * (0.05 + 0.9 * u(rng));
        const double hi = max_sigma(mu, beta) * (0.05 + 0.9 * u(rng));
        const MarketInfo m = MarketInfo::validate(mu, hi * u(rng), hi, beta);
        const double p = beta * (0.01 + 0.98 * u(rng));
        const oracle::LpTail lp = oracle::lp_worst_tail(m, p);
        const double w = witness_distribution(m, lp.snapped_price).tail_strict(lp.snapped_price);
        EXPECT_NEAR(lp.value, w, 2e-3);
    }
}

TEST(GridArgmax, Examples) {
    const auto [p1, r1] = oracle::grid_argmax_revenue(MarketInfo::validate(0.5, 0.2, 0.2, 1.0));
    EXPECT_NEAR(p1, 0.2691657, 1e-4);
    const auto [p2, r2] = oracle::grid_argmax_revenue(MarketInfo::validate(0.5, 0.0, 0.5, 1.0));
    EXPECT_NEAR(p2, 0.292893, 1e-4);
    const auto [p3, r3] = oracle::grid_argmax_revenue(MarketInfo::validate(0.5, 0.0, 0.0, 1.0));
    EXPECT_DOUBLE_EQ(p3, 0.5);
    EXPECT_DOUBLE_EQ(r3, 0.5);
}

TEST(Sampler, Deterministic) {
    const MarketInfo m = MarketInfo::validate(0.5, 0.1, 0.4, 1.0);
    const DiscreteDistribution a = oracle::sample_feasible_distribution(m, 42);
    const DiscreteDistribution b = oracle::sample_feasible_distribution(m, 42);
    EXPECT_EQ(a.atoms, b.atoms);
    EXPECT_EQ(a.probs, b.probs);
    EXPECT_NE(oracle::sample_feasible_distribution(m, 43).atoms, a.atoms);
}

TEST(Sampler, OutputsAreFeasible) {
    std::mt19937_64 rng(121);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double beta = 0.5 + 3 * u(rng);
        const double mu = beta * (0.05 + 0.9 * u(rng));
        const double hi = max_sigma(mu, beta) * u(rng);
        const MarketInfo m = MarketInfo::validate(mu, hi * u(rng), hi, beta);
        const DiscreteDistribution d = oracle::sample_feasible_distribution(m, i);
        EXPECT_NEAR(d.total_mass(), 1.0, 1e-12);
        for (double q : d.probs) EXPECT_GE(q, 0.0);
        for (double a : d.atoms) {
            EXPECT_GE(a, 0.0);
            EXPECT_LE(a, beta);
        }
        EXPECT_NEAR(d.mean(), mu, 1e-10);
        EXPECT_GE(d.second_moment(), m.second_moment_lo() - 1e-10);
        EXPECT_LE(d.second_moment(), m.second_moment_hi() + 1e-10);
    }
}

TEST(Sampler, PreciseSigmaHitsSecondMoment) {
    const MarketInfo m = MarketInfo::validate(0.5, 0.3, 0.3, 1.0);
    for (int s = 0; s < 50; ++s)
        EXPECT_NEAR(oracle::sample_feasible_distribution(m, s).second_moment(), 0.34, 1e-10);
}
