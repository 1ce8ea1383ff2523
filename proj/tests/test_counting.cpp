// Unit tests for Weyl-type counting sums, exponent fits and truncation tails.
//
// Oracles: direct enumeration of lattice points / spins for small windows,
// theta-series subtraction for the heat tail, oversampled summation for
// polynomial tails.

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lierkhs/counting.hpp"

using namespace lierkhs;

TEST(WeightedCount, SmallHeadsByEnumeration) {
    EXPECT_DOUBLE_EQ(weighted_count(GroupId::Torus1, 2.0, 0.0, CountSide::Head), 3.0);
    EXPECT_DOUBLE_EQ(weighted_count(GroupId::SU2, 2.0, 0.0, CountSide::Head), 14.0);
    EXPECT_DOUBLE_EQ(weighted_count(GroupId::Torus1, 1.0 + 1e-9, 0.0, CountSide::Head), 1.0);
}

TEST(WeightedCount, AlphaSignGuards) {
    EXPECT_THROW(weighted_count(GroupId::Torus1, 4.0, -2.0, CountSide::Head),
                 std::invalid_argument);
    EXPECT_THROW(weighted_count(GroupId::Torus1, 4.0, 0.0, CountSide::Tail, 64.0),
                 std::invalid_argument);
}

TEST(WeightedCount, TailNeedsSufficientCap) {
    // shallow decay with a tiny cap leaves more than 1% in the remainder
    EXPECT_THROW(weighted_count(GroupId::Torus1, 4.0, -1.2, CountSide::Tail, 6.0),
                 std::invalid_argument);
    EXPECT_NO_THROW(weighted_count(GroupId::Torus1, 4.0, -3.0, CountSide::Tail, 64.0));
}

TEST(WeightedCount, TailMatchesOversampledSummation) {
    // alpha n = -3 on the circle: sum_{<k> > 4} <k>^{-3}, cap far out
    const double tail = weighted_count(GroupId::Torus1, 4.0, -3.0, CountSide::Tail, 64.0);
    CompensatedSum direct;
    for (int k = -100000; k <= 100000; ++k) {
        const double w = std::sqrt(1.0 + static_cast<double>(k) * k);
        if (w > 4.0) direct.add(std::pow(w, -3.0));
    }
    EXPECT_NEAR(tail, direct.value(), 0.01 * direct.value());
    EXPECT_GE(tail, direct.value() - 1e-12);  // analytic remainder only adds
}

TEST(RankBound, SmallWindows) {
    EXPECT_EQ(rank_bound(GroupId::Torus1, 2.0), 3);
    EXPECT_EQ(rank_bound(GroupId::SU2, 2.0), 14);
    EXPECT_EQ(rank_bound(GroupId::Torus2, 1.5), 5);
}

TEST(RankBound, MatchesEnumerationWeightedBySquaredDims) {
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2})
        for (double lam : {1.5, 3.0, 6.0, 10.0}) {
            long long direct = 0;
            for (const auto& l : enumerate_dual(g, lam))
                direct += static_cast<long long>(l.dim) * l.dim;
            EXPECT_EQ(rank_bound(g, lam), direct);
        }
}

TEST(FitWeylExponent, RecoversGroupDimension) {
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) grid.push_back(8.0 * std::pow(8.0, i / 8.0));
    EXPECT_NEAR(fit_weyl_exponent(GroupId::Torus1, 0.0, grid).exponent, 1.0, 0.15);
    EXPECT_NEAR(fit_weyl_exponent(GroupId::Torus2, 0.0, grid).exponent, 2.0, 0.15);
    EXPECT_NEAR(fit_weyl_exponent(GroupId::SU2, 0.0, grid).exponent, 3.0, 0.15);
}

TEST(FitWeylExponent, DegenerateGridRejected) {
    EXPECT_THROW(fit_weyl_exponent(GroupId::Torus1, 0.0, {8.0, 8.0, 8.0}),
                 std::invalid_argument);
    EXPECT_THROW(fit_weyl_exponent(GroupId::Torus1, 0.0, {8.0, 9.0}), std::invalid_argument);
}

TEST(TailDelta, HeatThetaSubtraction) {
    const auto s = make_symbol(GroupId::Torus1, SymbolFamily::Heat, {.t = 1.0}, 12.0);
    EXPECT_NEAR(tail_delta(s, 2.0), std::sqrt(1.772637 - 1.735759), 1e-5);
    EXPECT_NEAR(tail_delta(s, 2.0), 0.19203, 1e-4);
}

TEST(TailDelta, VanishesAtFullTruncationWithDeadTail) {
    const auto s = make_symbol(GroupId::Torus1, SymbolFamily::Heat, {.t = 1.0}, 12.0);
    EXPECT_LE(tail_delta(s, 12.0), 1e-20);
}

TEST(TailDelta, StrictlyNonincreasing) {
    const auto s = make_symbol(GroupId::SU2, SymbolFamily::Heat, {.t = 0.3}, 8.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double lam : {1.5, 2.0, 3.0, 4.0, 6.0, 8.0}) {
        const double d = tail_delta(s, lam);
        EXPECT_LE(d, prev + 1e-15);
        prev = d;
    }
}

TEST(TailDelta, PolynomialDecayRateWitnessed) {
    // delta_lambda^2 <= kappa lambda^{-2} for the cubic symbol on the circle
    const auto s = make_symbol(GroupId::Torus1, SymbolFamily::Polynomial, {.beta = 3.0}, 64.0);
    double kappa = 0.0;
    for (double lam : {4.0, 8.0, 16.0, 32.0}) {
        const double d2 = tail_delta(s, lam) * tail_delta(s, lam);
        kappa = std::max(kappa, d2 * lam * lam);
    }
    for (double lam : {4.0, 8.0, 16.0, 32.0}) {
        const double d2 = tail_delta(s, lam) * tail_delta(s, lam);
        EXPECT_LE(d2, kappa / (lam * lam) + 1e-15);
    }
    EXPECT_LT(kappa, 10.0);
}

TEST(CountingRecord, HeadPlusComplementIsTotal) {
    const auto rec = counting_record(GroupId::SU2, 0.0, {2.0, 4.0, 8.0, 16.0}, 32.0);
    const double total = weighted_count(GroupId::SU2, 32.0, 0.0, CountSide::Head);
    for (std::size_t i = 0; i < rec.lambdas.size(); ++i) {
        EXPECT_NEAR(rec.head[i] + rec.complement[i], total, 1e-9 * total);
        if (i) {
            EXPECT_GE(rec.head[i], rec.head[i - 1]);
            EXPECT_LE(rec.complement[i], rec.complement[i - 1]);
        }
    }
}

TEST(CountingRecord, CsvShape) {
    const auto rec = counting_record(GroupId::Torus1, 0.0, {2.0, 4.0}, 8.0);
    std::ostringstream os;
    write_csv(rec, os);
    EXPECT_NE(os.str().find("lambda,head,complement,ratio_to_power"), std::string::npos);
}

TEST(EmpiricalSandwich, RatioBandWithinFactorFour) {
    // head(lambda) / lambda^{(alpha+1)n} stays in a band [c, C] with C/c <= 4
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2}) {
        const int n = group_dim(g);
        for (double alpha : {0.0, 1.0 / n}) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (int i = 0; i <= 16; ++i) {
                const double lam = 8.0 * std::pow(8.0, i / 16.0);
                const double ratio = weighted_count(g, lam, alpha, CountSide::Head) /
                                     std::pow(lam, (alpha + 1.0) * n);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            EXPECT_LE(hi / lo, 4.0) << group_name(g) << " alpha " << alpha;
        }
    }
}

TEST(FittedConstants, SandwichHeadAndWitnessTail) {
    const auto c = fit_counting_constants(GroupId::Torus1, 3.0, 1.0, {8.0, 16.0, 32.0});
    EXPECT_GT(c.c_0n, 0.0);
    EXPECT_GE(c.C_n, c.c_0n);
    EXPECT_GT(c.kappa_beta, 0.0);
    EXPECT_GT(c.mu_gamma, 0.0);
    // witnessing property on a fresh lambda inside the window span
    const double head = weighted_count(GroupId::Torus1, 12.0, 0.0, CountSide::Head);
    EXPECT_LE(c.c_0n * 12.0, head + 1e-9);
    EXPECT_GE(c.C_n * 12.0, head - 1e-9);
}
