#include "farey/eigensolver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace {

using farey::build_truncation;
using farey::dominant_eigenpair;
using farey::Sign;

std::vector<std::size_t> range_sizes(std::size_t first, std::size_t last) {
    std::vector<std::size_t> sizes(last - first + 1);
    std::iota(sizes.begin(), sizes.end(), first);
    return sizes;
}

TEST(DominantEigenpair, OneByOnePlus) {
    const auto pair = dominant_eigenpair(build_truncation(0.5, Sign::plus, 1));
    EXPECT_TRUE(pair.converged);
    EXPECT_NEAR(pair.lambda, 1.0, 1e-15);
    ASSERT_EQ(pair.phi.size(), 1u);
    EXPECT_EQ(pair.phi[0], 1.0);
}

TEST(DominantEigenpair, RankOneTwoByTwo) {
    // [[1, .5], [.5, .25]] has rank one, so lambda is its trace.
    const auto pair = dominant_eigenpair(build_truncation(0.5, Sign::plus, 2));
    EXPECT_TRUE(pair.converged);
    EXPECT_NEAR(pair.lambda, 1.25, 1e-12);
    EXPECT_EQ(pair.phi[0], 1.0);
    EXPECT_NEAR(pair.phi[1], 0.5, 1e-12);
}

TEST(DominantEigenpair, MinusTwoByTwoUsesLowerBlock) {
    const auto pair = dominant_eigenpair(build_truncation(0.5, Sign::minus, 2));
    EXPECT_TRUE(pair.converged);
    EXPECT_EQ(pair.normalization_index, 1u);
    EXPECT_NEAR(pair.lambda, 0.25, 1e-12);
    EXPECT_EQ(pair.phi[0], 0.0);
    EXPECT_EQ(pair.phi[1], 1.0);
}

TEST(DominantEigenpair, MinusOneByOneIsDegenerate) {
    const auto pair = dominant_eigenpair(build_truncation(0.5, Sign::minus, 1));
    EXPECT_TRUE(pair.degenerate);
    EXPECT_FALSE(pair.converged);
    EXPECT_EQ(pair.lambda, 0.0);
}

TEST(DominantEigenpair, InvariantsForBothSigns) {
    for (double q : {0.2, 0.5, 0.95, 1.3}) {
        for (Sign sign : {Sign::plus, Sign::minus}) {
            const auto matrix = build_truncation(q, sign, 40);
            const auto pair = dominant_eigenpair(matrix);
            ASSERT_TRUE(pair.converged) << q;
            EXPECT_GT(pair.lambda, 0.0);
            EXPECT_EQ(pair.phi[pair.normalization_index], 1.0);
            for (std::size_t k = pair.normalization_index; k < pair.phi.size(); ++k) {
                EXPECT_GT(pair.phi[k], 0.0);
            }
            if (sign == Sign::minus) EXPECT_EQ(pair.phi[0], 0.0);
            const double residual = farey::relative_residual(matrix, pair.lambda, pair.phi);
            EXPECT_LE(residual, 10.0 * farey::kDefaultTolerance);
            EXPECT_NEAR(residual, pair.residual, 1e-15);
        }
    }
}

TEST(DominantEigenpair, HalvingFixesSecondComponent) {
    // Row 0 of A^+ is twice row 1, so phi_1 = 1/2 for every N >= 2.
    for (double q : {0.3, 0.8, 1.4}) {
        const auto pair = dominant_eigenpair(build_truncation(q, Sign::plus, 30));
        EXPECT_NEAR(pair.phi[1], 0.5, 1e-14);
    }
}

TEST(DominantEigenpair, NonConvergenceIsReportedNotHidden) {
    const auto pair = dominant_eigenpair(build_truncation(0.95, Sign::plus, 50), 1e-13, 5);
    EXPECT_FALSE(pair.converged);
    EXPECT_EQ(pair.iterations, 5u);
    EXPECT_GT(pair.lambda, 1.0);
}

TEST(DominantEigenpair, AitkenIsDiagnosticOnly) {
    const auto pair = dominant_eigenpair(build_truncation(0.95, Sign::plus, 50), 1e-13, 40);
    ASSERT_TRUE(pair.aitken_lambda.has_value());
    const auto full = dominant_eigenpair(build_truncation(0.95, Sign::plus, 50));
    // The reported value stays the plain iterate; the extrapolation sits beside it.
    EXPECT_NE(*pair.aitken_lambda, pair.lambda);
    EXPECT_LT(std::abs(*pair.aitken_lambda - full.lambda), std::abs(pair.lambda - full.lambda));
}

TEST(DominantEigenpair, RejectsBadTolerances) {
    const auto m = build_truncation(0.5, Sign::plus, 4);
    EXPECT_THROW(dominant_eigenpair(m, 1e-16), std::domain_error);
    EXPECT_THROW(dominant_eigenpair(m, 1e-5), std::domain_error);
    EXPECT_THROW(dominant_eigenpair(m, 1e-10, 0), std::domain_error);
    EXPECT_NO_THROW(dominant_eigenpair(m, 1e-15));
}

TEST(TruncationSweep, SmallestSizesAtHalf) {
    const std::vector<std::size_t> sizes{1, 2};
    const auto sweep = farey::truncation_sweep(0.5, Sign::plus, sizes);
    ASSERT_EQ(sweep.curve.records.size(), 2u);
    EXPECT_NEAR(sweep.curve.records[0].lambda, 1.0, 1e-15);
    EXPECT_NEAR(sweep.curve.records[1].lambda, 1.25, 1e-12);
    EXPECT_TRUE(sweep.lambda_monotone);
}

TEST(TruncationSweep, MonotoneInSizeForBothSigns) {
    for (double q : {1.0 / 3.0, 0.5, 0.95, 1.2}) {
        for (Sign sign : {Sign::plus, Sign::minus}) {
            const auto sizes = range_sizes(1, 50);
            const auto sweep = farey::truncation_sweep(q, sign, sizes);
            EXPECT_TRUE(sweep.curve.all_converged() || sign == Sign::minus);
            EXPECT_TRUE(sweep.lambda_monotone) << q;
            for (std::size_t k = 0; k < farey::kTrackedComponents; ++k) {
                EXPECT_TRUE(sweep.component_monotone[k]) << "q=" << q << " k=" << k;
            }
            EXPECT_LE(sweep.max_component_decrease, farey::kComponentMonotoneSlack);
        }
    }
}

TEST(TruncationSweep, SlowerConvergenceCloserToOne) {
    const auto sizes = range_sizes(1, 50);
    const auto low = farey::truncation_sweep(1.0 / 3.0, Sign::plus, sizes);
    const auto high = farey::truncation_sweep(0.95, Sign::plus, sizes);
    const auto gap = [](const farey::SweepCurve& c) {
        return c.records.back().lambda - c.records[c.records.size() - 11].lambda;
    };
    EXPECT_GT(gap(high.curve), gap(low.curve));
}

TEST(TruncationSweep, RejectsUnorderedSizes) {
    const std::vector<std::size_t> sizes{3, 3};
    EXPECT_THROW(farey::truncation_sweep(0.5, Sign::plus, sizes), std::invalid_argument);
}

TEST(QSweep, EnvelopesOnCoarseGrid) {
    const auto grid = farey::make_grid(0.05, 1.5, 0.05);
    const auto plus = farey::q_sweep(grid, Sign::plus, 50);
    const auto minus = farey::q_sweep(grid, Sign::minus, 50);
    ASSERT_EQ(plus.records.size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& p = plus.records[i];
        EXPECT_TRUE(p.converged);
        EXPECT_TRUE(p.hypothesis_holds);
        EXPECT_LE(p.lambda, p.bound + 1e-10);
        EXPECT_LE(p.lambda, p.spectral_bound + 1e-10);
        if (p.parameter <= 0.95) EXPECT_GT(p.lambda, 1.0);
        EXPECT_LE(minus.records[i].lambda, 1.0 + 1e-10);
        EXPECT_EQ(minus.records[i].bound, 1.0);
    }
}

TEST(QSweep, SpectralBoundAtTwo) {
    const std::vector<double> grid{2.0};
    const auto curve = farey::q_sweep(grid, Sign::plus, 50);
    const double gamma = (std::sqrt(5.0) - 1.0) / 2.0;
    EXPECT_NEAR(curve.records[0].spectral_bound, 1.0 + std::pow(gamma, 4), 1e-15);
    EXPECT_LE(curve.records[0].lambda, 1.0 + std::pow(gamma, 4) + 1e-10);
}

TEST(QSweep, GapClosesTowardOne) {
    const auto grid = farey::make_grid(0.8, 0.99, 0.01);
    const auto curve = farey::q_sweep(grid, Sign::plus, 50);
    for (std::size_t i = 1; i < curve.records.size(); ++i) {
        EXPECT_LT(curve.records[i].lambda, curve.records[i - 1].lambda);
    }
}

TEST(MakeGrid, InclusiveEndpoints) {
    const auto grid = farey::make_grid(0.05, 1.5, 0.01);
    EXPECT_EQ(grid.size(), 146u);
    EXPECT_DOUBLE_EQ(grid.front(), 0.05);
    EXPECT_NEAR(grid.back(), 1.5, 1e-12);
    EXPECT_THROW(farey::make_grid(1.0, 0.5, 0.1), std::invalid_argument);
    EXPECT_THROW(farey::make_grid(0.0, 0.5, 0.0), std::invalid_argument);
}

TEST(NormPartialSums, HandValues) {
    const auto plus = dominant_eigenpair(build_truncation(0.5, Sign::plus, 2));
    const auto sums = farey::norm_partial_sums(plus);
    ASSERT_EQ(sums.size(), 2u);
    EXPECT_NEAR(sums[0], 1.0, 1e-15);
    EXPECT_NEAR(sums[1], 1.25, 1e-12);

    const auto minus = dominant_eigenpair(build_truncation(0.7, Sign::minus, 2));
    EXPECT_EQ(farey::norm_partial_sums(minus)[0], 0.0);
}

TEST(NormPartialSums, NonDecreasingAndSpreadsWithQ) {
    const auto ratio = [](double q) {
        const auto small = farey::norm_partial_sums(dominant_eigenpair(build_truncation(q, Sign::plus, 50)));
        const auto large = farey::norm_partial_sums(dominant_eigenpair(build_truncation(q, Sign::plus, 130)));
        for (std::size_t k = 1; k < large.size(); ++k) EXPECT_GE(large[k], large[k - 1]);
        return large.back() / small.back();
    };
    EXPECT_GT(ratio(0.95), ratio(0.3));
}

TEST(NormPartialSums, RequiresConvergence) {
    const auto pair = dominant_eigenpair(build_truncation(0.95, Sign::plus, 50), 1e-13, 3);
    EXPECT_THROW(farey::norm_partial_sums(pair), std::invalid_argument);
}

}  // namespace
