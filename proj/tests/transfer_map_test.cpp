#include "farey/transfer_map.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "farey/eigensolver.hpp"
#include "farey/farey_matrix.hpp"
#include "farey/quadrature.hpp"
#include "farey/specfun.hpp"

namespace {

using farey::EigenfunctionSeries;
using farey::Sign;

EigenfunctionSeries series(double q, std::vector<double> phi) {
    return EigenfunctionSeries::from_laguerre(q, phi);
}

TEST(FareyMap, BranchValues) {
    EXPECT_EQ(farey::farey(0.0), 0.0);
    EXPECT_EQ(farey::farey(1.0), 0.0);
    EXPECT_EQ(farey::farey(0.5), 1.0);
    EXPECT_NEAR(farey::farey(2.0 / 3.0), 0.5, 1e-15);
    EXPECT_NEAR(farey::farey(0.25), 1.0 / 3.0, 1e-15);
}

TEST(FareyMap, MapsIntervalOntoItself) {
    for (int i = 0; i <= 1000; ++i) {
        const double y = farey::farey(i / 1000.0);
        EXPECT_GE(y, 0.0);
        EXPECT_LE(y, 1.0);
    }
    EXPECT_THROW(farey::farey(-0.01), std::domain_error);
    EXPECT_THROW(farey::farey(1.01), std::domain_error);
}

// x^{-2q} \int e^{-t/x} e^t e_n(t) t^{2q-1} e^{-t} dt with t = x u becomes
// \int e^{-u} e_n(x u) u^{2q-1} du, a polynomial moment the rule integrates
// exactly.
double transform_by_quadrature(std::size_t n, double q, double x) {
    const auto rule = farey::gauss_laguerre(32, 2.0 * q - 1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) {
        sum += rule.weights[i] * farey::specfun::laguerre_eval(n, q, x * rule.nodes[i]);
    }
    return sum;
}

TEST(TransformedBasis, MatchesQuadratureOfTransform) {
    for (double q : {0.3, 0.5, 1.0, 1.5}) {
        for (std::size_t n = 0; n <= 4; ++n) {
            for (double x : {0.25, 0.5, 0.75}) {
                const double expected = transform_by_quadrature(n, q, x);
                EXPECT_NEAR(farey::transformed_basis(n, q, x), expected, 1e-8 * std::abs(expected))
                    << "q=" << q << " n=" << n << " x=" << x;
            }
        }
    }
}

TEST(TransformedBasis, HandValues) {
    EXPECT_NEAR(farey::transformed_basis(0, 0.5, 0.3), 1.0, 1e-15);
    EXPECT_NEAR(farey::transformed_basis(1, 0.5, 0.25), 0.75, 1e-15);
}

TEST(EigenfunctionSeries, TwoTermHandValue) {
    const auto f = series(0.5, {1.0, 0.5});
    EXPECT_NEAR(f(0.5), 1.25, 1e-15);
    EXPECT_EQ(f.coefficients().size(), 2u);
    EXPECT_NEAR(f.evaluate(0.5).tail_bound, 0.5, 1e-15);
}

TEST(EigenfunctionSeries, ReconstructionNeedsConvergence) {
    auto pair = farey::dominant_eigenpair(farey::build_truncation(0.95, Sign::plus, 50), 1e-13, 3);
    EXPECT_THROW(farey::reconstruct_eigenfunction(pair), std::invalid_argument);
    pair = farey::dominant_eigenpair(farey::build_truncation(0.5, Sign::plus, 2));
    EXPECT_NEAR(farey::reconstruct_eigenfunction(pair)(0.5), 1.25, 1e-12);
}

TEST(ApplyTransfer, ConstantSeries) {
    const auto one = series(0.5, {1.0});
    EXPECT_NEAR(farey::apply_transfer_pointwise(one, Sign::plus, 1.0 / 3.0), 1.5, 1e-15);
    for (double q : {0.3, 1.2}) {
        const auto c = series(q, {1.0});
        for (double x : {0.1, 0.5, 0.9}) {
            EXPECT_EQ(farey::apply_transfer_pointwise(c, Sign::minus, x), 0.0);
        }
    }
    EXPECT_THROW(farey::apply_transfer_pointwise(one, Sign::plus, 0.0), std::domain_error);
    EXPECT_THROW(farey::apply_transfer_pointwise(one, Sign::plus, 1.0), std::domain_error);
}

TEST(ResidualTable, ColumnsAreConsistent) {
    const auto pair = farey::dominant_eigenpair(farey::build_truncation(0.5, Sign::plus, 2));
    const auto f = farey::reconstruct_eigenfunction(pair);
    const std::vector<double> grid{0.5};
    const auto rows = farey::residual_table(f, Sign::plus, pair.lambda, grid);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NEAR(rows[0].f_value, 1.25, 1e-12);
    EXPECT_NEAR(rows[0].relative_residual,
                std::abs(rows[0].transfer_value - pair.lambda * 1.25) / (pair.lambda * 1.25), 1e-15);
}

TEST(EigenResidual, DecreasesWithTruncationSize) {
    const auto grid = farey::default_x_grid();
    for (double q : {0.3, 0.5}) {
        double previous = INFINITY;
        for (std::size_t n : {10u, 20u, 40u}) {
            const auto pair = farey::dominant_eigenpair(farey::build_truncation(q, Sign::plus, n));
            ASSERT_TRUE(pair.converged);
            const double r = farey::eigen_residual(pair, grid);
            EXPECT_LT(r, previous) << "q=" << q << " N=" << n;
            previous = r;
        }
    }
}

TEST(EigenResidual, TwoVersusTen) {
    const auto grid = farey::default_x_grid();
    const auto small = farey::dominant_eigenpair(farey::build_truncation(0.5, Sign::plus, 2));
    const auto large = farey::dominant_eigenpair(farey::build_truncation(0.5, Sign::plus, 10));
    EXPECT_LT(farey::eigen_residual(large, grid), farey::eigen_residual(small, grid));
}

TEST(EigenResidual, MinusPairAlsoImproves) {
    const auto grid = farey::default_x_grid();
    const auto small = farey::dominant_eigenpair(farey::build_truncation(0.5, Sign::minus, 10));
    const auto large = farey::dominant_eigenpair(farey::build_truncation(0.5, Sign::minus, 40));
    EXPECT_LT(farey::eigen_residual(large, grid), farey::eigen_residual(small, grid));
}

TEST(EigenResidual, ConstantIsNotAnEigenfunction) {
    const auto c = series(0.7, {1.0});
    EXPECT_GT(farey::eigen_residual(c, Sign::plus, 2.0, farey::default_x_grid()), 0.1);
}

TEST(DefaultGrid, NinePoints) {
    const auto grid = farey::default_x_grid();
    ASSERT_EQ(grid.size(), 9u);
    EXPECT_DOUBLE_EQ(grid.front(), 0.1);
    EXPECT_DOUBLE_EQ(grid.back(), 0.9);
}

}  // namespace
