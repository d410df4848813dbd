#include "farey/csv.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace {

using farey::Sign;

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

TEST(FormatNumber, RoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 1.25, -2.5e-300, 6.02214076e23}) {
        EXPECT_EQ(std::strtod(farey::format_number(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(farey::format_number(1.25), "1.25");
    EXPECT_EQ(farey::format_number(0.1), "0.10000000000000001");
}

TEST(MatrixCsv, HeaderAndRows) {
    std::ostringstream out;
    farey::write_matrix_csv(out, farey::build_truncation(0.5, Sign::plus, 2));
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 6u);
    EXPECT_EQ(lines[0], "# farey_spectrum 0.1.0");
    EXPECT_EQ(lines[1], "# q=0.5");
    EXPECT_EQ(lines[2], "# sign=plus");
    EXPECT_EQ(lines[3], "# N=2");
    EXPECT_EQ(lines[4], "1,0.5");
    EXPECT_EQ(lines[5], "0.5,0.25");
}

TEST(SweepCsv, ColumnsAndFlags) {
    const std::vector<std::size_t> sizes{1, 2};
    const auto sweep = farey::truncation_sweep(0.5, Sign::plus, sizes);
    std::ostringstream out;
    farey::write_sweep_csv(out, sweep.curve);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 7u);
    EXPECT_EQ(lines[1], "# kind=N");
    EXPECT_EQ(lines[3], "# q=0.5");
    EXPECT_EQ(lines[4], "parameter,lambda,bound,converged,iterations,spectral_bound,hypothesis");
    EXPECT_EQ(lines[5].rfind("1,1,1.5,1,", 0), 0u) << lines[5];
}

TEST(ResidualCsv, Columns) {
    const auto pair = farey::dominant_eigenpair(farey::build_truncation(0.5, Sign::plus, 4));
    const std::vector<double> grid{0.25, 0.75};
    const auto rows =
        farey::residual_table(farey::reconstruct_eigenfunction(pair), Sign::plus, pair.lambda, grid);
    std::ostringstream out;
    farey::write_residual_csv(out, pair, rows);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 9u);
    EXPECT_EQ(lines[4].rfind("# lambda=", 0), 0u);
    EXPECT_EQ(lines[5], "# converged=1");
    EXPECT_EQ(lines[6], "x,f_value,transfer_value,relative_residual");
    EXPECT_EQ(lines[7].rfind("0.25,", 0), 0u);
}

TEST(NormsCsv, OneBlockPerSize) {
    const std::vector<farey::NormCurve> curves{{2, {1.0, 1.25}}, {3, {1.0, 1.25, 1.3}}};
    std::ostringstream out;
    farey::write_norms_csv(out, 0.5, Sign::plus, curves);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 11u);
    EXPECT_EQ(lines[3], "# N=2;3");
    EXPECT_EQ(lines[4], "# converged=1;1");
    EXPECT_EQ(lines[5], "N,k,S");
    EXPECT_EQ(lines[6], "2,0,1");
    EXPECT_EQ(lines[10], "3,2,1.3");
}

TEST(Determinism, RepeatedWritesAreIdentical) {
    const auto write = [] {
        const auto grid = farey::make_grid(0.1, 0.5, 0.1);
        std::ostringstream out;
        farey::write_sweep_csv(out, farey::q_sweep(grid, Sign::minus, 12));
        return out.str();
    };
    EXPECT_EQ(write(), write());
}

}  // namespace
