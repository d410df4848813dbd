#include "farey/transfer_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "farey/specfun.hpp"

namespace farey {

double farey(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("farey: x must lie in [0, 1]");
    }
    return x <= 0.5 ? x / (1.0 - x) : (1.0 - x) / x;
}

double transformed_basis(std::size_t n, double q, double x) {
    const double nd = static_cast<double>(n);
    const double d = std::exp(specfun::log_gamma(2.0 * q + nd) - specfun::log_gamma(nd + 1.0));
    return d * std::pow(1.0 - x, nd);
}

EigenfunctionSeries EigenfunctionSeries::from_laguerre(double q, std::span<const double> phi) {
    if (!(q > 0.0)) throw std::domain_error("EigenfunctionSeries: q must be positive");
    std::vector<double> coefficients(phi.size());
    for (std::size_t n = 0; n < phi.size(); ++n) {
        const double nd = static_cast<double>(n);
        coefficients[n] =
            phi[n] * std::exp(specfun::log_gamma(2.0 * q + nd) - specfun::log_gamma(nd + 1.0));
    }
    return EigenfunctionSeries(q, std::move(coefficients));
}

SeriesValue EigenfunctionSeries::evaluate(double x) const {
    const double u = 1.0 - x;
    double value = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        value = value * u + *it;
    }
    SeriesValue result;
    result.value = value;
    if (!coefficients_.empty()) {
        const double n = static_cast<double>(coefficients_.size());
        result.tail_bound = std::abs(coefficients_.back() * std::pow(u, n - 1.0)) * n;
    }
    return result;
}

EigenfunctionSeries reconstruct_eigenfunction(const EigenPair& pair) {
    if (!pair.converged) {
        throw std::invalid_argument("reconstruct_eigenfunction: eigenpair did not converge");
    }
    return EigenfunctionSeries::from_laguerre(pair.q, pair.phi);
}

double apply_transfer_pointwise(const EigenfunctionSeries& f, Sign sign, double x) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::domain_error("apply_transfer_pointwise: x must lie in (0, 1)");
    }
    const double inv = 1.0 / (x + 1.0);
    const double weight = std::pow(inv, 2.0 * f.q());
    const double left = f(x * inv);
    const double right = f(inv);
    return weight * (sign == Sign::plus ? left + right : left - right);
}

std::vector<ResidualRow> residual_table(const EigenfunctionSeries& f, Sign sign, double lambda,
                                        std::span<const double> x_grid) {
    std::vector<ResidualRow> rows;
    rows.reserve(x_grid.size());
    for (double x : x_grid) {
        ResidualRow row;
        row.x = x;
        row.f_value = f(x);
        row.transfer_value = apply_transfer_pointwise(f, sign, x);
        row.relative_residual =
            std::abs(row.transfer_value - lambda * row.f_value) / (lambda * std::abs(row.f_value));
        rows.push_back(row);
    }
    return rows;
}

double eigen_residual(const EigenfunctionSeries& f, Sign sign, double lambda,
                      std::span<const double> x_grid) {
    double worst = 0.0;
    for (const auto& row : residual_table(f, sign, lambda, x_grid)) {
        worst = std::max(worst, row.relative_residual);
    }
    return worst;
}

double eigen_residual(const EigenPair& pair, std::span<const double> x_grid) {
    return eigen_residual(reconstruct_eigenfunction(pair), pair.sign, pair.lambda, x_grid);
}

std::vector<double> default_x_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(static_cast<double>(i) / 10.0);
    return grid;
}

}  // namespace farey
