#ifndef FAREY_TRANSFER_MAP_HPP
#define FAREY_TRANSFER_MAP_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "farey/eigensolver.hpp"
#include "farey/farey_matrix.hpp"

namespace farey {

/// F(x) = x/(1-x) on [0, 1/2], (1-x)/x on [1/2, 1]. Throws std::domain_error
/// outside [0, 1].
double farey(double x);

struct SeriesValue {
    double value = 0.0;
    /// |last term| * N, a rough bound on the omitted tail.
    double tail_bound = 0.0;
};

/// f(x) = sum_n b_n (1 - x)^n with b_n = phi_n Gamma(2q + n) / n!, the image
/// of sum_n phi_n e_n under the Laplace-type transform onto functions on (0, 1).
class EigenfunctionSeries {
public:
    /// From Laguerre coefficients phi_n.
    static EigenfunctionSeries from_laguerre(double q, std::span<const double> phi);

    double q() const { return q_; }
    std::span<const double> coefficients() const { return coefficients_; }

    /// Horner evaluation in (1 - x); x in [0, 1].
    SeriesValue evaluate(double x) const;
    double operator()(double x) const { return evaluate(x).value; }

private:
    EigenfunctionSeries(double q, std::vector<double> coefficients)
        : q_(q), coefficients_(std::move(coefficients)) {}

    double q_;
    std::vector<double> coefficients_;
};

/// Image of e_n alone: Gamma(2q + n)/n! (1 - x)^n.
double transformed_basis(std::size_t n, double q, double x);

/// Throws std::invalid_argument if the pair did not converge.
EigenfunctionSeries reconstruct_eigenfunction(const EigenPair& pair);

/// (1/(x+1))^{2q} [ f(x/(x+1)) +- f(1/(x+1)) ] for x in (0, 1).
double apply_transfer_pointwise(const EigenfunctionSeries& f, Sign sign, double x);

struct ResidualRow {
    double x = 0.0;
    double f_value = 0.0;
    double transfer_value = 0.0;
    double relative_residual = 0.0;
};

/// |P f - lambda f| / (lambda |f|) at each x.
std::vector<ResidualRow> residual_table(const EigenfunctionSeries& f, Sign sign, double lambda,
                                        std::span<const double> x_grid);

/// Max relative residual of P f = lambda f over x_grid for an arbitrary
/// candidate (f, lambda).
double eigen_residual(const EigenfunctionSeries& f, Sign sign, double lambda,
                      std::span<const double> x_grid);

/// Same, for the eigenfunction reconstructed from a converged pair.
double eigen_residual(const EigenPair& pair, std::span<const double> x_grid);

/// {0.1, 0.2, ..., 0.9}
std::vector<double> default_x_grid();

}  // namespace farey

#endif  // FAREY_TRANSFER_MAP_HPP
