#ifndef FAREY_EIGENSOLVER_HPP
#define FAREY_EIGENSOLVER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "farey/farey_matrix.hpp"

namespace farey {

inline constexpr double kDefaultTolerance = 1e-13;
inline constexpr std::size_t kDefaultMaxIterations = 200000;

/// (sqrt(5) - 1) / 2
inline constexpr double kGoldenConjugate = 0.618033988749894848205;

/// Dominant (Perron) eigenpair of a north-west truncation.
struct EigenPair {
    double lambda = 0.0;
    /// Full-length eigenvector; phi[normalization_index] == 1.
    std::vector<double> phi;
    /// 0 for plus, 1 for minus (row and column 0 of A^- vanish).
    std::size_t normalization_index = 0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Minus truncation of size 1: the effective block is empty and lambda is 0.
    bool degenerate = false;
    double q = 0.0;
    Sign sign = Sign::plus;
    std::size_t size = 0;
    /// ||A phi - lambda phi||_inf / (lambda ||phi||_inf) at exit.
    double residual = 0.0;
    /// Aitken delta-squared extrapolation of the last three estimates. Diagnostic
    /// only; lambda is always the plain iterate.
    std::optional<double> aitken_lambda;
};

/// Power iteration from the all-ones vector, renormalised by the component at
/// the normalization index after every product. For the minus sign only the
/// block on indices 1..N-1 is iterated. Stops when successive estimates agree
/// to `tol` relatively and the residual is at most 10 * tol; hitting
/// `max_iter` returns the last estimate with converged == false.
///
/// Throws std::domain_error if tol lies outside [1e-15, 1e-6] or max_iter == 0.
EigenPair dominant_eigenpair(const TruncatedMatrix& matrix, double tol = kDefaultTolerance,
                             std::size_t max_iter = kDefaultMaxIterations);

/// ||A phi - lambda phi||_inf / (lambda ||phi||_inf).
double relative_residual(const TruncatedMatrix& matrix, double lambda,
                         std::span<const double> phi);

/// 1 + 2^{-2q} for plus, 1 for minus.
double comparison_bound(double q, Sign sign);

/// 1 + gamma^{2q}, the upper end of the real point spectrum.
double spectral_bound(double q);

/// Whether phi satisfies the eigenvector hypothesis of the comparison bound:
/// phi_k <= 1/2 for all k >= 1 (plus), phi_k <= 1 for all k >= 1 (minus).
/// phi_1 equals the bound exactly in theory, so a relative slack of 1e-12
/// absorbs rounding.
bool bound_hypothesis_holds(const EigenPair& pair);

enum class ParameterKind { q, size };

struct SweepRecord {
    double parameter = 0.0;
    double lambda = 0.0;
    /// comparison_bound() at this point.
    double bound = 0.0;
    bool converged = false;
    /// Minus sign at N = 1; not counted as a convergence failure.
    bool degenerate = false;
    std::size_t iterations = 0;
    double spectral_bound = 0.0;
    bool hypothesis_holds = false;
};

struct SweepCurve {
    ParameterKind kind = ParameterKind::q;
    Sign sign = Sign::plus;
    /// Fixed q of a size sweep.
    double q = 0.0;
    /// Fixed truncation size of a q sweep.
    std::size_t size = 0;
    std::vector<SweepRecord> records;

    bool all_converged() const;
    /// Largest lambda_N - lambda_{N+1} over consecutive records (<= 0 when monotone).
    double max_lambda_decrease() const;
};

inline constexpr std::size_t kTrackedComponents = 10;

struct TruncationSweep {
    SweepCurve curve;
    /// heads[i] holds phi_0..phi_{min(N,10)-1} for the i-th size.
    std::vector<std::vector<double>> heads;
    bool lambda_monotone = false;
    /// Verdict per tracked component k = 0..9.
    std::vector<bool> component_monotone;
    double max_component_decrease = 0.0;
};

/// Tolerances of the monotonicity verdicts.
inline constexpr double kLambdaMonotoneSlack = 1e-13;
inline constexpr double kComponentMonotoneSlack = 1e-12;

/// Solves the truncation for every size (strictly increasing, each in
/// [1, kMaxIndex]). Sizes are evaluated concurrently; results stay in input order.
TruncationSweep truncation_sweep(double q, Sign sign, std::span<const std::size_t> sizes,
                                 double tol = kDefaultTolerance,
                                 std::size_t max_iter = kDefaultMaxIterations);

/// lambda_N(q) over a strictly increasing grid of positive q.
SweepCurve q_sweep(std::span<const double> q_grid, Sign sign, std::size_t size,
                   double tol = kDefaultTolerance,
                   std::size_t max_iter = kDefaultMaxIterations);

/// min, min + step, ..., up to max (inclusive within 1e-9 steps).
std::vector<double> make_grid(double min, double max, double step);

/// Running sums of phi_n^2 Gamma(n+2q)/n! for any coefficient vector.
std::vector<double> weighted_partial_sums(double q, std::span<const double> phi);
/// S_N(k) = sum_{n<=k} phi_n^2 Gamma(n+2q)/n!, k = 0..N-1.
/// Throws std::invalid_argument if the pair did not converge.
std::vector<double> norm_partial_sums(const EigenPair& pair);

}  // namespace farey

#endif  // FAREY_EIGENSOLVER_HPP
