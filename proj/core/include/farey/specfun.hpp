#ifndef FAREY_SPECFUN_HPP
#define FAREY_SPECFUN_HPP

#include <cstddef>

namespace farey::specfun {

/// Natural log of the gamma function for x > 0.
///
/// Evaluated with a shifted series about the zeros at 1 and 2 on [0.5, 2.5),
/// downward recurrence into that window for x < 10, and the Stirling series
/// (Bernoulli numbers B_2..B_18) above. Relative error is below 1e-14 on
/// (0, 1e4]; at x = 1 and x = 2 the result is exactly zero.
/// Throws std::domain_error for x <= 0 or NaN.
double log_gamma(double x);

/// Generalized Laguerre polynomial L_n^{alpha}(t), ascending three-term
/// recurrence. Requires alpha > -1.
double generalized_laguerre(std::size_t n, double alpha, double t);

/// e_n(t) = L_n^{2q-1}(t), the orthogonal basis of L^2(t^{2q-1} e^{-t} dt).
double laguerre_eval(std::size_t n, double q, double t);

/// f_n(t) = t^n / n!. Switches to log space once the direct product could
/// overflow; t must be >= 0.
double monomial_eval(std::size_t n, double t);

struct BesselResult {
    double value = 0.0;
    /// Magnitude of the first omitted series term.
    double truncation_bound = 0.0;
    /// Largest |term| seen while summing; compared with |value| to detect
    /// cancellation.
    double max_term = 0.0;
    std::size_t terms = 0;
    /// Set when max_term > 1e15 * |value|: the series lost most of its
    /// significant digits to cancellation.
    bool accuracy_loss = false;
};

/// Bessel function of the first kind J_nu(x) from the ascending power series.
///
/// Summation stops once a term falls below 1e-16 of the running sum after
/// the terms have started to shrink. No asymptotic branch exists, so for
/// x beyond ~50 the result carries the accuracy_loss flag. Requires nu >= 0
/// and x >= 0; throws std::domain_error otherwise.
BesselResult bessel_j(double nu, double x);

}  // namespace farey::specfun

#endif  // FAREY_SPECFUN_HPP
