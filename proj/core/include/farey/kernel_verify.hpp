#ifndef FAREY_KERNEL_VERIFY_HPP
#define FAREY_KERNEL_VERIFY_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "farey/farey_matrix.hpp"
#include "farey/quadrature.hpp"

namespace farey {

/// A real function on (0, inf) with a label for reports.
struct SampledFunction {
    std::function<double(double)> evaluate;
    std::string label;

    double operator()(double t) const { return evaluate(t); }
};

namespace functions {
SampledFunction constant(double value);
/// e_n = L_n^{2q-1}
SampledFunction laguerre(std::size_t n, double q);
/// f_n(t) = t^n / n!
SampledFunction monomial(std::size_t n);
/// l^{+-}_n = e_n +- f_n
SampledFunction ell(std::size_t n, double q, Sign sign);
/// zeta^{+-}_n = e^{-t} (e_n +- f_n)
SampledFunction zeta(std::size_t n, double q, Sign sign);
}  // namespace functions

/// (M f)(t) = e^{-t} f(t)
double apply_m(const SampledFunction& f, double t);

struct KernelValue {
    double value = 0.0;
    /// Some Bessel evaluation inside the sum reported cancellation loss.
    bool accuracy_loss = false;
};

/// (N_q f)(t) = sum_i w_i J_{2q-1}(2 sqrt(s_i t)) / (s_i t)^{q-1/2} f(s_i).
///
/// Requires rule.alpha == 2q - 1, t > 0 and q >= 1/2 (the Bessel order
/// 2q - 1 must be nonnegative); throws std::domain_error otherwise. Nodes whose
/// contribution is provably below 2^-60 of the summed magnitudes are skipped.
KernelValue apply_n_q(const SampledFunction& f, double t, double q, const QuadratureRule& rule);

/// (f, g) in L^2(m_q), realized as sum_i w_i f(s_i) g(s_i).
double inner_product(const SampledFunction& f, const SampledFunction& g,
                     const QuadratureRule& rule);

struct IntertwiningRecord {
    double q = 0.0;
    std::size_t n = 0;
    double t = 0.0;
    /// |N_q f_n - M e_n| at t
    double residual_fn = 0.0;
    /// |N_q e_n - M f_n| at t
    double residual_en = 0.0;
    std::size_t quadrature_order = 0;
    bool accuracy_loss = false;
};

struct IntertwiningReport {
    std::vector<IntertwiningRecord> records;
    std::size_t quadrature_order = 0;

    double max_residual() const;
};

/// Default t grid for intertwining checks.
std::vector<double> default_t_grid();

inline constexpr std::size_t kDefaultKernelOrder = 60;
inline constexpr std::size_t kMaxIntertwiningDegree = 8;

/// Residuals of N_q f_n = M e_n and N_q e_n = M f_n for n <= n_max, t in t_grid.
/// Throws std::domain_error if n_max > 8 or the rule does not match q.
IntertwiningReport verify_intertwining(double q, std::size_t n_max, std::span<const double> t_grid,
                                       const QuadratureRule& rule);

/// (P^{+-} e_n, e_k) computed through the quadrature realization of M +- N_q,
/// with apply_n_q evaluated at every node of `rule`.
double quadrature_matrix_element(double q, Sign sign, std::size_t n, std::size_t k,
                                 const QuadratureRule& rule);

/// Serializes records as a JSON array of
/// {q, n, t, residual_fn, residual_en, quadrature_order}.
std::string intertwining_to_json(const IntertwiningReport& report);

}  // namespace farey

#endif  // FAREY_KERNEL_VERIFY_HPP
