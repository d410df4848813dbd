#include "farey/kernel_verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "farey/specfun.hpp"

namespace farey {

namespace functions {

SampledFunction constant(double value) {
    return {[value](double) { return value; }, "constant(" + std::to_string(value) + ")"};
}

SampledFunction laguerre(std::size_t n, double q) {
    return {[n, q](double t) { return specfun::laguerre_eval(n, q, t); },
            "e_" + std::to_string(n)};
}

SampledFunction monomial(std::size_t n) {
    return {[n](double t) { return specfun::monomial_eval(n, t); }, "f_" + std::to_string(n)};
}

SampledFunction ell(std::size_t n, double q, Sign sign) {
    const double s = sign == Sign::plus ? 1.0 : -1.0;
    return {[n, q, s](double t) {
                return specfun::laguerre_eval(n, q, t) + s * specfun::monomial_eval(n, t);
            },
            std::string(sign == Sign::plus ? "ell+_" : "ell-_") + std::to_string(n)};
}

SampledFunction zeta(std::size_t n, double q, Sign sign) {
    const double s = sign == Sign::plus ? 1.0 : -1.0;
    return {[n, q, s](double t) {
                return std::exp(-t) *
                       (specfun::laguerre_eval(n, q, t) + s * specfun::monomial_eval(n, t));
            },
            std::string(sign == Sign::plus ? "zeta+_" : "zeta-_") + std::to_string(n)};
}

}  // namespace functions

namespace {

void require_matching_rule(double q, const QuadratureRule& rule) {
    if (std::abs(rule.alpha - (2.0 * q - 1.0)) > 1e-14 * std::max(1.0, std::abs(rule.alpha))) {
        throw std::domain_error("quadrature rule alpha does not equal 2q - 1");
    }
}

}  // namespace

double apply_m(const SampledFunction& f, double t) { return std::exp(-t) * f(t); }

KernelValue apply_n_q(const SampledFunction& f, double t, double q, const QuadratureRule& rule) {
    if (!(t > 0.0)) throw std::domain_error("apply_n_q: t must be positive");
    if (!(q >= 0.5)) throw std::domain_error("apply_n_q: requires q >= 1/2");
    require_matching_rule(q, rule);

    // |J_nu(x) / (x/2)^nu| <= 1 / Gamma(nu + 1), so node i contributes at most
    // w_i |f(s_i)| / Gamma(2q). Nodes whose bound is below 2^-60 of the summed
    // bounds cannot move the result past roundoff and are not evaluated; these
    // are the far nodes where the Bessel series would overflow.
    std::vector<double> values(rule.order());
    double total = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) {
        values[i] = rule.weights[i] == 0.0 ? 0.0 : f(rule.nodes[i]);
        total += rule.weights[i] * std::abs(values[i]);
    }
    const double cutoff = std::ldexp(total, -60);

    const double order = 2.0 * q - 1.0;
    KernelValue result;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) {
        const double bound = rule.weights[i] * std::abs(values[i]);
        if (bound == 0.0 || bound < cutoff) continue;
        const double s = rule.nodes[i];
        const double st = s * t;
        const specfun::BesselResult j = specfun::bessel_j(order, 2.0 * std::sqrt(st));
        const double kernel = j.value / std::pow(st, q - 0.5);
        sum += rule.weights[i] * kernel * values[i];
        result.accuracy_loss = result.accuracy_loss || j.accuracy_loss;
    }
    result.value = sum;
    return result;
}

double inner_product(const SampledFunction& f, const SampledFunction& g,
                     const QuadratureRule& rule) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) {
        if (rule.weights[i] == 0.0) continue;
        sum += rule.weights[i] * f(rule.nodes[i]) * g(rule.nodes[i]);
    }
    return sum;
}

double IntertwiningReport::max_residual() const {
    double worst = 0.0;
    for (const auto& r : records) worst = std::max({worst, r.residual_fn, r.residual_en});
    return worst;
}

std::vector<double> default_t_grid() { return {0.25, 0.5, 1.0, 2.0, 4.0}; }

IntertwiningReport verify_intertwining(double q, std::size_t n_max, std::span<const double> t_grid,
                                       const QuadratureRule& rule) {
    if (n_max > kMaxIntertwiningDegree) {
        throw std::domain_error("verify_intertwining: n_max must not exceed 8");
    }
    require_matching_rule(q, rule);

    IntertwiningReport report;
    report.quadrature_order = rule.order();
    for (std::size_t n = 0; n <= n_max; ++n) {
        const SampledFunction e_n = functions::laguerre(n, q);
        const SampledFunction f_n = functions::monomial(n);
        for (double t : t_grid) {
            const KernelValue nf = apply_n_q(f_n, t, q, rule);
            const KernelValue ne = apply_n_q(e_n, t, q, rule);
            IntertwiningRecord record;
            record.q = q;
            record.n = n;
            record.t = t;
            record.residual_fn = std::abs(nf.value - apply_m(e_n, t));
            record.residual_en = std::abs(ne.value - apply_m(f_n, t));
            record.quadrature_order = rule.order();
            record.accuracy_loss = nf.accuracy_loss || ne.accuracy_loss;
            report.records.push_back(record);
        }
    }
    return report;
}

double quadrature_matrix_element(double q, Sign sign, std::size_t n, std::size_t k,
                                 const QuadratureRule& rule) {
    require_matching_rule(q, rule);
    const SampledFunction e_n = functions::laguerre(n, q);
    const double s = sign == Sign::plus ? 1.0 : -1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) {
        if (rule.weights[i] == 0.0) continue;
        const double t = rule.nodes[i];
        const double transferred = apply_m(e_n, t) + s * apply_n_q(e_n, t, q, rule).value;
        sum += rule.weights[i] * transferred * specfun::laguerre_eval(k, q, t);
    }
    return sum;
}

std::string intertwining_to_json(const IntertwiningReport& report) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& r : report.records) {
        out.push_back({{"q", r.q},
                       {"n", r.n},
                       {"t", r.t},
                       {"residual_fn", r.residual_fn},
                       {"residual_en", r.residual_en},
                       {"quadrature_order", r.quadrature_order}});
    }
    return out.dump(2);
}

}  // namespace farey
