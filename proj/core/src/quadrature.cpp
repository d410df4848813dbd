#include "farey/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "farey/specfun.hpp"

namespace farey {

namespace {

// Node polishing and weights run in long double; near the smallest roots the
// recurrence loses enough digits in binary64 to show up in the weights.
using Wide = long double;

struct ScaledLaguerre {
    Wide value;     // L_M(t) * exp(-log_scale)
    Wide previous;  // L_{M-1}(t) * exp(-log_scale)
    Wide log_scale;
};

// Ascending recurrence with periodic rescaling so that high orders at large t
// do not overflow.
ScaledLaguerre scaled_laguerre(std::size_t order, Wide alpha, Wide t) {
    Wide previous = 0.0L;
    Wide current = 1.0L;
    Wide log_scale = 0.0L;
    for (std::size_t k = 0; k < order; ++k) {
        const Wide kd = static_cast<Wide>(k);
        const Wide next =
            ((2.0L * kd + 1.0L + alpha - t) * current - (kd + alpha) * previous) / (kd + 1.0L);
        previous = current;
        current = next;
        const Wide magnitude = std::abs(current);
        if (magnitude > 1e100L) {
            previous /= magnitude;
            current /= magnitude;
            log_scale += std::log(magnitude);
        }
    }
    return {current, previous, log_scale};
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e,
                                            int max_sweeps) {
    const int n = static_cast<int>(d.size());
    if (n == 0) {
        return d;
    }
    if (static_cast<int>(e.size()) != n - 1) {
        throw std::invalid_argument("tridiagonal_eigenvalues: off-diagonal must have n-1 entries");
    }
    e.push_back(0.0);
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int l = 0; l < n; ++l) {
        int sweeps = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) {
                    break;
                }
            }
            if (m == l) {
                break;
            }
            if (sweeps++ == max_sweeps) {
                throw QuadratureError("tridiagonal_eigenvalues: no convergence for eigenvalue " +
                                      std::to_string(l));
            }
            // Wilkinson shift from the leading 2x2 block.
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            int i = m - 1;
            for (; i >= l; --i) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (r == 0.0 && i >= l) {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

QuadratureRule gauss_laguerre(std::size_t order, double alpha) {
    if (order == 0 || order > kMaxQuadratureOrder) {
        throw std::domain_error("gauss_laguerre: order must be in [1, 512]");
    }
    if (!(alpha > -1.0)) {
        throw std::domain_error("gauss_laguerre: alpha must exceed -1");
    }

    std::vector<double> diagonal(order);
    std::vector<double> offdiagonal(order - 1);
    for (std::size_t i = 0; i < order; ++i) {
        const double id = static_cast<double>(i);
        diagonal[i] = 2.0 * id + alpha + 1.0;
        if (i + 1 < order) {
            const double next = id + 1.0;
            offdiagonal[i] = std::sqrt(next * (next + alpha));
        }
    }

    QuadratureRule rule;
    rule.alpha = alpha;
    rule.nodes = tridiagonal_eigenvalues(std::move(diagonal), std::move(offdiagonal));
    rule.weights.resize(order);

    const Wide md = static_cast<Wide>(order);
    const Wide wide_alpha = alpha;
    // Gamma(M + alpha + 1) / M! = Gamma(alpha + 1) prod_{j<=M} (j + alpha) / j; the
    // difference of two large log-gammas would cost ~|ln M!| * eps.
    Wide log_ratio = static_cast<Wide>(specfun::log_gamma(alpha + 1.0));
    Wide ratio = 1.0L;
    for (std::size_t j = 1; j <= order; ++j) {
        const Wide jd = static_cast<Wide>(j);
        ratio *= (jd + wide_alpha) / jd;
        if (ratio > 1e100L || ratio < 1e-100L) {
            log_ratio += std::log(ratio);
            ratio = 1.0L;
        }
    }
    log_ratio += std::log(ratio);
    const Wide log_prefactor = log_ratio - 2.0L * std::log(md + wide_alpha);
    constexpr Wide eps = std::numeric_limits<Wide>::epsilon();

    for (std::size_t k = 0; k < order; ++k) {
        const Wide estimate = rule.nodes[k];
        Wide gap = std::numeric_limits<Wide>::infinity();
        if (k > 0) gap = std::min(gap, estimate - static_cast<Wide>(rule.nodes[k - 1]));
        if (k + 1 < order) gap = std::min(gap, static_cast<Wide>(rule.nodes[k + 1]) - estimate);

        Wide t = estimate;
        for (int iter = 0; iter < 10; ++iter) {
            const ScaledLaguerre l = scaled_laguerre(order, wide_alpha, t);
            const Wide denominator = md * l.value - (md + wide_alpha) * l.previous;
            if (denominator == 0.0L) break;
            const Wide dt = t * l.value / denominator;
            const Wide candidate = t - dt;
            if (!(candidate > 0.0L) || std::abs(candidate - estimate) > 0.25L * gap) break;
            t = candidate;
            if (std::abs(dt) <= 4.0L * eps * t) break;
        }
        rule.nodes[k] = static_cast<double>(t);

        const ScaledLaguerre l = scaled_laguerre(order, wide_alpha, t);
        const Wide log_weight =
            log_prefactor + std::log(t) - 2.0L * (std::log(std::abs(l.previous)) + l.log_scale);
        rule.weights[k] = static_cast<double>(std::exp(log_weight));
    }
    return rule;
}

}  // namespace farey
