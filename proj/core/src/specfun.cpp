#include "farey/specfun.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <stdexcept>
#include <string>

namespace farey::specfun {

namespace {

constexpr double kEulerGamma = 0.577215664901532860607;
constexpr double kHalfLog2Pi = 0.918938533204672741780;

// zeta(k) - 1 for k = 2..40.
constexpr std::array<double, 39> kZetaMinusOne = {
    0.644934066848226436472,    0.2020569031595942854,
    0.082323233711138191516,    0.0369277551433699263314,
    0.0173430619844491397145,   0.0083492773819228268398,
    0.00407735619794433937869,  0.00200839282608221441785,
    0.000994575127818085337146, 0.000494188604119464558702,
    0.000246086553308048298638, 0.000122713347578489146752,
    6.12481350587048292585e-5,  3.05882363070204935517e-5,
    1.52822594086518717326e-5,  7.6371976378997622736e-6,
    3.81729326499983985646e-6,  1.90821271655393892566e-6,
    9.53962033872796113152e-7,  4.76932986787806463117e-7,
    2.38450502727732990004e-7,  1.19219925965311073068e-7,
    5.96081890512594796124e-8,  2.98035035146522801861e-8,
    1.49015548283650412347e-8,  7.45071178983542949198e-9,
    3.72533402478845705482e-9,  1.8626597235130490064e-9,
    9.31327432419668182872e-10, 4.65662906503378407299e-10,
    2.328311833676505492e-10,   1.16415501727005197759e-10,
    5.82077208790270088924e-11, 2.91038504449709968693e-11,
    1.45519218910419842359e-11, 7.27595983505748101452e-12,
    3.63797954737865119024e-12, 1.81898965030706594758e-12,
    9.09494784026388928253e-13,
};

// B_{2k} / (2k (2k-1)) for k = 1..9.
constexpr std::array<double, 9> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
};

// ln Gamma(1 + z) for |z| <= 0.5:
//   -log1p(z) + z (1 - gamma) + sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k.
double log_gamma_one_plus(double z) {
    double series = 0.0;
    double zk = -z;  // (-z)^k after the update
    for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
        zk *= -z;
        const double k = static_cast<double>(i + 2);
        const double term = kZetaMinusOne[i] * zk / k;
        series += term;
        if (std::abs(term) < 1e-18 * std::abs(series)) {
            break;
        }
    }
    return -std::log1p(z) + z * (1.0 - kEulerGamma) + series;
}

double stirling(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double correction = 0.0;
    double power = inv;
    for (double c : kStirling) {
        correction += c * power;
        power *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + correction;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma: argument must be positive, got " +
                                std::to_string(x));
    }
    if (std::isinf(x)) {
        return x;
    }
    if (x >= 10.0) {
        return stirling(x);
    }
    if (x < 0.5) {
        // Gamma(x) = Gamma(1 + x) / x
        return log_gamma_one_plus(x) - std::log(x);
    }
    if (x < 1.5) {
        return log_gamma_one_plus(x - 1.0);
    }
    // Reduce into [1.5, 2.5): Gamma(x) = (x-1)(x-2)...(y) Gamma(y).
    double y = x;
    double product = 1.0;
    while (y >= 2.5) {
        y -= 1.0;
        product *= y;
    }
    const double z = y - 2.0;
    // ln Gamma(2 + z) = log1p(z) + ln Gamma(1 + z)
    const double base = std::log1p(z) + log_gamma_one_plus(z);
    return product == 1.0 ? base : std::log(product) + base;
}

double generalized_laguerre(std::size_t n, double alpha, double t) {
    if (!(alpha > -1.0)) {
        throw std::domain_error("generalized_laguerre: alpha must exceed -1");
    }
    if (n == 0) {
        return 1.0;
    }
    double previous = 1.0;
    double current = 1.0 + alpha - t;
    for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double next =
            ((2.0 * kd + 1.0 + alpha - t) * current - (kd + alpha) * previous) / (kd + 1.0);
        previous = current;
        current = next;
    }
    return current;
}

double laguerre_eval(std::size_t n, double q, double t) {
    if (!(q > 0.0)) {
        throw std::domain_error("laguerre_eval: q must be positive");
    }
    return generalized_laguerre(n, 2.0 * q - 1.0, t);
}

double monomial_eval(std::size_t n, double t) {
    if (!(t >= 0.0)) {
        throw std::domain_error("monomial_eval: t must be nonnegative");
    }
    if (n == 0) {
        return 1.0;
    }
    if (t == 0.0) {
        return 0.0;
    }
    if (n <= 20 && t <= 1e10) {
        double value = 1.0;
        for (std::size_t k = 1; k <= n; ++k) {
            value *= t / static_cast<double>(k);
        }
        return value;
    }
    const double nd = static_cast<double>(n);
    return std::exp(nd * std::log(t) - log_gamma(nd + 1.0));
}

BesselResult bessel_j(double nu, double x) {
    if (!(nu >= 0.0) || !(x >= 0.0)) {
        throw std::domain_error("bessel_j: requires nu >= 0 and x >= 0");
    }
    BesselResult result;
    if (x == 0.0) {
        result.value = nu == 0.0 ? 1.0 : 0.0;
        result.max_term = result.value;
        result.terms = 1;
        return result;
    }

    // Accumulated in long double: on x86 the 64-bit significand keeps about
    // three more digits through the cancellation for moderate x.
    using Wide = long double;
    const Wide half = 0.5L * static_cast<Wide>(x);
    const Wide step = -half * half;
    const Wide wide_nu = nu;
    Wide term = nu == 0.0 ? 1.0L
                          : std::exp(wide_nu * std::log(half) - static_cast<Wide>(log_gamma(nu + 1.0)));
    Wide sum = 0.0L;
    Wide max_term = 0.0L;
    constexpr std::size_t kMaxTerms = 2000;

    std::size_t k = 0;
    for (; k < kMaxTerms; ++k) {
        sum += term;
        max_term = std::max(max_term, std::abs(term));
        const Wide kd = static_cast<Wide>(k);
        const Wide next = term * step / ((kd + 1.0L) * (kd + 1.0L + wide_nu));
        const bool shrinking = std::abs(next) < std::abs(term);
        term = next;
        if (shrinking && std::abs(term) < 1e-16L * std::abs(sum)) {
            ++k;
            break;
        }
        if (term == 0.0L) {
            ++k;
            break;
        }
    }
    if (!std::isfinite(static_cast<double>(sum)) || !std::isfinite(static_cast<double>(max_term))) {
        throw std::range_error("bessel_j: series overflowed for x = " + std::to_string(x));
    }

    result.value = static_cast<double>(sum);
    result.truncation_bound = static_cast<double>(std::abs(term));
    result.max_term = static_cast<double>(max_term);
    result.terms = k;
    result.accuracy_loss = max_term > 1e15L * std::abs(sum);
    return result;
}

}  // namespace farey::specfun
