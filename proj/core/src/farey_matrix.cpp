#include "farey/farey_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "farey/specfun.hpp"

namespace farey {

namespace {

constexpr double kLn2 = 0.693147180559945309417;
// exp() of anything larger overflows binary64.
constexpr double kMaxLinearExponent = 700.0;

void require_q(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw std::domain_error("q must be a positive finite number");
    }
}

void require_index(std::size_t index) {
    if (index > kMaxIndex) {
        throw std::domain_error("index " + std::to_string(index) + " exceeds supported range " +
                                std::to_string(kMaxIndex));
    }
}

// ln(j!) and ln Gamma(j + 2q) for j <= limit, plus the ratios
// Gamma(j + 2q) / (Gamma(2q) j!) built as running products.
class LogGammaTables {
public:
    LogGammaTables(double q, std::size_t limit)
        : two_q_(2.0 * q),
          gamma_two_q_(std::exp(specfun::log_gamma(2.0 * q))),
          factorial_(limit + 1),
          shifted_(limit + 1),
          rising_(limit + 1) {
        double rising = 1.0;
        for (std::size_t j = 0; j <= limit; ++j) {
            const double jd = static_cast<double>(j);
            factorial_[j] = specfun::log_gamma(jd + 1.0);
            shifted_[j] = specfun::log_gamma(jd + two_q_);
            if (j > 0) rising *= (two_q_ + jd - 1.0) / jd;
            rising_[j] = rising;
        }
    }

    double log_factorial(std::size_t j) const { return factorial_[j]; }
    double log_shifted(std::size_t j) const { return shifted_[j]; }
    double rising(std::size_t j) const { return rising_[j]; }
    double gamma_two_q() const { return gamma_two_q_; }
    double two_q() const { return two_q_; }

private:
    double two_q_;
    double gamma_two_q_;
    std::vector<double> factorial_;
    std::vector<double> shifted_;
    std::vector<double> rising_;
};

std::size_t first_surviving(Sign sign) { return sign == Sign::plus ? 0 : 1; }

// 2 * exp(log_numerator) * 2^{-(n+k)} * 2^{-2q}, used when the linear
// recurrence below would leave the binary64 range.
double scaled_term(double log_numerator, std::size_t n, std::size_t k, double two_q) {
    const int shift = -static_cast<int>(n + k);
    if (log_numerator < kMaxLinearExponent) {
        return 2.0 * std::ldexp(std::exp(log_numerator), shift) * std::exp2(-two_q);
    }
    return 2.0 * std::exp(log_numerator - (static_cast<double>(n + k) + two_q) * kLn2);
}

double log_space_sum(const LogGammaTables& t, Sign sign, double head, std::size_t n,
                     std::size_t k) {
    double sum = 0.0;
    for (std::size_t m = first_surviving(sign); m <= std::min(n, k); m += 2) {
        const double log_term = head - t.log_shifted(m) - t.log_factorial(m) -
                                t.log_factorial(n - m) - t.log_factorial(k - m);
        sum += scaled_term(log_term, n, k, t.two_q());
    }
    return sum;
}

// Sums the surviving-parity terms starting from the m = 0 term `seed`, with
// term(m+1)/term(m) = (k-m)(n-m) / ((m+1)(m+2q)). Every factor is O(1), so the
// result carries a few ulps of error instead of the |log| * eps of exp(log).
double recurrence_sum(const LogGammaTables& t, Sign sign, double seed, std::size_t n,
                      std::size_t k) {
    const std::size_t top = std::min(n, k);
    const std::size_t parity = first_surviving(sign);
    double term = seed;
    double sum = 0.0;
    for (std::size_t m = 0; m <= top; ++m) {
        if (m % 2 == parity) sum += term;
        if (m == top) break;
        const double md = static_cast<double>(m);
        term *= (static_cast<double>(k - m) * static_cast<double>(n - m)) /
                ((md + 1.0) * (md + t.two_q()));
    }
    return sum;
}

bool usable_seed(double seed) {
    return std::isfinite(seed) && seed > 1e-280;
}

double alpha_from_tables(const LogGammaTables& t, Sign sign, std::size_t k, std::size_t n) {
    // The power of two goes through ldexp, so rows 0 and 1 of the plus
    // matrix differ by exactly a factor 2.
    const double seed = std::ldexp(2.0 * std::exp2(-t.two_q()) * t.rising(n),
                                   -static_cast<int>(n + k));
    if (usable_seed(seed)) return recurrence_sum(t, sign, seed, n, k);
    return log_space_sum(t, sign, t.log_factorial(k) + t.log_shifted(n), n, k);
}

double c_from_tables(const LogGammaTables& t, Sign sign, std::size_t n, std::size_t k) {
    const double seed =
        std::ldexp(2.0 * std::exp2(-t.two_q()) * t.gamma_two_q() * (t.rising(n) * t.rising(k)),
                   -static_cast<int>(n + k));
    if (usable_seed(seed)) return recurrence_sum(t, sign, seed, n, k);
    return log_space_sum(t, sign, t.log_shifted(n) + t.log_shifted(k), n, k);
}

IdentityCheck make_check(std::string name, double violation, double tolerance) {
    return {std::move(name), violation <= tolerance, violation, tolerance};
}

double relative_gap(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

std::string_view to_string(Sign sign) { return sign == Sign::plus ? "plus" : "minus"; }

Sign parse_sign(std::string_view text) {
    if (text == "plus" || text == "+") return Sign::plus;
    if (text == "minus" || text == "-") return Sign::minus;
    throw std::invalid_argument("unknown sign '" + std::string(text) + "', expected plus or minus");
}

double entry_alpha(double q, Sign sign, std::size_t k, std::size_t n) {
    require_q(q);
    require_index(k);
    require_index(n);
    const LogGammaTables tables(q, std::max(k, n) + 1);
    return alpha_from_tables(tables, sign, k, n);
}

double entry_c(double q, Sign sign, std::size_t n, std::size_t k) {
    require_q(q);
    require_index(k);
    require_index(n);
    const LogGammaTables tables(q, std::max(k, n) + 1);
    return c_from_tables(tables, sign, n, k);
}

double diag_d(double q, std::size_t n) {
    require_q(q);
    const double nd = static_cast<double>(n);
    return std::exp(specfun::log_gamma(nd + 2.0 * q) - specfun::log_gamma(nd + 1.0));
}

TruncatedMatrix::TruncatedMatrix(double q, Sign sign, std::size_t size, std::vector<double> entries)
    : q_(q), sign_(sign), size_(size), entries_(std::move(entries)) {
    if (entries_.size() != size_ * size_) {
        throw std::invalid_argument("TruncatedMatrix: entry count does not match size");
    }
}

TruncatedMatrix build_truncation(double q, Sign sign, std::size_t size) {
    require_q(q);
    if (size == 0 || size > kMaxIndex) {
        throw std::domain_error("build_truncation: size must be in [1, " +
                                std::to_string(kMaxIndex) + "]");
    }
    const LogGammaTables tables(q, size);
    std::vector<double> entries(size * size);
    for (std::size_t k = 0; k < size; ++k) {
        for (std::size_t n = 0; n < size; ++n) {
            entries[k * size + n] = alpha_from_tables(tables, sign, k, n);
        }
    }
    return TruncatedMatrix(q, sign, size, std::move(entries));
}

double adjacent_minor(double q, Sign sign, std::size_t k, std::size_t n) {
    require_q(q);
    require_index(k + 1);
    require_index(n + 1);
    const LogGammaTables tables(q, std::max(k, n) + 2);
    const double a = alpha_from_tables(tables, sign, k, n);
    const double d = alpha_from_tables(tables, sign, k + 1, n + 1);
    const double b = alpha_from_tables(tables, sign, k, n + 1);
    const double c = alpha_from_tables(tables, sign, k + 1, n);
    return a * d - c * b;
}

double second_order_minor(const TruncatedMatrix& matrix, std::size_t k0, std::size_t k1,
                          std::size_t n0, std::size_t n1) {
    return matrix(k0, n0) * matrix(k1, n1) - matrix(k1, n0) * matrix(k0, n1);
}

bool IdentityReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const IdentityCheck* IdentityReport::find(std::string_view name) const {
    const auto it = std::find_if(checks.begin(), checks.end(),
                                 [name](const auto& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
}

IdentityReport check_identities(double q, std::size_t size) {
    if (size < 2) {
        throw std::domain_error("check_identities: size must be at least 2");
    }
    IdentityReport report;
    report.q = q;
    report.size = size;

    const TruncatedMatrix plus = build_truncation(q, Sign::plus, size);
    const TruncatedMatrix minus = build_truncation(q, Sign::minus, size);
    const LogGammaTables tables(q, size);

    // Negative entries count by magnitude; a zero plus entry counts as a unit violation.
    double nonneg = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
        for (std::size_t n = 0; n < size; ++n) {
            nonneg = std::max(nonneg, -std::min(minus(k, n), 0.0));
            if (!(plus(k, n) > 0.0)) nonneg = std::max(nonneg, 1.0);
        }
    }
    report.checks.push_back(make_check("nonnegativity", nonneg, 0.0));

    double halving = 0.0;
    for (std::size_t n = 0; n < size; ++n) {
        halving = std::max(halving, relative_gap(plus(0, n), 2.0 * plus(1, n)));
    }
    report.checks.push_back(make_check("halving", halving, 1e-14));

    double null_line = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
        null_line = std::max({null_line, std::abs(minus(0, j)), std::abs(minus(j, 0))});
    }
    report.checks.push_back(make_check("minus_null_row_column", null_line, 0.0));

    double consistency = 0.0;
    double symmetry = 0.0;
    for (const TruncatedMatrix* matrix : {&plus, &minus}) {
        for (std::size_t k = 0; k < size; ++k) {
            const double d_k = std::exp(tables.log_shifted(k) - tables.log_factorial(k));
            for (std::size_t n = 0; n < size; ++n) {
                const double c_nk = c_from_tables(tables, matrix->sign(), n, k);
                consistency = std::max(consistency, relative_gap((*matrix)(k, n) * d_k, c_nk));
                if (n > k) {
                    const double c_kn = c_from_tables(tables, matrix->sign(), k, n);
                    symmetry = std::max(symmetry, relative_gap(c_nk, c_kn));
                }
            }
        }
    }
    report.checks.push_back(make_check("alpha_c_consistency", consistency, 1e-12));
    report.checks.push_back(make_check("c_symmetry", symmetry, 1e-13));

    double minors = 0.0;
    for (const TruncatedMatrix* matrix : {&plus, &minus}) {
        for (std::size_t k = 0; k + 1 < size; ++k) {
            for (std::size_t n = 0; n + 1 < size; ++n) {
                const double diagonal = (*matrix)(k, n) * (*matrix)(k + 1, n + 1);
                const double cross = (*matrix)(k + 1, n) * (*matrix)(k, n + 1);
                const double scale = std::max(diagonal, cross);
                if (scale == 0.0) continue;
                minors = std::max(minors, -(diagonal - cross) / scale);
            }
        }
    }
    report.checks.push_back(make_check("adjacent_minors", minors, 1e-14));

    const std::size_t length = std::max(size, kRowSumLength);
    const LogGammaTables long_tables(q, length);
    double plus_sum = 0.0;
    double minus_sum = 0.0;
    bool increasing = true;  // every added term strictly positive
    for (std::size_t n = 0; n < length; ++n) {
        const double term = alpha_from_tables(long_tables, Sign::plus, 0, n);
        increasing = increasing && term > 0.0;
        plus_sum += term;
        if (n >= 1) minus_sum += alpha_from_tables(long_tables, Sign::minus, 1, n);
    }
    const double plus_violation = increasing ? std::abs(plus_sum - 2.0) : 1.0;
    report.checks.push_back(make_check("row_sum_plus", plus_violation, 1e-8));
    report.checks.push_back(make_check("row_sum_minus", std::abs(minus_sum - 1.0), 1e-8));
    return report;
}

}  // namespace farey
