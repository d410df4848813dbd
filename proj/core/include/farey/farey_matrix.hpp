#ifndef FAREY_FAREY_MATRIX_HPP
#define FAREY_FAREY_MATRIX_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace farey {

/// Relative sign between the two inverse branches of the Farey map.
/// plus keeps the even terms of the entry sums, minus keeps the odd ones.
enum class Sign { plus, minus };

std::string_view to_string(Sign sign);
/// Accepts "plus"/"+" and "minus"/"-"; throws std::invalid_argument otherwise.
Sign parse_sign(std::string_view text);

/// Largest supported row/column index (inclusive).
inline constexpr std::size_t kMaxIndex = 400;

/// alpha^{+-}_{kn}: entry in row k, column n of the non-symmetric matrix A^{+-}.
double entry_alpha(double q, Sign sign, std::size_t k, std::size_t n);

/// c^{+-}_{nk} = (P^{+-} e_n, e_k), the symmetric Gram-type matrix C^{+-}.
double entry_c(double q, Sign sign, std::size_t n, std::size_t k);

/// Gamma(n + 2q) / n!, the squared norm of e_n.
double diag_d(double q, std::size_t n);

/// North-west N x N corner of A^{+-}, stored row-major (row k, column n).
class TruncatedMatrix {
public:
    TruncatedMatrix(double q, Sign sign, std::size_t size, std::vector<double> entries);

    double q() const { return q_; }
    Sign sign() const { return sign_; }
    std::size_t size() const { return size_; }

    double operator()(std::size_t k, std::size_t n) const { return entries_[k * size_ + n]; }
    std::span<const double> row(std::size_t k) const {
        return {entries_.data() + k * size_, size_};
    }
    std::span<const double> entries() const { return entries_; }

private:
    double q_;
    Sign sign_;
    std::size_t size_;
    std::vector<double> entries_;
};

/// Throws std::domain_error unless 1 <= size <= kMaxIndex and q > 0.
TruncatedMatrix build_truncation(double q, Sign sign, std::size_t size);

/// alpha_{k,n} alpha_{k+1,n+1} - alpha_{k+1,n} alpha_{k,n+1}.
double adjacent_minor(double q, Sign sign, std::size_t k, std::size_t n);

/// Determinant of the 2x2 submatrix on rows {k0, k1} and columns {n0, n1}.
double second_order_minor(const TruncatedMatrix& matrix, std::size_t k0, std::size_t k1,
                          std::size_t n0, std::size_t n1);

struct IdentityCheck {
    std::string name;
    bool passed = false;
    double max_violation = 0.0;
    double tolerance = 0.0;
};

struct IdentityReport {
    double q = 0.0;
    std::size_t size = 0;
    std::vector<IdentityCheck> checks;

    bool all_passed() const;
    const IdentityCheck* find(std::string_view name) const;
};

/// Length of the partial row sums used by the row-sum checks when the
/// truncation itself is shorter.
inline constexpr std::size_t kRowSumLength = 200;

/// Runs the structural checks on the N x N corners of A^+ and A^-:
/// nonnegativity, the halving identity of rows 0 and 1 of A^+, the null
/// row/column of A^-, A = D^{-1} C, symmetry of C, adjacent second-order
/// minors, and the partial row sums of row 0 (plus) and row 1 (minus),
/// taken over max(N, kRowSumLength) columns.
IdentityReport check_identities(double q, std::size_t size);

}  // namespace farey

#endif  // FAREY_FAREY_MATRIX_HPP
