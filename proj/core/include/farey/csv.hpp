#ifndef FAREY_CSV_HPP
#define FAREY_CSV_HPP

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "farey/eigensolver.hpp"
#include "farey/farey_matrix.hpp"
#include "farey/transfer_map.hpp"

namespace farey {

inline constexpr const char* kToolVersion = "0.1.0";

/// 17 significant digits ("%.17g"): binary64 values round-trip exactly.
std::string format_number(double value);

/// Metadata block: "# farey_spectrum <version>" followed by one "# key=value"
/// line per entry.
void write_metadata(std::ostream& out,
                    const std::vector<std::pair<std::string, std::string>>& entries);

/// Comment header with q, sign and N, then N rows of N comma-separated entries.
void write_matrix_csv(std::ostream& out, const TruncatedMatrix& matrix);

/// Columns: parameter, lambda, bound, converged, iterations, spectral_bound,
/// hypothesis.
void write_sweep_csv(std::ostream& out, const SweepCurve& curve);

/// Columns: x, f_value, transfer_value, relative_residual.
void write_residual_csv(std::ostream& out, const EigenPair& pair,
                        std::span<const ResidualRow> rows);

struct NormCurve {
    std::size_t size = 0;
    std::vector<double> sums;
    /// False when the sums come from a non-converged iterate.
    bool converged = true;
};

/// Columns: N, k, S. One block of rows per truncation size; the metadata
/// lists the convergence flag of each block.
void write_norms_csv(std::ostream& out, double q, Sign sign, std::span<const NormCurve> curves);

}  // namespace farey

#endif  // FAREY_CSV_HPP
