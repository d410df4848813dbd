#include "farey/csv.hpp"

#include <array>
#include <cstdio>

namespace farey {

std::string format_number(double value) {
    std::array<char, 32> buffer{};
    const int length = std::snprintf(buffer.data(), buffer.size(), "%.17g", value);
    return std::string(buffer.data(), static_cast<std::size_t>(length));
}

void write_metadata(std::ostream& out,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    out << "# farey_spectrum " << kToolVersion << '\n';
    for (const auto& [key, value] : entries) {
        out << "# " << key << '=' << value << '\n';
    }
}

void write_matrix_csv(std::ostream& out, const TruncatedMatrix& matrix) {
    write_metadata(out, {{"q", format_number(matrix.q())},
                         {"sign", std::string(to_string(matrix.sign()))},
                         {"N", std::to_string(matrix.size())}});
    for (std::size_t k = 0; k < matrix.size(); ++k) {
        const auto row = matrix.row(k);
        for (std::size_t n = 0; n < row.size(); ++n) {
            if (n > 0) out << ',';
            out << format_number(row[n]);
        }
        out << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const SweepCurve& curve) {
    if (curve.kind == ParameterKind::q) {
        write_metadata(out, {{"kind", "q"},
                             {"sign", std::string(to_string(curve.sign))},
                             {"N", std::to_string(curve.size)}});
    } else {
        write_metadata(out, {{"kind", "N"},
                             {"sign", std::string(to_string(curve.sign))},
                             {"q", format_number(curve.q)}});
    }
    out << "parameter,lambda,bound,converged,iterations,spectral_bound,hypothesis\n";
    for (const auto& r : curve.records) {
        out << format_number(r.parameter) << ',' << format_number(r.lambda) << ','
            << format_number(r.bound) << ',' << (r.converged ? 1 : 0) << ',' << r.iterations
            << ',' << format_number(r.spectral_bound) << ',' << (r.hypothesis_holds ? 1 : 0)
            << '\n';
    }
}

void write_residual_csv(std::ostream& out, const EigenPair& pair,
                        std::span<const ResidualRow> rows) {
    write_metadata(out, {{"q", format_number(pair.q)},
                         {"sign", std::string(to_string(pair.sign))},
                         {"N", std::to_string(pair.size)},
                         {"lambda", format_number(pair.lambda)},
                         {"converged", pair.converged ? "1" : "0"}});
    out << "x,f_value,transfer_value,relative_residual\n";
    for (const auto& row : rows) {
        out << format_number(row.x) << ',' << format_number(row.f_value) << ','
            << format_number(row.transfer_value) << ',' << format_number(row.relative_residual)
            << '\n';
    }
}

void write_norms_csv(std::ostream& out, double q, Sign sign, std::span<const NormCurve> curves) {
    std::string sizes;
    std::string flags;
    for (const auto& curve : curves) {
        if (!sizes.empty()) {
            sizes += ';';
            flags += ';';
        }
        sizes += std::to_string(curve.size);
        flags += curve.converged ? '1' : '0';
    }
    write_metadata(out, {{"q", format_number(q)},
                         {"sign", std::string(to_string(sign))},
                         {"N", sizes},
                         {"converged", flags}});
    out << "N,k,S\n";
    for (const auto& curve : curves) {
        for (std::size_t k = 0; k < curve.sums.size(); ++k) {
            out << curve.size << ',' << k << ',' << format_number(curve.sums[k]) << '\n';
        }
    }
}

}  // namespace farey
