#include "farey/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "farey/parallel.hpp"
#include "farey/specfun.hpp"

namespace farey {

namespace {

// Once the eigenvalue criterion holds, the residual gets this many extra
// iterations to reach 10 * tol before the run is declared stalled.
constexpr std::size_t kResidualPatience = 200;

double inf_norm(std::span<const double> v) {
    double norm = 0.0;
    for (double x : v) norm = std::max(norm, std::abs(x));
    return norm;
}

void require_increasing(std::span<const double> values, const char* what) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw std::invalid_argument(std::string(what) + " must be strictly increasing");
        }
    }
}

}  // namespace

double relative_residual(const TruncatedMatrix& matrix, double lambda,
                         std::span<const double> phi) {
    const std::size_t n = matrix.size();
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto row = matrix.row(k);
        double product = 0.0;
        for (std::size_t j = 0; j < n; ++j) product += row[j] * phi[j];
        worst = std::max(worst, std::abs(product - lambda * phi[k]));
    }
    const double scale = std::abs(lambda) * inf_norm(phi);
    return scale == 0.0 ? std::numeric_limits<double>::infinity() : worst / scale;
}

EigenPair dominant_eigenpair(const TruncatedMatrix& matrix, double tol, std::size_t max_iter) {
    if (!(tol >= 1e-15 && tol <= 1e-6)) {
        throw std::domain_error("dominant_eigenpair: tol must lie in [1e-15, 1e-6]");
    }
    if (max_iter == 0) {
        throw std::domain_error("dominant_eigenpair: max_iter must be at least 1");
    }

    EigenPair pair;
    pair.q = matrix.q();
    pair.sign = matrix.sign();
    pair.size = matrix.size();
    pair.normalization_index = matrix.sign() == Sign::plus ? 0 : 1;
    pair.phi.assign(matrix.size(), 0.0);

    const std::size_t offset = pair.normalization_index;
    if (matrix.size() <= offset) {
        pair.degenerate = true;
        pair.residual = std::numeric_limits<double>::infinity();
        return pair;
    }
    const std::size_t dim = matrix.size() - offset;

    std::vector<double> v(dim, 1.0);
    std::vector<double> w(dim);
    double lambda = 0.0;
    // history[0] is the newest estimate.
    double history[3] = {std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN()};
    std::size_t settled_since = 0;
    double residual = std::numeric_limits<double>::infinity();

    std::size_t iter = 0;
    while (iter < max_iter) {
        ++iter;
        for (std::size_t i = 0; i < dim; ++i) {
            const auto row = matrix.row(i + offset).subspan(offset);
            double sum = 0.0;
            for (std::size_t j = 0; j < dim; ++j) sum += row[j] * v[j];
            w[i] = sum;
        }
        lambda = w[0];  // v[0] == 1
        history[2] = history[1];
        history[1] = history[0];
        history[0] = lambda;

        double deviation = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            deviation = std::max(deviation, std::abs(w[i] - lambda * v[i]));
        }
        residual = deviation / (lambda * inf_norm(v));

        const bool settled = std::abs(lambda - history[1]) < tol * std::abs(lambda);
        if (settled && residual <= 10.0 * tol) {
            pair.converged = true;
            break;
        }
        if (settled) {
            if (++settled_since > kResidualPatience) break;
        } else {
            settled_since = 0;
        }

        for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / lambda;
    }

    pair.lambda = lambda;
    pair.iterations = iter;
    pair.residual = residual;
    // v is the iterate the residual was measured on.
    std::copy(v.begin(), v.end(), pair.phi.begin() + static_cast<std::ptrdiff_t>(offset));

    const double denominator = history[0] - 2.0 * history[1] + history[2];
    if (std::isfinite(denominator) && denominator != 0.0) {
        const double delta = history[0] - history[1];
        pair.aitken_lambda = lambda - delta * delta / denominator;
    }
    return pair;
}

double comparison_bound(double q, Sign sign) {
    return sign == Sign::plus ? 1.0 + std::exp2(-2.0 * q) : 1.0;
}

double spectral_bound(double q) { return 1.0 + std::pow(kGoldenConjugate, 2.0 * q); }

bool bound_hypothesis_holds(const EigenPair& pair) {
    const double cap = pair.sign == Sign::plus ? 0.5 : 1.0;
    for (std::size_t k = 1; k < pair.phi.size(); ++k) {
        if (pair.phi[k] > cap * (1.0 + 1e-12)) return false;
    }
    return true;
}

bool SweepCurve::all_converged() const {
    return std::all_of(records.begin(), records.end(),
                       [](const auto& r) { return r.converged || r.degenerate; });
}

double SweepCurve::max_lambda_decrease() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < records.size(); ++i) {
        worst = std::max(worst, records[i - 1].lambda - records[i].lambda);
    }
    return records.size() < 2 ? 0.0 : worst;
}

namespace {

SweepRecord make_record(double parameter, const EigenPair& pair) {
    SweepRecord record;
    record.parameter = parameter;
    record.lambda = pair.lambda;
    record.bound = comparison_bound(pair.q, pair.sign);
    record.converged = pair.converged;
    record.degenerate = pair.degenerate;
    record.iterations = pair.iterations;
    record.spectral_bound = spectral_bound(pair.q);
    record.hypothesis_holds = !pair.degenerate && bound_hypothesis_holds(pair);
    return record;
}

}  // namespace

TruncationSweep truncation_sweep(double q, Sign sign, std::span<const std::size_t> sizes,
                                 double tol, std::size_t max_iter) {
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] <= sizes[i - 1]) {
            throw std::invalid_argument("truncation_sweep: sizes must be strictly increasing");
        }
    }

    std::vector<EigenPair> pairs(sizes.size());
    parallel_for(sizes.size(), [&](std::size_t i) {
        pairs[i] = dominant_eigenpair(build_truncation(q, sign, sizes[i]), tol, max_iter);
    });

    TruncationSweep sweep;
    sweep.curve.kind = ParameterKind::size;
    sweep.curve.sign = sign;
    sweep.curve.q = q;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        sweep.curve.records.push_back(make_record(static_cast<double>(sizes[i]), pairs[i]));
        const std::size_t tracked = std::min(kTrackedComponents, pairs[i].phi.size());
        sweep.heads.emplace_back(pairs[i].phi.begin(),
                                 pairs[i].phi.begin() + static_cast<std::ptrdiff_t>(tracked));
    }

    // Degenerate pairs (minus, N = 1) carry no eigenvalue and are skipped.
    sweep.lambda_monotone = true;
    sweep.component_monotone.assign(kTrackedComponents, true);
    sweep.max_component_decrease = 0.0;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i - 1].degenerate) continue;
        if (pairs[i - 1].lambda > pairs[i].lambda + kLambdaMonotoneSlack) {
            sweep.lambda_monotone = false;
        }
        const auto& before = sweep.heads[i - 1];
        const auto& after = sweep.heads[i];
        for (std::size_t k = 0; k < before.size(); ++k) {
            const double drop = before[k] - after[k];
            sweep.max_component_decrease = std::max(sweep.max_component_decrease, drop);
            if (drop > kComponentMonotoneSlack) sweep.component_monotone[k] = false;
        }
    }
    return sweep;
}

SweepCurve q_sweep(std::span<const double> q_grid, Sign sign, std::size_t size, double tol,
                   std::size_t max_iter) {
    require_increasing(q_grid, "q_sweep: q grid");
    for (double q : q_grid) {
        if (!(q > 0.0)) throw std::domain_error("q_sweep: every q must be positive");
    }

    std::vector<EigenPair> pairs(q_grid.size());
    parallel_for(q_grid.size(), [&](std::size_t i) {
        pairs[i] = dominant_eigenpair(build_truncation(q_grid[i], sign, size), tol, max_iter);
    });

    SweepCurve curve;
    curve.kind = ParameterKind::q;
    curve.sign = sign;
    curve.size = size;
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        curve.records.push_back(make_record(q_grid[i], pairs[i]));
    }
    return curve;
}

std::vector<double> make_grid(double min, double max, double step) {
    if (!(step > 0.0) || !(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
        throw std::invalid_argument("grid requires min < max and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = min + static_cast<double>(i) * step;
    }
    return grid;
}

std::vector<double> weighted_partial_sums(double q, std::span<const double> phi) {
    std::vector<double> sums(phi.size());
    double running = 0.0;
    for (std::size_t n = 0; n < phi.size(); ++n) {
        const double nd = static_cast<double>(n);
        const double weight = std::exp(specfun::log_gamma(nd + 2.0 * q) - specfun::log_gamma(nd + 1.0));
        running += phi[n] * phi[n] * weight;
        sums[n] = running;
    }
    return sums;
}

std::vector<double> norm_partial_sums(const EigenPair& pair) {
    if (!pair.converged) {
        throw std::invalid_argument("norm_partial_sums: eigenpair did not converge");
    }
    return weighted_partial_sums(pair.q, pair.phi);
}

}  // namespace farey
