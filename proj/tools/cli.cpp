#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "farey/csv.hpp"
#include "farey/kernel_verify.hpp"
#include "farey/quadrature.hpp"
#include "farey/transfer_map.hpp"

namespace farey::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultSize = 50;
constexpr std::size_t kDefaultVerifySize = 64;
constexpr double kVerifyResidualTolerance = 1e-6;
constexpr std::size_t kVerifyKernelOrder = 60;

std::size_t size_of(const RunConfig& config) {
    if (config.size) return *config.size;
    return config.command == Command::verify ? kDefaultVerifySize : kDefaultSize;
}

Format format_of(const RunConfig& config) {
    if (config.format) return *config.format;
    return config.command == Command::eigen || config.command == Command::verify ? Format::json
                                                                                 : Format::csv;
}

Json header(const RunConfig& config) {
    Json j;
    j["tool"] = "farey_spectrum";
    j["version"] = kToolVersion;
    j["sign"] = std::string(to_string(config.sign));
    return j;
}

Json record_json(const SweepRecord& r) {
    return {{"parameter", r.parameter},   {"lambda", r.lambda},
            {"bound", r.bound},           {"converged", r.converged},
            {"iterations", r.iterations}, {"spectral_bound", r.spectral_bound},
            {"hypothesis", r.hypothesis_holds}};
}

void write_curve(std::ostream& out, const RunConfig& config, const SweepCurve& curve) {
    if (format_of(config) == Format::csv) {
        write_sweep_csv(out, curve);
        return;
    }
    Json j = header(config);
    if (curve.kind == ParameterKind::q) {
        j["kind"] = "q";
        j["N"] = curve.size;
    } else {
        j["kind"] = "N";
        j["q"] = curve.q;
    }
    j["records"] = Json::array();
    for (const auto& r : curve.records) j["records"].push_back(record_json(r));
    out << j.dump(2) << '\n';
}

int run_entries(const RunConfig& config, std::ostream& out) {
    const TruncatedMatrix matrix = build_truncation(config.q, config.sign, size_of(config));
    if (format_of(config) == Format::csv) {
        write_matrix_csv(out, matrix);
        return kExitSuccess;
    }
    Json j = header(config);
    j["q"] = config.q;
    j["N"] = matrix.size();
    j["entries"] = Json::array();
    for (std::size_t k = 0; k < matrix.size(); ++k) {
        const auto row = matrix.row(k);
        j["entries"].push_back(std::vector<double>(row.begin(), row.end()));
    }
    out << j.dump(2) << '\n';
    return kExitSuccess;
}

int run_eigen(const RunConfig& config, std::ostream& out) {
    const EigenPair pair = dominant_eigenpair(build_truncation(config.q, config.sign, size_of(config)),
                                              config.tol, config.max_iter);
    if (format_of(config) == Format::csv) {
        write_metadata(out, {{"q", format_number(pair.q)},
                             {"sign", std::string(to_string(pair.sign))},
                             {"N", std::to_string(pair.size)},
                             {"lambda", format_number(pair.lambda)},
                             {"converged", pair.converged ? "1" : "0"}});
        out << "k,phi\n";
        for (std::size_t k = 0; k < pair.phi.size(); ++k) {
            out << k << ',' << format_number(pair.phi[k]) << '\n';
        }
    } else {
        Json j = header(config);
        j["q"] = pair.q;
        j["N"] = pair.size;
        j["lambda"] = pair.lambda;
        j["phi"] = pair.phi;
        j["converged"] = pair.converged;
        j["degenerate"] = pair.degenerate;
        j["iterations"] = pair.iterations;
        j["residual"] = std::isfinite(pair.residual) ? Json(pair.residual) : Json(nullptr);
        j["aitken_lambda"] = pair.aitken_lambda ? Json(*pair.aitken_lambda) : Json(nullptr);
        j["comparison_bound"] = comparison_bound(pair.q, pair.sign);
        j["spectral_bound"] = spectral_bound(pair.q);
        j["hypothesis"] = !pair.degenerate && bound_hypothesis_holds(pair);
        out << j.dump(2) << '\n';
    }
    return pair.converged || pair.degenerate ? kExitSuccess : kExitNonConvergence;
}

int run_trunc_sweep(const RunConfig& config, std::ostream& out) {
    std::vector<std::size_t> sizes = config.sizes;
    if (sizes.empty()) {
        sizes.resize(size_of(config));
        std::iota(sizes.begin(), sizes.end(), std::size_t{1});
    }
    const TruncationSweep sweep =
        truncation_sweep(config.q, config.sign, sizes, config.tol, config.max_iter);
    write_curve(out, config, sweep.curve);
    return sweep.curve.all_converged() ? kExitSuccess : kExitNonConvergence;
}

int run_q_sweep(const RunConfig& config, std::ostream& out) {
    const auto grid = make_grid(config.q_min, config.q_max, config.q_step);
    const SweepCurve curve = q_sweep(grid, config.sign, size_of(config), config.tol, config.max_iter);
    write_curve(out, config, curve);
    return curve.all_converged() ? kExitSuccess : kExitNonConvergence;
}

int run_norms(const RunConfig& config, std::ostream& out) {
    const std::vector<std::size_t> sizes =
        config.sizes.empty() ? std::vector<std::size_t>{50, 100, 130} : config.sizes;
    std::vector<NormCurve> curves;
    bool all_converged = true;
    for (std::size_t n : sizes) {
        const EigenPair pair =
            dominant_eigenpair(build_truncation(config.q, config.sign, n), config.tol, config.max_iter);
        const bool usable = pair.converged || pair.degenerate;
        all_converged = all_converged && usable;
        curves.push_back({n, weighted_partial_sums(pair.q, pair.phi), usable});
    }
    if (format_of(config) == Format::csv) {
        write_norms_csv(out, config.q, config.sign, curves);
    } else {
        Json j = header(config);
        j["q"] = config.q;
        j["curves"] = Json::array();
        for (const auto& c : curves) {
            j["curves"].push_back({{"N", c.size}, {"converged", c.converged}, {"S", c.sums}});
        }
        out << j.dump(2) << '\n';
    }
    return all_converged ? kExitSuccess : kExitNonConvergence;
}

int run_residual(const RunConfig& config, std::ostream& out) {
    const EigenPair pair = dominant_eigenpair(build_truncation(config.q, config.sign, size_of(config)),
                                              config.tol, config.max_iter);
    if (pair.degenerate) {
        throw UsageError("residual: the minus truncation needs size >= 2");
    }
    // A non-converged iterate is still tabulated; the metadata flags it.
    const auto f = EigenfunctionSeries::from_laguerre(pair.q, pair.phi);
    const auto rows = residual_table(f, pair.sign, pair.lambda, default_x_grid());
    if (format_of(config) == Format::csv) {
        write_residual_csv(out, pair, rows);
    } else {
        Json j = header(config);
        j["q"] = pair.q;
        j["N"] = pair.size;
        j["lambda"] = pair.lambda;
        j["converged"] = pair.converged;
        j["rows"] = Json::array();
        for (const auto& r : rows) {
            j["rows"].push_back({{"x", r.x},
                                 {"f_value", r.f_value},
                                 {"transfer_value", r.transfer_value},
                                 {"relative_residual", r.relative_residual}});
        }
        out << j.dump(2) << '\n';
    }
    return pair.converged ? kExitSuccess : kExitNonConvergence;
}

struct VerifyCheck {
    std::string suite;
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool skipped = false;
};

VerifyCheck measured(std::string suite, std::string name, double value, double tolerance) {
    return {std::move(suite), std::move(name), value, tolerance, value <= tolerance, false};
}

std::vector<VerifyCheck> verify_checks(const RunConfig& config) {
    const double q = config.q;
    const std::size_t size = size_of(config);
    std::vector<VerifyCheck> checks;

    for (const auto& c : check_identities(q, size).checks) {
        checks.push_back({"farey_matrix", c.name, c.max_violation, c.tolerance, c.passed, false});
    }

    const double alpha = 2.0 * q - 1.0;
    for (std::size_t order : {4u, 16u, 64u}) {
        const QuadratureRule rule = gauss_laguerre(order, alpha);
        double worst = 0.0;
        for (std::size_t j = 0; j < 2 * order; ++j) {
            const double jd = static_cast<double>(j);
            const double log_moment = std::lgamma(alpha + 1.0 + jd);
            double sum = 0.0;
            for (std::size_t i = 0; i < order; ++i) {
                if (rule.weights[i] == 0.0) continue;
                sum += std::exp(std::log(rule.weights[i]) + jd * std::log(rule.nodes[i]) - log_moment);
            }
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        checks.push_back(measured("quadrature", fmt::format("moment_exactness_M{}", order), worst, 1e-10));
    }

    {
        const QuadratureRule rule = gauss_laguerre(20, alpha);
        double worst = 0.0;
        for (std::size_t n = 0; n <= 6; ++n) {
            const double norm = std::exp(std::lgamma(static_cast<double>(n) + 2.0 * q) -
                                         std::lgamma(static_cast<double>(n) + 1.0));
            for (std::size_t m = 0; m <= 6; ++m) {
                const double value =
                    inner_product(functions::laguerre(n, q), functions::laguerre(m, q), rule);
                worst = std::max(worst, std::abs(value - (n == m ? norm : 0.0)) / norm);
            }
        }
        checks.push_back(measured("kernel_verify", "laguerre_orthogonality", worst, 1e-9));
    }

    if (q >= 0.5) {
        const QuadratureRule rule = gauss_laguerre(kVerifyKernelOrder, alpha);
        const std::vector<double> t_grid{0.5, 1.0, 2.0};
        checks.push_back(measured("kernel_verify", "intertwining",
                                  verify_intertwining(q, 3, t_grid, rule).max_residual(), 1e-6));
        double worst = 0.0;
        for (Sign sign : {Sign::plus, Sign::minus}) {
            for (std::size_t n = 0; n <= 4; ++n) {
                for (std::size_t k = 0; k <= 4; ++k) {
                    const double expected = entry_c(q, sign, n, k);
                    const double value = quadrature_matrix_element(q, sign, n, k, rule);
                    worst = std::max(worst, expected == 0.0 ? std::abs(value)
                                                            : std::abs(value / expected - 1.0));
                }
            }
        }
        checks.push_back(measured("kernel_verify", "matrix_elements", worst, 1e-6));
    } else {
        // The Bessel order 2q - 1 would be negative.
        for (const char* name : {"intertwining", "matrix_elements"}) {
            checks.push_back({"kernel_verify", name, 0.0, 0.0, true, true});
        }
    }

    std::vector<std::size_t> sizes(size);
    std::iota(sizes.begin(), sizes.end(), std::size_t{1});
    const TruncationSweep sweep = truncation_sweep(q, config.sign, sizes, config.tol, config.max_iter);
    checks.push_back(measured("eigensolver", "truncation_monotone",
                              std::max(0.0, sweep.curve.max_lambda_decrease()), kLambdaMonotoneSlack));
    checks.push_back(measured("eigensolver", "converged", sweep.curve.all_converged() ? 0.0 : 1.0, 0.0));

    const SweepRecord& last = sweep.curve.records.back();
    checks.push_back(measured("eigensolver", "spectral_bound",
                              std::max(0.0, last.lambda - last.spectral_bound), 1e-10));
    if (last.hypothesis_holds) {
        checks.push_back(measured("eigensolver", "comparison_bound",
                                  std::max(0.0, last.lambda - last.bound), 1e-10));
    } else {
        checks.push_back({"eigensolver", "comparison_bound", 0.0, 1e-10, true, true});
    }

    const EigenPair pair = dominant_eigenpair(build_truncation(q, config.sign, size), config.tol,
                                              config.max_iter);
    const double residual =
        pair.converged ? eigen_residual(pair, default_x_grid()) : std::numeric_limits<double>::infinity();
    checks.push_back(measured("transfer_map", "eigen_residual", residual, kVerifyResidualTolerance));
    return checks;
}

int run_verify(const RunConfig& config, std::ostream& out) {
    const auto checks = verify_checks(config);
    const bool passed = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    if (format_of(config) == Format::csv) {
        write_metadata(out, {{"q", format_number(config.q)},
                             {"sign", std::string(to_string(config.sign))},
                             {"N", std::to_string(size_of(config))},
                             {"passed", passed ? "1" : "0"}});
        out << "suite,name,value,tolerance,passed,skipped\n";
        for (const auto& c : checks) {
            out << c.suite << ',' << c.name << ',' << format_number(c.value) << ','
                << format_number(c.tolerance) << ',' << (c.passed ? 1 : 0) << ','
                << (c.skipped ? 1 : 0) << '\n';
        }
    } else {
        Json j = header(config);
        j["q"] = config.q;
        j["N"] = size_of(config);
        j["passed"] = passed;
        j["checks"] = Json::array();
        for (const auto& c : checks) {
            j["checks"].push_back({{"suite", c.suite},
                                   {"name", c.name},
                                   {"value", std::isfinite(c.value) ? Json(c.value) : Json(nullptr)},
                                   {"tolerance", c.tolerance},
                                   {"passed", c.passed},
                                   {"skipped", c.skipped}});
        }
        out << j.dump(2) << '\n';
    }
    return passed ? kExitSuccess : kExitVerification;
}

int dispatch(const RunConfig& config, std::ostream& out) {
    switch (config.command) {
        case Command::entries: return run_entries(config, out);
        case Command::eigen: return run_eigen(config, out);
        case Command::trunc_sweep: return run_trunc_sweep(config, out);
        case Command::q_sweep: return run_q_sweep(config, out);
        case Command::norms: return run_norms(config, out);
        case Command::verify: return run_verify(config, out);
        case Command::residual: return run_residual(config, out);
    }
    throw UsageError("unknown command");
}

}  // namespace

void validate(const RunConfig& config) {
    if (!(config.q > 0.0) || !std::isfinite(config.q)) throw UsageError("--q must be positive");
    if (config.size && (*config.size < 1 || *config.size > kMaxIndex)) {
        throw UsageError(fmt::format("--size must lie in [1, {}]", kMaxIndex));
    }
    if (!(config.tol >= 1e-15 && config.tol <= 1e-6)) {
        throw UsageError("--tol must lie in [1e-15, 1e-6]");
    }
    if (config.max_iter == 0) throw UsageError("--max-iter must be positive");
    for (std::size_t i = 0; i < config.sizes.size(); ++i) {
        const std::size_t n = config.sizes[i];
        if (n < 1 || n > kMaxIndex) {
            throw UsageError(fmt::format("--sizes entries must lie in [1, {}]", kMaxIndex));
        }
        if (i > 0 && n <= config.sizes[i - 1]) {
            throw UsageError("--sizes must be strictly increasing");
        }
    }
    if (config.command == Command::q_sweep) {
        if (!(config.q_min > 0.0)) throw UsageError("--q-min must be positive");
        if (!(config.q_min < config.q_max)) throw UsageError("--q-min must be below --q-max");
        if (!(config.q_step > 0.0)) throw UsageError("--q-step must be positive");
    }
    if (config.command == Command::verify && size_of(config) < 2) {
        throw UsageError("verify needs --size >= 2");
    }
}

std::optional<RunConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out,
                                         std::ostream& err, int& exit_code) {
    CLI::App app{"Leading eigenpairs of the signed Farey transfer operators", "farey_spectrum"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    RunConfig config;
    std::string sign = "plus";
    std::string format;
    double q = config.q;
    std::size_t size = 0;

    struct Entry {
        const char* name;
        Command command;
        const char* description;
    };
    const Entry entries[] = {
        {"entries", Command::entries, "Export the truncated matrix A_N"},
        {"eigen", Command::eigen, "Dominant eigenpair of A_N"},
        {"trunc-sweep", Command::trunc_sweep, "lambda_N for N = 1..size or --sizes"},
        {"q-sweep", Command::q_sweep, "lambda_N(q) over a q grid"},
        {"norms", Command::norms, "Partial norm sums S_N(k) for each N in --sizes"},
        {"verify", Command::verify, "Run the identity and residual checks"},
        {"residual", Command::residual, "Pointwise residual of the reconstructed eigenfunction"},
    };
    std::vector<std::pair<CLI::App*, Command>> subcommands;
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.description);
        subcommands.emplace_back(sub, e.command);
        sub->add_option("--sign", sign, "plus or minus")->check(CLI::IsMember({"plus", "minus", "+", "-"}));
        sub->add_option("--tol", config.tol, "Relative stopping tolerance in [1e-15, 1e-6]");
        sub->add_option("--max-iter", config.max_iter, "Power iteration cap");
        sub->add_option("--output,-o", config.output, "Output file (default stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        if (e.command == Command::q_sweep) {
            sub->add_option("--q-min", config.q_min, "Smallest q");
            sub->add_option("--q-max", config.q_max, "Largest q");
            sub->add_option("--q-step", config.q_step, "Grid step");
        } else {
            sub->add_option("--q", q, "Parameter q > 0");
        }
        sub->add_option("--size,-N", size, "Truncation size");
        if (e.command == Command::trunc_sweep || e.command == Command::norms) {
            sub->add_option("--sizes", config.sizes, "Comma-separated truncation sizes")->delimiter(',');
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        exit_code = kExitSuccess;
        return std::nullopt;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        exit_code = kExitSuccess;
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "error: {}\n", e.what());
        exit_code = kExitUsage;
        return std::nullopt;
    }

    for (const auto& [sub, command] : subcommands) {
        if (!sub->parsed()) continue;
        config.command = command;
        if (sub->count("--size") > 0) config.size = size;
    }
    config.q = q;
    config.sign = parse_sign(sign);
    if (!format.empty()) config.format = format == "csv" ? Format::csv : Format::json;
    exit_code = kExitSuccess;
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        // Results are produced in full before anything is written.
        std::ostringstream buffer;
        const int status = dispatch(config, buffer);
        if (config.output.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(config.output, std::ios::binary);
            if (!file) throw UsageError("cannot open output file " + config.output);
            file << buffer.str();
            if (!file) throw std::runtime_error("failed writing " + config.output);
        }
        if (status == kExitNonConvergence) {
            fmt::print(err, "warning: power iteration did not converge; results are flagged\n");
        } else if (status == kExitVerification) {
            fmt::print(err, "verification failed\n");
        }
        return status;
    } catch (const UsageError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    int exit_code = kExitSuccess;
    const auto config = parse_arguments(argc, argv, out, err, exit_code);
    if (!config) return exit_code;
    return run(*config, out, err);
}

}  // namespace farey::cli
