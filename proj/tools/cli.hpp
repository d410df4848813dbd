#ifndef FAREY_TOOLS_CLI_HPP
#define FAREY_TOOLS_CLI_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "farey/eigensolver.hpp"
#include "farey/farey_matrix.hpp"

namespace farey::cli {

enum class Command { entries, eigen, trunc_sweep, q_sweep, norms, verify, residual };
enum class Format { csv, json };

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitNonConvergence = 3;

struct RunConfig {
    Command command = Command::eigen;
    double q = 0.5;
    double q_min = 0.05;
    double q_max = 1.5;
    double q_step = 0.01;
    Sign sign = Sign::plus;
    /// Unset means the command's default (64 for verify, 50 otherwise).
    std::optional<std::size_t> size;
    /// Explicit size list; empty means the command's default.
    std::vector<std::size_t> sizes;
    double tol = kDefaultTolerance;
    std::size_t max_iter = kDefaultMaxIterations;
    /// Empty writes to the stream passed to run().
    std::string output;
    /// Unset means the command's default (JSON for eigen and verify, CSV otherwise).
    std::optional<Format> format;
};

/// Thrown for invalid configurations; maps to exit status 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Checks the invariants of a configuration; throws UsageError.
void validate(const RunConfig& config);

/// Parses argv. On --help, prints usage to `out` and returns std::nullopt with
/// `exit_code` set to 0; on a parse error, prints to `err` and returns
/// std::nullopt with `exit_code` set to 1.
std::optional<RunConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out,
                                         std::ostream& err, int& exit_code);

/// Executes the command, writing to config.output or else to `out`. Returns
/// the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments followed by run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace farey::cli

#endif  // FAREY_TOOLS_CLI_HPP
