#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace levysup {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitChecksFailed = 1, kExitUsage = 2, kExitEvaluation = 3 };

struct TableOptions {
    double alpha = 0.0;
    /// Levy-measure constant; empty means the normalized process.
    std::optional<double> c;
    double t = 1.0;
    std::string quantity = "density";
    std::vector<double> xs;
    std::string format = "csv";
    /// Transform variable for passage-laplace.
    double p = 1.0;
};

/// Quantities accepted by `table --quantity`.
const std::vector<std::string>& table_quantities();

/// Parses "start:step:stop" (inclusive of stop up to rounding). Throws std::invalid_argument.
std::vector<double> parse_range(const std::string& spec);

/// Parses "v1,v2,...". Throws std::invalid_argument.
std::vector<double> parse_list(const std::string& spec);

/**
 * Writes one row per abscissa. Rows already computed are flushed before an
 * evaluation failure is reported; returns kExitEvaluation in that case and
 * kExitUsage for invalid options.
 */
int run_table(const TableOptions& opts, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests: `table ...` or `verify ...`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levysup
