#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cauchywell::cli {

/// Exit discipline shared by the CLI and its tests.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitRegression = 3;

/// Knobs shared across subcommands. precision_bits = 0 selects the machine
/// double path; positive values select the extended-precision solver.
struct CliConfig {
    int precision_bits = 0;   ///< 0, or in [64, 4096]
    double imag_tol = 1e-8;
    int grid_points = 1001;   ///< >= 2
    int gamma_terms = 15;
    std::string json_path;    ///< empty = stdout (where JSON is the payload)
    std::string csv_path;     ///< empty = no CSV artifact requested

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

/// Run one CLI invocation (args excludes the program name) against explicit
/// streams, for in-process testing.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Run one CLI invocation (args excludes the program name). Diagnostics go to
/// stderr; data goes to stdout or to the requested output files.
int run(const std::vector<std::string>& args);

}  // namespace cauchywell::cli
