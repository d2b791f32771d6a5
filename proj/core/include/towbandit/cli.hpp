#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "towbandit/harness.hpp"

namespace towbandit::cli {

/// Bad flags / malformed values. Callers print `what()` as the one-line
/// diagnostic and exit non-zero.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_args when --help (or a bare program name) was given;
/// carries the usage text to print before exiting with status 0.
struct HelpRequested {
    std::string text;
};

struct Command {
    enum class Kind { Run, Compare, Sweep, Bound };
    Kind kind = Kind::Run;

    harness::RunConfig run;  // Run, and the shared base for Compare/Sweep
    std::string out;

    std::vector<std::string> compare_algos;  // Compare

    std::string sweep_param;  // Sweep: omega | epsilon | tau | amplitude
    std::vector<double> sweep_grid;

    double mu_a = 0.0;  // Bound
    double mu_b = 0.0;
    std::uint64_t bound_horizon = 1000;
    bool bound_json_only = false;
};

/// argv includes the program name. Flags override config-file values.
Command parse_args(const std::vector<std::string>& argv);

/// Executes a parsed command; tabular/JSON data goes to `out`, progress and
/// diagnostics to `err`. Returns the process exit status.
int execute(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse_args + execute with stdio wiring and error reporting.
int run_main(int argc, char** argv);

}  // namespace towbandit::cli
