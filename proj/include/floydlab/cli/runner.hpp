#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "floydlab/cli/report.hpp"
#include "floydlab/cli/scenario.hpp"

namespace floydlab::cli {

enum class Verb { Run, Check, Sweep, Levels };

struct RunOptions {
    std::string out_dir = "out";
    Format format = Format::Both;
    double tol_scale = 1.0;
    std::size_t threads = 1;
    std::uint64_t seed = 42;
};

/// Throws ConfigError for an unknown verb name.
Verb parse_verb(const std::string& name);
std::string verb_name(Verb verb);

/// Performs the computation for one verb. Module errors propagate.
Report build_report(Verb verb, const Scenario& scenario, const RunOptions& options);

/// Loads the scenario, builds and writes the report, prints a summary.
/// FLOYDLAB_OUT, when set and non-empty, replaces options.out_dir.
/// Returns 0 when every check passes, 1 on a failed check, 2 on any error.
int execute(Verb verb, const std::string& config_path, RunOptions options, std::ostream& out,
            std::ostream& err);

}  // namespace floydlab::cli
