#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "floydlab/core_model.hpp"
#include "floydlab/correspondence.hpp"

namespace floydlab::cli {

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::Energy;
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

struct Scenario {
    std::string name = "scenario";
    Potential potential = FreePotential{};
    PhysicalContext ctx;
    int level = 0;  // square well only
    std::optional<Microstate> ms;
    std::optional<InitialValues> initial;
    std::optional<GridSpec> grid;
    std::optional<SweepSpec> sweep;
    std::size_t check_microstates = 20;
    std::size_t check_points = 25;
    // Sorted key=value pairs as read, used for hashing and echoing.
    std::map<std::string, std::string> entries;
};

/// Parses either the flat dotted key=value format ('#' comments) or a JSON
/// object whose nesting mirrors the dotted keys. Throws ConfigError with the
/// source name, line and key on any schema violation.
Scenario parse_scenario(const std::string& text, const std::string& source = "<string>");

/// Reads and parses a file. Throws IoError if unreadable.
Scenario load_scenario(const std::string& path);

/// Microstate given directly or recovered from initial values.
Microstate resolve_microstate(const Scenario& scenario, const PhysicalContext& ctx);

/// FNV-1a over the canonical key=value listing.
std::uint64_t scenario_hash(const Scenario& scenario);

}  // namespace floydlab::cli
