#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace floydlab::cli {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::string name;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    std::vector<Check> checks;
    std::vector<std::pair<std::string, Table>> tables;  // emitted as <name>_<key>.csv

    /// Records value <= tolerance (a NaN value fails).
    void check(const std::string& check_name, double value, double tolerance);
    void check_flag(const std::string& check_name, bool ok);
    bool all_passed() const;
};

enum class Format { Csv, Json, Both };

/// Header row plus one line per row, %.17g floats, LF endings.
std::string to_csv(const Table& table);

/// {meta, data, checks} with tables folded into data; %.17g floats, two-space indent.
std::string to_json(const Report& report);

/// Writes the CSV tables and/or <name>.json into dir. Returns the paths written.
/// Throws IoError on any filesystem failure.
std::vector<std::string> emit_report(const Report& report, Format format, const std::string& dir);

}  // namespace floydlab::cli
