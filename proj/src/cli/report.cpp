#include "floydlab/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "floydlab/errors.hpp"

namespace floydlab::cli {
namespace {

std::string number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_json(const nlohmann::ordered_json& node, int depth, std::string& out) {
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    const std::string close(2 * static_cast<std::size_t>(depth), ' ');
    switch (node.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (node.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : node.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + nlohmann::ordered_json(key).dump() + ": ";
                write_json(value, depth + 1, out);
            }
            out += "\n" + close + "}";
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (node.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& v : node) flat = flat && !v.is_structured();
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto& v : node) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += pad;
                write_json(v, depth + 1, out);
            }
            out += flat ? "]" : "\n" + close + "]";
            return;
        }
        case nlohmann::ordered_json::value_t::number_float:
            out += number(node.get<double>());
            return;
        default:
            out += node.dump();
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void Report::check(const std::string& check_name, double value, double tolerance) {
    checks.push_back({check_name, value, tolerance, value <= tolerance});
}

void Report::check_flag(const std::string& check_name, bool ok) {
    checks.push_back({check_name, ok ? 0.0 : 1.0, 0.0, ok});
}

bool Report::all_passed() const {
    for (const Check& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += std::isfinite(row[i]) ? number(row[i]) : "nan";
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Report& report) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    doc["meta"] = report.meta;
    nlohmann::ordered_json data = report.data;
    for (const auto& [key, table] : report.tables) {
        nlohmann::ordered_json t = nlohmann::ordered_json::object();
        t["columns"] = table.columns;
        t["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) t["rows"].push_back(row);
        data[key] = t;
    }
    doc["data"] = data;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const Check& c : report.checks) {
        nlohmann::ordered_json entry = nlohmann::ordered_json::object();
        entry["name"] = c.name;
        entry["value"] = c.value;
        entry["tolerance"] = c.tolerance;
        entry["pass"] = c.pass;
        checks.push_back(entry);
    }
    doc["checks"] = checks;
    std::string out;
    write_json(doc, 0, out);
    out += '\n';
    return out;
}

std::vector<std::string> emit_report(const Report& report, Format format, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
    std::vector<std::string> written;
    if (format != Format::Json) {
        for (const auto& [key, table] : report.tables) {
            const fs::path path = fs::path(dir) / (report.name + "_" + key + ".csv");
            write_file(path, to_csv(table));
            written.push_back(path.string());
        }
    }
    if (format != Format::Csv) {
        const fs::path path = fs::path(dir) / (report.name + ".json");
        write_file(path, to_json(report));
        written.push_back(path.string());
    }
    return written;
}

}  // namespace floydlab::cli
