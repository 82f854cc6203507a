#include "floydlab/cli/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "floydlab/basis.hpp"
#include "floydlab/errors.hpp"

namespace floydlab::cli {
namespace {

const std::set<std::string> kKnownKeys = {
    "name",           "output.name",    "potential.kind", "potential.U",    "potential.q",
    "potential.f",    "context.m",      "context.hbar",   "context.E",      "context.level",
    "microstate.a",   "microstate.b",   "microstate.c",   "initial.x0",     "initial.Wx",
    "initial.Wxx",    "grid.min",       "grid.max",       "grid.n",         "sweep.axis",
    "sweep.min",      "sweep.max",      "sweep.n",        "check.microstates", "check.points",
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Entry {
    std::string value;
    int line = 0;  // 0 for JSON input
};

class Reader {
public:
    Reader(std::map<std::string, Entry> entries, std::string source)
        : entries_(std::move(entries)), source_(std::move(source)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        std::string where = source_;
        const auto it = entries_.find(key);
        if (it != entries_.end() && it->second.line > 0) where += ":" + std::to_string(it->second.line);
        throw ConfigError(where + ": " + key + ": " + message);
    }

    std::string text(const std::string& key) const { return entries_.at(key).value; }

    double number(const std::string& key) const {
        const std::string& s = entries_.at(key).value;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            fail(key, "expected a finite number, got '" + s + "'");
        }
        return v;
    }

    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    long integer(const std::string& key) const {
        const std::string& s = entries_.at(key).value;
        long v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            fail(key, "expected an integer, got '" + s + "'");
        }
        return v;
    }

    std::map<std::string, std::string> listing() const {
        std::map<std::string, std::string> out;
        for (const auto& [k, e] : entries_) out[k] = e.value;
        return out;
    }

private:
    std::map<std::string, Entry> entries_;
    std::string source_;
};

std::map<std::string, Entry> read_flat(const std::string& text, const std::string& source) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(line) + ": expected key = value");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(source + ":" + std::to_string(line) + ": empty key or value");
        }
        if (entries.count(key) != 0) {
            throw ConfigError(source + ":" + std::to_string(line) + ": " + key + ": duplicate key");
        }
        entries[key] = {value, line};
    }
    return entries;
}

void flatten(const nlohmann::json& node, const std::string& prefix,
             std::map<std::string, Entry>& out, const std::string& source) {
    for (const auto& [key, value] : node.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            flatten(value, path, out, source);
        } else if (value.is_string()) {
            out[path] = {value.get<std::string>(), 0};
        } else if (value.is_number_integer()) {
            out[path] = {std::to_string(value.get<long long>()), 0};
        } else if (value.is_number()) {
            out[path] = {format_number(value.get<double>()), 0};
        } else {
            throw ConfigError(source + ": " + path + ": expected a number, string or object");
        }
    }
}

std::map<std::string, Entry> read_json(const std::string& text, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(source + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(source + ": top level must be an object");
    std::map<std::string, Entry> entries;
    flatten(doc, "", entries, source);
    return entries;
}

std::size_t positive_count(const Reader& r, const std::string& key, long minimum) {
    const long n = r.integer(key);
    if (n < minimum) r.fail(key, "must be at least " + std::to_string(minimum));
    return static_cast<std::size_t>(n);
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) {
    const auto first = text.find_first_not_of(" \t\r\n");
    const bool json = first != std::string::npos && text[first] == '{';
    const Reader r(json ? read_json(text, source) : read_flat(text, source), source);

    for (const auto& [key, value] : r.listing()) {
        if (kKnownKeys.count(key) == 0) r.fail(key, "unknown key");
    }

    Scenario s;
    s.entries = r.listing();
    if (r.has("output.name")) s.name = r.text("output.name");
    else if (r.has("name")) s.name = r.text("name");
    for (char ch : s.name) {
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-')) {
            r.fail("output.name", "only letters, digits, '_' and '-' are allowed");
        }
    }

    const std::string kind = r.has("potential.kind") ? r.text("potential.kind") : "free";
    if (kind == "free") {
        s.potential = FreePotential{};
    } else if (kind == "square_well") {
        if (!r.has("potential.U") || !r.has("potential.q")) {
            r.fail("potential.kind", "square_well needs potential.U and potential.q");
        }
        s.potential = SquareWellPotential{r.number("potential.U"), r.number("potential.q")};
    } else if (kind == "linear") {
        if (!r.has("potential.f")) r.fail("potential.kind", "linear needs potential.f");
        s.potential = LinearPotential{r.number("potential.f")};
    } else {
        r.fail("potential.kind", "expected free, square_well or linear, got '" + kind + "'");
    }
    try {
        validate(s.potential);
    } catch (const DomainError& e) {
        r.fail("potential.kind", e.what());
    }

    s.ctx.m = r.number_or("context.m", 1.0);
    s.ctx.hbar = r.number_or("context.hbar", 1.0);
    if (!(s.ctx.m > 0.0)) r.fail("context.m", "must be positive");
    if (!(s.ctx.hbar > 0.0)) r.fail("context.hbar", "must be positive");
    const bool well = std::holds_alternative<SquareWellPotential>(s.potential);
    if (well) {
        if (r.has("context.E")) {
            r.fail("context.E", "square-well energies come from the spectrum; use context.level");
        }
        s.level = r.has("context.level") ? static_cast<int>(positive_count(r, "context.level", 0)) : 0;
        s.ctx.E = 0.0;
    } else {
        if (r.has("context.level")) r.fail("context.level", "only meaningful for square_well");
        if (!r.has("context.E")) r.fail("context.E", "required");
        s.ctx.E = r.number("context.E");
        if (std::holds_alternative<FreePotential>(s.potential) && !(s.ctx.E > 0.0)) {
            r.fail("context.E", "free particle needs E > 0");
        }
    }

    const bool direct = r.has("microstate.a") || r.has("microstate.b") || r.has("microstate.c");
    const bool from_initial = r.has("initial.x0") || r.has("initial.Wx") || r.has("initial.Wxx");
    if (direct == from_initial) {
        r.fail(direct ? "microstate.a" : "microstate",
               "give exactly one of microstate.{a,b,c} or initial.{x0,Wx,Wxx}");
    }
    if (direct) {
        for (const char* key : {"microstate.a", "microstate.b", "microstate.c"}) {
            if (!r.has(key)) r.fail(key, "required");
        }
        try {
            s.ms = make_microstate(r.number("microstate.a"), r.number("microstate.b"),
                                   r.number("microstate.c"));
        } catch (const DomainError& e) {
            r.fail("microstate.c", std::string("Microstate invariant violated: ") + e.what());
        }
    } else {
        for (const char* key : {"initial.x0", "initial.Wx", "initial.Wxx"}) {
            if (!r.has(key)) r.fail(key, "required");
        }
        s.initial = InitialValues{r.number("initial.x0"), r.number("initial.Wx"),
                                  r.number("initial.Wxx")};
        if (!(s.initial->Wx0 > 0.0)) r.fail("initial.Wx", "must be positive");
    }

    if (r.has("grid.min") || r.has("grid.max") || r.has("grid.n")) {
        for (const char* key : {"grid.min", "grid.max", "grid.n"}) {
            if (!r.has(key)) r.fail(key, "required when a grid is given");
        }
        GridSpec g{r.number("grid.min"), r.number("grid.max"), positive_count(r, "grid.n", 1)};
        if (g.n > 1 && !(g.max > g.min)) r.fail("grid.max", "must exceed grid.min");
        s.grid = g;
    }

    if (r.has("sweep.axis") || r.has("sweep.min") || r.has("sweep.max") || r.has("sweep.n")) {
        for (const char* key : {"sweep.axis", "sweep.min", "sweep.max", "sweep.n"}) {
            if (!r.has(key)) r.fail(key, "required when a sweep is given");
        }
        SweepSpec w;
        const std::string axis = r.text("sweep.axis");
        if (axis == "E") w.axis = SweepAxis::Energy;
        else if (axis == "hbar") w.axis = SweepAxis::Hbar;
        else r.fail("sweep.axis", "expected E or hbar, got '" + axis + "'");
        w.min = r.number("sweep.min");
        w.max = r.number("sweep.max");
        w.n = positive_count(r, "sweep.n", 4);
        if (!(w.min > 0.0) || !(w.max > w.min)) r.fail("sweep.max", "need 0 < sweep.min < sweep.max");
        if (!(w.max >= 100.0 * w.min)) r.fail("sweep.max", "sweep must span at least 2 decades");
        if (well && w.axis == SweepAxis::Energy) {
            r.fail("sweep.axis", "square-well sweeps run along hbar");
        }
        if (std::holds_alternative<LinearPotential>(s.potential)) {
            r.fail("sweep.axis", "sweeps support free and square_well potentials");
        }
        s.sweep = w;
    }

    if (r.has("check.microstates")) s.check_microstates = positive_count(r, "check.microstates", 1);
    if (r.has("check.points")) s.check_points = positive_count(r, "check.points", 1);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

Microstate resolve_microstate(const Scenario& scenario, const PhysicalContext& ctx) {
    if (scenario.ms) return *scenario.ms;
    const BasisPair reference = make_basis(ctx, make_microstate(1.0, 1.0, 0.0), scenario.potential);
    return microstate_from_initial_values(*scenario.initial, ctx, reference);
}

std::uint64_t scenario_hash(const Scenario& scenario) {
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& [key, value] : scenario.entries) {
        feed(key);
        feed("=");
        feed(value);
        feed("\n");
    }
    return h;
}

}  // namespace floydlab::cli
