#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "floydlab/cli/runner.hpp"

int main(int argc, char** argv) {
    namespace fc = floydlab::cli;
    CLI::App app{"Trajectory representation of quantum mechanics: tables, identity checks and limit sweeps"};
    app.require_subcommand(1);

    fc::RunOptions options;
    std::string format = "both";
    app.add_option("--out", options.out_dir, "output directory (FLOYDLAB_OUT overrides)");
    app.add_option("--format", format, "csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    app.add_option("--tol-scale", options.tol_scale, "multiplier applied to every tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", options.threads, "sweep worker threads")->check(CLI::Range(1, 256));
    app.add_option("--seed", options.seed, "seed for randomized identity draws");

    std::string config;
    const struct {
        const char* name;
        const char* help;
    } verbs[] = {
        {"run", "trajectory table, cycle statistics or timing, and any sweep"},
        {"check", "randomized identity suite only"},
        {"sweep", "Bohr or Planck limit sweep"},
        {"levels", "symmetric square-well spectrum"},
    };
    for (const auto& v : verbs) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        sub->add_option("config", config, "scenario file")->required();
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    if (format == "csv") options.format = fc::Format::Csv;
    else if (format == "json") options.format = fc::Format::Json;
    const fc::Verb verb = fc::parse_verb(app.get_subcommands().front()->get_name());
    return fc::execute(verb, config, options, std::cout, std::cerr);
}
