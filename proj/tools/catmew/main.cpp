#include "config.hpp"
#include "runner.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{
        "Single-photon interferometer simulator: closed-form observables, "
        "phase-shifter tuning, and a truncated-Fock-space cross-check"};

    std::string config_path;
    std::string output_override;
    double tolerance_override = 0.0;
    app.add_option("config", config_path, "Path to a key=value config file")
        ->required();
    app.add_option("--output", output_override,
                   "Output file path, overriding output_path in the config");
    CLI::Option* tolerance_opt = app.add_option(
        "--tolerance", tolerance_override,
        "Deviation tolerance for oracle-compare, overriding the config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "config error: cannot read '" << config_path << "'\n";
        return 2;
    }
    const std::string text{std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>()};

    catmew::cli::RunConfig cfg;
    try {
        cfg = catmew::cli::parse_config(text);
    } catch (const catmew::cli::ParseError& e) {
        if (e.line() > 0) {
            std::cerr << "config error at line " << e.line() << ": "
                      << e.what() << "\n";
        } else {
            std::cerr << "config error: " << e.what() << "\n";
        }
        return 2;
    }

    if (!output_override.empty()) {
        cfg.output_path = output_override;
    }
    if (tolerance_opt->count() > 0) {
        if (cfg.mode != catmew::cli::RunMode::oracle_compare) {
            std::cerr
                << "config error: --tolerance only applies to oracle-compare\n";
            return 2;
        }
        if (!std::isfinite(tolerance_override) || tolerance_override <= 0.0) {
            std::cerr << "config error: --tolerance must be > 0\n";
            return 2;
        }
        cfg.tolerance = tolerance_override;
    }

    return catmew::cli::run(cfg, std::cerr);
}
