// Command line front end: loads a scenario file, runs one command, and maps
// failures to exit codes (1 scenario/validation, 2 tolerance).

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "retpot/runner.hpp"
#include "retpot/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Retarded-potential field solver for compact sources"};

    std::string scenario_path;
    std::string command_name;
    std::string output_dir = ".";
    bool quiet = false;

    app.add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    app.add_option("--command", command_name,
                   "One of: potentials, fields, verify, flux, convergence")
        ->required();
    app.add_option("--output", output_dir, "Directory for output files (default: .)");
    app.add_flag("--quiet", quiet, "Suppress the human-readable summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : retpot::kExitValidation;
    }

    const auto command = retpot::command_from_string(command_name);
    if (!command) {
        std::cerr << "unknown command \"" << command_name
                  << "\" (expected potentials, fields, verify, flux, or convergence)\n";
        return retpot::kExitValidation;
    }

    try {
        const retpot::Scenario scenario = retpot::load_scenario(scenario_path);
        return retpot::run_scenario(scenario, *command, output_dir, quiet, std::cout, std::cerr);
    } catch (const retpot::ScenarioError& e) {
        std::cerr << "scenario error" << (e.errors().size() > 1 ? "s" : "") << ":\n";
        for (const std::string& msg : e.errors()) {
            std::cerr << "  " << msg << '\n';
        }
        return retpot::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return retpot::kExitValidation;
    }
}
