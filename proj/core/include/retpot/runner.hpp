#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "retpot/scenario.hpp"

namespace retpot {

enum class Command {
    Potentials,   // sample potentials over the grid and times
    Fields,       // sample E and H over the grid and times
    Verify,       // residual report against the scenario tolerances
    Flux,         // Gauss flux through the scenario sphere
    Convergence,  // refinement study of one named check
};

/// Parses a command name (potentials, fields, verify, flux, convergence).
std::optional<Command> command_from_string(std::string_view name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  // bad scenario or rejected source
inline constexpr int kExitTolerance = 2;   // residuals above scenario tolerances

/// Executes one command against a parsed scenario. Output files are written
/// under output_dir (created if absent); the human-readable summary goes to
/// `log` unless quiet, and failures of the source hypothesis gate go to `err`.
/// Returns one of the kExit* codes. Identical scenarios produce byte-identical
/// output files.
int run_scenario(const Scenario& scenario, Command command,
                 const std::filesystem::path& output_dir, bool quiet, std::ostream& log,
                 std::ostream& err);

}  // namespace retpot
