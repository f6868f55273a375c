#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "retpot/quadrature.hpp"
#include "retpot/sources.hpp"

namespace retpot {

/// All parse failures of one scenario file, each message carrying the key
/// path it refers to.
class ScenarioError : public std::runtime_error {
  public:
    explicit ScenarioError(std::vector<std::string> errors);

    const std::vector<std::string>& errors() const { return errors_; }

  private:
    std::vector<std::string> errors_;
};

/// Residual tolerances a verify run is judged against.
struct Tolerances {
    double maxwell = 1e-2;
    double gauge = 1e-3;
    double wave = 1e-1;
    double continuity = 1e-3;
    double flux = 1e-3;
};

/// Cartesian evaluation grid; rows iterate x fastest, then y, then z.
struct GridSpec {
    Vec3 min;
    Vec3 max;
    std::array<int, 3> counts{5, 5, 5};
};

/// Parameters of one convergence run.
struct ConvergenceSpec {
    std::string check = "flux";  // flux | phi_exterior | maxwell_4
    int levels = 3;
};

/// A fully validated experiment description: the source model plus every
/// numerical knob a command needs. Everything lives in the scenario file;
/// no environment variables take part.
struct Scenario {
    SourceModel model;
    QuadratureSpec spec;
    Tolerances tolerances;
    GridSpec grid;
    std::vector<double> times{0.0};
    double time = 0.0;  // evaluation time for verify/flux
    std::optional<std::vector<Vec3>> probes;
    double flux_radius = 0.0;
    int flux_resolution = 16;
    bool real_only = false;
    ConvergenceSpec convergence;
};

/// Parses and validates scenario JSON text ("schema": 1). Unknown keys are
/// errors naming the offending key path; constraint violations collect into
/// one ScenarioError.
Scenario parse_scenario(const std::string& json_text);

/// Reads and parses a scenario file; I/O failures mention the path.
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace retpot
