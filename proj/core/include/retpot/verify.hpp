#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "retpot/fields.hpp"
#include "retpot/potentials.hpp"
#include "retpot/quadrature.hpp"
#include "retpot/sources.hpp"

namespace retpot {

/// Max-norm residuals of the field equations over a probe set. The headline
/// values are scaled: each pointwise residual is divided by
/// max(1, |local source term|) so equations with a strong source are judged
/// relatively and source-free ones absolutely. The _abs twins keep the
/// unscaled norms.
struct ResidualReport {
    std::array<double, 4> maxwell{};  // rot E + (1/c) dH/dt ; rot H - (1/c) dE/dt - (4pi/c) j ;
                                      // div H ; div E - 4pi rho
    std::array<double, 4> maxwell_abs{};
    double gauge = 0.0;
    double wave_phi = 0.0;
    double wave_a = 0.0;
    double continuity = 0.0;
    double flux_mismatch = 0.0;
    std::vector<Vec3> probe_points;
    QuadratureSpec spec_used;
};

/// Surface integral of E.n against the charge content it must equal.
struct FluxResult {
    double flux = 0.0;      // integral of Re(E).n over the mesh
    double expected = 0.0;  // 4pi times the enclosed charge
};

/// Wave-equation residual norms for the scalar and vector potentials.
struct WaveResiduals {
    double wave_phi = 0.0;
    double wave_a = 0.0;
};

/// One refinement series of a named error measure.
struct ConvergenceRecord {
    std::string check;
    std::vector<std::pair<QuadratureSpec, double>> levels;
    double slope = 0.0;  // log-error versus log-node-count fit
};

/// Source admissibility: charge conservation and boundary tangency.
struct SourceValidation {
    double continuity_max = 0.0;
    double tangency_max = 0.0;
    bool continuity_ok = false;
    bool tangency_ok = false;

    bool ok() const { return continuity_ok && tangency_ok; }
};

/// Residuals of all four field equations at the probes and time t, by central
/// differences of step fd_step in space; time derivatives are analytic.
/// Fills the maxwell fields of the report. Throws std::invalid_argument when
/// a probe is within 2*fd_step of the domain boundary.
ResidualReport maxwell_residuals(const SourceModel& model, std::span<const Vec3> probes, double t,
                                 const QuadratureSpec& spec);

/// Flux of E through an enclosing surface versus 4pi times the enclosed
/// charge, evaluated at t = 0. Throws std::invalid_argument when any mesh
/// point touches the domain.
FluxResult gauss_flux_test(const SourceModel& model, const SurfaceMesh& enclosing,
                           const QuadratureSpec& spec);

/// Wave-equation residuals |lap phi - (1/c^2) d2phi/dt2 + 4pi rho| and the
/// vector counterpart, with 7-point Laplacians on potential evaluations and
/// analytic time derivatives; max-norm over probes, scaled like the report
/// headline values. Throws std::invalid_argument when a probe is within
/// 3*fd_step of the boundary.
WaveResiduals wave_residual(const SourceModel& model, std::span<const Vec3> probes, double t,
                            const QuadratureSpec& spec);

/// Error of a named check across monotonically refined levels (>= 3 required;
/// each level's node counts must not shrink and at least one knob must
/// change). Throws std::invalid_argument otherwise.
ConvergenceRecord convergence_study(std::string_view check,
                                    const std::function<double(const QuadratureSpec&)>& error_at,
                                    std::span<const QuadratureSpec> levels);

/// Default probe set: a 3x3x3 interior grid clear of the boundary margin plus
/// six exterior axis points at twice the domain radius from the centroid.
std::vector<Vec3> default_probes(const SpatialDomain& domain, const QuadratureSpec& spec);

/// Hypothesis gate run before any potential evaluation: continuity residual
/// at 100 seeded interior points (and a time sample per component for
/// band-limited models) plus boundary tangency. Both must stay below 1e-3.
SourceValidation validate_source(const SourceModel& model, const QuadratureSpec& spec);

/// Tolerance used by validate_source for both continuity and tangency.
inline constexpr double kValidationTol = 1e-3;

/// Complete report: Maxwell residuals, gauge, wave, continuity over the
/// default probes, and the Gauss flux mismatch through a sphere of
/// flux_radius around the centroid (flux_mismatch is (flux - expected)
/// divided by max(1, |expected|)).
ResidualReport full_residual_report(const SourceModel& model, double t,
                                    const QuadratureSpec& spec, double flux_radius,
                                    int flux_resolution);

}  // namespace retpot
