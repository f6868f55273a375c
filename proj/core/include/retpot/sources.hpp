#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "retpot/geometry.hpp"
#include "retpot/vec.hpp"

namespace retpot {

/// Physical constants entering the kernels; c is the wave speed.
struct Constants {
    double c = 1.0;
};

/// Static charge density rho(r).
struct ElectrostaticSource {
    std::function<double(const Vec3&)> rho;
};

/// Static current density j(r), optionally with a static charge density and
/// an analytic divergence used to bypass finite differences.
struct MagnetostaticSource {
    std::function<Vec3(const Vec3&)> j;
    std::function<double(const Vec3&)> rho;    // empty means identically zero
    std::function<double(const Vec3&)> div_j;  // optional analytic hook
};

/// Complex amplitudes (rho_a, j_a) of a single angular frequency omega; the
/// physical densities are Re(rho_a * exp(-i omega t)) and likewise for j_a.
struct MonochromaticSource {
    double omega = 1.0;
    std::function<Complex(const Vec3&)> rho_a;
    std::function<CVec3(const Vec3&)> j_a;
    std::function<Complex(const Vec3&)> div_j_a;  // optional analytic hook
};

/// One frequency line of a band-limited source.
struct BandComponent {
    Complex weight = 1.0;
    MonochromaticSource mono;
};

/// Finite sum of monochromatic components with distinct frequencies.
struct BandLimitedSource {
    std::vector<BandComponent> components;
};

/// A charge/current model over a bounded support. Densities are exactly zero
/// outside the domain; the profile functions are only ever evaluated inside.
struct SourceModel {
    SpatialDomain domain;
    Constants constants;
    std::variant<ElectrostaticSource, MagnetostaticSource, MonochromaticSource,
                 BandLimitedSource>
        variant;
};

/// Charge density at (p, t). Static variants ignore t; the result is exactly
/// zero outside the domain.
Complex eval_charge(const SourceModel& model, const Vec3& p, double t);

/// Current density at (p, t); exactly zero outside the domain and for
/// electrostatic models.
CVec3 eval_current(const SourceModel& model, const Vec3& p, double t);

/// |div j + drho/dt| at an interior point, the local charge-conservation
/// defect. Spatial derivatives use central differences of step h unless the
/// model carries analytic hooks; time derivatives are analytic for the
/// oscillatory variants. Throws std::invalid_argument when p is not interior
/// at distance > h from the boundary.
double continuity_residual(const SourceModel& model, const Vec3& p, double t, double h);

/// Largest |j . n| over the mesh samples, each evaluated just inside the
/// boundary (inward nudge of 1e-8 times the domain diameter). For a
/// band-limited model the worst single-component amplitude is returned.
double tangency_max(const SourceModel& model, const SurfaceMesh& mesh);

/// Uniform charge rho0 in a ball of the given radius centered at the origin.
SourceModel uniform_ball_charge(double radius, double rho0, Constants constants = {});

/// Divergence-free azimuthal current j = amplitude * s * (1 - (r/R)^2) e_phi
/// (s the cylindrical radius) in an origin ball; tangent to the boundary.
SourceModel azimuthal_ball_current(double radius, double amplitude, Constants constants = {});

/// Oscillating axial current j_a = amplitude * (1 - (r/R)^2)^2 e_z with the
/// matching charge amplitude rho_a = div j_a / (i omega); satisfies the
/// monochromatic continuity identity exactly.
SourceModel polarization_ball_current(double radius, double omega, double amplitude,
                                      Constants constants = {});

/// Constant current amplitude * e_z inside an origin ball. The current is not
/// tangent to the boundary; validation is expected to reject it.
SourceModel uniform_ball_current(double radius, double amplitude, Constants constants = {});

/// Oscillating charge rho_a = amplitude * (1 - (r/R)^2)^2 with no current.
/// Violates charge conservation; validation is expected to reject it.
SourceModel oscillating_ball_charge(double radius, double omega, double amplitude,
                                    Constants constants = {});

/// Band-limited model from monochromatic component models and weights.
/// All components must share the same domain and constants and carry distinct
/// frequencies; throws std::invalid_argument otherwise.
SourceModel band_limited(const std::vector<std::pair<Complex, SourceModel>>& components);

}  // namespace retpot
