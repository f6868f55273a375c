#pragma once

#include "retpot/quadrature.hpp"
#include "retpot/sources.hpp"
#include "retpot/vec.hpp"

namespace retpot {

/// Scalar and vector potential at one observation point and time.
struct PotentialSample {
    Vec3 point;
    double t = 0.0;
    Complex phi;
    CVec3 a;
};

/// Monochromatic potential amplitudes (no exp(-i omega t) factor applied).
struct MonoPotentials {
    Complex phi_a;
    CVec3 a_a;
};

/// phi(p0) = integral of rho / d over the domain, for the static variants.
/// Observation points outside the domain (beyond a 2*fd_step margin) use the
/// untransformed rule; all other points use the desingularized polar rule.
/// Throws std::invalid_argument for oscillatory variants.
Complex scalar_potential_static(const SourceModel& model, const Vec3& p0,
                                const QuadratureSpec& spec);

/// A(p0) = (1/c) integral of j / d over the domain, for the static variants;
/// identically zero for electrostatic models. Same dispatch as the scalar
/// potential.
CVec3 vector_potential_static(const SourceModel& model, const Vec3& p0,
                              const QuadratureSpec& spec);

/// Monochromatic amplitudes with the retarded kernel exp(ikd)/d, k = omega/c:
/// phi_a = integral rho_a exp(ikd)/d, a_a = (1/c) integral j_a exp(ikd)/d.
/// Throws std::invalid_argument unless the model is monochromatic.
MonoPotentials potentials_mono(const SourceModel& model, const Vec3& p0,
                               const QuadratureSpec& spec);

/// Band-limited potentials at time t: the weighted component sum with the
/// oscillation factors exp(-i omega_k t) applied. Throws
/// std::invalid_argument unless the model is band-limited.
PotentialSample potentials_general(const SourceModel& model, const Vec3& p0, double t,
                                   const QuadratureSpec& spec);

/// Potentials of any model variant at (p0, t); static variants ignore t and
/// a monochromatic model contributes its amplitudes times exp(-i omega t).
PotentialSample potential_sample(const SourceModel& model, const Vec3& p0, double t,
                                 const QuadratureSpec& spec);

/// Gauge defect at (p0, t): |div A + (1/c) dphi/dt| for the time-domain
/// variants and |div A_a - i k phi_a| for a monochromatic model. div A uses
/// central differences of step fd_step; time derivatives are analytic.
/// Throws std::invalid_argument when p0 is within 2*fd_step of the boundary.
double gauge_residual(const SourceModel& model, const Vec3& p0, double t,
                      const QuadratureSpec& spec);

}  // namespace retpot
