#pragma once

#include "retpot/potentials.hpp"
#include "retpot/quadrature.hpp"
#include "retpot/sources.hpp"
#include "retpot/vec.hpp"

namespace retpot {

/// Electric and magnetic field at one observation point and time.
struct FieldSample {
    Vec3 point;
    double t = 0.0;
    CVec3 e;
    CVec3 h;
};

/// Monochromatic field amplitudes (no exp(-i omega t) factor applied).
struct MonoFields {
    CVec3 e_a;
    CVec3 h_a;
};

/// Coulomb field E(p0) = integral rho (p0 - r)/d^3 of the model's static
/// charge density; zero when the model carries no charge. The first
/// derivative of the kernel is applied analytically, so no differentiation
/// crosses the integral sign. Throws std::invalid_argument for oscillatory
/// variants.
CVec3 efield_static(const SourceModel& model, const Vec3& p0, const QuadratureSpec& spec);

/// Biot-Savart field H(p0) = (1/c) integral j x (p0 - r)/d^3; zero for
/// electrostatic models. Throws std::invalid_argument for oscillatory
/// variants.
CVec3 hfield_static(const SourceModel& model, const Vec3& p0, const QuadratureSpec& spec);

/// Monochromatic amplitudes with the analytic kernel gradient:
///   e_a = integral rho_a (1 - ikd) exp(ikd) (p0 - r)/d^3 + i k a_a
///   h_a = (1/c) integral (ikd - 1) exp(ikd) ((p0 - r)/d x j_a) / d^2.
/// Both reduce to the static fields as k -> 0.
MonoFields fields_mono(const SourceModel& model, const Vec3& p0, const QuadratureSpec& spec);

/// Band-limited fields at time t: weighted component sum with the
/// exp(-i omega_k t) factors applied.
FieldSample fields_general(const SourceModel& model, const Vec3& p0, double t,
                           const QuadratureSpec& spec);

/// Fields of any model variant at (p0, t).
FieldSample field_sample(const SourceModel& model, const Vec3& p0, double t,
                         const QuadratureSpec& spec);

/// Analytic time derivative (dE/dt, dH/dt) at (p0, t): zero for static
/// variants, -i omega times the field for each oscillatory component.
FieldSample field_time_derivative(const SourceModel& model, const Vec3& p0, double t,
                                  const QuadratureSpec& spec);

}  // namespace retpot
