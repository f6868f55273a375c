#include "retpot/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace retpot {

namespace {

using namespace std::complex_literals;

// Near-boundary exterior points share the desingularized path because the
// untransformed rule degrades first as the kernel becomes near-singular.
bool use_polar_path(const SpatialDomain& domain, const Vec3& p0, const QuadratureSpec& spec) {
    return contains(domain, p0) || boundary_distance(domain, p0) <= 2.0 * spec.fd_step;
}

// integral of f(r) / |r - p0| over the domain, f bounded.
template <class F>
auto coulomb_integral(const SpatialDomain& domain, const Vec3& p0, F&& f,
                      const QuadratureSpec& spec) {
    if (use_polar_path(domain, p0, spec)) {
        return integrate_polar_clipped(domain, p0, f, 1, spec);
    }
    return integrate_regular(
        domain, [&](const Vec3& r) { return f(r) * (1.0 / kernel_point(p0, r).d); }, spec);
}

const MonochromaticSource& require_mono(const SourceModel& model, const char* who) {
    const MonochromaticSource* mono = std::get_if<MonochromaticSource>(&model.variant);
    if (!mono) throw std::invalid_argument(std::string(who) + ": model must be monochromatic");
    return *mono;
}

MonoPotentials mono_potentials(const SpatialDomain& domain, const Constants& constants,
                               const MonochromaticSource& src, const Vec3& p0,
                               const QuadratureSpec& spec) {
    const double k = src.omega / constants.c;
    MonoPotentials out;
    out.phi_a = coulomb_integral(
        domain, p0,
        [&](const Vec3& r) { return src.rho_a(r) * std::polar(1.0, k * kernel_point(p0, r).d); },
        spec);
    out.a_a = (1.0 / constants.c) *
              coulomb_integral(
                  domain, p0,
                  [&](const Vec3& r) {
                      return src.j_a(r) * std::polar(1.0, k * kernel_point(p0, r).d);
                  },
                  spec);
    return out;
}

}  // namespace

Complex scalar_potential_static(const SourceModel& model, const Vec3& p0,
                                const QuadratureSpec& spec) {
    if (const ElectrostaticSource* s = std::get_if<ElectrostaticSource>(&model.variant)) {
        return coulomb_integral(model.domain, p0, [&](const Vec3& r) { return Complex(s->rho(r)); },
                                spec);
    }
    if (const MagnetostaticSource* s = std::get_if<MagnetostaticSource>(&model.variant)) {
        if (!s->rho) return 0.0;
        return coulomb_integral(model.domain, p0, [&](const Vec3& r) { return Complex(s->rho(r)); },
                                spec);
    }
    throw std::invalid_argument("scalar_potential_static: model must be static");
}

CVec3 vector_potential_static(const SourceModel& model, const Vec3& p0,
                              const QuadratureSpec& spec) {
    if (std::holds_alternative<ElectrostaticSource>(model.variant)) {
        return {};  // no current anywhere
    }
    if (const MagnetostaticSource* s = std::get_if<MagnetostaticSource>(&model.variant)) {
        const Vec3 a = coulomb_integral(model.domain, p0, [&](const Vec3& r) { return s->j(r); },
                                        spec);
        return (1.0 / model.constants.c) * to_cvec(a);
    }
    throw std::invalid_argument("vector_potential_static: model must be static");
}

MonoPotentials potentials_mono(const SourceModel& model, const Vec3& p0,
                               const QuadratureSpec& spec) {
    const MonochromaticSource& src = require_mono(model, "potentials_mono");
    return mono_potentials(model.domain, model.constants, src, p0, spec);
}

PotentialSample potentials_general(const SourceModel& model, const Vec3& p0, double t,
                                   const QuadratureSpec& spec) {
    const BandLimitedSource* band = std::get_if<BandLimitedSource>(&model.variant);
    if (!band) throw std::invalid_argument("potentials_general: model must be band-limited");
    PotentialSample out{p0, t, 0.0, {}};
    for (const BandComponent& c : band->components) {
        const MonoPotentials mono =
            mono_potentials(model.domain, model.constants, c.mono, p0, spec);
        const Complex factor = c.weight * std::polar(1.0, -c.mono.omega * t);
        out.phi += factor * mono.phi_a;
        out.a += factor * mono.a_a;
    }
    return out;
}

PotentialSample potential_sample(const SourceModel& model, const Vec3& p0, double t,
                                 const QuadratureSpec& spec) {
    PotentialSample out{p0, t, 0.0, {}};
    if (std::holds_alternative<ElectrostaticSource>(model.variant)) {
        out.phi = scalar_potential_static(model, p0, spec);
        return out;
    }
    if (std::holds_alternative<MagnetostaticSource>(model.variant)) {
        out.phi = scalar_potential_static(model, p0, spec);
        out.a = vector_potential_static(model, p0, spec);
        return out;
    }
    if (const MonochromaticSource* mono = std::get_if<MonochromaticSource>(&model.variant)) {
        const MonoPotentials amp = mono_potentials(model.domain, model.constants, *mono, p0, spec);
        const Complex factor = std::polar(1.0, -mono->omega * t);
        out.phi = factor * amp.phi_a;
        out.a = factor * amp.a_a;
        return out;
    }
    return potentials_general(model, p0, t, spec);
}

double gauge_residual(const SourceModel& model, const Vec3& p0, double t,
                      const QuadratureSpec& spec) {
    validate_spec(spec);
    const double h = spec.fd_step;
    if (boundary_distance(model.domain, p0) <= 2.0 * h) {
        throw std::invalid_argument(
            "gauge_residual: p0 must be at distance > 2*fd_step from the boundary");
    }
    if (std::holds_alternative<ElectrostaticSource>(model.variant)) {
        return 0.0;  // A identically zero and phi time-independent
    }
    const Vec3 ex{h, 0, 0}, ey{0, h, 0}, ez{0, 0, h};
    if (const MonochromaticSource* mono = std::get_if<MonochromaticSource>(&model.variant)) {
        const double k = mono->omega / model.constants.c;
        auto a_at = [&](const Vec3& q) { return potentials_mono(model, q, spec).a_a; };
        const Complex div_a = (a_at(p0 + ex).x - a_at(p0 - ex).x + a_at(p0 + ey).y -
                               a_at(p0 - ey).y + a_at(p0 + ez).z - a_at(p0 - ez).z) /
                              (2.0 * h);
        const Complex phi = potentials_mono(model, p0, spec).phi_a;
        return std::abs(div_a - 1.0i * k * phi);
    }
    auto a_at = [&](const Vec3& q) { return potential_sample(model, q, t, spec).a; };
    const Complex div_a = (a_at(p0 + ex).x - a_at(p0 - ex).x + a_at(p0 + ey).y - a_at(p0 - ey).y +
                           a_at(p0 + ez).z - a_at(p0 - ez).z) /
                          (2.0 * h);
    Complex dphi_dt = 0.0;
    if (const BandLimitedSource* band = std::get_if<BandLimitedSource>(&model.variant)) {
        for (const BandComponent& c : band->components) {
            const MonoPotentials amp =
                mono_potentials(model.domain, model.constants, c.mono, p0, spec);
            dphi_dt += c.weight * (-1.0i * c.mono.omega) * std::polar(1.0, -c.mono.omega * t) *
                       amp.phi_a;
        }
    }
    // Magnetostatic: dphi/dt = 0.
    return std::abs(div_a + dphi_dt / model.constants.c);
}

}  // namespace retpot
