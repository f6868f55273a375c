#include "retpot/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace retpot {

namespace {

using namespace std::complex_literals;

bool use_polar_path(const SpatialDomain& domain, const Vec3& p0, const QuadratureSpec& spec) {
    return contains(domain, p0) || boundary_distance(domain, p0) <= 2.0 * spec.fd_step;
}

// integral of f(r, kernel_point) / d^2 over the domain; f bounded.
template <class F>
auto kernel2_integral(const SpatialDomain& domain, const Vec3& p0, F&& f,
                      const QuadratureSpec& spec) {
    if (use_polar_path(domain, p0, spec)) {
        return integrate_polar_clipped(
            domain, p0, [&](const Vec3& r) { return f(r, kernel_point(p0, r)); }, 2, spec);
    }
    return integrate_regular(
        domain,
        [&](const Vec3& r) {
            const KernelPoint kp = kernel_point(p0, r);
            return f(r, kp) * (1.0 / (kp.d * kp.d));
        },
        spec);
}

const MagnetostaticSource* as_magneto(const SourceModel& m) {
    return std::get_if<MagnetostaticSource>(&m.variant);
}

CVec3 coulomb_field(const SourceModel& model, const std::function<double(const Vec3&)>& rho,
                    const Vec3& p0, const QuadratureSpec& spec) {
    const Vec3 e = kernel2_integral(
        model.domain, p0, [&](const Vec3& r, const KernelPoint& kp) { return rho(r) * kp.direction; },
        spec);
    return to_cvec(e);
}

// (1/c) integral of j_a exp(ikd)/d, the monochromatic vector potential.
CVec3 retarded_a(const SpatialDomain& domain, const Constants& constants,
                 const MonochromaticSource& src, double k, const Vec3& p0,
                 const QuadratureSpec& spec) {
    CVec3 a;
    if (use_polar_path(domain, p0, spec)) {
        a = integrate_polar_clipped(
            domain, p0,
            [&](const Vec3& r) { return src.j_a(r) * std::polar(1.0, k * kernel_point(p0, r).d); },
            1, spec);
    } else {
        a = integrate_regular(
            domain,
            [&](const Vec3& r) {
                const KernelPoint kp = kernel_point(p0, r);
                return src.j_a(r) * (std::polar(1.0, k * kp.d) / kp.d);
            },
            spec);
    }
    return (1.0 / constants.c) * a;
}

MonoFields mono_fields(const SpatialDomain& domain, const Constants& constants,
                       const MonochromaticSource& src, const Vec3& p0,
                       const QuadratureSpec& spec) {
    const double k = src.omega / constants.c;
    MonoFields out;
    // -grad phi_a moved under the integral analytically:
    // grad_0 [exp(ikd)/d] = (ikd - 1) exp(ikd) (p0 - r)/d^3.
    out.e_a = kernel2_integral(
        domain, p0,
        [&](const Vec3& r, const KernelPoint& kp) {
            const Complex kernel =
                (1.0 - 1.0i * k * kp.d) * std::polar(1.0, k * kp.d) * src.rho_a(r);
            return kernel * to_cvec(kp.direction);
        },
        spec);
    out.e_a += (1.0i * k) * retarded_a(domain, constants, src, k, p0, spec);
    out.h_a = (1.0 / constants.c) *
              kernel2_integral(
                  domain, p0,
                  [&](const Vec3& r, const KernelPoint& kp) {
                      const Complex kernel = (1.0i * k * kp.d - 1.0) * std::polar(1.0, k * kp.d);
                      return kernel * cross(kp.direction, src.j_a(r));
                  },
                  spec);
    return out;
}

}  // namespace

CVec3 efield_static(const SourceModel& model, const Vec3& p0, const QuadratureSpec& spec) {
    if (const ElectrostaticSource* s = std::get_if<ElectrostaticSource>(&model.variant)) {
        return coulomb_field(model, s->rho, p0, spec);
    }
    if (const MagnetostaticSource* s = as_magneto(model)) {
        if (!s->rho) return {};
        return coulomb_field(model, s->rho, p0, spec);
    }
    throw std::invalid_argument("efield_static: model must be static");
}

CVec3 hfield_static(const SourceModel& model, const Vec3& p0, const QuadratureSpec& spec) {
    if (std::holds_alternative<ElectrostaticSource>(model.variant)) {
        return {};
    }
    const MagnetostaticSource* s = as_magneto(model);
    if (!s) throw std::invalid_argument("hfield_static: model must be static");
    const Vec3 h = kernel2_integral(
        model.domain, p0,
        [&](const Vec3& r, const KernelPoint& kp) { return cross(s->j(r), kp.direction); }, spec);
    return (1.0 / model.constants.c) * to_cvec(h);
}

MonoFields fields_mono(const SourceModel& model, const Vec3& p0, const QuadratureSpec& spec) {
    const MonochromaticSource* mono = std::get_if<MonochromaticSource>(&model.variant);
    if (!mono) throw std::invalid_argument("fields_mono: model must be monochromatic");
    return mono_fields(model.domain, model.constants, *mono, p0, spec);
}

FieldSample fields_general(const SourceModel& model, const Vec3& p0, double t,
                           const QuadratureSpec& spec) {
    const BandLimitedSource* band = std::get_if<BandLimitedSource>(&model.variant);
    if (!band) throw std::invalid_argument("fields_general: model must be band-limited");
    FieldSample out{p0, t, {}, {}};
    for (const BandComponent& c : band->components) {
        const MonoFields amp = mono_fields(model.domain, model.constants, c.mono, p0, spec);
        const Complex factor = c.weight * std::polar(1.0, -c.mono.omega * t);
        out.e += factor * amp.e_a;
        out.h += factor * amp.h_a;
    }
    return out;
}

FieldSample field_sample(const SourceModel& model, const Vec3& p0, double t,
                         const QuadratureSpec& spec) {
    FieldSample out{p0, t, {}, {}};
    if (std::holds_alternative<ElectrostaticSource>(model.variant)) {
        out.e = efield_static(model, p0, spec);
        return out;
    }
    if (std::holds_alternative<MagnetostaticSource>(model.variant)) {
        out.e = efield_static(model, p0, spec);
        out.h = hfield_static(model, p0, spec);
        return out;
    }
    if (const MonochromaticSource* mono = std::get_if<MonochromaticSource>(&model.variant)) {
        const MonoFields amp = mono_fields(model.domain, model.constants, *mono, p0, spec);
        const Complex factor = std::polar(1.0, -mono->omega * t);
        out.e = factor * amp.e_a;
        out.h = factor * amp.h_a;
        return out;
    }
    return fields_general(model, p0, t, spec);
}

FieldSample field_time_derivative(const SourceModel& model, const Vec3& p0, double t,
                                  const QuadratureSpec& spec) {
    FieldSample out{p0, t, {}, {}};
    if (std::holds_alternative<ElectrostaticSource>(model.variant) ||
        std::holds_alternative<MagnetostaticSource>(model.variant)) {
        return out;  // static fields
    }
    if (const MonochromaticSource* mono = std::get_if<MonochromaticSource>(&model.variant)) {
        const MonoFields amp = mono_fields(model.domain, model.constants, *mono, p0, spec);
        const Complex factor = -1.0i * mono->omega * std::polar(1.0, -mono->omega * t);
        out.e = factor * amp.e_a;
        out.h = factor * amp.h_a;
        return out;
    }
    const BandLimitedSource& band = std::get<BandLimitedSource>(model.variant);
    for (const BandComponent& c : band.components) {
        const MonoFields amp = mono_fields(model.domain, model.constants, c.mono, p0, spec);
        const Complex factor =
            c.weight * (-1.0i * c.mono.omega) * std::polar(1.0, -c.mono.omega * t);
        out.e += factor * amp.e_a;
        out.h += factor * amp.h_a;
    }
    return out;
}

}  // namespace retpot
