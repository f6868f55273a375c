#include "retpot/sources.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace retpot {

namespace {

using namespace std::complex_literals;

void require_interior_with_margin(const SpatialDomain& domain, const Vec3& p, double h,
                                  const char* who) {
    if (!contains(domain, p) || boundary_distance(domain, p) <= h) {
        throw std::invalid_argument(std::string(who) +
                                    ": point must be interior at distance > h from the boundary");
    }
}

// Central-difference divergence of a vector amplitude, step h.
template <class JFn>
Complex fd_divergence(const JFn& j, const Vec3& p, double h) {
    const Vec3 ex{h, 0, 0}, ey{0, h, 0}, ez{0, 0, h};
    const Complex dx = (j(p + ex).x - j(p - ex).x) / (2.0 * h);
    const Complex dy = (j(p + ey).y - j(p - ey).y) / (2.0 * h);
    const Complex dz = (j(p + ez).z - j(p - ez).z) / (2.0 * h);
    return dx + dy + dz;
}

// Continuity defect amplitude div j_a - i omega rho_a of one component.
Complex mono_continuity_amplitude(const MonochromaticSource& s, const Vec3& p, double h) {
    const Complex div_j = s.div_j_a ? s.div_j_a(p)
                                    : fd_divergence([&](const Vec3& q) { return s.j_a(q); }, p, h);
    return div_j - 1.0i * s.omega * s.rho_a(p);
}

}  // namespace

Complex eval_charge(const SourceModel& model, const Vec3& p, double t) {
    if (!contains(model.domain, p)) return 0.0;
    return std::visit(
        [&](const auto& s) -> Complex {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ElectrostaticSource>) {
                return s.rho(p);
            } else if constexpr (std::is_same_v<T, MagnetostaticSource>) {
                return s.rho ? Complex(s.rho(p)) : Complex(0.0);
            } else if constexpr (std::is_same_v<T, MonochromaticSource>) {
                return s.rho_a(p) * std::polar(1.0, -s.omega * t);
            } else {
                Complex acc = 0.0;
                for (const BandComponent& c : s.components) {
                    acc += c.weight * c.mono.rho_a(p) * std::polar(1.0, -c.mono.omega * t);
                }
                return acc;
            }
        },
        model.variant);
}

CVec3 eval_current(const SourceModel& model, const Vec3& p, double t) {
    if (!contains(model.domain, p)) return {};
    return std::visit(
        [&](const auto& s) -> CVec3 {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ElectrostaticSource>) {
                return {};
            } else if constexpr (std::is_same_v<T, MagnetostaticSource>) {
                return to_cvec(s.j(p));
            } else if constexpr (std::is_same_v<T, MonochromaticSource>) {
                return std::polar(1.0, -s.omega * t) * s.j_a(p);
            } else {
                CVec3 acc;
                for (const BandComponent& c : s.components) {
                    acc += (c.weight * std::polar(1.0, -c.mono.omega * t)) * c.mono.j_a(p);
                }
                return acc;
            }
        },
        model.variant);
}

double continuity_residual(const SourceModel& model, const Vec3& p, double t, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("continuity_residual: h must be > 0");
    require_interior_with_margin(model.domain, p, h, "continuity_residual");
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ElectrostaticSource>) {
                return 0.0;  // no current and a time-independent charge
            } else if constexpr (std::is_same_v<T, MagnetostaticSource>) {
                const Complex div_j =
                    s.div_j ? Complex(s.div_j(p))
                            : fd_divergence([&](const Vec3& q) { return to_cvec(s.j(q)); }, p, h);
                return std::abs(div_j);
            } else if constexpr (std::is_same_v<T, MonochromaticSource>) {
                return std::abs(mono_continuity_amplitude(s, p, h));
            } else {
                Complex acc = 0.0;
                for (const BandComponent& c : s.components) {
                    acc += c.weight * std::polar(1.0, -c.mono.omega * t) *
                           mono_continuity_amplitude(c.mono, p, h);
                }
                return std::abs(acc);
            }
        },
        model.variant);
}

double tangency_max(const SourceModel& model, const SurfaceMesh& mesh) {
    const double nudge = 1e-8 * diameter(model.domain);
    double worst = 0.0;
    for (const SurfaceSample& s : mesh.samples) {
        const Vec3 q = s.point - nudge * s.normal;
        const double value = std::visit(
            [&](const auto& src) -> double {
                using T = std::decay_t<decltype(src)>;
                if constexpr (std::is_same_v<T, ElectrostaticSource>) {
                    return 0.0;
                } else if constexpr (std::is_same_v<T, MagnetostaticSource>) {
                    return std::abs(dot(to_cvec(src.j(q)), s.normal));
                } else if constexpr (std::is_same_v<T, MonochromaticSource>) {
                    return std::abs(dot(src.j_a(q), s.normal));
                } else {
                    double m = 0.0;
                    for (const BandComponent& c : src.components) {
                        m = std::max(m, std::abs(c.weight * dot(c.mono.j_a(q), s.normal)));
                    }
                    return m;
                }
            },
            model.variant);
        worst = std::max(worst, value);
    }
    return worst;
}

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

}  // namespace

SourceModel uniform_ball_charge(double radius, double rho0, Constants constants) {
    require_positive(radius, "uniform_ball_charge: radius");
    require_positive(constants.c, "uniform_ball_charge: c");
    ElectrostaticSource src;
    src.rho = [rho0](const Vec3&) { return rho0; };
    return {Ball{{0, 0, 0}, radius}, constants, std::move(src)};
}

SourceModel azimuthal_ball_current(double radius, double amplitude, Constants constants) {
    require_positive(radius, "azimuthal_ball_current: radius");
    require_positive(constants.c, "azimuthal_ball_current: c");
    const double inv_r2 = 1.0 / (radius * radius);
    MagnetostaticSource src;
    // s * (1 - (r/R)^2) e_phi written without the axis singularity:
    // j = amplitude * (1 - (r/R)^2) * (-y, x, 0).
    src.j = [amplitude, inv_r2](const Vec3& p) {
        const double f = amplitude * (1.0 - dot(p, p) * inv_r2);
        return Vec3{-f * p.y, f * p.x, 0.0};
    };
    src.div_j = [](const Vec3&) { return 0.0; };  // exact: radial profile times a solenoidal field
    return {Ball{{0, 0, 0}, radius}, constants, std::move(src)};
}

SourceModel polarization_ball_current(double radius, double omega, double amplitude,
                                      Constants constants) {
    require_positive(radius, "polarization_ball_current: radius");
    require_positive(omega, "polarization_ball_current: omega");
    require_positive(constants.c, "polarization_ball_current: c");
    const double inv_r2 = 1.0 / (radius * radius);
    MonochromaticSource src;
    src.omega = omega;
    src.j_a = [amplitude, inv_r2](const Vec3& p) {
        const double q = 1.0 - dot(p, p) * inv_r2;
        return CVec3{0.0, 0.0, amplitude * q * q};
    };
    // div j_a = -4 A z (1 - (r/R)^2) / R^2 and rho_a = div j_a / (i omega).
    src.div_j_a = [amplitude, inv_r2](const Vec3& p) {
        return Complex(-4.0 * amplitude * p.z * (1.0 - dot(p, p) * inv_r2) * inv_r2);
    };
    src.rho_a = [amplitude, inv_r2, omega](const Vec3& p) {
        const double div_j = -4.0 * amplitude * p.z * (1.0 - dot(p, p) * inv_r2) * inv_r2;
        return Complex(0.0, div_j / -omega);  // 1/(i omega) = -i/omega
    };
    return {Ball{{0, 0, 0}, radius}, constants, std::move(src)};
}

SourceModel uniform_ball_current(double radius, double amplitude, Constants constants) {
    require_positive(radius, "uniform_ball_current: radius");
    require_positive(constants.c, "uniform_ball_current: c");
    MagnetostaticSource src;
    src.j = [amplitude](const Vec3&) { return Vec3{0.0, 0.0, amplitude}; };
    src.div_j = [](const Vec3&) { return 0.0; };
    return {Ball{{0, 0, 0}, radius}, constants, std::move(src)};
}

SourceModel oscillating_ball_charge(double radius, double omega, double amplitude,
                                    Constants constants) {
    require_positive(radius, "oscillating_ball_charge: radius");
    require_positive(omega, "oscillating_ball_charge: omega");
    require_positive(constants.c, "oscillating_ball_charge: c");
    const double inv_r2 = 1.0 / (radius * radius);
    MonochromaticSource src;
    src.omega = omega;
    src.rho_a = [amplitude, inv_r2](const Vec3& p) {
        const double q = 1.0 - dot(p, p) * inv_r2;
        return Complex(amplitude * q * q);
    };
    src.j_a = [](const Vec3&) { return CVec3{}; };
    src.div_j_a = [](const Vec3&) { return Complex(0.0); };
    return {Ball{{0, 0, 0}, radius}, constants, std::move(src)};
}

SourceModel band_limited(const std::vector<std::pair<Complex, SourceModel>>& components) {
    if (components.empty()) {
        throw std::invalid_argument("band_limited: at least one component required");
    }
    BandLimitedSource band;
    band.components.reserve(components.size());
    const SourceModel& first = components.front().second;
    for (const auto& [weight, model] : components) {
        const MonochromaticSource* mono = std::get_if<MonochromaticSource>(&model.variant);
        if (!mono) {
            throw std::invalid_argument("band_limited: components must be monochromatic");
        }
        if (model.domain.index() != first.domain.index() ||
            diameter(model.domain) != diameter(first.domain) ||
            norm(centroid(model.domain) - centroid(first.domain)) != 0.0) {
            throw std::invalid_argument("band_limited: components must share one domain");
        }
        if (model.constants.c != first.constants.c) {
            throw std::invalid_argument("band_limited: components must share constants");
        }
        for (const BandComponent& existing : band.components) {
            if (existing.mono.omega == mono->omega) {
                throw std::invalid_argument("band_limited: component frequencies must be distinct");
            }
        }
        band.components.push_back({weight, *mono});
    }
    return {first.domain, first.constants, std::move(band)};
}

}  // namespace retpot
