#include "retpot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace retpot {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double scaled(double residual, double source_magnitude) {
    return residual / std::max(1.0, source_magnitude);
}

struct Stencil {
    FieldSample center;
    std::array<FieldSample, 6> offset;  // +x, -x, +y, -y, +z, -z
};

Stencil field_stencil(const SourceModel& model, const Vec3& p, double t, double h,
                      const QuadratureSpec& spec) {
    const std::array<Vec3, 6> shifts = {Vec3{h, 0, 0}, Vec3{-h, 0, 0}, Vec3{0, h, 0},
                                        Vec3{0, -h, 0}, Vec3{0, 0, h}, Vec3{0, 0, -h}};
    Stencil st;
    st.center = field_sample(model, p, t, spec);
    for (int i = 0; i < 6; ++i) {
        st.offset[i] = field_sample(model, p + shifts[i], t, spec);
    }
    return st;
}

CVec3 fd_curl(const std::array<FieldSample, 6>& s, double h, CVec3 FieldSample::* member) {
    const auto at = [&](int i) -> const CVec3& { return s[i].*member; };
    const double inv = 1.0 / (2.0 * h);
    // (rot F)_x = dFz/dy - dFy/dz, indices: 2,3 are +/-y and 4,5 are +/-z.
    return {
        ((at(2).z - at(3).z) - (at(4).y - at(5).y)) * inv,
        ((at(4).x - at(5).x) - (at(0).z - at(1).z)) * inv,
        ((at(0).y - at(1).y) - (at(2).x - at(3).x)) * inv,
    };
}

Complex fd_div(const std::array<FieldSample, 6>& s, double h, CVec3 FieldSample::* member) {
    const double inv = 1.0 / (2.0 * h);
    return ((s[0].*member).x - (s[1].*member).x + (s[2].*member).y - (s[3].*member).y +
            (s[4].*member).z - (s[5].*member).z) *
           inv;
}

}  // namespace

ResidualReport maxwell_residuals(const SourceModel& model, std::span<const Vec3> probes, double t,
                                 const QuadratureSpec& spec) {
    validate_spec(spec);
    const double h = spec.fd_step;
    for (const Vec3& p : probes) {
        if (boundary_distance(model.domain, p) <= 2.0 * h) {
            throw std::invalid_argument(
                "maxwell_residuals: probes must be at distance > 2*fd_step from the boundary");
        }
    }
    ResidualReport report;
    report.spec_used = spec;
    report.probe_points.assign(probes.begin(), probes.end());
    const double c = model.constants.c;
    for (const Vec3& p : probes) {
        const Stencil st = field_stencil(model, p, t, h, spec);
        const FieldSample dt = field_time_derivative(model, p, t, spec);
        const CVec3 rot_e = fd_curl(st.offset, h, &FieldSample::e);
        const CVec3 rot_h = fd_curl(st.offset, h, &FieldSample::h);
        const Complex div_e = fd_div(st.offset, h, &FieldSample::e);
        const Complex div_h = fd_div(st.offset, h, &FieldSample::h);
        const Complex rho = eval_charge(model, p, t);
        const CVec3 j = eval_current(model, p, t);

        const double r1 = norm(rot_e + (1.0 / c) * dt.h);
        const CVec3 j_term = (kFourPi / c) * j;
        const double r2 = norm(rot_h - (1.0 / c) * dt.e - j_term);
        const double r3 = std::abs(div_h);
        const double r4 = std::abs(div_e - kFourPi * rho);

        report.maxwell_abs[0] = std::max(report.maxwell_abs[0], r1);
        report.maxwell_abs[1] = std::max(report.maxwell_abs[1], r2);
        report.maxwell_abs[2] = std::max(report.maxwell_abs[2], r3);
        report.maxwell_abs[3] = std::max(report.maxwell_abs[3], r4);
        report.maxwell[0] = std::max(report.maxwell[0], r1);
        report.maxwell[1] = std::max(report.maxwell[1], scaled(r2, norm(j_term)));
        report.maxwell[2] = std::max(report.maxwell[2], r3);
        report.maxwell[3] = std::max(report.maxwell[3], scaled(r4, kFourPi * std::abs(rho)));
    }
    return report;
}

FluxResult gauss_flux_test(const SourceModel& model, const SurfaceMesh& enclosing,
                           const QuadratureSpec& spec) {
    validate_spec(spec);
    for (const SurfaceSample& s : enclosing.samples) {
        if (contains(model.domain, s.point) ||
            boundary_distance(model.domain, s.point) < spec.fd_step) {
            throw std::invalid_argument(
                "gauss_flux_test: the surface must keep clear of the source support");
        }
    }
    FluxResult out;
    const Complex flux = integrate_surface(enclosing, [&](const Vec3& q, const Vec3& n) {
        return dot(field_sample(model, q, 0.0, spec).e, n);
    });
    out.flux = flux.real();
    const Complex charge =
        integrate_regular(model.domain, [&](const Vec3& r) { return eval_charge(model, r, 0.0); },
                          spec);
    out.expected = kFourPi * charge.real();
    return out;
}

WaveResiduals wave_residual(const SourceModel& model, std::span<const Vec3> probes, double t,
                            const QuadratureSpec& spec) {
    validate_spec(spec);
    const double h = spec.fd_step;
    for (const Vec3& p : probes) {
        if (boundary_distance(model.domain, p) <= 3.0 * h) {
            throw std::invalid_argument(
                "wave_residual: probes must be at distance > 3*fd_step from the boundary");
        }
    }
    const double c = model.constants.c;
    const std::array<Vec3, 6> shifts = {Vec3{h, 0, 0}, Vec3{-h, 0, 0}, Vec3{0, h, 0},
                                        Vec3{0, -h, 0}, Vec3{0, 0, h}, Vec3{0, 0, -h}};
    WaveResiduals out;
    for (const Vec3& p : probes) {
        const PotentialSample center = potential_sample(model, p, t, spec);
        Complex lap_phi = -6.0 * center.phi;
        CVec3 lap_a = -6.0 * center.a;
        for (const Vec3& s : shifts) {
            const PotentialSample q = potential_sample(model, p + s, t, spec);
            lap_phi += q.phi;
            lap_a += q.a;
        }
        lap_phi /= h * h;
        lap_a = (1.0 / (h * h)) * lap_a;

        // Second time derivatives are analytic: each oscillatory component
        // carries exp(-i omega t), so d2/dt2 multiplies it by -omega^2.
        Complex d2phi_dt2 = 0.0;
        CVec3 d2a_dt2;
        if (const MonochromaticSource* mono = std::get_if<MonochromaticSource>(&model.variant)) {
            const double w2 = mono->omega * mono->omega;
            d2phi_dt2 = -w2 * center.phi;
            d2a_dt2 = -w2 * center.a;
        } else if (const BandLimitedSource* band =
                       std::get_if<BandLimitedSource>(&model.variant)) {
            for (const BandComponent& comp : band->components) {
                const MonoPotentials amp = potentials_mono(
                    SourceModel{model.domain, model.constants, comp.mono}, p, spec);
                const Complex factor = comp.weight * (-comp.mono.omega * comp.mono.omega) *
                                       std::polar(1.0, -comp.mono.omega * t);
                d2phi_dt2 += factor * amp.phi_a;
                d2a_dt2 += factor * amp.a_a;
            }
        }

        const Complex rho = eval_charge(model, p, t);
        const CVec3 j = eval_current(model, p, t);
        const double r_phi = std::abs(lap_phi - d2phi_dt2 / (c * c) + kFourPi * rho);
        const CVec3 j_term = (kFourPi / c) * j;
        const double r_a = norm(lap_a - (1.0 / (c * c)) * d2a_dt2 + j_term);
        out.wave_phi = std::max(out.wave_phi, scaled(r_phi, kFourPi * std::abs(rho)));
        out.wave_a = std::max(out.wave_a, scaled(r_a, norm(j_term)));
    }
    return out;
}

ConvergenceRecord convergence_study(std::string_view check,
                                    const std::function<double(const QuadratureSpec&)>& error_at,
                                    std::span<const QuadratureSpec> levels) {
    if (levels.size() < 3) {
        throw std::invalid_argument("convergence_study: at least 3 levels required");
    }
    for (std::size_t i = 1; i < levels.size(); ++i) {
        const QuadratureSpec& a = levels[i - 1];
        const QuadratureSpec& b = levels[i];
        const bool no_shrink = b.n_radial >= a.n_radial && b.n_polar >= a.n_polar &&
                               b.n_azimuth >= a.n_azimuth && b.n_regular >= a.n_regular &&
                               b.fd_step <= a.fd_step;
        const bool changed = b.n_radial > a.n_radial || b.n_polar > a.n_polar ||
                             b.n_azimuth > a.n_azimuth || b.n_regular > a.n_regular ||
                             b.fd_step < a.fd_step;
        if (!no_shrink || !changed) {
            throw std::invalid_argument("convergence_study: levels must be monotonically refined");
        }
    }
    ConvergenceRecord record;
    record.check = std::string(check);
    record.levels.reserve(levels.size());
    for (const QuadratureSpec& spec : levels) {
        record.levels.emplace_back(spec, error_at(spec));
    }
    // Least-squares slope of log(error) against log(volume node count).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(record.levels.size());
    for (const auto& [spec, error] : record.levels) {
        const double nodes = static_cast<double>(spec.n_radial) * spec.n_polar * spec.n_azimuth;
        const double x = std::log(nodes);
        const double y = std::log(std::max(error, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    record.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return record;
}

std::vector<Vec3> default_probes(const SpatialDomain& domain, const QuadratureSpec& spec) {
    validate_spec(spec);
    const Vec3 c = centroid(domain);
    const double r = bounding_radius(domain);
    std::vector<Vec3> probes;
    probes.reserve(33);
    // Interior 3x3x3 grid. For a ball the 0.45 R spacing puts the far corner
    // at 0.78 R; for a box each axis uses 0.45 of its half extent.
    double half[3] = {0.45 * r, 0.45 * r, 0.45 * r};
    if (const Box* box = std::get_if<Box>(&domain)) {
        half[0] = 0.45 * 0.5 * (box->max.x - box->min.x);
        half[1] = 0.45 * 0.5 * (box->max.y - box->min.y);
        half[2] = 0.45 * 0.5 * (box->max.z - box->min.z);
    }
    for (int iz = -1; iz <= 1; ++iz) {
        for (int iy = -1; iy <= 1; ++iy) {
            for (int ix = -1; ix <= 1; ++ix) {
                probes.push_back(c + Vec3{ix * half[0], iy * half[1], iz * half[2]});
            }
        }
    }
    const double rout = 2.0 * r;
    probes.push_back(c + Vec3{rout, 0, 0});
    probes.push_back(c + Vec3{-rout, 0, 0});
    probes.push_back(c + Vec3{0, rout, 0});
    probes.push_back(c + Vec3{0, -rout, 0});
    probes.push_back(c + Vec3{0, 0, rout});
    probes.push_back(c + Vec3{0, 0, -rout});
    for (const Vec3& p : probes) {
        if (boundary_distance(domain, p) <= 3.0 * spec.fd_step) {
            throw std::invalid_argument(
                "default_probes: fd_step too large for the domain's probe margins");
        }
    }
    return probes;
}

SourceValidation validate_source(const SourceModel& model, const QuadratureSpec& spec) {
    validate_spec(spec);
    validate_domain(model.domain);
    const double h = spec.fd_step;
    SourceValidation out;

    // Seeded rejection sampling keeps the gate deterministic.
    std::mt19937 rng(12345u);
    const Vec3 c = centroid(model.domain);
    const double r = bounding_radius(model.domain);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    // A time sample per component frequency exercises band-limited models at
    // more than the t = 0 phase.
    std::vector<double> times{0.0};
    if (const BandLimitedSource* band = std::get_if<BandLimitedSource>(&model.variant)) {
        for (const BandComponent& comp : band->components) {
            times.push_back(0.25 * 2.0 * std::numbers::pi / comp.mono.omega);
        }
    }
    int accepted = 0;
    while (accepted < 100) {
        const Vec3 p = c + Vec3{r * unit(rng), r * unit(rng), r * unit(rng)};
        if (!contains(model.domain, p) || boundary_distance(model.domain, p) <= 2.0 * h) continue;
        ++accepted;
        for (double t : times) {
            out.continuity_max = std::max(out.continuity_max, continuity_residual(model, p, t, h));
        }
    }
    out.tangency_max = tangency_max(model, boundary_mesh(model.domain, 16));
    out.continuity_ok = out.continuity_max <= kValidationTol;
    out.tangency_ok = out.tangency_max <= kValidationTol;
    return out;
}

ResidualReport full_residual_report(const SourceModel& model, double t,
                                    const QuadratureSpec& spec, double flux_radius,
                                    int flux_resolution) {
    const std::vector<Vec3> probes = default_probes(model.domain, spec);
    ResidualReport report = maxwell_residuals(model, probes, t, spec);
    for (const Vec3& p : probes) {
        report.gauge = std::max(report.gauge, gauge_residual(model, p, t, spec));
    }
    const WaveResiduals wave = wave_residual(model, probes, t, spec);
    report.wave_phi = wave.wave_phi;
    report.wave_a = wave.wave_a;
    for (const Vec3& p : probes) {
        if (contains(model.domain, p) && boundary_distance(model.domain, p) > spec.fd_step) {
            report.continuity =
                std::max(report.continuity, continuity_residual(model, p, t, spec.fd_step));
        }
    }
    const SurfaceMesh sphere =
        boundary_mesh(Ball{centroid(model.domain), flux_radius}, flux_resolution);
    const FluxResult flux = gauss_flux_test(model, sphere, spec);
    report.flux_mismatch = (flux.flux - flux.expected) / std::max(1.0, std::abs(flux.expected));
    return report;
}

}  // namespace retpot
