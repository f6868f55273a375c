#include "retpot/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "retpot/fields.hpp"
#include "retpot/potentials.hpp"
#include "retpot/verify.hpp"

namespace retpot {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& dir, const char* name) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write output file \"" + path.string() + "\"");
    }
    return out;
}

// The hypothesis gate: no quadrature work happens for an inadmissible source.
bool gate_source(const Scenario& sc, std::ostream& err) {
    const SourceValidation v = validate_source(sc.model, sc.spec);
    if (v.ok()) return true;
    if (!v.continuity_ok) {
        err << "validation failed: continuity residual " << fmt17(v.continuity_max)
            << " exceeds " << fmt17(kValidationTol)
            << " (div j + drho/dt must vanish inside the domain)\n";
    }
    if (!v.tangency_ok) {
        err << "validation failed: boundary-normal current " << fmt17(v.tangency_max)
            << " exceeds " << fmt17(kValidationTol)
            << " (the current must be tangent to the domain boundary)\n";
    }
    return false;
}

void for_each_grid_point(const GridSpec& grid, const std::vector<double>& times,
                         const std::function<void(const Vec3&, double)>& fn) {
    const auto coord = [](double lo, double hi, int count, int i) {
        return count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    };
    for (const double t : times) {
        for (int iz = 0; iz < grid.counts[2]; ++iz) {
            const double z = coord(grid.min.z, grid.max.z, grid.counts[2], iz);
            for (int iy = 0; iy < grid.counts[1]; ++iy) {
                const double y = coord(grid.min.y, grid.max.y, grid.counts[1], iy);
                for (int ix = 0; ix < grid.counts[0]; ++ix) {
                    const double x = coord(grid.min.x, grid.max.x, grid.counts[0], ix);
                    fn(Vec3{x, y, z}, t);
                }
            }
        }
    }
}

int run_potentials(const Scenario& sc, const std::filesystem::path& dir, bool quiet,
                   std::ostream& log) {
    std::ofstream out = open_output(dir, "potentials.csv");
    out << "x,y,z,t,phi_re,phi_im,ax_re,ax_im,ay_re,ay_im,az_re,az_im\n";
    std::size_t rows = 0;
    for_each_grid_point(sc.grid, sc.times, [&](const Vec3& p, double t) {
        const PotentialSample s = potential_sample(sc.model, p, t, sc.spec);
        out << fmt17(p.x) << ',' << fmt17(p.y) << ',' << fmt17(p.z) << ',' << fmt17(t) << ','
            << fmt17(s.phi.real()) << ',' << fmt17(s.phi.imag()) << ',' << fmt17(s.a.x.real())
            << ',' << fmt17(s.a.x.imag()) << ',' << fmt17(s.a.y.real()) << ','
            << fmt17(s.a.y.imag()) << ',' << fmt17(s.a.z.real()) << ',' << fmt17(s.a.z.imag())
            << '\n';
        ++rows;
    });
    if (!quiet) log << "potentials: wrote " << rows << " rows\n";
    return kExitOk;
}

int run_fields(const Scenario& sc, const std::filesystem::path& dir, bool quiet,
               std::ostream& log) {
    std::ofstream out = open_output(dir, "fields.csv");
    if (sc.real_only) {
        out << "x,y,z,t,ex,ey,ez,hx,hy,hz\n";
    } else {
        out << "x,y,z,t,ex_re,ex_im,ey_re,ey_im,ez_re,ez_im,hx_re,hx_im,hy_re,hy_im,hz_re,hz_im\n";
    }
    std::size_t rows = 0;
    for_each_grid_point(sc.grid, sc.times, [&](const Vec3& p, double t) {
        const FieldSample s = field_sample(sc.model, p, t, sc.spec);
        out << fmt17(p.x) << ',' << fmt17(p.y) << ',' << fmt17(p.z) << ',' << fmt17(t);
        if (sc.real_only) {
            out << ',' << fmt17(s.e.x.real()) << ',' << fmt17(s.e.y.real()) << ','
                << fmt17(s.e.z.real()) << ',' << fmt17(s.h.x.real()) << ','
                << fmt17(s.h.y.real()) << ',' << fmt17(s.h.z.real());
        } else {
            for (const Complex* v : {&s.e.x, &s.e.y, &s.e.z, &s.h.x, &s.h.y, &s.h.z}) {
                out << ',' << fmt17(v->real()) << ',' << fmt17(v->imag());
            }
        }
        out << '\n';
        ++rows;
    });
    if (!quiet) log << "fields: wrote " << rows << " rows\n";
    return kExitOk;
}

int run_verify(const Scenario& sc, const std::filesystem::path& dir, bool quiet,
               std::ostream& log) {
    ResidualReport report;
    FluxResult flux;
    if (sc.probes) {
        report = maxwell_residuals(sc.model, *sc.probes, sc.time, sc.spec);
        for (const Vec3& p : *sc.probes) {
            report.gauge = std::max(report.gauge, gauge_residual(sc.model, p, sc.time, sc.spec));
        }
        const WaveResiduals wave = wave_residual(sc.model, *sc.probes, sc.time, sc.spec);
        report.wave_phi = wave.wave_phi;
        report.wave_a = wave.wave_a;
        for (const Vec3& p : *sc.probes) {
            if (contains(sc.model.domain, p) &&
                boundary_distance(sc.model.domain, p) > sc.spec.fd_step) {
                report.continuity = std::max(
                    report.continuity, continuity_residual(sc.model, p, sc.time, sc.spec.fd_step));
            }
        }
        const SurfaceMesh sphere = boundary_mesh(
            Ball{centroid(sc.model.domain), sc.flux_radius}, sc.flux_resolution);
        const FluxResult f = gauss_flux_test(sc.model, sphere, sc.spec);
        report.flux_mismatch = (f.flux - f.expected) / std::max(1.0, std::abs(f.expected));
        flux = f;
    } else {
        report = full_residual_report(sc.model, sc.time, sc.spec, sc.flux_radius,
                                      sc.flux_resolution);
        const SurfaceMesh sphere = boundary_mesh(
            Ball{centroid(sc.model.domain), sc.flux_radius}, sc.flux_resolution);
        flux = gauss_flux_test(sc.model, sphere, sc.spec);
    }

    ordered_json doc;
    doc["maxwell"] = {report.maxwell[0], report.maxwell[1], report.maxwell[2],
                      report.maxwell[3]};
    doc["gauge"] = report.gauge;
    doc["wave"] = ordered_json{{"phi", report.wave_phi}, {"a", report.wave_a}};
    doc["continuity"] = report.continuity;
    doc["flux"] = ordered_json{{"value", flux.flux}, {"expected", flux.expected}};
    std::ofstream out = open_output(dir, "verify.json");
    out << doc.dump(2) << '\n';

    const Tolerances& tol = sc.tolerances;
    struct Row {
        const char* name;
        double value;
        double limit;
    };
    const Row rows[] = {
        {"maxwell_1 (rot E + dH/dt / c)", report.maxwell[0], tol.maxwell},
        {"maxwell_2 (rot H - dE/dt / c - 4pi j / c)", report.maxwell[1], tol.maxwell},
        {"maxwell_3 (div H)", report.maxwell[2], tol.maxwell},
        {"maxwell_4 (div E - 4pi rho)", report.maxwell[3], tol.maxwell},
        {"gauge (div A + dphi/dt / c)", report.gauge, tol.gauge},
        {"wave_phi", report.wave_phi, tol.wave},
        {"wave_a", report.wave_a, tol.wave},
        {"continuity", report.continuity, tol.continuity},
        {"flux mismatch", std::abs(report.flux_mismatch), tol.flux},
    };
    bool ok = true;
    for (const Row& row : rows) {
        const bool pass = row.value <= row.limit;
        ok = ok && pass;
        if (!quiet) {
            log << (pass ? "  ok   " : "  FAIL ") << row.name << " = " << fmt17(row.value)
                << " (tolerance " << fmt17(row.limit) << ")\n";
        }
    }
    if (!quiet) log << (ok ? "verify: all residuals within tolerances\n"
                          : "verify: residuals above tolerances\n");
    return ok ? kExitOk : kExitTolerance;
}

int run_flux(const Scenario& sc, const std::filesystem::path& dir, bool quiet,
             std::ostream& log) {
    const SurfaceMesh sphere =
        boundary_mesh(Ball{centroid(sc.model.domain), sc.flux_radius}, sc.flux_resolution);
    const FluxResult flux = gauss_flux_test(sc.model, sphere, sc.spec);
    const double mismatch =
        (flux.flux - flux.expected) / std::max(1.0, std::abs(flux.expected));
    ordered_json doc;
    doc["flux"] = flux.flux;
    doc["expected"] = flux.expected;
    doc["mismatch"] = mismatch;
    std::ofstream out = open_output(dir, "flux.json");
    out << doc.dump(2) << '\n';
    if (!quiet) {
        log << "flux through r = " << fmt17(sc.flux_radius) << ": " << fmt17(flux.flux)
            << " (expected " << fmt17(flux.expected) << ", mismatch " << fmt17(mismatch) << ")\n";
    }
    return std::abs(mismatch) <= sc.tolerances.flux ? kExitOk : kExitTolerance;
}

int run_convergence(const Scenario& sc, const std::filesystem::path& dir, bool quiet,
                    std::ostream& log) {
    std::vector<QuadratureSpec> levels;
    levels.reserve(sc.convergence.levels);
    for (int i = 0; i < sc.convergence.levels; ++i) {
        levels.push_back(refined(sc.spec, i));
    }
    std::function<double(const QuadratureSpec&)> error_at;
    if (sc.convergence.check == "flux") {
        error_at = [&](const QuadratureSpec& spec) {
            const SurfaceMesh sphere = boundary_mesh(
                Ball{centroid(sc.model.domain), sc.flux_radius}, sc.flux_resolution);
            const FluxResult f = gauss_flux_test(sc.model, sphere, spec);
            return std::abs(f.flux - f.expected) / std::max(1.0, std::abs(f.expected));
        };
    } else if (sc.convergence.check == "phi_exterior") {
        // Self-convergence error against a once-more-refined reference value.
        const Vec3 probe =
            centroid(sc.model.domain) + Vec3{2.0 * bounding_radius(sc.model.domain), 0, 0};
        const Complex reference =
            potential_sample(sc.model, probe, sc.time, refined(levels.back(), 1)).phi;
        error_at = [&, probe, reference](const QuadratureSpec& spec) {
            return std::abs(potential_sample(sc.model, probe, sc.time, spec).phi - reference);
        };
    } else {  // maxwell_4
        error_at = [&](const QuadratureSpec& spec) {
            const std::vector<Vec3> probes = default_probes(sc.model.domain, spec);
            return maxwell_residuals(sc.model, probes, sc.time, spec).maxwell[3];
        };
    }
    const ConvergenceRecord record =
        convergence_study(sc.convergence.check, error_at, levels);

    ordered_json doc;
    doc["check"] = record.check;
    doc["levels"] = ordered_json::array();
    for (const auto& [spec, error] : record.levels) {
        doc["levels"].push_back(ordered_json{{"n_radial", spec.n_radial},
                                             {"n_polar", spec.n_polar},
                                             {"n_azimuth", spec.n_azimuth},
                                             {"n_regular", spec.n_regular},
                                             {"fd_step", spec.fd_step},
                                             {"error", error}});
    }
    doc["slope"] = record.slope;
    std::ofstream out = open_output(dir, "convergence.json");
    out << doc.dump(2) << '\n';

    if (!quiet) {
        log << "convergence of " << record.check << " (slope " << fmt17(record.slope) << "):\n";
        for (const auto& [spec, error] : record.levels) {
            log << "  " << spec.n_radial << '/' << spec.n_polar << '/' << spec.n_azimuth << '/'
                << spec.n_regular << " fd " << fmt17(spec.fd_step) << " -> " << fmt17(error)
                << '\n';
        }
    }
    const double first = record.levels.front().second;
    const double last = record.levels.back().second;
    return (last <= first || last <= 1e-12) ? kExitOk : kExitTolerance;
}

}  // namespace

std::optional<Command> command_from_string(std::string_view name) {
    if (name == "potentials") return Command::Potentials;
    if (name == "fields") return Command::Fields;
    if (name == "verify") return Command::Verify;
    if (name == "flux") return Command::Flux;
    if (name == "convergence") return Command::Convergence;
    return std::nullopt;
}

int run_scenario(const Scenario& scenario, Command command,
                 const std::filesystem::path& output_dir, bool quiet, std::ostream& log,
                 std::ostream& err) {
    if (!gate_source(scenario, err)) {
        return kExitValidation;
    }
    switch (command) {
        case Command::Potentials:
            return run_potentials(scenario, output_dir, quiet, log);
        case Command::Fields:
            return run_fields(scenario, output_dir, quiet, log);
        case Command::Verify:
            return run_verify(scenario, output_dir, quiet, log);
        case Command::Flux:
            return run_flux(scenario, output_dir, quiet, log);
        case Command::Convergence:
            return run_convergence(scenario, output_dir, quiet, log);
    }
    return kExitValidation;
}

}  // namespace retpot
