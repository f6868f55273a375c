#include "retpot/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace retpot {

namespace {

using nlohmann::json;

std::string join_errors(const std::vector<std::string>& errors) {
    std::string out = "scenario invalid:";
    for (const std::string& e : errors) {
        out += "\n  " + e;
    }
    return out;
}

/// Collects errors and offers checked typed getters with key-path messages.
class Reader {
  public:
    explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

    void fail(const std::string& path, const std::string& what) {
        errors_.push_back(path + ": " + what);
    }

    void check_keys(const json& obj, const std::string& prefix,
                    const std::set<std::string>& allowed) {
        for (const auto& [key, value] : obj.items()) {
            (void)value;
            if (!allowed.contains(key)) {
                fail(prefix.empty() ? key : prefix + "." + key, "unknown key");
            }
        }
    }

    std::optional<double> number(const json& obj, const std::string& prefix,
                                 const std::string& key) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_number()) {
            fail(path(prefix, key), "expected a number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    std::optional<int> integer(const json& obj, const std::string& prefix,
                               const std::string& key) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            fail(path(prefix, key), "expected an integer");
            return std::nullopt;
        }
        return v.get<int>();
    }

    std::optional<bool> boolean(const json& obj, const std::string& prefix,
                                const std::string& key) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_boolean()) {
            fail(path(prefix, key), "expected a boolean");
            return std::nullopt;
        }
        return v.get<bool>();
    }

    std::optional<Vec3> vec3(const json& obj, const std::string& prefix, const std::string& key) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
            !v[2].is_number()) {
            fail(path(prefix, key), "expected an array of 3 numbers");
            return std::nullopt;
        }
        return Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    }

    static std::string path(const std::string& prefix, const std::string& key) {
        return prefix.empty() ? key : prefix + "." + key;
    }

  private:
    std::vector<std::string>& errors_;
};

std::optional<SpatialDomain> parse_domain(Reader& r, const json& v, const std::string& prefix) {
    if (!v.is_object()) {
        r.fail(prefix, "expected an object");
        return std::nullopt;
    }
    if (!v.contains("type") || !v.at("type").is_string()) {
        r.fail(prefix + ".type", "expected \"ball\" or \"box\"");
        return std::nullopt;
    }
    const std::string type = v.at("type").get<std::string>();
    if (type == "ball") {
        r.check_keys(v, prefix, {"type", "center", "radius"});
        const std::optional<Vec3> center = r.vec3(v, prefix, "center");
        const std::optional<double> radius = r.number(v, prefix, "radius");
        if (!radius) {
            r.fail(prefix + ".radius", "required");
            return std::nullopt;
        }
        if (!(*radius > 0.0)) {
            r.fail(prefix + ".radius", "must be > 0");
            return std::nullopt;
        }
        return SpatialDomain{Ball{center.value_or(Vec3{}), *radius}};
    }
    if (type == "box") {
        r.check_keys(v, prefix, {"type", "min", "max"});
        const std::optional<Vec3> lo = r.vec3(v, prefix, "min");
        const std::optional<Vec3> hi = r.vec3(v, prefix, "max");
        if (!lo || !hi) {
            r.fail(prefix, "box requires min and max");
            return std::nullopt;
        }
        if (!(lo->x < hi->x && lo->y < hi->y && lo->z < hi->z)) {
            r.fail(prefix, "box requires min < max on every axis");
            return std::nullopt;
        }
        return SpatialDomain{Box{*lo, *hi}};
    }
    r.fail(prefix + ".type", "expected \"ball\" or \"box\"");
    return std::nullopt;
}

struct SourceBuild {
    std::optional<SourceModel> model;
    double radius = 0.0;
};

// Builds one named source from flat keys within `obj` (the scenario root or
// one band component object).
SourceBuild parse_source(Reader& r, const json& obj, const std::string& prefix,
                         const std::string& name, Constants constants) {
    SourceBuild out;
    const auto radius = r.number(obj, prefix, "radius");
    const auto rho0 = r.number(obj, prefix, "rho0");
    const auto amplitude = r.number(obj, prefix, "amplitude");
    const auto omega = r.number(obj, prefix, "omega");
    const auto need = [&](const std::optional<double>& v, const char* key) -> bool {
        if (!v) r.fail(Reader::path(prefix, key), "required by source \"" + name + "\"");
        return v.has_value();
    };
    const auto positive = [&](const std::optional<double>& v, const char* key) -> bool {
        if (v && !(*v > 0.0)) {
            r.fail(Reader::path(prefix, key), "must be > 0");
            return false;
        }
        return v.has_value();
    };
    if (name == "uniform_ball_charge") {
        if (need(radius, "radius") && positive(radius, "radius") && need(rho0, "rho0")) {
            out.model = uniform_ball_charge(*radius, *rho0, constants);
            out.radius = *radius;
        }
    } else if (name == "azimuthal_ball_current") {
        if (need(radius, "radius") && positive(radius, "radius") &&
            need(amplitude, "amplitude")) {
            out.model = azimuthal_ball_current(*radius, *amplitude, constants);
            out.radius = *radius;
        }
    } else if (name == "polarization_ball_current") {
        if (need(radius, "radius") && positive(radius, "radius") && need(omega, "omega") &&
            positive(omega, "omega") && need(amplitude, "amplitude")) {
            out.model = polarization_ball_current(*radius, *omega, *amplitude, constants);
            out.radius = *radius;
        }
    } else if (name == "uniform_ball_current") {
        if (need(radius, "radius") && positive(radius, "radius") &&
            need(amplitude, "amplitude")) {
            out.model = uniform_ball_current(*radius, *amplitude, constants);
            out.radius = *radius;
        }
    } else if (name == "oscillating_ball_charge") {
        if (need(radius, "radius") && positive(radius, "radius") && need(omega, "omega") &&
            positive(omega, "omega") && need(amplitude, "amplitude")) {
            out.model = oscillating_ball_charge(*radius, *omega, *amplitude, constants);
            out.radius = *radius;
        }
    } else {
        r.fail(Reader::path(prefix, "source"), "unknown source \"" + name + "\"");
    }
    return out;
}

constexpr const char* kMonoSources[] = {"polarization_ball_current", "oscillating_ball_charge"};

bool is_mono_source(const std::string& name) {
    for (const char* s : kMonoSources) {
        if (name == s) return true;
    }
    return false;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

Scenario parse_scenario(const std::string& json_text) {
    std::vector<std::string> errors;
    json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded() || !root.is_object()) {
        throw ScenarioError({"document: not a JSON object"});
    }
    Reader r(errors);
    r.check_keys(root, "",
                 {"schema", "source", "radius", "rho0", "amplitude", "omega", "components",
                  "domain", "c", "n_radial", "n_polar", "n_azimuth", "n_regular", "fd_step",
                  "grid", "times", "time", "probes", "flux_radius", "flux_resolution",
                  "tolerances", "real_only", "convergence"});

    const std::optional<int> schema = r.integer(root, "", "schema");
    if (!schema) {
        r.fail("schema", "required (must be 1)");
    } else if (*schema != 1) {
        r.fail("schema", "unsupported version " + std::to_string(*schema) + " (expected 1)");
    }

    Constants constants;
    if (const auto c = r.number(root, "", "c")) {
        if (!(*c > 0.0)) {
            r.fail("c", "must be > 0");
        } else {
            constants.c = *c;
        }
    }

    // Source: a constructor name in "source" with its parameters as flat keys.
    std::optional<SourceModel> model;
    double source_radius = 0.0;
    if (!root.contains("source")) {
        r.fail("source", "required");
    } else if (!root.at("source").is_string()) {
        r.fail("source", "expected a constructor name string");
    } else {
        const std::string name = root.at("source").get<std::string>();
        if (name == "band_limited") {
            if (!root.contains("components") || !root.at("components").is_array() ||
                root.at("components").empty()) {
                r.fail("components", "band_limited requires a non-empty component array");
            } else {
                std::vector<std::pair<Complex, SourceModel>> parts;
                const json& comps = root.at("components");
                for (std::size_t i = 0; i < comps.size(); ++i) {
                    const std::string prefix = "components[" + std::to_string(i) + "]";
                    const json& cobj = comps[i];
                    if (!cobj.is_object()) {
                        r.fail(prefix, "expected an object");
                        continue;
                    }
                    r.check_keys(cobj, prefix,
                                 {"source", "radius", "amplitude", "omega", "weight"});
                    if (!cobj.contains("source") || !cobj.at("source").is_string()) {
                        r.fail(prefix + ".source", "required constructor name");
                        continue;
                    }
                    const std::string cname = cobj.at("source").get<std::string>();
                    if (!is_mono_source(cname)) {
                        r.fail(prefix + ".source",
                               "band components must be monochromatic sources");
                        continue;
                    }
                    Complex weight = 1.0;
                    if (cobj.contains("weight")) {
                        const json& w = cobj.at("weight");
                        if (w.is_number()) {
                            weight = w.get<double>();
                        } else if (w.is_array() && w.size() == 2 && w[0].is_number() &&
                                   w[1].is_number()) {
                            weight = Complex(w[0].get<double>(), w[1].get<double>());
                        } else {
                            r.fail(prefix + ".weight",
                                   "expected a number or [re, im] pair");
                        }
                    }
                    SourceBuild built = parse_source(r, cobj, prefix, cname, constants);
                    if (built.model) {
                        parts.emplace_back(weight, std::move(*built.model));
                        source_radius = built.radius;
                    }
                }
                if (errors.empty() && !parts.empty()) {
                    try {
                        model = band_limited(parts);
                    } catch (const std::invalid_argument& e) {
                        r.fail("components", e.what());
                    }
                }
            }
        } else {
            SourceBuild built = parse_source(r, root, "", name, constants);
            if (built.model) {
                model = std::move(*built.model);
                source_radius = built.radius;
            }
        }
    }

    // Optional explicit domain; built-in ball sources pin their own geometry,
    // so a mismatch is an error rather than a silent override.
    if (root.contains("domain")) {
        const std::optional<SpatialDomain> domain = parse_domain(r, root.at("domain"), "domain");
        if (domain && model) {
            const Ball* ball = std::get_if<Ball>(&*domain);
            if (!ball || std::abs(ball->radius - source_radius) > 1e-12 ||
                norm(ball->center) != 0.0) {
                r.fail("domain",
                       "must match the source geometry (origin ball of the source radius)");
            }
        }
    }

    Scenario sc;
    if (const auto v = r.integer(root, "", "n_radial")) sc.spec.n_radial = *v;
    if (const auto v = r.integer(root, "", "n_polar")) sc.spec.n_polar = *v;
    if (const auto v = r.integer(root, "", "n_azimuth")) sc.spec.n_azimuth = *v;
    if (const auto v = r.integer(root, "", "n_regular")) sc.spec.n_regular = *v;
    if (const auto v = r.number(root, "", "fd_step")) sc.spec.fd_step = *v;
    try {
        validate_spec(sc.spec);
    } catch (const std::invalid_argument& e) {
        r.fail("quadrature", e.what());
    }

    if (root.contains("tolerances")) {
        const json& tol = root.at("tolerances");
        if (!tol.is_object()) {
            r.fail("tolerances", "expected an object");
        } else {
            r.check_keys(tol, "tolerances", {"maxwell", "gauge", "wave", "continuity", "flux"});
            if (const auto v = r.number(tol, "tolerances", "maxwell")) sc.tolerances.maxwell = *v;
            if (const auto v = r.number(tol, "tolerances", "gauge")) sc.tolerances.gauge = *v;
            if (const auto v = r.number(tol, "tolerances", "wave")) sc.tolerances.wave = *v;
            if (const auto v = r.number(tol, "tolerances", "continuity"))
                sc.tolerances.continuity = *v;
            if (const auto v = r.number(tol, "tolerances", "flux")) sc.tolerances.flux = *v;
        }
    }

    const double domain_radius = source_radius > 0.0 ? source_radius : 1.0;
    sc.grid.min = Vec3{-2.0 * domain_radius, -2.0 * domain_radius, -2.0 * domain_radius};
    sc.grid.max = Vec3{2.0 * domain_radius, 2.0 * domain_radius, 2.0 * domain_radius};
    if (root.contains("grid")) {
        const json& g = root.at("grid");
        if (!g.is_object()) {
            r.fail("grid", "expected an object");
        } else {
            r.check_keys(g, "grid", {"min", "max", "counts"});
            if (const auto v = r.vec3(g, "grid", "min")) sc.grid.min = *v;
            if (const auto v = r.vec3(g, "grid", "max")) sc.grid.max = *v;
            if (g.contains("counts")) {
                const json& counts = g.at("counts");
                if (!counts.is_array() || counts.size() != 3 || !counts[0].is_number_integer() ||
                    !counts[1].is_number_integer() || !counts[2].is_number_integer()) {
                    r.fail("grid.counts", "expected an array of 3 integers");
                } else {
                    for (int i = 0; i < 3; ++i) {
                        sc.grid.counts[i] = counts[i].get<int>();
                        if (sc.grid.counts[i] < 1) r.fail("grid.counts", "counts must be >= 1");
                    }
                }
            }
        }
    }

    if (root.contains("times")) {
        const json& times = root.at("times");
        if (!times.is_array() || times.empty()) {
            r.fail("times", "expected a non-empty array of numbers");
        } else {
            sc.times.clear();
            for (std::size_t i = 0; i < times.size(); ++i) {
                if (!times[i].is_number()) {
                    r.fail("times[" + std::to_string(i) + "]", "expected a number");
                } else {
                    sc.times.push_back(times[i].get<double>());
                }
            }
        }
    }
    if (const auto v = r.number(root, "", "time")) sc.time = *v;

    if (root.contains("probes")) {
        const json& probes = root.at("probes");
        if (!probes.is_array() || probes.empty()) {
            r.fail("probes", "expected a non-empty array of [x, y, z] points");
        } else {
            std::vector<Vec3> pts;
            for (std::size_t i = 0; i < probes.size(); ++i) {
                const json& p = probes[i];
                if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
                    !p[2].is_number()) {
                    r.fail("probes[" + std::to_string(i) + "]", "expected [x, y, z]");
                } else {
                    pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
                }
            }
            if (!pts.empty()) sc.probes = std::move(pts);
        }
    }

    sc.flux_radius = 2.0 * domain_radius;
    if (const auto v = r.number(root, "", "flux_radius")) {
        sc.flux_radius = *v;
        if (!(*v > domain_radius)) r.fail("flux_radius", "must enclose the source domain");
    }
    if (const auto v = r.integer(root, "", "flux_resolution")) {
        sc.flux_resolution = *v;
        if (*v < 4) r.fail("flux_resolution", "must be >= 4");
    }
    if (const auto v = r.boolean(root, "", "real_only")) sc.real_only = *v;

    if (root.contains("convergence")) {
        const json& conv = root.at("convergence");
        if (!conv.is_object()) {
            r.fail("convergence", "expected an object");
        } else {
            r.check_keys(conv, "convergence", {"check", "levels"});
            if (conv.contains("check")) {
                if (!conv.at("check").is_string()) {
                    r.fail("convergence.check", "expected a string");
                } else {
                    sc.convergence.check = conv.at("check").get<std::string>();
                    static const std::set<std::string> known{"flux", "phi_exterior", "maxwell_4"};
                    if (!known.contains(sc.convergence.check)) {
                        r.fail("convergence.check",
                               "expected one of flux, phi_exterior, maxwell_4");
                    }
                }
            }
            if (const auto v = r.integer(conv, "convergence", "levels")) {
                sc.convergence.levels = *v;
                if (*v < 3) r.fail("convergence.levels", "must be >= 3");
            }
        }
    }

    if (!errors.empty()) throw ScenarioError(std::move(errors));
    if (!model) throw ScenarioError({"source: could not build the source model"});
    sc.model = std::move(*model);
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError({"file: cannot open scenario \"" + path.string() + "\""});
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

}  // namespace retpot
