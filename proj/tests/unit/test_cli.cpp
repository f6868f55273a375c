#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string output;  // stdout and stderr combined
};

/// Fresh sandbox directory for one test case.
fs::path sandbox(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("retpot_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "run_log.txt";
    const std::string cmd =
        std::string(RETPOT_CLI_PATH) + " " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.output = read_file(log);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

// Cheap, grid-friendly knobs; rho0 makes the total charge exactly 1.
const std::string kElectroHead = R"({
    "schema": 1,
    "source": "uniform_ball_charge",
    "radius": 1.0,
    "rho0": 0.23873241463784303,
    "n_radial": 8, "n_polar": 6, "n_azimuth": 12, "n_regular": 8)";

const std::string kMonoHead = R"({
    "schema": 1,
    "source": "polarization_ball_current",
    "radius": 1.0,
    "omega": 1.0,
    "amplitude": 1.0,
    "n_radial": 16, "n_polar": 12, "n_azimuth": 24, "n_regular": 12,
    "probes": [[0.3, 0.0, 0.2], [0.0, 0.0, 1.5]],
    "flux_resolution": 8)";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("potentials writes the grid in row order") {
    const fs::path dir = sandbox("potentials");
    write_file(dir / "sc.json", kElectroHead + R"(,
        "grid": {"min": [-2, -2, -2], "max": [2, 2, 2], "counts": [3, 3, 3]},
        "times": [0.0, 0.5]})");
    const RunResult r = run_cli("--scenario \"" + (dir / "sc.json").string() +
                                    "\" --command potentials --output \"" +
                                    (dir / "out").string() + "\"",
                                dir);
    CHECK(r.code == 0);
    CHECK(r.output.find("potentials: wrote 54 rows") != std::string::npos);
    const std::vector<std::string> lines = lines_of(read_file(dir / "out" / "potentials.csv"));
    REQUIRE(lines.size() == 55);
    CHECK(lines[0] == "x,y,z,t,phi_re,phi_im,ax_re,ax_im,ay_re,ay_im,az_re,az_im");
    // x varies fastest, then y, then z, then t.
    CHECK(split_csv(lines[1])[0] == "-2");
    CHECK(split_csv(lines[2])[0] == "0");
    CHECK(split_csv(lines[1])[1] == "-2");
    CHECK(split_csv(lines[4])[1] == "0");
    CHECK(split_csv(lines[1])[3] == "0");
    CHECK(split_csv(lines[28])[3] == "0.5");
}

TEST_CASE("potentials reproduces the exterior point value") {
    const fs::path dir = sandbox("potentials_value");
    write_file(dir / "sc.json", kElectroHead + R"(,
        "grid": {"min": [2, 0, 0], "max": [2, 0, 0], "counts": [1, 1, 1]}})");
    const RunResult r = run_cli("--scenario \"" + (dir / "sc.json").string() +
                                    "\" --command potentials --output \"" +
                                    (dir / "out").string() + "\"",
                                dir);
    CHECK(r.code == 0);
    const std::vector<std::string> lines = lines_of(read_file(dir / "out" / "potentials.csv"));
    REQUIRE(lines.size() == 2);
    const std::vector<std::string> row = split_csv(lines[1]);
    REQUIRE(row.size() == 12);
    // The scenario runs a deliberately cheap rule; accuracy proper is pinned
    // in the potentials suite.
    CHECK(std::stod(row[4]) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(std::stod(row[5]) == 0.0);
}

TEST_CASE("fields honors the real_only column layout") {
    const fs::path dir = sandbox("fields");
    write_file(dir / "real.json", kElectroHead + R"(,
        "real_only": true,
        "grid": {"min": [2, 0, 0], "max": [2, 0, 0], "counts": [1, 1, 1]}})");
    const RunResult rr = run_cli("--scenario \"" + (dir / "real.json").string() +
                                     "\" --command fields --output \"" +
                                     (dir / "real_out").string() + "\"",
                                 dir);
    CHECK(rr.code == 0);
    const std::vector<std::string> rl = lines_of(read_file(dir / "real_out" / "fields.csv"));
    REQUIRE(rl.size() == 2);
    CHECK(rl[0] == "x,y,z,t,ex,ey,ez,hx,hy,hz");
    const std::vector<std::string> row = split_csv(rl[1]);
    REQUIRE(row.size() == 10);
    CHECK(std::stod(row[4]) == doctest::Approx(0.25).epsilon(1e-3));

    write_file(dir / "cplx.json", kMonoHead + R"(,
        "grid": {"min": [0, 0, 2], "max": [0, 0, 2], "counts": [1, 1, 1]}})");
    const RunResult rc = run_cli("--scenario \"" + (dir / "cplx.json").string() +
                                     "\" --command fields --output \"" +
                                     (dir / "cplx_out").string() + "\"",
                                 dir);
    CHECK(rc.code == 0);
    const std::vector<std::string> cl = lines_of(read_file(dir / "cplx_out" / "fields.csv"));
    REQUIRE(cl.size() == 2);
    CHECK(cl[0] ==
          "x,y,z,t,ex_re,ex_im,ey_re,ey_im,ez_re,ez_im,hx_re,hx_im,hy_re,hy_im,hz_re,hz_im");
    CHECK(split_csv(cl[1]).size() == 16);
}

TEST_CASE("repeated runs are byte identical") {
    const fs::path dir = sandbox("determinism");
    write_file(dir / "sc.json", kMonoHead + R"(,
        "grid": {"min": [-2, -2, -2], "max": [2, 2, 2], "counts": [2, 2, 2]},
        "times": [0.0, 0.3]})");
    const std::string base = "--scenario \"" + (dir / "sc.json").string() + "\" ";
    CHECK(run_cli(base + "--command potentials --output \"" + (dir / "a").string() + "\"", dir)
              .code == 0);
    CHECK(run_cli(base + "--command potentials --output \"" + (dir / "b").string() + "\"", dir)
              .code == 0);
    const std::string a = read_file(dir / "a" / "potentials.csv");
    CHECK(a == read_file(dir / "b" / "potentials.csv"));
    CHECK(!a.empty());
    CHECK(run_cli(base + "--command verify --output \"" + (dir / "a").string() + "\"", dir)
              .code == 0);
    CHECK(run_cli(base + "--command verify --output \"" + (dir / "b").string() + "\"", dir)
              .code == 0);
    const std::string va = read_file(dir / "a" / "verify.json");
    CHECK(va == read_file(dir / "b" / "verify.json"));
    CHECK(!va.empty());
}

TEST_CASE("verify reports residuals and keeps the key order") {
    const fs::path dir = sandbox("verify");
    write_file(dir / "sc.json", kMonoHead + "}");
    const RunResult r = run_cli("--scenario \"" + (dir / "sc.json").string() +
                                    "\" --command verify --output \"" + (dir / "out").string() +
                                    "\"",
                                dir);
    CHECK(r.code == 0);
    CHECK(r.output.find("  ok   maxwell_1") != std::string::npos);
    CHECK(r.output.find("verify: all residuals within tolerances") != std::string::npos);
    const std::string doc = read_file(dir / "out" / "verify.json");
    const auto pos = [&](const char* key) { return doc.find(std::string("\"") + key + "\""); };
    REQUIRE(pos("maxwell") != std::string::npos);
    CHECK(pos("maxwell") < pos("gauge"));
    CHECK(pos("gauge") < pos("wave"));
    CHECK(pos("wave") < pos("continuity"));
    CHECK(pos("continuity") < pos("flux"));
    const nlohmann::json parsed = nlohmann::json::parse(doc);
    CHECK(parsed.at("maxwell").size() == 4);
    CHECK(parsed.at("maxwell")[0].get<double>() < 1e-3);
    CHECK(parsed.at("wave").at("phi").get<double>() < 0.1);
    CHECK(parsed.at("flux").contains("value"));
    CHECK(parsed.at("flux").contains("expected"));
}

TEST_CASE("verify exits 2 when tolerances pinch") {
    const fs::path dir = sandbox("verify_tight");
    write_file(dir / "sc.json", kMonoHead + R"(,
        "tolerances": {"maxwell": 1e-12, "gauge": 1e-12, "wave": 1e-12,
                       "continuity": 1e-12, "flux": 1e-12}})");
    const RunResult r = run_cli("--scenario \"" + (dir / "sc.json").string() +
                                    "\" --command verify --output \"" + (dir / "out").string() +
                                    "\"",
                                dir);
    CHECK(r.code == 2);
    CHECK(r.output.find("  FAIL ") != std::string::npos);
    CHECK(r.output.find("verify: residuals above tolerances") != std::string::npos);
}

TEST_CASE("non-conserving sources are rejected before any command") {
    const fs::path dir = sandbox("reject");
    write_file(dir / "osc.json", R"({
        "schema": 1,
        "source": "oscillating_ball_charge",
        "radius": 1.0, "omega": 1.0, "amplitude": 1.0,
        "n_radial": 8, "n_polar": 6, "n_azimuth": 12, "n_regular": 8})");
    const RunResult ro = run_cli("--scenario \"" + (dir / "osc.json").string() +
                                     "\" --command verify --output \"" + (dir / "out").string() +
                                     "\"",
                                 dir);
    CHECK(ro.code == 1);
    CHECK(ro.output.find("validation failed: continuity residual") != std::string::npos);
    CHECK(ro.output.find("div j + drho/dt must vanish") != std::string::npos);

    write_file(dir / "crossing.json", R"({
        "schema": 1,
        "source": "uniform_ball_current",
        "radius": 1.0, "amplitude": 1.0,
        "n_radial": 8, "n_polar": 6, "n_azimuth": 12, "n_regular": 8})");
    // The gate applies to every command, not just verify.
    const RunResult rc = run_cli("--scenario \"" + (dir / "crossing.json").string() +
                                     "\" --command potentials --output \"" +
                                     (dir / "out").string() + "\"",
                                 dir);
    CHECK(rc.code == 1);
    CHECK(rc.output.find("validation failed: boundary-normal current") != std::string::npos);
    CHECK(rc.output.find("must be tangent to the domain boundary") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out" / "potentials.csv"));
}

TEST_CASE("scenario problems name the offending key") {
    const fs::path dir = sandbox("badscenario");
    write_file(dir / "bad.json", kElectroHead + R"(, "bogus": 3})");
    const RunResult rb = run_cli("--scenario \"" + (dir / "bad.json").string() +
                                     "\" --command verify --output \"" + dir.string() + "\"",
                                 dir);
    CHECK(rb.code == 1);
    CHECK(rb.output.find("scenario error") != std::string::npos);
    CHECK(rb.output.find("bogus: unknown key") != std::string::npos);

    const RunResult rm = run_cli("--scenario \"" + (dir / "missing.json").string() +
                                     "\" --command verify --output \"" + dir.string() + "\"",
                                 dir);
    CHECK(rm.code == 1);
    CHECK(rm.output.find("cannot open scenario") != std::string::npos);

    write_file(dir / "notjson.json", "pure nonsense");
    const RunResult rj = run_cli("--scenario \"" + (dir / "notjson.json").string() +
                                     "\" --command verify --output \"" + dir.string() + "\"",
                                 dir);
    CHECK(rj.code == 1);
    CHECK(rj.output.find("document: not a JSON object") != std::string::npos);
}

TEST_CASE("flag misuse exits with a usage error") {
    const fs::path dir = sandbox("flags");
    write_file(dir / "sc.json", kElectroHead + "}");
    const RunResult ru = run_cli("--scenario \"" + (dir / "sc.json").string() +
                                     "\" --command explode",
                                 dir);
    CHECK(ru.code == 1);
    CHECK(ru.output.find("unknown command \"explode\"") != std::string::npos);
    const RunResult rr = run_cli("--command verify", dir);
    CHECK(rr.code == 1);
    CHECK(rr.output.find("--scenario") != std::string::npos);
    const RunResult rh = run_cli("--help", dir);
    CHECK(rh.code == 0);
    CHECK(rh.output.find("Scenario JSON file") != std::string::npos);
}

TEST_CASE("quiet mode silences the success path") {
    const fs::path dir = sandbox("quiet");
    write_file(dir / "sc.json", kMonoHead + "}");
    const RunResult r = run_cli("--scenario \"" + (dir / "sc.json").string() +
                                    "\" --command verify --quiet --output \"" +
                                    (dir / "out").string() + "\"",
                                dir);
    CHECK(r.code == 0);
    CHECK(r.output.empty());
    CHECK(fs::exists(dir / "out" / "verify.json"));
}

TEST_CASE("flux command balances the enclosed charge") {
    const fs::path dir = sandbox("flux");
    write_file(dir / "sc.json", kElectroHead + R"(, "flux_resolution": 8})");
    const RunResult r = run_cli("--scenario \"" + (dir / "sc.json").string() +
                                    "\" --command flux --output \"" + (dir / "out").string() +
                                    "\"",
                                dir);
    CHECK(r.code == 0);
    CHECK(r.output.find("flux through r = 2") != std::string::npos);
    const nlohmann::json doc =
        nlohmann::json::parse(read_file(dir / "out" / "flux.json"));
    CHECK(doc.at("flux").get<double>() == doctest::Approx(4.0 * 3.14159265358979324).epsilon(1e-6));
    CHECK(doc.at("expected").get<double>() ==
          doctest::Approx(4.0 * 3.14159265358979324).epsilon(1e-9));
    CHECK(std::abs(doc.at("mismatch").get<double>()) < 1e-3);
}

TEST_CASE("convergence command records a refinement ladder") {
    const fs::path dir = sandbox("convergence");
    write_file(dir / "sc.json", kElectroHead + R"(,
        "flux_resolution": 8,
        "convergence": {"check": "flux", "levels": 3}})");
    const RunResult r = run_cli("--scenario \"" + (dir / "sc.json").string() +
                                    "\" --command convergence --output \"" +
                                    (dir / "out").string() + "\"",
                                dir);
    CHECK(r.code == 0);
    const nlohmann::json doc =
        nlohmann::json::parse(read_file(dir / "out" / "convergence.json"));
    CHECK(doc.at("check").get<std::string>() == "flux");
    REQUIRE(doc.at("levels").size() == 3);
    CHECK(doc.at("levels")[0].at("n_radial").get<int>() == 8);
    CHECK(doc.at("levels")[1].at("n_radial").get<int>() == 16);
    CHECK(doc.at("levels")[2].at("n_radial").get<int>() == 32);
    for (const auto& level : doc.at("levels")) {
        CHECK(level.at("error").get<double>() < 1e-6);
    }
}

}  // TEST_SUITE
