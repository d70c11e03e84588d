#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "lorenzn/csv.hpp"
#include "lorenzn/scenario.hpp"
#include "lorenzn/svg.hpp"

using namespace lorenzn;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

Trajectory random_trajectory(std::size_t samples, bool colored, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    std::uniform_int_distribution<int> color(0, 2);
    Trajectory t;
    t.kind = CoordKind::Cartesian;
    t.meta["system"] = "l2";
    t.meta["params"] = "mu=0.5;beta=0.2;gamma=0.8";
    for (std::size_t i = 0; i < samples; ++i) {
        t.times.push_back(0.01 * i);
        // Mix magnitudes so the 17-digit format is genuinely exercised.
        t.states.push_back({u(rng), u(rng) * 1e-12, u(rng) * 1e9});
        if (colored) t.colors.push_back(color(rng));
    }
    return t;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

}  // namespace

TEST_CASE("csv: bit-exact round trip with and without colors") {
    for (bool colored : {false, true}) {
        const Trajectory t = random_trajectory(1000, colored, colored ? 5u : 6u);
        const std::string path = temp_path("lorenzn_roundtrip.csv");
        write_csv(t, path);
        const Trajectory r = read_csv(path);
        REQUIRE(r.size() == t.size());
        CHECK(r.has_colors() == colored);
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK(r.times[i] == t.times[i]);
            CHECK(r.states[i] == t.states[i]);  // bit-exact
            if (colored) CHECK(r.colors[i] == t.colors[i]);
        }
        CHECK(r.meta.at("system") == "l2");
        CHECK(r.meta.at("params") == "mu=0.5;beta=0.2;gamma=0.8");
        std::remove(path.c_str());
    }
}

TEST_CASE("csv: polar kind survives the round trip") {
    Trajectory t;
    t.kind = CoordKind::Polar;
    t.times = {0.0, 0.5};
    t.states = {{1.0, 0.0, 0.3}, {1.1, 7.9, 0.2}};  // unwrapped angle kept as-is
    const std::string path = temp_path("lorenzn_polar.csv");
    write_csv(t, path);
    const Trajectory r = read_csv(path);
    CHECK(r.kind == CoordKind::Polar);
    CHECK(r.states[1][1] == 7.9);
    std::remove(path.c_str());
}

TEST_CASE("csv: malformed input is reported with a row number") {
    const std::string path = temp_path("lorenzn_bad.csv");

    write_text(path, "t,x,y,z\n0,1,2,3\n0.1,1,oops,3\n");
    CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("row 3"), ConfigError);

    write_text(path, "t,x,y,z\n0,1,2,3\n0.1,1,2\n");
    CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("row 3"), ConfigError);

    write_text(path, "time,x,y,z\n0,1,2,3\n");
    CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("header"), ConfigError);

    // Non-increasing timestamps violate the trajectory invariant.
    write_text(path, "t,x,y,z\n0,1,2,3\n0,4,5,6\n");
    CHECK_THROWS_AS(read_csv(path), ConfigError);

    std::remove(path.c_str());
}

static const char* kMinimalScenario = R"({
  "schema_version": 1,
  "system": {"family": "l2"},
  "time": {"t1": 20},
  "outputs": [{"kind": "csv", "path": "a.csv"}]
})";

TEST_CASE("scenario: minimal document gets full defaults") {
    const Scenario sc = parse_scenario(kMinimalScenario);
    CHECK(sc.system.family == Family::L2);
    CHECK(sc.t0 == 0.0);
    CHECK(sc.t1 == 20.0);
    CHECK(sc.integrator.mode == StepMode::Adaptive);
    CHECK(sc.integrator.rel_tol == 1e-9);
    CHECK(sc.integrator.abs_tol == 1e-12);
    CHECK(sc.integrator.sample_interval == 0.01);
    CHECK_FALSE(sc.initial_state_set);
    REQUIRE(sc.outputs.size() == 1);
    CHECK(sc.outputs[0].kind == OutputSpec::Kind::Csv);
    // Canonical parameters, normalized.
    const NormalizedParams& p = sc.system.normalized_params();
    CHECK(p.gamma == doctest::Approx(13.0 / 15.0).epsilon(1e-15));

    // Defaults are stable: parsing twice expands identically.
    const Scenario sc2 = parse_scenario(kMinimalScenario);
    CHECK(sc2.integrator.rel_tol == sc.integrator.rel_tol);
    CHECK(sc2.system.normalized_params().mu == p.mu);
}

TEST_CASE("scenario: strict validation") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({
      "schema_version": 1,
      "system": {"family": "l2", "colour": 1},
      "outputs": [{"kind": "csv", "path": "a.csv"}]
    })"),
                         doctest::Contains("colour"), ConfigError);

    CHECK_THROWS_WITH_AS(parse_scenario(R"({
      "schema_version": 1,
      "system": {"family": "l2", "params": {"sigma": 10, "rayleigh": 0.5, "b": 2.6}},
      "outputs": [{"kind": "csv", "path": "a.csv"}]
    })"),
                         doctest::Contains("rayleigh > 1"), ConfigError);

    CHECK_THROWS_WITH_AS(parse_scenario(R"({"schema_version": 2, "system": {"family": "l2"},
      "outputs": [{"kind": "csv", "path": "a.csv"}]})"),
                         doctest::Contains("schema_version"), ConfigError);

    // Syntax errors carry line/column.
    CHECK_THROWS_WITH_AS(parse_scenario("{\n  \"schema_version\": 1,\n  oops\n}"),
                         doctest::Contains("line 3"), ConfigError);

    // ln requires n; n is rejected elsewhere.
    CHECK_THROWS_AS(parse_scenario(R"({"schema_version": 1, "system": {"family": "ln"},
      "outputs": [{"kind": "csv", "path": "a.csv"}]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"schema_version": 1,
      "system": {"family": "l2", "n": 3},
      "outputs": [{"kind": "csv", "path": "a.csv"}]})"),
                    ConfigError);

    // No outputs at all.
    CHECK_THROWS_AS(parse_scenario(R"({"schema_version": 1, "system": {"family": "l2"},
      "outputs": []})"),
                    ConfigError);
}

TEST_CASE("svg: deterministic output, colors, and edge cases") {
    Trajectory t = random_trajectory(200, true, 9);
    RenderOptions opts;
    opts.projection = "x,z";
    const std::string a = render_svg(t, opts);
    const std::string b = render_svg(t, opts);
    CHECK(a == b);  // byte-identical
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("polyline") != std::string::npos);
    // Both of the first two palette entries appear (three colors present).
    CHECK(a.find(branch_palette()[0]) != std::string::npos);
    CHECK(a.find(branch_palette()[1]) != std::string::npos);

    // Single point renders as a dot.
    Trajectory dot;
    dot.kind = CoordKind::Cartesian;
    dot.times = {0.0};
    dot.states = {{1.0, 2.0, 3.0}};
    const std::string d = render_svg(dot, opts);
    CHECK(d.find("<circle") != std::string::npos);

    Trajectory empty;
    CHECK_THROWS_AS(render_svg(empty, opts), ConfigError);

    RenderOptions bad;
    bad.projection = "x,x";
    CHECK_THROWS_AS(render_svg(t, bad), ConfigError);
    bad.projection = "radius,z";  // polar axis on a Cartesian trajectory
    CHECK_THROWS_AS(render_svg(t, bad), ConfigError);
}
