#include "doctest.h"

#include "sqwg/config.hpp"
#include "sqwg/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sqwg;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> data_lines(const std::string& text) {
    // Every CSV starts with '#' comment lines echoing the effective config.
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("sqwg_test_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_SUITE("config") {

TEST_CASE("scenario names round trip") {
    for (Scenario s : {Scenario::Coeffs, Scenario::Evolve, Scenario::Steady,
                       Scenario::PhaseMap, Scenario::Spectrum, Scenario::Sweep})
        CHECK(scenario_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(scenario_from_string("spectogram"), ValidationError);
}

TEST_CASE("parse accepts comments, blank lines and whitespace") {
    const std::string text =
        "# leading comment\n"
        "\n"
        "scenario = evolve   # trailing comment\n"
        "  positions =  -0.25 , 0.25 \n"
        "r=0.75\n"
        "t_samples = 11\n";
    const ScenarioConfig cfg = parse_config(text);
    CHECK(cfg.scenario == Scenario::Evolve);
    REQUIRE(cfg.positions.size() == 2);
    CHECK(cfg.positions[0] == doctest::Approx(-0.25));
    CHECK(cfg.positions[1] == doctest::Approx(0.25));
    CHECK(cfg.r == doctest::Approx(0.75));
    CHECK(cfg.t_samples == 11);
    // Untouched keys keep their defaults.
    CHECK(cfg.theta == 0.0);
    CHECK(cfg.reservoir == "squeezed");
}

TEST_CASE("parse errors carry line and key information") {
    try {
        parse_config("scenario = evolve\npositions = 0\nwobble = 3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_number == 3);
        CHECK(e.key_name == "wobble");
        CHECK(e.category() == ErrorCategory::config);
    }
    CHECK_THROWS_AS(parse_config("scenario evolve\n"), ParseError);
    CHECK_THROWS_AS(parse_config("scenario = evolve\nr = fast\n"), ParseError);
    CHECK_THROWS_AS(parse_config("scenario = evolve\nr =\n"), ParseError);
    CHECK_THROWS_AS(parse_config("scenario = evolve\nt_samples = 3.7\n"), ParseError);
    CHECK_THROWS_AS(parse_config("scenario = evolve\npositions = 0.1;0.2\n"), ParseError);
}

TEST_CASE("validation rejects out-of-range settings") {
    auto base = []() {
        ScenarioConfig c;
        c.scenario = Scenario::Evolve;
        c.positions = {0.0};
        return c;
    };
    CHECK_NOTHROW(validate(base()));

    auto expect_invalid = [](ScenarioConfig c) { CHECK_THROWS_AS(validate(c), ValidationError); };

    { ScenarioConfig c; expect_invalid(c); }                       // no scenario
    { auto c = base(); c.positions.clear(); expect_invalid(c); }   // no emitters
    { auto c = base(); c.positions.assign(7, 0.1); expect_invalid(c); }
    { auto c = base(); c.r = -0.1; expect_invalid(c); }
    { auto c = base(); c.rabi = -1.0; expect_invalid(c); }
    { auto c = base(); c.reservoir = "noisy"; expect_invalid(c); }
    { auto c = base(); c.direction = "sideways"; expect_invalid(c); }
    { auto c = base(); c.dipole_dipole = "maybe"; expect_invalid(c); }
    { auto c = base(); c.atol = 0.0; expect_invalid(c); }
    { auto c = base(); c.t_samples = 1; expect_invalid(c); }
    { auto c = base(); c.t_final = -2.0; expect_invalid(c); }
    { auto c = base(); c.omega_max = c.omega_min; expect_invalid(c); }
    { auto c = base(); c.scenario = Scenario::Spectrum; expect_invalid(c); } // rabi = 0
    {
        auto c = base();
        c.scenario = Scenario::Sweep;
        c.positions.clear();
        c.sweep_key = "volume";
        c.sweep_points = 5;
        c.sweep_stop = 1.0;
        expect_invalid(c);
    }
    {
        auto c = base();
        c.scenario = Scenario::Sweep;
        c.positions.clear();
        c.sweep_key = "delta";
        c.sweep_points = 5;
        c.sweep_stop = -1.0; // stop below start with points > 1
        expect_invalid(c);
    }
    {
        auto c = base();
        c.scenario = Scenario::PhaseMap;
        c.positions.clear();
        c.n_min = -0.5;
        expect_invalid(c);
    }
}

TEST_CASE("emit and parse are inverse on every preset") {
    const auto names = preset_names();
    CHECK(names.size() >= 18);
    for (const auto& name : names) {
        const ScenarioConfig cfg = parse_config(preset_text(name));
        CHECK_NOTHROW(validate(cfg));
        const std::string emitted = emit_config(cfg);
        const ScenarioConfig again = parse_config(emitted);
        CHECK(emit_config(again) == emitted);
    }
    CHECK_THROWS_AS(preset_text("fig9z"), ValidationError);
}

TEST_CASE("presets pin the documented parameter choices") {
    {
        const auto c = parse_config(preset_text("fig2a"));
        CHECK(c.scenario == Scenario::Evolve);
        REQUIRE(c.positions.size() == 1);
        CHECK(c.positions[0] == 0.0);
        CHECK(c.r == doctest::Approx(0.5));
        CHECK(c.compare_thermal == "on");
        CHECK(c.t_samples == 401);
    }
    {
        const auto c = parse_config(preset_text("fig2b"));
        CHECK(c.scenario == Scenario::Sweep);
        CHECK(c.sweep_key == "delta");
        CHECK(c.sweep_points == 101);
        CHECK(c.sweep_stop == doctest::Approx(0.5));
    }
    {
        const auto c = parse_config(preset_text("fig3a"));
        CHECK(c.scenario == Scenario::Evolve);
        REQUIRE(c.positions.size() == 2);
        CHECK(c.positions[0] == doctest::Approx(-0.25));
        CHECK(c.positions[1] == doctest::Approx(0.25));
        CHECK(c.r == doctest::Approx(0.5));
    }
    {
        const auto c = parse_config(preset_text("fig5a"));
        CHECK(c.scenario == Scenario::PhaseMap);
        CHECK(c.n_points == 201);
        CHECK(c.rc_points == 201);
    }
    {
        const auto c = parse_config(preset_text("fig6a"));
        CHECK(c.scenario == Scenario::Spectrum);
        CHECK(c.rabi == doctest::Approx(4.0));
        CHECK(c.compare_uncoupled == "on");
        REQUIRE(c.positions.size() == 2);
    }
}

TEST_CASE("overlay keeps earlier values unless overridden") {
    ScenarioConfig cfg = parse_config(preset_text("fig2a"));
    parse_config_into(cfg, "r = 1.25\nlabel = custom\n");
    CHECK(cfg.r == doctest::Approx(1.25));
    CHECK(cfg.label == "custom");
    CHECK(cfg.scenario == Scenario::Evolve);
    CHECK(cfg.compare_thermal == "on");
    // require_scenario applies to the merged result, not to the overlay text.
    CHECK_NOTHROW(parse_config_into(cfg, "r = 0.5\n", true));
    ScenarioConfig blank;
    CHECK_THROWS_AS(parse_config_into(blank, "r = 0.5\n", true), ValidationError);
    CHECK_NOTHROW(parse_config_into(blank, "scenario = steady\n", true));
}

TEST_CASE("error categories map to the documented exit codes") {
    CHECK(static_cast<int>(ErrorCategory::config) == 1);
    CHECK(static_cast<int>(ErrorCategory::physics) == 2);
    CHECK(static_cast<int>(ErrorCategory::numerical) == 3);
}

TEST_CASE("thread resolution order") {
    ScenarioConfig cfg;
    cfg.threads = 3;
    CHECK(resolve_threads(cfg) == 3);
    cfg.threads = 0;
    setenv("SQWG_THREADS", "2", 1);
    CHECK(resolve_threads(cfg) == 2);
    unsetenv("SQWG_THREADS");
    CHECK(resolve_threads(cfg) >= 1);
}

TEST_CASE("coefficient table run") {
    TempDir dir;
    ScenarioConfig cfg = parse_config(
        "scenario = coeffs\npositions = -0.25, 0.25\nr = 0.5\nlabel = tbl\n");
    const RunOutput out = run_scenario(cfg, dir.path.string());
    REQUIRE(!out.files.empty());
    const auto rows = data_lines(slurp(out.files.front()));
    REQUIRE(rows.size() == 5); // header + 4 pair rows
    CHECK(rows[0] == "i,j,gamma,lambda,gamma_prime");
    // gamma_11 = 1 and gamma_prime_12 = cos(0) = 1 appear in the table.
    CHECK(rows[1].rfind("0,0,1", 0) == 0);
}

TEST_CASE("trajectory run emits the requested columns") {
    TempDir dir;
    ScenarioConfig cfg = parse_config(
        "scenario = evolve\npositions = 0\nr = 0.5\ninitial_state = plus_x,plus_y\n"
        "observables = sx1,sy1\ncompare_thermal = on\nt_final = 1\nt_samples = 5\n"
        "label = tiny\n");
    const RunOutput out = run_scenario(cfg, dir.path.string());
    REQUIRE(!out.files.empty());
    const auto rows = data_lines(slurp(out.files.front()));
    REQUIRE(rows.size() == 6); // header + 5 samples
    CHECK(rows[0].rfind("t,", 0) == 0);
    CHECK(rows[0].find("sx1@plus_x") != std::string::npos);
    CHECK(rows[0].find("sy1@plus_y") != std::string::npos);
    CHECK(rows[0].find("sx1@plus_x_thermal") != std::string::npos);
    // First sample: t = 0 and <sx> = 1 from plus_x.
    std::istringstream first(rows[1]);
    std::string cell;
    std::getline(first, cell, ',');
    CHECK(cell == "0");
    std::getline(first, cell, ',');
    CHECK(std::stod(cell) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("steady run reports populations and concurrence") {
    TempDir dir;
    ScenarioConfig cfg = parse_config(
        "scenario = steady\npositions = -0.1, 0.1\nr = 0.8814\nlabel = ss\n");
    const RunOutput out = run_scenario(cfg, dir.path.string());
    const auto rows = data_lines(slurp(out.files.front()));
    CHECK(rows[0] == "quantity,value");
    bool saw_conc = false, saw_u = false;
    for (const auto& row : rows) {
        if (row.rfind("concurrence,", 0) == 0) saw_conc = true;
        if (row.rfind("rho_u,", 0) == 0) saw_u = true;
    }
    CHECK(saw_conc);
    CHECK(saw_u);
}

TEST_CASE("sweep run produces one row per grid point") {
    TempDir dir;
    ScenarioConfig cfg = parse_config(
        "scenario = sweep\nsweep_key = delta\nsweep_start = 0\nsweep_stop = 0.5\n"
        "sweep_points = 5\nsweep_emitters = 1\nr = 0.5\nwindow = 40\n"
        "t_samples = 801\nlabel = sw\n");
    const RunOutput out = run_scenario(cfg, dir.path.string());
    const auto rows = data_lines(slurp(out.files.front()));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "delta,rate_x,rate_y");
    // Grid endpoints present and ordered.
    CHECK(rows[1].rfind("0,", 0) == 0);
    CHECK(rows[5].rfind("0.5,", 0) == 0);
}

TEST_CASE("phase map run grid shape") {
    TempDir dir;
    ScenarioConfig cfg = parse_config(
        "scenario = phase-map\nn_min = 0\nn_max = 2\nn_points = 3\n"
        "rc_min = -0.25\nrc_max = 0.25\nrc_points = 5\nlabel = pm\n");
    const RunOutput out = run_scenario(cfg, dir.path.string());
    const auto rows = data_lines(slurp(out.files.front()));
    REQUIRE(rows.size() == 16); // header + 3 x 5
    CHECK(rows[0] == "N,rc_over_lambda0z,concurrence");
}

TEST_CASE("runs are deterministic byte for byte") {
    TempDir dir1, dir2;
    ScenarioConfig cfg = parse_config(
        "scenario = evolve\npositions = -0.25, 0.25\nr = 0.5\nt_final = 2\n"
        "t_samples = 9\nlabel = det\n");
    const RunOutput a = run_scenario(cfg, dir1.path.string());
    const RunOutput b = run_scenario(cfg, dir2.path.string());
    REQUIRE(a.files.size() == b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i)
        CHECK(slurp(a.files[i]) == slurp(b.files[i]));
}

TEST_CASE("every run leaves a canonical config echo next to the data") {
    TempDir dir;
    ScenarioConfig cfg = parse_config(
        "scenario = coeffs\npositions = 0\nlabel = echo\n");
    run_scenario(cfg, dir.path.string());
    const auto echo = slurp(dir.path / "echo_config.txt");
    const ScenarioConfig round = parse_config(echo);
    CHECK(emit_config(round) == emit_config(cfg));
}

} // TEST_SUITE
