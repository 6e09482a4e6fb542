#include "sqwg/config.hpp"
#include "sqwg/runner.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

std::optional<sqwg::Scenario> scenario_for(const std::string& sub) {
    if (sub == "coeffs") return sqwg::Scenario::Coeffs;
    if (sub == "evolve") return sqwg::Scenario::Evolve;
    if (sub == "steady") return sqwg::Scenario::Steady;
    if (sub == "phase-map") return sqwg::Scenario::PhaseMap;
    if (sub == "spectrum") return sqwg::Scenario::Spectrum;
    if (sub == "sweep") return sqwg::Scenario::Sweep;
    return std::nullopt; // validate
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sqwg::ValidationError("config", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"collective emitter dynamics in a squeezed waveguide reservoir"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, preset, out_dir = "out";
    int threads = -1;
    app.add_option("--config", config_path, "key=value scenario file");
    app.add_option("--preset", preset, "named preset (fig2a .. fig6d2)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (0: auto)");

    app.add_subcommand("coeffs", "write the collective coefficient matrices");
    app.add_subcommand("evolve", "integrate the master equation, write trajectories");
    app.add_subcommand("steady", "solve for the steady state (grid configs give a phase map)");
    app.add_subcommand("phase-map", "steady concurrence over a (N, r_c) grid");
    app.add_subcommand("spectrum", "driven resonance-fluorescence spectrum");
    app.add_subcommand("sweep", "parameter sweeps (dephasing rates, widths)");
    app.add_subcommand("validate", "parse a config, print its canonical form");

    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        sqwg::ScenarioConfig cfg;
        if (!preset.empty()) sqwg::parse_config_into(cfg, sqwg::preset_text(preset));
        if (!config_path.empty()) sqwg::parse_config_into(cfg, read_file(config_path));
        if (threads >= 0) cfg.threads = threads;

        if (auto want = scenario_for(sub)) {
            if (cfg.scenario == sqwg::Scenario::Unset) {
                cfg.scenario = *want;
            } else if (cfg.scenario != *want &&
                       !(*want == sqwg::Scenario::Steady &&
                         cfg.scenario == sqwg::Scenario::PhaseMap)) {
                throw sqwg::ValidationError(
                    "scenario", "config requests '" + sqwg::to_string(cfg.scenario) +
                                    "' but the subcommand is '" + sub + "'");
            }
        } else if (cfg.scenario == sqwg::Scenario::Unset) {
            throw sqwg::ValidationError("scenario",
                                        "validate needs --config or --preset with a scenario");
        }

        sqwg::validate(cfg);
        if (sub == "validate") {
            std::cout << sqwg::emit_config(cfg);
            return 0;
        }

        const sqwg::RunOutput out = sqwg::run_scenario(cfg, out_dir);
        std::cout << out.summary << "\n";
        for (const auto& f : out.files) std::cout << "wrote " << f << "\n";
        return 0;
    } catch (const sqwg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(sqwg::ErrorCategory::numerical);
    }
}
