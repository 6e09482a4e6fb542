#pragma once

#include "sqwg/errors.hpp"

#include <string>
#include <vector>

namespace sqwg {

enum class Scenario { Unset, Coeffs, Evolve, Steady, PhaseMap, Spectrum, Sweep };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

// Flat key=value scenario description. Lengths are in lambda_0z units and
// rates in gamma_1d units throughout.
struct ScenarioConfig {
    Scenario scenario = Scenario::Unset;

    // physical system
    std::vector<double> positions;          // emitter coordinates
    double r = 0.5;                         // squeezing degree
    double theta = 0.0;                     // squeezing phase, rad
    double R = 0.0;                         // source half-separation
    double rabi = 0.0;                      // drive Rabi frequency
    double alpha = 0.0;                     // drive phase, rad
    std::string reservoir = "squeezed";     // squeezed | thermal
    std::string direction = "bidirectional";// bidirectional | unidirectional
    std::string dipole_dipole = "on";       // off zeroes cross couplings
    std::string initial_state = "plus_x";   // comma list of presets
    std::string observables = "sx1,sy1";    // comma list of column tokens
    std::string compare_thermal = "off";    // extra thermal-reservoir columns
    std::string compare_uncoupled = "off";  // extra no-coupling spectrum column

    // numerics
    double atol = 1e-10;
    double rtol = 1e-8;
    double t_final = 20.0;
    int t_samples = 401;
    double window = 20.0;      // dephasing-rate search window
    double horizon = 100.0;    // correlation horizon
    int tau_samples = 20000;
    double omega_min = -12.0;
    double omega_max = 12.0;
    int omega_points = 1600;
    double kernel_tol = 1e-9;
    double floor_tol = 1e-3;
    double settle_time = 300.0; // fallback evolution time for dark-state cases

    // sweep
    std::string sweep_key; // delta | r12 | rc | vanishing_width
    double sweep_start = 0.0;
    double sweep_stop = 0.0;
    int sweep_points = 0;
    int sweep_emitters = 2;
    double r12 = 0.5; // fixed separation for rc sweeps / adjacent spacing
    double rc = 0.0;  // fixed center of mass for r12 sweeps

    // phase map grids
    double n_min = 0.0;
    double n_max = 5.0;
    int n_points = 101;
    double rc_min = -0.25;
    double rc_max = 0.25;
    int rc_points = 101;

    int threads = 0; // 0: SQWG_THREADS env var, then hardware concurrency
    std::string label = "run";
};

// Parse a full document; unknown keys and malformed values raise ParseError,
// range violations raise ValidationError.
ScenarioConfig parse_config(const std::string& text);

// Overlay: parse text into an existing config (later keys win).
void parse_config_into(ScenarioConfig& cfg, const std::string& text, bool require_scenario = false);

// Canonical round-trippable document: every effective key, sorted, %.17g.
std::string emit_config(const ScenarioConfig& cfg);

void validate(const ScenarioConfig& cfg);

// Named presets fig2a..fig6d2 as canonical config text.
std::string preset_text(const std::string& name);
std::vector<std::string> preset_names();

int resolve_threads(const ScenarioConfig& cfg);

} // namespace sqwg
