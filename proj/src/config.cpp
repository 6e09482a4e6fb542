#include "sqwg/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <sstream>
#include <thread>

namespace sqwg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& v, int line, const std::string& key) {
    const char* begin = v.c_str();
    char* end = nullptr;
    double out = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError(line, key, "expected a number, got '" + v + "'");
    return out;
}

int parse_int(const std::string& v, int line, const std::string& key) {
    const char* begin = v.c_str();
    char* end = nullptr;
    long out = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ParseError(line, key, "expected an integer, got '" + v + "'");
    return static_cast<int>(out);
}

std::vector<double> parse_double_list(const std::string& v, int line, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ParseError(line, key, "empty list element");
        out.push_back(parse_double(item, line, key));
    }
    if (out.empty())
        throw ParseError(line, key, "empty list");
    return out;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += fmt(xs[i]);
    }
    return out;
}

bool is_switch(const std::string& v) { return v == "on" || v == "off"; }

} // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::Coeffs: return "coeffs";
        case Scenario::Evolve: return "evolve";
        case Scenario::Steady: return "steady";
        case Scenario::PhaseMap: return "phase-map";
        case Scenario::Spectrum: return "spectrum";
        case Scenario::Sweep: return "sweep";
        case Scenario::Unset: break;
    }
    return "unset";
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "coeffs") return Scenario::Coeffs;
    if (s == "evolve") return Scenario::Evolve;
    if (s == "steady") return Scenario::Steady;
    if (s == "phase-map") return Scenario::PhaseMap;
    if (s == "spectrum") return Scenario::Spectrum;
    if (s == "sweep") return Scenario::Sweep;
    throw ValidationError("scenario", "unknown scenario '" + s + "'");
}

void parse_config_into(ScenarioConfig& cfg, const std::string& text, bool require_scenario) {
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        std::string s = raw;
        if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError(line, s, "expected key=value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty())
            throw ParseError(line, key, "missing key");
        if (val.empty())
            throw ParseError(line, key, "missing value");

        if (key == "scenario") {
            try {
                cfg.scenario = scenario_from_string(val);
            } catch (const ValidationError&) {
                throw ParseError(line, key, "unknown scenario '" + val + "'");
            }
        } else if (key == "positions") {
            cfg.positions = parse_double_list(val, line, key);
        } else if (key == "r") {
            cfg.r = parse_double(val, line, key);
        } else if (key == "theta") {
            cfg.theta = parse_double(val, line, key);
        } else if (key == "R") {
            cfg.R = parse_double(val, line, key);
        } else if (key == "rabi") {
            cfg.rabi = parse_double(val, line, key);
        } else if (key == "alpha") {
            cfg.alpha = parse_double(val, line, key);
        } else if (key == "reservoir") {
            cfg.reservoir = val;
        } else if (key == "direction") {
            cfg.direction = val;
        } else if (key == "dipole_dipole") {
            cfg.dipole_dipole = val;
        } else if (key == "initial_state") {
            cfg.initial_state = val;
        } else if (key == "observables") {
            cfg.observables = val;
        } else if (key == "compare_thermal") {
            cfg.compare_thermal = val;
        } else if (key == "compare_uncoupled") {
            cfg.compare_uncoupled = val;
        } else if (key == "atol") {
            cfg.atol = parse_double(val, line, key);
        } else if (key == "rtol") {
            cfg.rtol = parse_double(val, line, key);
        } else if (key == "t_final") {
            cfg.t_final = parse_double(val, line, key);
        } else if (key == "t_samples") {
            cfg.t_samples = parse_int(val, line, key);
        } else if (key == "window") {
            cfg.window = parse_double(val, line, key);
        } else if (key == "horizon") {
            cfg.horizon = parse_double(val, line, key);
        } else if (key == "tau_samples") {
            cfg.tau_samples = parse_int(val, line, key);
        } else if (key == "omega_min") {
            cfg.omega_min = parse_double(val, line, key);
        } else if (key == "omega_max") {
            cfg.omega_max = parse_double(val, line, key);
        } else if (key == "omega_points") {
            cfg.omega_points = parse_int(val, line, key);
        } else if (key == "kernel_tol") {
            cfg.kernel_tol = parse_double(val, line, key);
        } else if (key == "floor_tol") {
            cfg.floor_tol = parse_double(val, line, key);
        } else if (key == "settle_time") {
            cfg.settle_time = parse_double(val, line, key);
        } else if (key == "sweep_key") {
            cfg.sweep_key = val;
        } else if (key == "sweep_start") {
            cfg.sweep_start = parse_double(val, line, key);
        } else if (key == "sweep_stop") {
            cfg.sweep_stop = parse_double(val, line, key);
        } else if (key == "sweep_points") {
            cfg.sweep_points = parse_int(val, line, key);
        } else if (key == "sweep_emitters") {
            cfg.sweep_emitters = parse_int(val, line, key);
        } else if (key == "r12") {
            cfg.r12 = parse_double(val, line, key);
        } else if (key == "rc") {
            cfg.rc = parse_double(val, line, key);
        } else if (key == "n_min") {
            cfg.n_min = parse_double(val, line, key);
        } else if (key == "n_max") {
            cfg.n_max = parse_double(val, line, key);
        } else if (key == "n_points") {
            cfg.n_points = parse_int(val, line, key);
        } else if (key == "rc_min") {
            cfg.rc_min = parse_double(val, line, key);
        } else if (key == "rc_max") {
            cfg.rc_max = parse_double(val, line, key);
        } else if (key == "rc_points") {
            cfg.rc_points = parse_int(val, line, key);
        } else if (key == "threads") {
            cfg.threads = parse_int(val, line, key);
        } else if (key == "label") {
            cfg.label = val;
        } else {
            throw ParseError(line, key, "unknown key");
        }
    }
    if (require_scenario && cfg.scenario == Scenario::Unset)
        throw ValidationError("scenario", "scenario is required");
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    parse_config_into(cfg, text, true);
    validate(cfg);
    return cfg;
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.scenario == Scenario::Unset)
        throw ValidationError("scenario", "scenario is required");
    if (cfg.r < 0.0)
        throw ValidationError("r", "squeezing degree must be >= 0");
    if (cfg.rabi < 0.0)
        throw ValidationError("rabi", "Rabi frequency must be >= 0");
    if (cfg.reservoir != "squeezed" && cfg.reservoir != "thermal")
        throw ValidationError("reservoir", "must be squeezed or thermal");
    if (cfg.direction != "bidirectional" && cfg.direction != "unidirectional")
        throw ValidationError("direction", "must be bidirectional or unidirectional");
    if (!is_switch(cfg.dipole_dipole))
        throw ValidationError("dipole_dipole", "must be on or off");
    if (!is_switch(cfg.compare_thermal))
        throw ValidationError("compare_thermal", "must be on or off");
    if (!is_switch(cfg.compare_uncoupled))
        throw ValidationError("compare_uncoupled", "must be on or off");
    if (cfg.atol <= 0.0 || cfg.rtol <= 0.0)
        throw ValidationError("atol", "tolerances must be positive");
    if (cfg.t_final <= 0.0)
        throw ValidationError("t_final", "must be positive");
    if (cfg.t_samples < 2)
        throw ValidationError("t_samples", "need at least 2 samples");
    if (cfg.window <= 0.0)
        throw ValidationError("window", "must be positive");
    if (cfg.horizon <= 0.0)
        throw ValidationError("horizon", "must be positive");
    if (cfg.tau_samples < 2)
        throw ValidationError("tau_samples", "need at least 2 samples");
    if (cfg.omega_points < 2)
        throw ValidationError("omega_points", "need at least 2 points");
    if (cfg.omega_max <= cfg.omega_min)
        throw ValidationError("omega_max", "must exceed omega_min");
    if (cfg.kernel_tol <= 0.0)
        throw ValidationError("kernel_tol", "must be positive");
    if (cfg.floor_tol <= 0.0)
        throw ValidationError("floor_tol", "must be positive");
    if (cfg.settle_time <= 0.0)
        throw ValidationError("settle_time", "must be positive");
    if (cfg.threads < 0)
        throw ValidationError("threads", "must be >= 0");

    const bool needs_positions = cfg.scenario == Scenario::Coeffs ||
                                 cfg.scenario == Scenario::Evolve ||
                                 cfg.scenario == Scenario::Steady ||
                                 cfg.scenario == Scenario::Spectrum;
    if (needs_positions) {
        if (cfg.positions.empty())
            throw ValidationError("positions", "at least one emitter required");
        if (cfg.positions.size() > 6)
            throw ValidationError("positions", "at most 6 emitters supported");
    }
    if (cfg.scenario == Scenario::Sweep) {
        if (cfg.sweep_key != "delta" && cfg.sweep_key != "r12" &&
            cfg.sweep_key != "rc" && cfg.sweep_key != "vanishing_width")
            throw ValidationError("sweep_key",
                                  "must be delta, r12, rc or vanishing_width");
        if (cfg.sweep_points < 1)
            throw ValidationError("sweep_points", "need at least 1 point");
        if (cfg.sweep_points > 1 && cfg.sweep_stop <= cfg.sweep_start)
            throw ValidationError("sweep_stop", "must exceed sweep_start");
        if (cfg.sweep_emitters < 1 || cfg.sweep_emitters > 6)
            throw ValidationError("sweep_emitters", "must be between 1 and 6");
    }
    if (cfg.scenario == Scenario::PhaseMap) {
        if (cfg.n_points < 1 || cfg.rc_points < 1)
            throw ValidationError("n_points", "grid needs at least 1 point");
        if (cfg.n_min < 0.0)
            throw ValidationError("n_min", "photon number must be >= 0");
        if (cfg.n_points > 1 && cfg.n_max <= cfg.n_min)
            throw ValidationError("n_max", "must exceed n_min");
        if (cfg.rc_points > 1 && cfg.rc_max <= cfg.rc_min)
            throw ValidationError("rc_max", "must exceed rc_min");
    }
    if (cfg.scenario == Scenario::Spectrum && cfg.rabi <= 0.0)
        throw ValidationError("rabi", "spectrum needs a drive");
}

std::string emit_config(const ScenarioConfig& cfg) {
    // Alphabetical key order keeps the document canonical.
    std::map<std::string, std::string> kv;
    kv["R"] = fmt(cfg.R);
    kv["alpha"] = fmt(cfg.alpha);
    kv["atol"] = fmt(cfg.atol);
    kv["compare_thermal"] = cfg.compare_thermal;
    kv["compare_uncoupled"] = cfg.compare_uncoupled;
    kv["dipole_dipole"] = cfg.dipole_dipole;
    kv["direction"] = cfg.direction;
    kv["floor_tol"] = fmt(cfg.floor_tol);
    kv["horizon"] = fmt(cfg.horizon);
    kv["initial_state"] = cfg.initial_state;
    kv["kernel_tol"] = fmt(cfg.kernel_tol);
    kv["label"] = cfg.label;
    kv["n_max"] = fmt(cfg.n_max);
    kv["n_min"] = fmt(cfg.n_min);
    kv["n_points"] = std::to_string(cfg.n_points);
    kv["observables"] = cfg.observables;
    kv["omega_max"] = fmt(cfg.omega_max);
    kv["omega_min"] = fmt(cfg.omega_min);
    kv["omega_points"] = std::to_string(cfg.omega_points);
    if (!cfg.positions.empty()) kv["positions"] = join(cfg.positions);
    kv["r"] = fmt(cfg.r);
    kv["r12"] = fmt(cfg.r12);
    kv["rabi"] = fmt(cfg.rabi);
    kv["rc"] = fmt(cfg.rc);
    kv["rc_max"] = fmt(cfg.rc_max);
    kv["rc_min"] = fmt(cfg.rc_min);
    kv["rc_points"] = std::to_string(cfg.rc_points);
    kv["reservoir"] = cfg.reservoir;
    kv["rtol"] = fmt(cfg.rtol);
    kv["scenario"] = to_string(cfg.scenario);
    kv["settle_time"] = fmt(cfg.settle_time);
    if (!cfg.sweep_key.empty()) kv["sweep_key"] = cfg.sweep_key;
    kv["sweep_emitters"] = std::to_string(cfg.sweep_emitters);
    kv["sweep_points"] = std::to_string(cfg.sweep_points);
    kv["sweep_start"] = fmt(cfg.sweep_start);
    kv["sweep_stop"] = fmt(cfg.sweep_stop);
    kv["t_final"] = fmt(cfg.t_final);
    kv["t_samples"] = std::to_string(cfg.t_samples);
    kv["tau_samples"] = std::to_string(cfg.tau_samples);
    kv["theta"] = fmt(cfg.theta);
    kv["threads"] = std::to_string(cfg.threads);
    kv["window"] = fmt(cfg.window);

    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig3a", "fig3a2", "fig3b", "fig3c", "fig3d",
            "fig3d5", "fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b",
            "fig6c", "fig6c2", "fig6d", "fig6d2"};
}

std::string preset_text(const std::string& name) {
    // Single-emitter transverse decay, squeezed vs thermal reference.
    if (name == "fig2a")
        return "scenario = evolve\n"
               "label = fig2a\n"
               "positions = 0\n"
               "r = 0.5\n"
               "initial_state = plus_x,plus_y\n"
               "observables = sx1,sy1\n"
               "compare_thermal = on\n"
               "t_final = 20\n"
               "t_samples = 401\n";
    // Quadrature dephasing rates against emitter offset from the source.
    if (name == "fig2b")
        return "scenario = sweep\n"
               "label = fig2b\n"
               "sweep_key = delta\n"
               "sweep_start = 0\n"
               "sweep_stop = 0.5\n"
               "sweep_points = 101\n"
               "r = 0.5\n"
               "window = 40\n"
               "t_samples = 2001\n";
    // Emitter pair, separation half a guided wavelength: phase-flipped noise.
    if (name == "fig3a")
        return "scenario = evolve\n"
               "label = fig3a\n"
               "positions = -0.25,0.25\n"
               "r = 0.5\n"
               "initial_state = plus_x,plus_y\n"
               "observables = sx1,sy1\n"
               "t_final = 20\n"
               "t_samples = 401\n";
    if (name == "fig3a2")
        return "scenario = evolve\n"
               "label = fig3a2\n"
               "positions = -0.5,0.5\n"
               "r = 0.5\n"
               "initial_state = plus_x,plus_y\n"
               "observables = sx1,sy1\n"
               "t_final = 20\n"
               "t_samples = 401\n";
    // Symmetric/antisymmetric populations from the doubly excited state.
    if (name == "fig3b")
        return "scenario = evolve\n"
               "label = fig3b\n"
               "positions = -0.25,0.25\n"
               "r = 0.5\n"
               "initial_state = ee\n"
               "observables = pop_pp,pop_mm\n"
               "compare_thermal = on\n"
               "t_final = 8\n"
               "t_samples = 401\n";
    // Pair dephasing rates against separation, center fixed at a node.
    if (name == "fig3c")
        return "scenario = sweep\n"
               "label = fig3c\n"
               "sweep_key = r12\n"
               "sweep_start = 0.025\n"
               "sweep_stop = 1\n"
               "sweep_points = 40\n"
               "rc = 0\n"
               "r = 0.5\n"
               "window = 60\n"
               "t_samples = 3001\n";
    // Rates against the center-of-mass coordinate at fixed spacing.
    if (name == "fig3d")
        return "scenario = sweep\n"
               "label = fig3d\n"
               "sweep_key = rc\n"
               "sweep_start = 0\n"
               "sweep_stop = 0.5\n"
               "sweep_points = 101\n"
               "sweep_emitters = 2\n"
               "r12 = 1\n"
               "r = 0.5\n"
               "window = 60\n"
               "t_samples = 3001\n";
    if (name == "fig3d5")
        return "scenario = sweep\n"
               "label = fig3d5\n"
               "sweep_key = rc\n"
               "sweep_start = 0\n"
               "sweep_stop = 0.5\n"
               "sweep_points = 51\n"
               "sweep_emitters = 5\n"
               "r12 = 1\n"
               "r = 0.5\n"
               "window = 60\n"
               "t_samples = 3001\n";
    // Entanglement growth toward the steady state, three initial states.
    if (name == "fig4a")
        return "scenario = evolve\n"
               "label = fig4a\n"
               "positions = -0.125,0.125\n"
               "r = 1\n"
               "initial_state = gg,ee,plus_x\n"
               "observables = conc\n"
               "t_final = 10\n"
               "t_samples = 401\n";
    if (name == "fig4b")
        return "scenario = evolve\n"
               "label = fig4b\n"
               "positions = -0.125,0.125\n"
               "r = 1\n"
               "initial_state = gg,ee,plus_x\n"
               "observables = fid_noon\n"
               "t_final = 10\n"
               "t_samples = 401\n";
    // Steady concurrence over photon number and center-of-mass position.
    if (name == "fig5a")
        return "scenario = phase-map\n"
               "label = fig5a\n"
               "n_min = 0\n"
               "n_max = 5\n"
               "n_points = 201\n"
               "rc_min = -0.25\n"
               "rc_max = 0.25\n"
               "rc_points = 201\n";
    // Width of the center-of-mass window where entanglement survives.
    if (name == "fig5b")
        return "scenario = sweep\n"
               "label = fig5b\n"
               "sweep_key = vanishing_width\n"
               "sweep_start = 0.25\n"
               "sweep_stop = 5\n"
               "sweep_points = 96\n";
    // Driven pair nearly coincident: narrow subradiant line needs a long
    // correlation horizon.
    if (name == "fig6a")
        return "scenario = spectrum\n"
               "label = fig6a\n"
               "positions = 0,0.01\n"
               "r = 0.5\n"
               "rabi = 4\n"
               "horizon = 5000\n"
               "tau_samples = 250000\n"
               "omega_min = -12\n"
               "omega_max = 12\n"
               "omega_points = 1600\n"
               "compare_uncoupled = on\n";
    if (name == "fig6b")
        return "scenario = spectrum\n"
               "label = fig6b\n"
               "positions = 0,0.25\n"
               "r = 0.5\n"
               "rabi = 4\n"
               "horizon = 300\n"
               "tau_samples = 30000\n"
               "compare_uncoupled = on\n";
    if (name == "fig6c")
        return "scenario = spectrum\n"
               "label = fig6c\n"
               "positions = 0,1\n"
               "r = 0.5\n"
               "theta = 1.5707963267948966\n"
               "rabi = 4\n"
               "horizon = 300\n"
               "tau_samples = 30000\n";
    if (name == "fig6c2")
        return "scenario = spectrum\n"
               "label = fig6c2\n"
               "positions = 0,1\n"
               "r = 1\n"
               "theta = 1.5707963267948966\n"
               "rabi = 4\n"
               "horizon = 300\n"
               "tau_samples = 30000\n";
    if (name == "fig6d")
        return "scenario = spectrum\n"
               "label = fig6d\n"
               "positions = -0.25,0.25\n"
               "r = 0.5\n"
               "rabi = 4\n"
               "horizon = 300\n"
               "tau_samples = 30000\n";
    if (name == "fig6d2")
        return "scenario = spectrum\n"
               "label = fig6d2\n"
               "positions = -0.125,0.125\n"
               "r = 0.5\n"
               "rabi = 4\n"
               "horizon = 300\n"
               "tau_samples = 30000\n";
    throw ValidationError("preset", "unknown preset '" + name + "'");
}

int resolve_threads(const ScenarioConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("SQWG_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

} // namespace sqwg
