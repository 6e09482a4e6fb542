#include "sqwg/runner.hpp"

#include "sqwg/dynamics.hpp"
#include "sqwg/spectrum.hpp"
#include "sqwg/steady_state.hpp"

#include "json.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace sqwg {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    if (n == 1) {
        xs[0] = a;
        return xs;
    }
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return xs;
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

SqueezingSpec spec_of(const ScenarioConfig& cfg) {
    SqueezingSpec sq;
    sq.r = cfg.r;
    sq.theta = cfg.theta;
    sq.R = cfg.R;
    sq.direction = cfg.direction == "unidirectional" ? Direction::Unidirectional
                                                     : Direction::Bidirectional;
    return sq;
}

OdeOptions ode_options(const ScenarioConfig& cfg) {
    OdeOptions opts;
    opts.atol = cfg.atol;
    opts.rtol = cfg.rtol;
    return opts;
}

// Write lines and remember the path.
void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& files) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("output", "cannot open '" + path + "' for writing");
    out << content;
    files.push_back(path);
}

std::string config_comment_block(const ScenarioConfig& cfg) {
    std::stringstream in(emit_config(cfg));
    std::string line, out;
    while (std::getline(in, line)) out += "# " + line + "\n";
    return out;
}

struct ObsColumn {
    std::string name;
    std::function<double(const Mat&)> eval;
};

Mat projector_from(const Vec& psi) { return psi * psi.adjoint(); }

std::vector<ObsColumn> build_observables(const std::vector<std::string>& tokens, int n,
                                         const CoefficientSet& cs, double rc_center) {
    std::vector<ObsColumn> cols;
    const Eigen::Index dim = Eigen::Index(1) << n;
    for (const auto& tok : tokens) {
        if ((tok.rfind("sx", 0) == 0 || tok.rfind("sy", 0) == 0) && tok.size() > 2) {
            const bool is_x = tok[1] == 'x';
            const int idx = std::atoi(tok.c_str() + 2) - 1;
            if (idx < 0 || idx >= n)
                throw ValidationError("observables", "emitter index out of range in '" + tok + "'");
            const Mat sp = site_raise(idx, n);
            const Mat op = is_x ? Mat(sp + sp.adjoint()) : Mat(cplx(0, -1) * (sp - sp.adjoint()));
            cols.push_back({tok, [op](const Mat& rho) { return (op * rho).trace().real(); }});
        } else if (tok == "pop_gg" || tok == "pop_ee" || tok == "pop_pp" || tok == "pop_mm") {
            if (n != 2)
                throw ValidationError("observables", "'" + tok + "' needs exactly 2 emitters");
            Vec psi = Vec::Zero(4);
            if (tok == "pop_gg") psi(0) = 1.0;
            if (tok == "pop_ee") psi(3) = 1.0;
            if (tok == "pop_pp") { psi(1) = psi(2) = 1.0 / std::sqrt(2.0); }
            if (tok == "pop_mm") { psi(1) = 1.0 / std::sqrt(2.0); psi(2) = -psi(1); }
            const Mat proj = projector_from(psi);
            cols.push_back({tok, [proj](const Mat& rho) { return (proj * rho).trace().real(); }});
        } else if (tok == "conc") {
            if (n != 2) throw ValidationError("observables", "'conc' needs exactly 2 emitters");
            cols.push_back({tok, [](const Mat& rho) { return concurrence(rho); }});
        } else if (tok == "fid_noon") {
            if (n != 2) throw ValidationError("observables", "'fid_noon' needs exactly 2 emitters");
            const int n_quarter = static_cast<int>(std::lround(4.0 * rc_center));
            const Mat target = noon_limit_state(cs.N_photon, n_quarter);
            cols.push_back({tok, [target](const Mat& rho) {
                                return (target * rho).trace().real();
                            }});
        } else if (tok == "purity") {
            cols.push_back({tok, [](const Mat& rho) { return (rho * rho).trace().real(); }});
        } else {
            throw ValidationError("observables", "unknown observable '" + tok + "'");
        }
    }
    if (cols.empty()) throw ValidationError("observables", "no observables requested");
    (void)dim;
    return cols;
}

double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// Run independent row jobs on a small pool; first exception wins and rethrows
// on the calling thread after join.
void parallel_rows(int n_rows, int n_threads,
                   const std::function<void(int)>& job) {
    if (n_threads <= 1 || n_rows <= 1) {
        for (int i = 0; i < n_rows; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n_rows) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(n_threads, n_rows);
    pool.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// 1/e dephasing rates (sigma_x from |+x>^n, sigma_y from |+y>^n) of the first
// emitter; NaN marks subradiant traces that never reach the threshold.
std::pair<double, double> quadrature_rates(const ScenarioConfig& cfg,
                                           const std::vector<double>& positions) {
    ScenarioConfig sys = cfg;
    sys.rabi = 0.0;
    const Liouvillian gen = make_generator(sys, positions);
    const auto times = linspace(0.0, cfg.window, cfg.t_samples);
    const auto opts = ode_options(cfg);
    const int n = static_cast<int>(positions.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    auto rate_of = [&](const std::string& init, bool use_x) {
        const Mat rho0 = initial_state_preset(init, n);
        const Trajectory traj = evolve(gen, rho0, times, opts);
        const PolarizationSeries pol = transverse_polarizations(traj, {0});
        const auto rate = dephasing_rate(times, use_x ? pol.sx : pol.sy);
        return rate ? *rate : nan;
    };
    return {rate_of("plus_x", true), rate_of("plus_y", false)};
}

std::string csv_join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    return out;
}

} // namespace

CoefficientSet make_coefficients(const ScenarioConfig& cfg, const std::vector<double>& positions) {
    EmitterArray em;
    em.positions = positions;
    em.omega0 = 1.0;
    CoefficientSet cs = coeffs_1d(em, spec_of(cfg), kK0z, 1.0);
    if (cfg.reservoir == "thermal") cs = as_thermal(cs);
    if (cfg.dipole_dipole == "off") cs = toggle_dipole_dipole(cs);
    return cs;
}

Liouvillian make_generator(const ScenarioConfig& cfg, const std::vector<double>& positions) {
    Liouvillian gen = build_generator(make_coefficients(cfg, positions), spec_of(cfg));
    if (cfg.rabi > 0.0) {
        EmitterArray em;
        em.positions = positions;
        em.omega0 = 1.0;
        DriveSpec drive;
        drive.rabi = cfg.rabi;
        drive.alpha = cfg.alpha;
        gen = add_drive(gen, drive, em, kK0z);
    }
    return gen;
}

namespace {

RunOutput run_coeffs(const ScenarioConfig& cfg, const std::string& out_dir) {
    RunOutput out;
    const CoefficientSet cs = make_coefficients(cfg, cfg.positions);
    const int n = static_cast<int>(cfg.positions.size());

    std::string csv = config_comment_block(cfg);
    csv += "# N_photon = " + fmt(cs.N_photon) + "\n";
    csv += "# M = " + fmt(cs.M_mag) + "\n";
    csv += "# phase_re = " + fmt(cs.global_phase.real()) + "\n";
    csv += "# phase_im = " + fmt(cs.global_phase.imag()) + "\n";
    csv += "i,j,gamma,lambda,gamma_prime\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            csv += csv_join({std::to_string(i), std::to_string(j), fmt(cs.gamma(i, j)),
                             fmt(cs.lambda(i, j)), fmt(cs.gamma_prime(i, j))}) +
                   "\n";
    write_file(out_dir + "/" + cfg.label + "_coeffs.csv", csv, out.files);
    out.summary = "coefficient matrices for " + std::to_string(n) + " emitter(s)";
    return out;
}

RunOutput run_evolve(const ScenarioConfig& cfg, const std::string& out_dir) {
    RunOutput out;
    const int n = static_cast<int>(cfg.positions.size());
    const auto inits = split_tokens(cfg.initial_state);
    if (inits.empty()) throw ValidationError("initial_state", "no initial state given");
    const auto obs_tokens = split_tokens(cfg.observables);
    const auto times = linspace(0.0, cfg.t_final, cfg.t_samples);
    const auto opts = ode_options(cfg);
    const double rc_center = mean(cfg.positions);

    struct Variant {
        std::string suffix;
        ScenarioConfig cfg;
    };
    std::vector<Variant> variants{{"", cfg}};
    if (cfg.compare_thermal == "on") {
        ScenarioConfig thermal = cfg;
        thermal.reservoir = "thermal";
        variants.push_back({"_thermal", thermal});
    }

    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    for (const auto& variant : variants) {
        const Liouvillian gen = make_generator(variant.cfg, cfg.positions);
        const auto cols = build_observables(obs_tokens, n, gen.coeffs, rc_center);
        for (const auto& init : inits) {
            const Mat rho0 = initial_state_preset(init, n);
            const Trajectory traj = evolve(gen, rho0, times, opts);
            for (const auto& col : cols) {
                std::string name = col.name;
                if (inits.size() > 1) name += "@" + init;
                name += variant.suffix;
                names.push_back(name);
                std::vector<double> vals(times.size());
                for (std::size_t k = 0; k < times.size(); ++k) vals[k] = col.eval(traj.states[k]);
                columns.push_back(std::move(vals));
            }
        }
    }

    std::string csv = config_comment_block(cfg);
    csv += "t," + csv_join(names) + "\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<std::string> cells{fmt(times[k])};
        for (const auto& col : columns) cells.push_back(fmt(col[k]));
        csv += csv_join(cells) + "\n";
    }
    write_file(out_dir + "/" + cfg.label + "_trajectory.csv", csv, out.files);
    out.summary = std::to_string(names.size()) + " trajectory column(s) over " +
                  std::to_string(times.size()) + " samples";
    return out;
}

RunOutput run_steady(const ScenarioConfig& cfg, const std::string& out_dir) {
    RunOutput out;
    const Liouvillian gen = make_generator(cfg, cfg.positions);
    const Mat rho = numeric_steady_state(gen, cfg.kernel_tol);
    const int n = static_cast<int>(cfg.positions.size());

    std::string csv = config_comment_block(cfg);
    csv += "quantity,value\n";
    if (n == 2) {
        const TwoEmitterSteady s = project_two_emitter(rho, gen.coeffs.global_phase);
        csv += "rho_gg," + fmt(s.rho_gg) + "\n";
        csv += "rho_ee," + fmt(s.rho_ee) + "\n";
        csv += "rho_pp," + fmt(s.rho_pp) + "\n";
        csv += "rho_mm," + fmt(s.rho_mm) + "\n";
        csv += "rho_u," + fmt(s.rho_u) + "\n";
        csv += "concurrence," + fmt(concurrence(rho)) + "\n";
    } else {
        for (Eigen::Index k = 0; k < rho.rows(); ++k)
            csv += "pop" + std::to_string(k) + "," + fmt(rho(k, k).real()) + "\n";
    }
    csv += "purity," + fmt((rho * rho).trace().real()) + "\n";
    write_file(out_dir + "/" + cfg.label + "_steady.csv", csv, out.files);
    out.summary = "steady state of " + std::to_string(n) + " emitter(s)";
    return out;
}

RunOutput run_phase_map(const ScenarioConfig& cfg, const std::string& out_dir) {
    RunOutput out;
    const auto N_grid = linspace(cfg.n_min, cfg.n_max, cfg.n_points);
    const auto rc_grid = linspace(cfg.rc_min, cfg.rc_max, cfg.rc_points);
    const PhaseMap map = entanglement_phase_map(N_grid, rc_grid, kK0z);

    std::string csv = config_comment_block(cfg);
    csv += "N,rc_over_lambda0z,concurrence\n";
    for (std::size_t i = 0; i < N_grid.size(); ++i)
        for (std::size_t j = 0; j < rc_grid.size(); ++j)
            csv += csv_join({fmt(N_grid[i]), fmt(rc_grid[j]),
                             fmt(map.conc(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j)))}) +
                   "\n";
    write_file(out_dir + "/" + cfg.label + "_phase_map.csv", csv, out.files);
    out.summary = std::to_string(N_grid.size() * rc_grid.size()) + " phase-map points";
    return out;
}

RunOutput run_sweep(const ScenarioConfig& cfg, const std::string& out_dir) {
    RunOutput out;
    const auto grid = linspace(cfg.sweep_start, cfg.sweep_stop, cfg.sweep_points);
    const int threads = resolve_threads(cfg);

    std::vector<std::string> header;
    std::vector<std::vector<double>> rows(grid.size());

    if (cfg.sweep_key == "vanishing_width") {
        header = {"N", "delta_rc_over_lambda0z"};
        parallel_rows(static_cast<int>(grid.size()), threads, [&](int i) {
            const std::size_t k = static_cast<std::size_t>(i);
            rows[k] = {grid[k], vanishing_width(grid[k], kK0z)};
        });
    } else {
        header = {cfg.sweep_key, "rate_x", "rate_y"};
        parallel_rows(static_cast<int>(grid.size()), threads, [&](int i) {
            const std::size_t k = static_cast<std::size_t>(i);
            std::vector<double> positions;
            if (cfg.sweep_key == "delta") {
                positions = {grid[k]};
            } else if (cfg.sweep_key == "r12") {
                positions = {cfg.rc - grid[k] / 2.0, cfg.rc + grid[k] / 2.0};
            } else { // rc
                const int m = cfg.sweep_emitters;
                for (int e = 0; e < m; ++e)
                    positions.push_back(grid[k] + (e - (m - 1) / 2.0) * cfg.r12);
            }
            const auto [rx, ry] = quadrature_rates(cfg, positions);
            rows[k] = {grid[k], rx, ry};
        });
    }

    std::string csv = config_comment_block(cfg);
    csv += csv_join(header) + "\n";
    for (const auto& row : rows) {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (double v : row) cells.push_back(fmt(v));
        csv += csv_join(cells) + "\n";
    }
    write_file(out_dir + "/" + cfg.label + "_sweep.csv", csv, out.files);
    out.summary = "swept " + cfg.sweep_key + " over " + std::to_string(grid.size()) + " points";
    return out;
}

RunOutput run_spectrum(const ScenarioConfig& cfg, const std::string& out_dir) {
    RunOutput out;
    const auto opts = ode_options(cfg);
    const auto tau = linspace(0.0, cfg.horizon, cfg.tau_samples);
    const auto omega = linspace(cfg.omega_min, cfg.omega_max, cfg.omega_points);

    auto one_spectrum = [&](const ScenarioConfig& sys) {
        const Liouvillian gen = make_generator(sys, sys.positions);
        const SteadyForSpectrum ss = steady_for_spectrum(gen, sys.kernel_tol, sys.settle_time, opts);
        const CorrelationSeries corr = regression_correlation(gen, ss.rho, tau, opts);
        SpectrumResult spec = power_spectrum(corr, omega, sys.floor_tol);
        return std::tuple<SpectrumResult, bool, double>{std::move(spec), ss.via_evolution,
                                                        fwhm_about(corr, 0.0)};
    };

    auto [spec, via_evolution, central_fwhm] = one_spectrum(cfg);

    std::vector<double> uncoupled;
    if (cfg.compare_uncoupled == "on") {
        ScenarioConfig indep = cfg;
        indep.dipole_dipole = "off";
        auto [spec2, via2, fwhm2] = one_spectrum(indep);
        (void)via2;
        (void)fwhm2;
        uncoupled = std::move(spec2.intensity);
    }

    std::string csv = config_comment_block(cfg);
    csv += uncoupled.empty() ? "omega_minus_omega0,intensity\n"
                             : "omega_minus_omega0,intensity,intensity_uncoupled\n";
    for (std::size_t k = 0; k < omega.size(); ++k) {
        std::vector<std::string> cells{fmt(omega[k]), fmt(spec.intensity[k])};
        if (!uncoupled.empty()) cells.push_back(fmt(uncoupled[k]));
        csv += csv_join(cells) + "\n";
    }
    write_file(out_dir + "/" + cfg.label + "_spectrum.csv", csv, out.files);

    nlohmann::json meta;
    meta["label"] = cfg.label;
    meta["positions"] = cfg.positions;
    meta["r"] = cfg.r;
    meta["theta"] = cfg.theta;
    meta["R"] = cfg.R;
    meta["rabi"] = cfg.rabi;
    meta["alpha"] = cfg.alpha;
    meta["reservoir"] = cfg.reservoir;
    meta["direction"] = cfg.direction;
    meta["dipole_dipole"] = cfg.dipole_dipole;
    meta["horizon"] = cfg.horizon;
    meta["tau_samples"] = cfg.tau_samples;
    meta["omega_min"] = cfg.omega_min;
    meta["omega_max"] = cfg.omega_max;
    meta["omega_points"] = cfg.omega_points;
    meta["floor_tol"] = cfg.floor_tol;
    meta["steady_via_evolution"] = via_evolution;
    meta["elastic_weight"] = spec.elastic_weight;
    meta["normalization"] = spec.norm;
    meta["central_fwhm"] = central_fwhm;
    write_file(out_dir + "/" + cfg.label + "_spectrum_meta.json", meta.dump(2) + "\n", out.files);

    out.summary = "spectrum over " + std::to_string(omega.size()) + " detunings" +
                  (via_evolution ? " (steady state via long-time evolution)" : "");
    return out;
}

} // namespace

RunOutput run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
    validate(cfg);
    std::filesystem::create_directories(out_dir);

    RunOutput out;
    switch (cfg.scenario) {
        case Scenario::Coeffs: out = run_coeffs(cfg, out_dir); break;
        case Scenario::Evolve: out = run_evolve(cfg, out_dir); break;
        case Scenario::Steady: out = run_steady(cfg, out_dir); break;
        case Scenario::PhaseMap: out = run_phase_map(cfg, out_dir); break;
        case Scenario::Spectrum: out = run_spectrum(cfg, out_dir); break;
        case Scenario::Sweep: out = run_sweep(cfg, out_dir); break;
        case Scenario::Unset: throw ValidationError("scenario", "scenario is required");
    }
    write_file(out_dir + "/" + cfg.label + "_config.txt", emit_config(cfg), out.files);
    return out;
}

} // namespace sqwg
