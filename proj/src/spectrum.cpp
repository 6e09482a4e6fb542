#include "sqwg/spectrum.hpp"

#include "sqwg/dynamics.hpp"
#include "sqwg/steady_state.hpp"

#include <cmath>

namespace sqwg {

namespace {

Mat collective_lowering(int n) {
    Mat s = Mat::Zero(1 << n, 1 << n);
    for (int i = 0; i < n; ++i) s += site_lower(i, n);
    return s;
}

cplx coherent_floor(const Mat& rho_ss, const Mat& sm) {
    const cplx sp_ss = (sm.adjoint() * rho_ss).trace();
    const cplx sm_ss = (sm * rho_ss).trace();
    return sp_ss * sm_ss;
}

void check_uniform(const std::vector<double>& tau) {
    if (tau.size() < 2 || tau.front() != 0.0)
        throw ValidationError("tau_grid", "correlation grid must start at 0 with >= 2 samples");
}

} // namespace

Mat driven_steady_state(const Liouvillian& gen, double rel_tol) {
    return numeric_steady_state(gen, rel_tol);
}

SteadyForSpectrum steady_for_spectrum(const Liouvillian& gen, double rel_tol, double settle_time,
                                      const OdeOptions& opts) {
    try {
        return {numeric_steady_state(gen, rel_tol), false};
    } catch (const DegenerateKernel&) {
        // A decoupled (dark) sector makes the kernel degenerate; the physical
        // branch is the one reached from the ground state.
        const Mat rho0 = initial_state_preset("gg", gen.n_emitters);
        Vec y = propagate(gen.matrix, vec_stack(rho0), 0.0, settle_time, opts);
        Mat rho = unstack(y);
        rho = 0.5 * (rho + rho.adjoint()).eval();
        rho /= rho.trace();
        return {rho, true};
    }
}

CorrelationSeries regression_correlation(const Liouvillian& gen, const Mat& rho_ss,
                                         const std::vector<double>& tau_grid,
                                         const OdeOptions& opts) {
    check_uniform(tau_grid);
    const Mat sm = collective_lowering(gen.n_emitters);
    const Mat sp = sm.adjoint();

    CorrelationSeries corr;
    corr.tau = tau_grid;
    corr.values.resize(tau_grid.size());
    corr.floor = coherent_floor(rho_ss, sm);

    propagate_grid(gen.matrix, vec_stack(Mat(sm * rho_ss)), tau_grid,
                   [&](std::size_t k, const Vec& y) {
                       corr.values[k] = (sp * unstack(y)).trace();
                   },
                   opts);
    return corr;
}

CorrelationSeries direct_correlation_expm(const Liouvillian& gen, const Mat& rho_ss,
                                          const std::vector<double>& tau_grid) {
    check_uniform(tau_grid);
    const double dt = tau_grid[1] - tau_grid[0];
    for (std::size_t k = 1; k < tau_grid.size(); ++k)
        if (std::abs(tau_grid[k] - tau_grid[k - 1] - dt) > 1e-12 * std::max(1.0, dt))
            throw ValidationError("tau_grid", "matrix-exponential path needs a uniform grid");

    const Mat sm = collective_lowering(gen.n_emitters);
    const Mat sp = sm.adjoint();
    const Mat step = matrix_exponential(Mat(gen.matrix * dt));

    CorrelationSeries corr;
    corr.tau = tau_grid;
    corr.values.resize(tau_grid.size());
    corr.floor = coherent_floor(rho_ss, sm);

    Vec c = vec_stack(Mat(sm * rho_ss));
    for (std::size_t k = 0; k < tau_grid.size(); ++k) {
        corr.values[k] = (sp * unstack(c)).trace();
        if (k + 1 < tau_grid.size()) c = step * c;
    }
    return corr;
}

double spectrum_value(const CorrelationSeries& corr, double omega) {
    // Trapezoid of Re[(g - g_inf) e^{i omega tau}] over the recorded horizon.
    double acc = 0.0;
    for (std::size_t k = 0; k < corr.tau.size(); ++k) {
        const cplx ge = (corr.values[k] - corr.floor) *
                        std::polar(1.0, omega * corr.tau[k]);
        double w = 1.0;
        if (k == 0 || k + 1 == corr.tau.size()) w = 0.5;
        const double h = k + 1 < corr.tau.size() ? corr.tau[k + 1] - corr.tau[k]
                                                 : corr.tau[k] - corr.tau[k - 1];
        acc += w * h * ge.real();
    }
    return acc;
}

SpectrumResult power_spectrum(const CorrelationSeries& corr, const std::vector<double>& omega_grid,
                              double floor_tol) {
    const double scale = std::abs(corr.values.front() - corr.floor);
    if (scale > 0.0 && std::abs(corr.values.back() - corr.floor) > floor_tol * scale)
        throw HorizonTooShort("correlation has not converged to the coherent floor");

    SpectrumResult out;
    out.omega = omega_grid;
    out.intensity.resize(omega_grid.size());
    out.elastic_weight = std::abs(corr.floor);
    out.norm = spectrum_value(corr, 0.0);
    if (out.norm == 0.0) throw ToleranceFailure("zero intensity at the carrier; cannot normalize");
    for (std::size_t k = 0; k < omega_grid.size(); ++k)
        out.intensity[k] = spectrum_value(corr, omega_grid[k]) / out.norm;
    return out;
}

double fwhm_about(const CorrelationSeries& corr, double center) {
    const double peak = spectrum_value(corr, center);
    const double half = 0.5 * peak;
    // Expand outward until below half, then bisect each flank.
    auto flank = [&](double dir) {
        double step = 1e-4;
        double prev = center;
        double cur = center + dir * step;
        while (spectrum_value(corr, cur) > half) {
            prev = cur;
            step *= 2.0;
            cur = center + dir * step;
            if (step > 1e6) throw ToleranceFailure("half-maximum crossing not found");
        }
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (prev + cur);
            (spectrum_value(corr, mid) > half ? prev : cur) = mid;
        }
        return std::abs(0.5 * (prev + cur) - center);
    };
    return flank(+1.0) + flank(-1.0);
}

} // namespace sqwg
