#pragma once

#include "sqwg/liouvillian.hpp"
#include "sqwg/ode.hpp"

#include <vector>

namespace sqwg {

// Two-time correlation g(tau) = Tr[c(tau) sum_i sigma_i^+] with
// c(0) = (sum_i sigma_i^-) rho_ss, propagated by the same generator.
struct CorrelationSeries {
    std::vector<double> tau;  // uniform grid from 0
    std::vector<cplx> values; // g(tau)
    cplx floor{0.0, 0.0};     // coherent asymptote <s^+>_ss <s^->_ss
};

// Null-space steady state of the driven generator.
Mat driven_steady_state(const Liouvillian& gen, double rel_tol = 1e-9);

// Steady state for spectrum runs: kernel solve, falling back to long-time
// evolution from |g...g> when the kernel is degenerate (dark-state case).
struct SteadyForSpectrum {
    Mat rho;
    bool via_evolution = false;
};
SteadyForSpectrum steady_for_spectrum(const Liouvillian& gen, double rel_tol = 1e-9,
                                      double settle_time = 300.0, const OdeOptions& opts = {});

CorrelationSeries regression_correlation(const Liouvillian& gen, const Mat& rho_ss,
                                         const std::vector<double>& tau_grid,
                                         const OdeOptions& opts = {});

// Independent reference path: step the correlation with one dense matrix
// exponential per grid spacing instead of adaptive integration.
CorrelationSeries direct_correlation_expm(const Liouvillian& gen, const Mat& rho_ss,
                                          const std::vector<double>& tau_grid);

struct SpectrumResult {
    std::vector<double> omega;     // detuning omega - omega0
    std::vector<double> intensity; // normalized so S(omega0) = 1
    double elastic_weight = 0.0;   // |removed coherent floor|
    double norm = 0.0;             // raw S at zero detuning
};

// Finite-horizon cosine/sine transform of g - g(inf) at one detuning.
double spectrum_value(const CorrelationSeries& corr, double omega);

// floor_tol: max allowed |g(T) - g(inf)| relative to |g(0) - g(inf)| before
// the horizon counts as converged.
SpectrumResult power_spectrum(const CorrelationSeries& corr, const std::vector<double>& omega_grid,
                              double floor_tol = 1e-3);

// Full width at half maximum of the feature centered at omega = center,
// bisected on the continuous transform.
double fwhm_about(const CorrelationSeries& corr, double center = 0.0);

// Default processing constants (all overridable through configs).
inline constexpr double kDefaultHorizon = 100.0;
inline constexpr int kDefaultTauSamples = 20000;
inline constexpr double kDefaultOmegaMax = 12.0;
inline constexpr int kDefaultOmegaPoints = 1600;

} // namespace sqwg
