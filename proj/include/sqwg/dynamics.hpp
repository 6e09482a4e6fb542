#pragma once

#include "sqwg/liouvillian.hpp"
#include "sqwg/ode.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqwg {

struct Trajectory {
    std::vector<double> times;
    std::vector<Mat> states;
};

// Density-matrix validity thresholds.
inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigTol = 1e-9;

void validate_density_matrix(const Mat& rho, double herm_tol = kHermTol,
                             double trace_tol = kTraceTol, double eig_tol = kEigTol);

Trajectory evolve(const Liouvillian& gen, const Mat& rho0, const std::vector<double>& times,
                  const OdeOptions& opts = {});

// Named initial-state presets: plus_x, plus_y, ee, gg, bell_plus, bell_minus,
// mixed. Product states are taken per emitter; Bell presets need 2 emitters.
Mat initial_state_preset(const std::string& name, int n_emitters);

struct PolarizationSeries {
    std::vector<double> sx, sy;
};

// <sigma_x> = <s^+> + <s^->, <sigma_y> = -i(<s^+> - <s^->), summed over subset.
PolarizationSeries transverse_polarizations(const Trajectory& traj,
                                            const std::vector<int>& emitter_subset);

// 1/e-crossing dephasing rate of the |series| envelope (linear interpolation);
// nullopt marks a trace that never crosses inside the window (subradiance).
std::optional<double> dephasing_rate(const std::vector<double>& times,
                                     const std::vector<double>& series);

// Least-squares slope of ln|series| over the samples above floor_frac of the
// initial magnitude; the fit extractor for exponential decays.
double fit_exponential_rate(const std::vector<double>& times, const std::vector<double>& series,
                            double floor_frac = 0.135);

// (N + 1/2 + M cos 2 k0z delta, N + 1/2 - M cos 2 k0z delta), units of gamma_1d.
// At theta = 0 the minus rate belongs to sigma_x and the plus rate to sigma_y.
std::pair<double, double> single_emitter_dephasing_eigenvalues(double N, double M, double k0z,
                                                               double delta);

// Reservoir quadrature variance 1/2 [N + 1/2 - M cos(2 k0z delta + a_plus_b)].
double quadrature_variance(double delta, double alpha_plus_beta, double N, double M, double k0z);

} // namespace sqwg
