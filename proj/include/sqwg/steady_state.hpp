#pragma once

#include "sqwg/liouvillian.hpp"

#include <array>
#include <vector>

namespace sqwg {

struct KernelResult {
    std::vector<Mat> basis;      // Hermitian, unit-trace where normalizable
    std::vector<double> singular_values;
    bool unique = false;
};

// Null space of the generator via SVD; singular values below rel_tol times
// the largest one count as zero.
KernelResult steady_kernel(const Liouvillian& gen, double rel_tol = 1e-9);

// Unique steady state; throws DegenerateKernel when the kernel dimension
// differs from one (the basis is available through steady_kernel).
Mat numeric_steady_state(const Liouvillian& gen, double rel_tol = 1e-9);

// Two-emitter steady state in the {gg, ee, +, -} population picture with the
// real coherence rho_u = e^{-2ikR}<ee|rho|gg> + c.c.
struct TwoEmitterSteady {
    double rho_gg, rho_ee, rho_pp, rho_mm, rho_u;
    [[nodiscard]] double concurrence() const; // max{0, |rho_u| - rho_pp - rho_mm}
};

// Closed-form squeezed-vacuum steady state; depends on the pair center of
// mass r_c only, not on the separation.
TwoEmitterSteady analytic_two_emitter_steady(double N, double k0z, double rc);

// Project a numeric 4x4 state onto the TwoEmitterSteady variables.
TwoEmitterSteady project_two_emitter(const Mat& rho, cplx global_phase);

// Thermal (M = 0) populations {gg, ee, ++, --}: Boltzmann weights in N.
std::array<double, 4> thermal_two_emitter_populations(double N);

// Population shift of rho_ee relative to the thermal value (rho_++ shifts by
// the negative of it).
double delta_rho(double N, double k0z, double rc);

// Pure NOON-limit state (sqrt(N+1)|gg> + (-1)^{n+1} sqrt(N)|ee>)/sqrt(2N+1)
// reached at r_c = n lambda_0z / 4.
Mat noon_limit_state(double N, int n);

// Wootters concurrence of a two-qubit state.
double concurrence(const Mat& rho);

// <psi|rho|psi> for a pure target.
double fidelity(const Mat& rho, const Vec& psi);

struct PhaseMap {
    std::vector<double> N_grid, rc_grid;
    Eigen::MatrixXd conc; // N rows x rc cols
};

PhaseMap entanglement_phase_map(const std::vector<double>& N_grid,
                                const std::vector<double>& rc_grid, double k0z);

// Distance from r_c = 0 to the first concurrence zero (bisection on the
// analytic steady state); length units of 1/k0z * (2 pi) scale, i.e. pass
// k0z = 2 pi to get lambda_0z units.
double vanishing_width(double N, double k0z, double tol = 1e-10);

} // namespace sqwg
