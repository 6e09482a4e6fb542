#pragma once

#include "sqwg/errors.hpp"

namespace sqwg {

// Internal unit system: hbar = eps0 = c = 1 unless overridden. All rates then
// come out in whatever unit omega0 is expressed in.
struct UnitSystem {
    double hbar = 1.0;
    double eps0 = 1.0;
    double c = 1.0;
};

struct WaveguideGeometry {
    double a = 1.0; // transverse width
    double b = 1.0; // transverse height (square cross section by default)
};

enum class ModeFamily { TE, TM };

struct ModeIndex {
    ModeFamily family = ModeFamily::TE;
    int m = 1;
    int n = 0;
};

// Relative guard band around the cutoff; comparisons are strict to keep the
// k_z = 0 singularity out of every downstream formula.
inline constexpr double kCutoffGuard = 1e-9;

// omega_c = c * sqrt((m pi / a)^2 + (n pi / b)^2)
double cutoff_frequency(const WaveguideGeometry& geom, const ModeIndex& mode,
                        const UnitSystem& units = {});

// Positive root k_z of omega^2/c^2 = (m pi/a)^2 + (n pi/b)^2 + k_z^2.
double axial_wavenumber(double omega0, const WaveguideGeometry& geom, const ModeIndex& mode,
                        const UnitSystem& units = {}, double guard = kCutoffGuard);

// eta = 3 lambda0 lambda0z / (2 pi a b); Purcell enhancement of the TE10 channel.
double enhancement_factor(double lambda0, double lambda0z, const WaveguideGeometry& geom);

// Free-space decay rate gamma0 = omega0^3 mu^2 / (3 pi eps0 hbar c^3).
double gamma_free_space(double mu, double omega0, const UnitSystem& units = {});

// TE10 waveguide decay rate gamma_1d = 2 mu^2 omega0^2 / (hbar eps0 S c^2 k0z), S = a b.
double gamma_1d(double mu, double omega0, const WaveguideGeometry& geom,
                const UnitSystem& units = {}, double guard = kCutoffGuard);

// TE10 density of states D(nu) = (L / pi c^2) nu / sqrt((nu/c)^2 - (pi/a)^2).
double density_of_states(double nu, const WaveguideGeometry& geom, double L,
                         const UnitSystem& units = {}, double guard = kCutoffGuard);

} // namespace sqwg
