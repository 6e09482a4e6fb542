#pragma once

#include "sqwg/errors.hpp"
#include "sqwg/operators.hpp"

#include <vector>

namespace sqwg {

enum class Direction { Bidirectional, Unidirectional };

// Squeezed reservoir description. The two squeezing sources sit at -R and +R;
// all emitter coordinates are displacements from their midpoint.
struct SqueezingSpec {
    double r = 0.0;     // squeezing degree, dimensionless >= 0
    double theta = 0.0; // squeezing phase, rad
    double R = 0.0;     // source half-separation, length units
    Direction direction = Direction::Bidirectional;
};

struct EmitterArray {
    std::vector<double> positions; // axial coordinates, length units
    double omega0 = 0.0;           // shared transition frequency; dipole fixed along y
};

inline constexpr int kMaxEmitters = 6;

struct Moments {
    double N;   // sinh^2 r
    double M;   // sinh r cosh r
    cplx phase; // e^{i theta} e^{2 i k0z R}
};

Moments squeezing_moments(const SqueezingSpec& spec, double k0z);

// Collective coefficient matrices. gamma/lambda depend only on separations,
// gamma_prime only on pair center-of-mass positions. All real symmetric; the
// e^{2 i k R} source phase is carried once in global_phase.
struct CoefficientSet {
    Eigen::MatrixXd gamma;       // one-photon decay rates
    Eigen::MatrixXd lambda;      // dipole-dipole shifts (diagonal unused)
    Eigen::MatrixXd gamma_prime; // two-photon (squeezing) rates
    double N_photon = 0.0;
    double M_mag = 0.0;
    cplx global_phase{1.0, 0.0};
};

CoefficientSet coeffs_1d(const EmitterArray& emitters, const SqueezingSpec& spec, double k0z,
                         double gamma1d);

// Free-space (3D) coefficients for a collinear array with y dipoles: the
// separation axis is orthogonal to the dipole, alpha = pi/2 for every pair.
CoefficientSet coeffs_3d(const EmitterArray& emitters, const SqueezingSpec& spec, double k0,
                         double gamma0);

// F(x) of the free-space pair coefficients; alpha is the angle between the
// separation vector and the dipole axis. Continuous at x = 0 with F(0) = 1.
double vacuum_F(double x, double alpha);

// Bracket of the free-space dipole-dipole shift, in units of gamma0:
// (3/4)[-sin^2(a) cos x / x + (1-3cos^2(a))(sin x / x^2 + cos x / x^3)].
double vacuum_Lambda(double x, double alpha);

// Zero the off-diagonal entries of all three matrices (emitter-emitter
// coupling off), keeping the diagonals.
CoefficientSet toggle_dipole_dipole(const CoefficientSet& coeffs);

// Same N but M = 0: thermal reservoir with the matching photon number.
CoefficientSet as_thermal(const CoefficientSet& coeffs);

} // namespace sqwg
