#include "sqwg/geometry.hpp"

#include <cmath>
#include <numbers>

namespace sqwg {

namespace {
constexpr double kPi = std::numbers::pi;

void check_mode(const ModeIndex& mode) {
    if (mode.m < 0 || mode.n < 0 || (mode.m == 0 && mode.n == 0))
        throw UnsupportedMode("mode indices (m,n) must be non-negative and not both zero");
    if (mode.family == ModeFamily::TM && (mode.m == 0 || mode.n == 0))
        throw UnsupportedMode("TM modes require m >= 1 and n >= 1");
}
} // namespace

double cutoff_frequency(const WaveguideGeometry& geom, const ModeIndex& mode,
                        const UnitSystem& units) {
    check_mode(mode);
    const double hx = mode.m * kPi / geom.a;
    const double hy = mode.n * kPi / geom.b;
    return units.c * std::sqrt(hx * hx + hy * hy);
}

double axial_wavenumber(double omega0, const WaveguideGeometry& geom, const ModeIndex& mode,
                        const UnitSystem& units, double guard) {
    const double wc = cutoff_frequency(geom, mode, units);
    if (omega0 <= wc * (1.0 + guard))
        throw BelowCutoff("omega0 is at or below the mode cutoff");
    const double k2 = (omega0 / units.c) * (omega0 / units.c) - (wc / units.c) * (wc / units.c);
    return std::sqrt(k2);
}

double enhancement_factor(double lambda0, double lambda0z, const WaveguideGeometry& geom) {
    return 3.0 * lambda0 * lambda0z / (2.0 * kPi * geom.a * geom.b);
}

double gamma_free_space(double mu, double omega0, const UnitSystem& units) {
    const double w3 = omega0 * omega0 * omega0;
    return w3 * mu * mu / (3.0 * kPi * units.eps0 * units.hbar * units.c * units.c * units.c);
}

double gamma_1d(double mu, double omega0, const WaveguideGeometry& geom, const UnitSystem& units,
                double guard) {
    const double k0z = axial_wavenumber(omega0, geom, ModeIndex{ModeFamily::TE, 1, 0}, units, guard);
    const double S = geom.a * geom.b;
    return 2.0 * mu * mu * omega0 * omega0 /
           (units.hbar * units.eps0 * S * units.c * units.c * k0z);
}

double density_of_states(double nu, const WaveguideGeometry& geom, double L,
                         const UnitSystem& units, double guard) {
    const double kz = axial_wavenumber(nu, geom, ModeIndex{ModeFamily::TE, 1, 0}, units, guard);
    return (L / (kPi * units.c * units.c)) * nu / kz;
}

} // namespace sqwg
