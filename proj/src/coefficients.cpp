#include "sqwg/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace sqwg {

Moments squeezing_moments(const SqueezingSpec& spec, double k0z) {
    if (spec.r < 0.0) throw ValidationError("r", "squeezing degree must be >= 0");
    const double sh = std::sinh(spec.r);
    const double ch = std::cosh(spec.r);
    const cplx phase = std::polar(1.0, spec.theta) * std::polar(1.0, 2.0 * k0z * spec.R);
    return {sh * sh, sh * ch, phase};
}

namespace {

void check_count(const EmitterArray& emitters) {
    const auto n = emitters.positions.size();
    if (n < 1 || n > static_cast<std::size_t>(kMaxEmitters))
        throw ValidationError("positions", "emitter count must be between 1 and 6");
}

} // namespace

CoefficientSet coeffs_1d(const EmitterArray& emitters, const SqueezingSpec& spec, double k0z,
                         double gamma1d) {
    check_count(emitters);
    const auto n = static_cast<int>(emitters.positions.size());
    const Moments mom = squeezing_moments(spec, k0z);

    CoefficientSet out;
    out.gamma.resize(n, n);
    out.lambda.resize(n, n);
    out.gamma_prime.resize(n, n);
    out.N_photon = mom.N;
    out.M_mag = mom.M;
    out.global_phase = std::polar(1.0, 2.0 * k0z * spec.R);

    // Unidirectional pumping keeps a single propagating branch: every entry
    // is half of the two-branch (bidirectional) value.
    const double scale = spec.direction == Direction::Unidirectional ? 0.5 : 1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double rij = std::abs(emitters.positions[i] - emitters.positions[j]);
            const double rsum = emitters.positions[i] + emitters.positions[j];
            out.gamma(i, j) = scale * gamma1d * std::cos(k0z * rij);
            out.lambda(i, j) = scale * 0.5 * gamma1d * std::sin(k0z * rij);
            out.gamma_prime(i, j) = scale * gamma1d * std::cos(k0z * rsum);
        }
    }
    return out;
}

double vacuum_F(double x, double alpha) {
    const double s2 = std::sin(alpha) * std::sin(alpha);
    const double c2 = std::cos(alpha) * std::cos(alpha);
    if (x < 1e-3) {
        // cos x/x^2 - sin x/x^3 cancels catastrophically near 0; 4th-order series.
        const double x2 = x * x;
        const double t1 = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
        const double t2 = -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0;
        return 1.5 * (s2 * t1 + (1.0 - 3.0 * c2) * t2);
    }
    return 1.5 * (s2 * std::sin(x) / x +
                  (1.0 - 3.0 * c2) * (std::cos(x) / (x * x) - std::sin(x) / (x * x * x)));
}

double vacuum_Lambda(double x, double alpha) {
    const double s2 = std::sin(alpha) * std::sin(alpha);
    const double c2 = std::cos(alpha) * std::cos(alpha);
    return 0.75 * (-s2 * std::cos(x) / x +
                   (1.0 - 3.0 * c2) * (std::sin(x) / (x * x) + std::cos(x) / (x * x * x)));
}

CoefficientSet coeffs_3d(const EmitterArray& emitters, const SqueezingSpec& spec, double k0,
                         double gamma0) {
    check_count(emitters);
    const auto n = static_cast<int>(emitters.positions.size());
    const Moments mom = squeezing_moments(spec, k0);
    constexpr double alpha = 1.5707963267948966; // collinear array, y dipoles

    CoefficientSet out;
    out.gamma.resize(n, n);
    out.lambda.resize(n, n);
    out.gamma_prime.resize(n, n);
    out.N_photon = mom.N;
    out.M_mag = mom.M;
    out.global_phase = std::polar(1.0, 2.0 * k0 * spec.R);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double rij = std::abs(emitters.positions[i] - emitters.positions[j]);
            const double rsum = std::abs(emitters.positions[i] + emitters.positions[j]);
            if (i != j && rij == 0.0)
                throw CoincidentEmitters("distinct emitters share a position; the dipole-dipole "
                                         "shift diverges");
            out.gamma(i, j) = gamma0 * vacuum_F(k0 * rij, alpha);
            // Lambda_ii is never consumed (i != j sums only); keep it 0.
            out.lambda(i, j) = i == j ? 0.0 : gamma0 * vacuum_Lambda(k0 * rij, alpha);
            out.gamma_prime(i, j) = gamma0 * vacuum_F(k0 * rsum, alpha);
        }
    }
    return out;
}

CoefficientSet toggle_dipole_dipole(const CoefficientSet& coeffs) {
    CoefficientSet out = coeffs;
    const auto n = coeffs.gamma.rows();
    out.gamma = coeffs.gamma.diagonal().asDiagonal();
    out.lambda = Eigen::MatrixXd::Zero(n, n);
    out.lambda.diagonal() = coeffs.lambda.diagonal();
    out.gamma_prime = coeffs.gamma_prime.diagonal().asDiagonal();
    return out;
}

CoefficientSet as_thermal(const CoefficientSet& coeffs) {
    CoefficientSet out = coeffs;
    out.M_mag = 0.0;
    return out;
}

} // namespace sqwg
