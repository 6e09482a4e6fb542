#include "sqwg/liouvillian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace sqwg {

namespace {

void check_square(const CoefficientSet& coeffs) {
    const auto n = coeffs.gamma.rows();
    if (coeffs.gamma.cols() != n || coeffs.lambda.rows() != n || coeffs.lambda.cols() != n ||
        coeffs.gamma_prime.rows() != n || coeffs.gamma_prime.cols() != n)
        throw DimensionMismatch("coefficient matrices must share one square dimension");
}

// rho A + A rho - 2 B rho C as a superoperator.
Mat anticomm_minus_sandwich(const Mat& a, const Mat& b, const Mat& c) {
    return sup_right(a) + sup_left(a) - 2.0 * sup_two_sided(b, c);
}

} // namespace

Mat hamiltonian_part(const CoefficientSet& coeffs) {
    check_square(coeffs);
    const int n = static_cast<int>(coeffs.gamma.rows());
    const int dim = 1 << n;
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) h += coeffs.lambda(i, j) * site_raise(i, n) * site_lower(j, n);
    const cplx mi(0.0, -1.0);
    return mi * (sup_left(h) - sup_right(h));
}

Mat dissipative_part(const CoefficientSet& coeffs, const SqueezingSpec& spec) {
    check_square(coeffs);
    const int n = static_cast<int>(coeffs.gamma.rows());
    const int dim = 1 << n;
    const int sdim = dim * dim;
    const double N = coeffs.N_photon;
    const double M = coeffs.M_mag;
    const cplx phi = coeffs.global_phase * std::polar(1.0, -spec.theta);

    Mat L = Mat::Zero(sdim, sdim);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Mat sp_i = site_raise(i, n), sm_i = site_lower(i, n);
            const Mat sp_j = site_raise(j, n), sm_j = site_lower(j, n);
            L -= 0.5 * coeffs.gamma(i, j) * (1.0 + N) *
                 anticomm_minus_sandwich(sp_i * sm_j, sm_j, sp_i);
            L -= 0.5 * coeffs.gamma(i, j) * N *
                 anticomm_minus_sandwich(sm_i * sp_j, sp_j, sm_i);
            if (M != 0.0) {
                L -= 0.5 * coeffs.gamma_prime(i, j) * M *
                     (phi * anticomm_minus_sandwich(sp_i * sp_j, sp_j, sp_i) +
                      std::conj(phi) * anticomm_minus_sandwich(sm_i * sm_j, sm_j, sm_i));
            }
        }
    }
    return L;
}

Liouvillian build_generator(const CoefficientSet& coeffs, const SqueezingSpec& spec) {
    Liouvillian gen;
    gen.n_emitters = static_cast<int>(coeffs.gamma.rows());
    gen.coeffs = coeffs;
    gen.spec = spec;
    gen.matrix = hamiltonian_part(coeffs) + dissipative_part(coeffs, spec);
    return gen;
}

Liouvillian add_drive(const Liouvillian& gen, const DriveSpec& drive, const EmitterArray& emitters,
                      double k0z) {
    if (static_cast<int>(emitters.positions.size()) != gen.n_emitters)
        throw DimensionMismatch("drive emitter count differs from the generator's");
    const int n = gen.n_emitters;
    const int dim = 1 << n;
    Mat v = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        const cplx amp = 0.5 * drive.rabi * std::polar(1.0, -drive.alpha) *
                         std::polar(1.0, -k0z * emitters.positions[i]);
        v += amp * site_lower(i, n);
    }
    v = (v + v.adjoint()).eval();

    Liouvillian out = gen;
    const cplx mi(0.0, -1.0);
    out.matrix += mi * (sup_left(v) - sup_right(v));
    out.drive = drive;
    out.has_drive = true;
    return out;
}

HMatrix h_matrix(const CoefficientSet& coeffs, const SqueezingSpec& spec) {
    check_square(coeffs);
    const int n = static_cast<int>(coeffs.gamma.rows());
    HMatrix h;
    h.n_emitters = n;
    h.phase = coeffs.global_phase * std::polar(1.0, -spec.theta);
    h.entries.resize(2 * n, 2 * n);
    h.entries.topLeftCorner(n, n) = coeffs.N_photon * coeffs.gamma;
    h.entries.bottomRightCorner(n, n) = (1.0 + coeffs.N_photon) * coeffs.gamma;
    h.entries.topRightCorner(n, n) = coeffs.M_mag * coeffs.gamma_prime;
    h.entries.bottomLeftCorner(n, n) = coeffs.M_mag * coeffs.gamma_prime;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.entries);
    h.eigenvalues = es.eigenvalues();
    return h;
}

std::array<double, 4> zeta_closed_form(const CoefficientSet& coeffs) {
    if (coeffs.gamma.rows() != 2)
        throw DimensionMismatch("closed-form rates exist for two emitters only");
    const double g11 = coeffs.gamma(0, 0), g12 = coeffs.gamma(0, 1);
    const double p11 = coeffs.gamma_prime(0, 0), p12 = coeffs.gamma_prime(0, 1);
    const double N = coeffs.N_photon;
    const double cosh2r = 1.0 + 2.0 * N; // sinh^2 + cosh^2
    const double m2 = N * (1.0 + N);     // M^2 for pure squeezing
    const double dm = std::sqrt((g11 - g12) * (g11 - g12) + 4.0 * m2 * (p11 - p12) * (p11 - p12));
    const double dp = std::sqrt((g11 + g12) * (g11 + g12) + 4.0 * m2 * (p11 + p12) * (p11 + p12));
    return {0.5 * ((g11 - g12) * cosh2r - dm), 0.5 * ((g11 - g12) * cosh2r + dm),
            0.5 * ((g11 + g12) * cosh2r - dp), 0.5 * ((g11 + g12) * cosh2r + dp)};
}

std::vector<LindbladTerm> lindblad_diagonalize(const HMatrix& h, double tol) {
    const int n = h.n_emitters;
    const int two_n = 2 * n;
    // Restore the squeezing phase: h_c = D h D^+ with D = diag(e^{i phi/2} I, e^{-i phi/2} I).
    const double half = 0.5 * std::arg(h.phase);
    Vec d(two_n);
    for (int i = 0; i < two_n; ++i)
        d(i) = std::polar(1.0, i < n ? half : -half);
    Mat hc = d.asDiagonal() * h.entries.cast<cplx>() * d.conjugate().asDiagonal();

    Eigen::SelfAdjointEigenSolver<Mat> es(hc);
    std::vector<LindbladTerm> terms;
    terms.reserve(two_n);
    for (int k = 0; k < two_n; ++k) {
        const double rate = es.eigenvalues()(k);
        if (rate < -tol)
            throw NegativeRate("dissipator eigenvalue " + std::to_string(rate) +
                               " below -tolerance; generator is not completely positive");
        Mat jump = Mat::Zero(1 << n, 1 << n);
        for (int m = 0; m < two_n; ++m) {
            const Mat& op = m < n ? site_raise(m, n) : site_lower(m - n, n);
            jump += es.eigenvectors()(m, k) * op;
        }
        terms.push_back({rate, jump});
    }
    return terms;
}

Mat dissipator_from_terms(const std::vector<LindbladTerm>& terms) {
    const auto dim = terms.at(0).jump.rows();
    Mat L = Mat::Zero(dim * dim, dim * dim);
    for (const auto& t : terms) {
        const Mat aa = t.jump.adjoint() * t.jump;
        L += t.rate * (sup_two_sided(t.jump, t.jump.adjoint()) -
                       0.5 * sup_left(aa) - 0.5 * sup_right(aa));
    }
    return L;
}

namespace {
constexpr char kMagic[8] = {'S', 'Q', 'W', 'G', 'L', 'I', 'O', '1'};
}

void dump_liouvillian(const std::string& path, const Liouvillian& gen) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("path", "cannot open '" + path + "' for writing");
    f.write(kMagic, sizeof(kMagic));
    const auto dim = static_cast<std::uint64_t>(gen.dim());
    f.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
    f.write(reinterpret_cast<const char*>(gen.matrix.data()),
            static_cast<std::streamsize>(sizeof(cplx) * gen.matrix.size()));
    if (!f) throw ValidationError("path", "short write to '" + path + "'");
}

Mat load_liouvillian_matrix(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("path", "cannot open '" + path + "' for reading");
    char magic[8];
    f.read(magic, sizeof(magic));
    if (!f || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ValidationError("path", "'" + path + "' is not a generator dump");
    std::uint64_t dim = 0;
    f.read(reinterpret_cast<char*>(&dim), sizeof(dim));
    Mat m(dim, dim);
    f.read(reinterpret_cast<char*>(m.data()),
           static_cast<std::streamsize>(sizeof(cplx) * m.size()));
    if (!f) throw ValidationError("path", "'" + path + "' truncated");
    return m;
}

} // namespace sqwg
