#include "sqwg/steady_state.hpp"

#include "sqwg/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace sqwg {

KernelResult steady_kernel(const Liouvillian& gen, double rel_tol) {
    Eigen::BDCSVD<Mat> svd(gen.matrix, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = rel_tol * sv(0);

    KernelResult out;
    for (Eigen::Index k = sv.size() - 1; k >= 0 && sv(k) < cutoff; --k) {
        Mat x = unstack(svd.matrixV().col(k));
        Mat herm = 0.5 * (x + x.adjoint());
        const double tr = herm.trace().real();
        // Traceless kernel directions can occur in degenerate cases; keep raw.
        if (std::abs(tr) > 1e-10) herm /= tr;
        out.basis.push_back(std::move(herm));
        out.singular_values.push_back(sv(k));
    }
    out.unique = out.basis.size() == 1;
    return out;
}

Mat numeric_steady_state(const Liouvillian& gen, double rel_tol) {
    KernelResult k = steady_kernel(gen, rel_tol);
    if (!k.unique)
        throw DegenerateKernel("generator kernel dimension is " + std::to_string(k.basis.size()) +
                                   "; steady state is not unique",
                               static_cast<int>(k.basis.size()));
    return k.basis.front();
}

double TwoEmitterSteady::concurrence() const {
    return std::max(0.0, std::abs(rho_u) - rho_pp - rho_mm);
}

TwoEmitterSteady analytic_two_emitter_steady(double N, double k0z, double rc) {
    if (N < 0.0) throw ValidationError("N", "photon number must be >= 0");
    const double c2 = std::cos(2.0 * k0z * rc);
    const double c4 = std::cos(4.0 * k0z * rc);
    const double denom = 1.0 + 2.0 * N + 2.0 * N * N - 2.0 * N * (1.0 + N) * c4;

    TwoEmitterSteady s{};
    s.rho_ee = N * ((1.0 + N + 2.0 * N * N) - (-1.0 + N + 2.0 * N * N) * c4) /
               (2.0 * (1.0 + 2.0 * N) * denom);
    s.rho_pp = N * (1.0 + N) * std::sin(2.0 * k0z * rc) * std::sin(2.0 * k0z * rc) / denom;
    s.rho_mm = s.rho_pp;
    s.rho_u = -2.0 * std::sqrt(N * (1.0 + N)) * c2 / ((1.0 + 2.0 * N) * denom);
    s.rho_gg = 1.0 - s.rho_ee - s.rho_pp - s.rho_mm;
    return s;
}

TwoEmitterSteady project_two_emitter(const Mat& rho, cplx global_phase) {
    if (rho.rows() != 4) throw DimensionMismatch("two-emitter projection needs a 4x4 state");
    TwoEmitterSteady s{};
    s.rho_gg = rho(0, 0).real();
    s.rho_ee = rho(3, 3).real();
    // |+-> = (|eg> +- |ge>)/sqrt(2); |eg> is index 2, |ge> index 1.
    s.rho_pp = 0.5 * (rho(1, 1) + rho(2, 2) + rho(1, 2) + rho(2, 1)).real();
    s.rho_mm = 0.5 * (rho(1, 1) + rho(2, 2) - rho(1, 2) - rho(2, 1)).real();
    s.rho_u = 2.0 * (std::conj(global_phase) * rho(3, 0)).real();
    return s;
}

std::array<double, 4> thermal_two_emitter_populations(double N) {
    const double z = (1.0 + 2.0 * N) * (1.0 + 2.0 * N);
    return {(1.0 + N) * (1.0 + N) / z, N * N / z, N * (1.0 + N) / z, N * (1.0 + N) / z};
}

double delta_rho(double N, double k0z, double rc) {
    const double c2 = std::cos(2.0 * k0z * rc);
    const double c4 = std::cos(4.0 * k0z * rc);
    const double denom = 1.0 + 2.0 * N + 2.0 * N * N - 2.0 * N * (1.0 + N) * c4;
    return N * (1.0 + N) * c2 * c2 / ((1.0 + 2.0 * N) * (1.0 + 2.0 * N) * denom);
}

Mat noon_limit_state(double N, int n) {
    const double norm = std::sqrt(2.0 * N + 1.0);
    const double sign = (n % 2 == 0) ? -1.0 : 1.0; // (-1)^{n+1}
    Vec psi = Vec::Zero(4);
    psi(0) = std::sqrt(N + 1.0) / norm;
    psi(3) = sign * std::sqrt(N) / norm;
    return psi * psi.adjoint();
}

double concurrence(const Mat& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw DimensionMismatch("concurrence is defined for two qubits");
    // Forgiving thresholds: evolved inputs carry integration error.
    validate_density_matrix(rho, 1e-9, 1e-9, 1e-7);
    Mat yy = Mat::Zero(4, 4); // sigma_y kron sigma_y
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Mat rho_tilde = yy * rho.conjugate() * yy;
    // Eigenvalues of rho * rho_tilde are the squares of the Wootters lambdas.
    Eigen::ComplexEigenSolver<Mat> es(rho * rho_tilde, false);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double fidelity(const Mat& rho, const Vec& psi) {
    if (rho.rows() != psi.size()) throw DimensionMismatch("state and target dimensions differ");
    return (psi.adjoint() * rho * psi)(0, 0).real();
}

PhaseMap entanglement_phase_map(const std::vector<double>& N_grid,
                                const std::vector<double>& rc_grid, double k0z) {
    PhaseMap map;
    map.N_grid = N_grid;
    map.rc_grid = rc_grid;
    map.conc.resize(N_grid.size(), rc_grid.size());
    for (std::size_t i = 0; i < N_grid.size(); ++i)
        for (std::size_t j = 0; j < rc_grid.size(); ++j)
            map.conc(i, j) = analytic_two_emitter_steady(N_grid[i], k0z, rc_grid[j]).concurrence();
    return map;
}

double vanishing_width(double N, double k0z, double tol) {
    if (N <= 0.0) return 0.0;
    const double quarter = 0.25 * (2.0 * std::numbers::pi / k0z); // concurrence period boundary
    auto conc = [&](double rc) { return analytic_two_emitter_steady(N, k0z, rc).concurrence(); };
    // The zero lies strictly inside (0, lambda_0z/8); scan then bisect.
    double lo = 0.0, hi = 0.5 * quarter;
    const int scan = 512;
    for (int k = 1; k <= scan; ++k) {
        const double rc = 0.5 * quarter * double(k) / scan;
        if (conc(rc) <= 0.0) {
            hi = rc;
            lo = 0.5 * quarter * double(k - 1) / scan;
            break;
        }
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (conc(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace sqwg
