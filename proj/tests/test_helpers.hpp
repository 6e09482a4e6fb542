#pragma once

// Shared oracle helpers for the unit suites. The superoperator construction
// here works by applying an explicit density-matrix action to every basis
// element and stacking columns by hand: a deliberately different route from
// the library's kronecker-product assembly, so the two can cross-check.

#include "sqwg/coefficients.hpp"
#include "sqwg/operators.hpp"

#include <functional>
#include <random>
#include <vector>

namespace test_helpers {

using sqwg::cplx;
using sqwg::Mat;
using sqwg::Vec;

inline constexpr double kPi = 3.14159265358979323846;

inline Mat superop_from_action(Eigen::Index dim,
                               const std::function<Mat(const Mat&)>& action) {
    Mat L(dim * dim, dim * dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        for (Eigen::Index a = 0; a < dim; ++a) {
            Mat basis_elem = Mat::Zero(dim, dim);
            basis_elem(a, b) = 1.0;
            const Mat image = action(basis_elem);
            for (Eigen::Index j = 0; j < dim; ++j)
                for (Eigen::Index i = 0; i < dim; ++i)
                    L(j * dim + i, b * dim + a) = image(i, j);
        }
    }
    return L;
}

// Master-equation right-hand side written directly in matrix products:
// dipole-dipole commutator, the (1+N) and N one-photon dissipators, and the
// phase-carrying two-photon dissipator pair.
inline Mat master_action(const Mat& rho, const sqwg::CoefficientSet& cs, double theta) {
    const int n = static_cast<int>(cs.gamma.rows());
    const Eigen::Index d = Eigen::Index(1) << n;
    std::vector<Mat> sp(static_cast<std::size_t>(n)), sm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        sp[static_cast<std::size_t>(i)] = sqwg::site_raise(i, n);
        sm[static_cast<std::size_t>(i)] = sqwg::site_lower(i, n);
    }
    const double N = cs.N_photon;
    const double M = cs.M_mag;
    const cplx phi = cs.global_phase * std::polar(1.0, -theta);

    Mat h = Mat::Zero(d, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) h += cs.lambda(i, j) * sp[std::size_t(i)] * sm[std::size_t(j)];

    Mat out = cplx(0.0, -1.0) * (h * rho - rho * h);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Mat& pi = sp[std::size_t(i)];
            const Mat& pj = sp[std::size_t(j)];
            const Mat& mi = sm[std::size_t(i)];
            const Mat& mj = sm[std::size_t(j)];
            out -= 0.5 * cs.gamma(i, j) * (1.0 + N) *
                   (rho * pi * mj + pi * mj * rho - 2.0 * mj * rho * pi);
            out -= 0.5 * cs.gamma(i, j) * N *
                   (rho * mi * pj + mi * pj * rho - 2.0 * pj * rho * mi);
            out -= 0.5 * cs.gamma_prime(i, j) * M *
                   (phi * (rho * pi * pj + pi * pj * rho - 2.0 * pj * rho * pi) +
                    std::conj(phi) * (rho * mi * mj + mi * mj * rho - 2.0 * mj * rho * mi));
        }
    }
    return out;
}

// Corrected five-variable rate system for x = (rho_gg, rho_ee, rho_++, rho_--,
// rho_u) of a symmetric-basis emitter pair at theta = 0. gp/gm are the one-
// photon rates gamma(1 +- cos k r12); the two-photon columns carry the
// center-of-mass factors.
inline Eigen::MatrixXd pair_rate_matrix(double N, double M, double g, double k0z, double r1,
                                        double r2) {
    const double r12 = std::abs(r1 - r2);
    const double rc = 0.5 * (r1 + r2);
    const double gp = g * (1.0 + std::cos(k0z * r12));
    const double gm = g * (1.0 - std::cos(k0z * r12));
    const double g12p = g * std::cos(2.0 * k0z * rc);
    const double gpp = g12p + 0.5 * g * (std::cos(2.0 * k0z * r1) + std::cos(2.0 * k0z * r2));
    const double gpm = g12p - 0.5 * g * (std::cos(2.0 * k0z * r1) + std::cos(2.0 * k0z * r2));

    Eigen::MatrixXd A(5, 5);
    A << -2.0 * N * g, 0.0, (N + 1.0) * gp, (N + 1.0) * gm, -M * g12p,
         0.0, -2.0 * (N + 1.0) * g, N * gp, N * gm, -M * g12p,
         N * gp, (N + 1.0) * gp, -(2.0 * N + 1.0) * gp, 0.0, M * gpp,
         N * gm, (N + 1.0) * gm, 0.0, -(2.0 * N + 1.0) * gm, M * gpm,
         -2.0 * M * g12p, -2.0 * M * g12p, 2.0 * M * gpp, 2.0 * M * gpm, -(2.0 * N + 1.0) * g;
    return A;
}

// Project a two-emitter superoperator onto the five-variable subspace by
// pushing each basis direction through and measuring the five functionals.
inline Eigen::MatrixXd project_pair_rates(const Mat& L, cplx global_phase) {
    Vec gg = Vec::Zero(4), ee = Vec::Zero(4), pl = Vec::Zero(4), mi = Vec::Zero(4);
    gg(0) = 1.0;
    ee(3) = 1.0;
    pl(1) = pl(2) = 1.0 / std::sqrt(2.0);
    mi(1) = -1.0 / std::sqrt(2.0);
    mi(2) = 1.0 / std::sqrt(2.0);

    auto measure = [&](const Mat& rho) {
        Eigen::VectorXd v(5);
        v(0) = (gg.adjoint() * rho * gg).value().real();
        v(1) = (ee.adjoint() * rho * ee).value().real();
        v(2) = (pl.adjoint() * rho * pl).value().real();
        v(3) = (mi.adjoint() * rho * mi).value().real();
        v(4) = 2.0 * (std::conj(global_phase) * (ee.adjoint() * rho * gg).value()).real();
        return v;
    };
    std::vector<Mat> basis{gg * gg.adjoint(), ee * ee.adjoint(), pl * pl.adjoint(),
                           mi * mi.adjoint(),
                           0.5 * (global_phase * ee * gg.adjoint() +
                                  std::conj(global_phase) * gg * ee.adjoint())};
    Eigen::MatrixXd A(5, 5);
    for (int c = 0; c < 5; ++c) {
        const Vec image = L * sqwg::vec_stack(basis[static_cast<std::size_t>(c)]);
        A.col(c) = measure(sqwg::unstack(image));
    }
    return A;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

} // namespace test_helpers
