#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

namespace sqwg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Basis convention: |g> = index 0, |e> = index 1; emitter 0 is the leftmost
// kron factor, so |e1 e2 ... > has index e1*2^{n-1} + ... + en.

inline Mat sigma_plus() {
    Mat s = Mat::Zero(2, 2);
    s(1, 0) = 1.0; // |e><g|
    return s;
}

inline Mat sigma_minus() {
    Mat s = Mat::Zero(2, 2);
    s(0, 1) = 1.0; // |g><e|
    return s;
}

inline Mat kron(const Mat& a, const Mat& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

// op acting on emitter i out of n, identity elsewhere.
inline Mat site_op(const Mat& op, int i, int n) {
    Mat out = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k)
        out = kron(out, k == i ? op : Mat::Identity(2, 2));
    return out;
}

inline Mat site_raise(int i, int n) { return site_op(sigma_plus(), i, n); }
inline Mat site_lower(int i, int n) { return site_op(sigma_minus(), i, n); }

// Column-stacking vectorization; Eigen stores column-major so this is a copy
// of the raw layout.
inline Vec vec_stack(const Mat& m) {
    return Eigen::Map<const Vec>(m.data(), m.size());
}

inline Mat unstack(const Vec& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
    return Eigen::Map<const Mat>(v.data(), d, d);
}

// Superoperators for rho -> A rho, rho -> rho B, rho -> A rho B under
// column stacking: vec(A rho B) = (B^T kron A) vec(rho).
inline Mat sup_left(const Mat& a) {
    return kron(Mat::Identity(a.rows(), a.cols()), a);
}

inline Mat sup_right(const Mat& b) {
    return kron(b.transpose(), Mat::Identity(b.rows(), b.cols()));
}

inline Mat sup_two_sided(const Mat& a, const Mat& b) {
    return kron(b.transpose(), a);
}

inline Mat random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Mat g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i)
            g(i, j) = cplx(dist(rng), dist(rng));
    return 0.5 * (g + g.adjoint());
}

inline Mat random_density_matrix(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Mat g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i)
            g(i, j) = cplx(dist(rng), dist(rng));
    Mat rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

} // namespace sqwg
