#include "sqwg/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace sqwg {

void validate_density_matrix(const Mat& rho, double herm_tol, double trace_tol, double eig_tol) {
    if (rho.rows() != rho.cols()) throw NonPhysicalState("density matrix not square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw NonPhysicalState("density matrix not Hermitian");
    if (std::abs(rho.trace() - 1.0) > trace_tol)
        throw NonPhysicalState("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()));
    if (es.eigenvalues().minCoeff() < -eig_tol)
        throw NonPhysicalState("density matrix has a negative eigenvalue");
}

Trajectory evolve(const Liouvillian& gen, const Mat& rho0, const std::vector<double>& times,
                  const OdeOptions& opts) {
    if (rho0.rows() * rho0.cols() != gen.dim())
        throw DimensionMismatch("state dimension does not match the generator");
    Trajectory traj;
    traj.times = times;
    traj.states.resize(times.size());
    propagate_grid(gen.matrix, vec_stack(rho0), times,
                   [&](std::size_t k, const Vec& y) { traj.states[k] = unstack(y); }, opts);
    return traj;
}

Mat initial_state_preset(const std::string& name, int n_emitters) {
    const int dim = 1 << n_emitters;
    if (name == "mixed") return Mat::Identity(dim, dim) / double(dim);
    if (name == "bell_plus" || name == "bell_minus") {
        if (n_emitters != 2) throw ValidationError("initial_state", "Bell presets need 2 emitters");
        Vec psi = Vec::Zero(4);
        psi(1) = 1.0 / std::sqrt(2.0);                            // |ge>
        psi(2) = (name == "bell_plus" ? 1.0 : -1.0) / std::sqrt(2.0); // |eg>
        return psi * psi.adjoint();
    }
    Eigen::Vector2cd single;
    if (name == "plus_x")
        single << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    else if (name == "plus_y") // <sigma_y> = +1 under sigma_y = -i(s^+ - s^-)
        single << 1.0 / std::sqrt(2.0), cplx(0.0, -1.0) / std::sqrt(2.0);
    else if (name == "gg")
        single << 1.0, 0.0;
    else if (name == "ee")
        single << 0.0, 1.0;
    else
        throw ValidationError("initial_state", "unknown preset '" + name + "'");
    Vec psi = Vec::Ones(1);
    for (int k = 0; k < n_emitters; ++k)
        psi = kron(psi, Mat(single)).col(0).eval();
    return psi * psi.adjoint();
}

PolarizationSeries transverse_polarizations(const Trajectory& traj,
                                            const std::vector<int>& emitter_subset) {
    if (traj.states.empty()) return {};
    const int n = static_cast<int>(std::log2(double(traj.states.front().rows())) + 0.5);
    Mat sp = Mat::Zero(traj.states.front().rows(), traj.states.front().cols());
    for (int i : emitter_subset) sp += site_raise(i, n);
    const Mat sx = sp + sp.adjoint();
    const Mat sy = cplx(0.0, -1.0) * (sp - sp.adjoint());

    PolarizationSeries out;
    out.sx.reserve(traj.states.size());
    out.sy.reserve(traj.states.size());
    for (const auto& rho : traj.states) {
        out.sx.push_back((sx * rho).trace().real());
        out.sy.push_back((sy * rho).trace().real());
    }
    return out;
}

std::optional<double> dephasing_rate(const std::vector<double>& times,
                                     const std::vector<double>& series) {
    if (times.size() != series.size() || times.empty())
        throw DimensionMismatch("times and series lengths differ");
    const double v0 = std::abs(series.front());
    if (v0 == 0.0) throw ZeroInitial("series starts at zero");
    const double target = v0 / std::exp(1.0);
    for (std::size_t k = 1; k < series.size(); ++k) {
        const double prev = std::abs(series[k - 1]);
        const double cur = std::abs(series[k]);
        if (cur < target) {
            const double frac = (prev - target) / (prev - cur);
            const double tstar = times[k - 1] + frac * (times[k] - times[k - 1]);
            return 1.0 / tstar;
        }
    }
    return std::nullopt; // subradiant: never crossed inside the window
}

double fit_exponential_rate(const std::vector<double>& times, const std::vector<double>& series,
                            double floor_frac) {
    if (times.size() != series.size() || times.size() < 2)
        throw DimensionMismatch("need at least two samples to fit");
    const double v0 = std::abs(series.front());
    if (v0 == 0.0) throw ZeroInitial("series starts at zero");
    double st = 0, sy = 0, stt = 0, sty = 0;
    std::size_t m = 0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double v = std::abs(series[k]);
        if (v < floor_frac * v0) break; // stay above the noise/tail floor
        const double ln = std::log(v);
        st += times[k];
        sy += ln;
        stt += times[k] * times[k];
        sty += times[k] * ln;
        ++m;
    }
    if (m < 2) throw ToleranceFailure("too few samples above the fit floor");
    const double denom = double(m) * stt - st * st;
    return -(double(m) * sty - st * sy) / denom;
}

std::pair<double, double> single_emitter_dephasing_eigenvalues(double N, double M, double k0z,
                                                               double delta) {
    const double c = M * std::cos(2.0 * k0z * delta);
    return {N + 0.5 + c, N + 0.5 - c};
}

double quadrature_variance(double delta, double alpha_plus_beta, double N, double M, double k0z) {
    return 0.5 * (N + 0.5 - M * std::cos(2.0 * k0z * delta + alpha_plus_beta));
}

} // namespace sqwg
