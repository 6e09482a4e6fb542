#include "sqwg/ode.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace sqwg {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// 5th-order minus embedded 4th-order weights (error estimator).
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Keeps step size and the FSAL derivative alive across output samples.
class Integrator {
public:
    Integrator(const Mat& a, Vec y, double t, const OdeOptions& opts)
        : a_(a), y_(std::move(y)), t_(t), opts_(opts) {
        if (a_.rows() != a_.cols() || a_.rows() != y_.size())
            throw DimensionMismatch("generator and state dimensions differ");
        k1_ = a_ * y_;
        const double anorm = a_.cwiseAbs().rowwise().sum().maxCoeff();
        h_ = opts.h_init > 0.0 ? opts.h_init : (anorm > 0.0 ? 0.1 / anorm : 0.1);
    }

    void advance_to(double t1) {
        if (t1 < t_) throw ValidationError("times", "time grid must be increasing");
        int rejected_in_a_row = 0;
        const double h_floor = 1e-14 * std::max(std::abs(t1), 1.0);
        while (t_ < t1) {
            const double h = std::min(h_, t1 - t_);
            const double err = trial_step(h);
            if (err <= 1.0) {
                t_ += h;
                y_.swap(ynew_);
                k1_.swap(k7_);
                const double grow =
                    err > 0.0 ? opts_.safety * std::pow(err, -0.2) : opts_.max_step_grow;
                h_ = h * std::clamp(grow, opts_.max_step_shrink, opts_.max_step_grow);
                rejected_in_a_row = 0;
            } else {
                h_ = h * std::clamp(opts_.safety * std::pow(err, -0.2), opts_.max_step_shrink, 1.0);
                if (++rejected_in_a_row > 60 || h_ < h_floor)
                    throw ToleranceFailure("step control cannot meet the error budget");
            }
        }
    }

    [[nodiscard]] const Vec& state() const { return y_; }

private:
    double trial_step(double h) {
        k2_ = a_ * (y_ + h * a21 * k1_);
        k3_ = a_ * (y_ + h * (a31 * k1_ + a32 * k2_));
        k4_ = a_ * (y_ + h * (a41 * k1_ + a42 * k2_ + a43 * k3_));
        k5_ = a_ * (y_ + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_));
        k6_ = a_ * (y_ + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_));
        ynew_ = y_ + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
        k7_ = a_ * ynew_;
        double norm2 = 0.0;
        for (Eigen::Index i = 0; i < y_.size(); ++i) {
            const cplx err = h * (e1 * k1_(i) + e3 * k3_(i) + e4 * k4_(i) + e5 * k5_(i) +
                                  e6 * k6_(i) + e7 * k7_(i));
            const double scale =
                opts_.atol + opts_.rtol * std::max(std::abs(y_(i)), std::abs(ynew_(i)));
            const double q = std::abs(err) / scale;
            norm2 += q * q;
        }
        return std::sqrt(norm2 / double(y_.size()));
    }

    const Mat& a_;
    Vec y_, ynew_, k1_, k2_, k3_, k4_, k5_, k6_, k7_;
    double t_;
    double h_;
    OdeOptions opts_;
};

} // namespace

Vec propagate(const Mat& a, Vec y, double t0, double t1, const OdeOptions& opts) {
    if (t1 == t0) return y;
    Integrator integ(a, std::move(y), t0, opts);
    integ.advance_to(t1);
    return integ.state();
}

void propagate_grid(const Mat& a, const Vec& y0, const std::vector<double>& times,
                    const std::function<void(std::size_t, const Vec&)>& on_sample,
                    const OdeOptions& opts) {
    if (times.empty()) return;
    Integrator integ(a, y0, times[0], opts);
    on_sample(0, integ.state());
    for (std::size_t k = 1; k < times.size(); ++k) {
        integ.advance_to(times[k]);
        on_sample(k, integ.state());
    }
}

Mat matrix_exponential(const Mat& a) { return a.exp(); }

} // namespace sqwg
