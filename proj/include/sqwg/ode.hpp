#pragma once

#include "sqwg/errors.hpp"
#include "sqwg/operators.hpp"

#include <functional>
#include <vector>

namespace sqwg {

struct OdeOptions {
    double atol = 1e-10;
    double rtol = 1e-8;
    double safety = 0.9;
    double max_step_grow = 5.0;
    double max_step_shrink = 0.2;
    double h_init = 0.0; // 0: pick automatically
};

// Adaptive Dormand-Prince 5(4) for the linear autonomous system dy/dt = A y.
// Integrates from t0 to t1 and returns y(t1).
Vec propagate(const Mat& a, Vec y, double t0, double t1, const OdeOptions& opts = {});

// Integrate once through an increasing time grid, invoking the callback with
// (index, y) at every grid point including t = times[0].
void propagate_grid(const Mat& a, const Vec& y0, const std::vector<double>& times,
                    const std::function<void(std::size_t, const Vec&)>& on_sample,
                    const OdeOptions& opts = {});

// Dense matrix exponential (scaling and squaring); the independent cross-check
// propagator used by the test oracles and the regression reference path.
Mat matrix_exponential(const Mat& a);

} // namespace sqwg
