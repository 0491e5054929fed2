#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "floquet/errors.hpp"
#include "floquet/quantum_core.hpp"

namespace floquet::ode {

// Embedded Cash-Karp 4(5) pair with elementary step control. The drive
// envelopes are piecewise constant, so callers integrate segment by segment
// and never step across an envelope jump.

struct Options {
    double reltol = 1e-9;
    double abstol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double min_step = 1e-14;
};

using Rhs = std::function<ComplexVector(double, const ComplexVector&)>;

inline ComplexVector integrate_segment(const Rhs& f, ComplexVector y, double t0, double t1,
                                       const Options& opt) {
    static constexpr double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
    static constexpr double b21 = 1.0 / 5;
    static constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
    static constexpr double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
    static constexpr double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
    static constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                            b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
    static constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                            c6 = 512.0 / 1771;
    static constexpr double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                            d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336,
                            d6 = c6 - 1.0 / 4;

    if (t1 <= t0) return y;
    double t = t0;
    double h_ctrl = std::min(opt.max_step, t1 - t0);  // error-controlled step
    while (t1 - t > 1e-14 * (std::abs(t1) + 1.0)) {
        const double h = std::min(h_ctrl, t1 - t);
        const ComplexVector k1 = f(t, y);
        const ComplexVector k2 = f(t + a2 * h, y + h * (b21 * k1));
        const ComplexVector k3 = f(t + a3 * h, y + h * (b31 * k1 + b32 * k2));
        const ComplexVector k4 = f(t + a4 * h, y + h * (b41 * k1 + b42 * k2 + b43 * k3));
        const ComplexVector k5 =
            f(t + a5 * h, y + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4));
        const ComplexVector k6 =
            f(t + a6 * h, y + h * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5));

        const ComplexVector y5 = y + h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
        const ComplexVector err = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);

        const double scale = opt.abstol + opt.reltol * std::max(y.norm(), y5.norm());
        const double err_ratio = err.norm() / scale;
        if (err_ratio <= 1.0) {
            t += h;
            y = y5;
            h_ctrl = h * std::min(5.0, 0.9 * std::pow(std::max(err_ratio, 1e-16), -0.2));
            h_ctrl = std::min(h_ctrl, opt.max_step);
        } else {
            h_ctrl = h * std::max(0.1, 0.9 * std::pow(err_ratio, -0.25));
            if (h_ctrl < opt.min_step) {
                throw StiffnessError("ode: step size underflow");
            }
        }
    }
    return y;
}

}  // namespace floquet::ode
