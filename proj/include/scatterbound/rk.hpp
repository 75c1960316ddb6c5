#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "scatterbound/errors.hpp"

namespace scatterbound {

// Embedded Dormand-Prince 5(4) pair over fixed-size states. The controller takes the
// usual error-per-step acceptance and additionally caps the step at
// cap_factor * sqrt(rel_tol) * |range|; the cap keeps the delivered global error
// superlinear in rel_tol (~ rel_tol^{5/2}).
struct StepControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 1000000;
    double cap_factor = 1.0;
};

// Integrates y' = rhs(x, y) from x0 to x1 (either direction). Components of State are
// double or types with abs(). Throws StiffFailure past max_steps.
template <class State, class Rhs>
void integrate_ode(Rhs&& rhs, double x0, double x1, State& y, const StepControl& ctl,
                   double range_hint = 0.0) {
    if (x0 == x1) return;
    const double dir = (x1 > x0) ? 1.0 : -1.0;
    const double range = (range_hint > 0.0) ? range_hint : std::abs(x1 - x0);
    const double h_cap = ctl.cap_factor * std::sqrt(ctl.rel_tol) * range;

    // Dormand-Prince coefficients
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    using Elem = typename State::value_type;
    auto axpy = [](State& acc, double a, const State& v) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a * v[i];
    };
    auto scaled_err = [&](const State& k1, const State& k3, const State& k4, const State& k5,
                          const State& k6, const State& k7, double h, const State& yy,
                          const State& yn) {
        double m = 0.0;
        for (std::size_t i = 0; i < yy.size(); ++i) {
            const Elem e =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc =
                ctl.abs_tol + ctl.rel_tol * std::max(std::abs(yy[i]), std::abs(yn[i]));
            m = std::max(m, std::abs(e) / sc);
        }
        return m;
    };

    double x = x0;
    double h = dir * std::min(h_cap > 0 ? h_cap : std::abs(x1 - x0), std::abs(x1 - x0));
    State k1 = rhs(x, y);
    long steps = 0;

    while (dir * (x1 - x) > 0.0) {
        if (++steps > ctl.max_steps)
            throw StiffFailure("integrator exceeded its step budget");
        if (dir * (x + h - x1) > 0.0) h = x1 - x;

        State y2 = y;
        axpy(y2, h * a21, k1);
        State k2 = rhs(x + c2 * h, y2);

        State y3 = y;
        axpy(y3, h * a31, k1);
        axpy(y3, h * a32, k2);
        State k3 = rhs(x + c3 * h, y3);

        State y4 = y;
        axpy(y4, h * a41, k1);
        axpy(y4, h * a42, k2);
        axpy(y4, h * a43, k3);
        State k4 = rhs(x + c4 * h, y4);

        State y5 = y;
        axpy(y5, h * a51, k1);
        axpy(y5, h * a52, k2);
        axpy(y5, h * a53, k3);
        axpy(y5, h * a54, k4);
        State k5 = rhs(x + c5 * h, y5);

        State y6 = y;
        axpy(y6, h * a61, k1);
        axpy(y6, h * a62, k2);
        axpy(y6, h * a63, k3);
        axpy(y6, h * a64, k4);
        axpy(y6, h * a65, k5);
        State k6 = rhs(x + h, y6);

        State ynew = y;
        axpy(ynew, h * b1, k1);
        axpy(ynew, h * b3, k3);
        axpy(ynew, h * b4, k4);
        axpy(ynew, h * b5, k5);
        axpy(ynew, h * b6, k6);
        State k7 = rhs(x + h, ynew);

        const double err = scaled_err(k1, k3, k4, k5, k6, k7, std::abs(h), y, ynew);
        if (err <= 1.0) {
            x += h;
            y = ynew;
            k1 = k7; // FSAL
            double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            if (h_cap > 0.0 && std::abs(h) > h_cap) h = dir * h_cap;
        } else {
            double fac = std::max(0.1, 0.9 * std::pow(err, -0.25));
            h *= fac;
            if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x)))
                throw StiffFailure("step size underflow");
        }
    }
}

} // namespace scatterbound
