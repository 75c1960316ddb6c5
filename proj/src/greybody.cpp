#include "scatterbound/greybody.hpp"

#include <cmath>

namespace scatterbound {

namespace {

double sech2_of(double x) {
    const double c = std::cosh(x);
    if (!std::isfinite(c)) return 0.0;
    return 1.0 / (c * c);
}

double rw_derivative(const GreybodyQuery& q, double r) {
    const double m = q.m;
    const double l2 = q.ell * (q.ell + 1.0);
    const double s2 = 1.0 - q.s * q.s;
    const double f = 1.0 - 2.0 * m / r;
    const double g = l2 / (r * r) + 2.0 * m * s2 / (r * r * r);
    const double gp = -2.0 * l2 / (r * r * r) - 6.0 * m * s2 / (r * r * r * r);
    return (2.0 * m / (r * r)) * g + f * gp;
}

} // namespace

double regge_wheeler_potential(const GreybodyQuery& q, double r) {
    q.validate();
    if (r <= 2.0 * q.m) throw InsideHorizon("regge_wheeler_potential: r <= 2m");
    const double f = 1.0 - 2.0 * q.m / r;
    return f * (q.ell * (q.ell + 1.0) / (r * r) +
                2.0 * q.m * (1.0 - q.s * q.s) / (r * r * r));
}

double tortoise(double r, double m) {
    if (r <= 2.0 * m) throw InsideHorizon("tortoise: r <= 2m");
    return r + 2.0 * m * std::log((r - 2.0 * m) / (2.0 * m));
}

double lambert_w0(double x) {
    if (x < 0.0) throw DomainError("lambert_w0: requires x >= 0");
    if (x == 0.0) return 0.0;
    // initial guess: series for small x, log asymptotics otherwise
    double w;
    if (x < 1.0) {
        w = x * (1.0 - x + 1.5 * x * x);
    } else {
        const double l = std::log(x);
        const double ll = std::log(std::max(l, 1e-9));
        w = (l > 3.0) ? l - ll + ll / l : 0.5 * l + 0.5;
    }
    for (int it = 0; it < 60; ++it) {
        const double e = std::exp(w);
        const double f = w * e - x;
        const double d1 = e * (w + 1.0);
        const double step = f / (d1 - 0.5 * f * (w + 2.0) / (w + 1.0)); // Halley
        w -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(w))) break;
    }
    return w;
}

double lambert_w0_of_exp(double z) {
    // W(e^z): for moderate z go through the direct evaluation; for large z solve
    // W + ln W = z by Newton from the asymptotic seed z - ln z.
    if (z < 600.0) return lambert_w0(std::exp(z));
    double w = z - std::log(z);
    for (int it = 0; it < 60; ++it) {
        const double f = w + std::log(w) - z;
        const double step = f / (1.0 + 1.0 / w);
        w -= step;
        if (std::abs(step) <= 1e-16 * std::abs(w)) break;
    }
    return w;
}

double radius_from_tortoise(double r_star, double m) {
    const double z = (r_star - 2.0 * m) / (2.0 * m);
    return 2.0 * m * (1.0 + lambert_w0_of_exp(z));
}

RwPeak rw_peak(const GreybodyQuery& q) {
    q.validate();
    const double m = q.m;
    if (q.s == 1) {
        return {3.0 * m, q.ell * (q.ell + 1.0) / (27.0 * m * m)};
    }
    if (q.s == 0 && q.ell == 0) {
        return {8.0 * m / 3.0, 27.0 / (1024.0 * m * m)};
    }
    // unique interior peak: 2048-point scan on (2m, 20m), then derivative bisection
    const int n = 2048;
    double best_r = 3.0 * m, best_v = -1.0;
    const double lo = 2.0 * m * (1.0 + 1e-9), hi = 20.0 * m;
    for (int i = 0; i <= n; ++i) {
        const double r = lo + (hi - lo) * i / n;
        const double v = regge_wheeler_potential(q, r);
        if (v > best_v) {
            best_v = v;
            best_r = r;
        }
    }
    double a = std::max(lo, best_r - (hi - lo) / n);
    double b = std::min(hi, best_r + (hi - lo) / n);
    double fa = rw_derivative(q, a);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * m; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = rw_derivative(q, mid);
        if ((fa > 0.0) == (fm > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    const double r_pk = 0.5 * (a + b);
    return {r_pk, regge_wheeler_potential(q, r_pk)};
}

BoundResult greybody_bound_1(const GreybodyQuery& q) {
    q.validate();
    const double arg =
        ((q.ell + 1.0) * (q.ell + 1.0) + (q.ell * q.ell - q.s * q.s)) / (8.0 * q.omega * q.m);
    BoundResult r;
    r.kind = BoundKind::LowerT;
    r.bound_id = "greybody-1";
    r.integral = arg;
    r.value = sech2_of(arg);
    return r;
}

BoundResult greybody_bound_2(const GreybodyQuery& q) {
    q.validate();
    const RwPeak pk = rw_peak(q);
    const double w2 = q.omega * q.omega;
    BoundResult r;
    r.kind = BoundKind::LowerT;
    r.bound_id = "greybody-2";
    if (w2 <= pk.v_peak) {
        r.valid = false;
        r.reason = "fails once omega^2 <= V_peak";
        r.value = 0.0;
        return r;
    }
    const double ratio = pk.v_peak / (2.0 * w2 - pk.v_peak);
    r.value = 1.0 - ratio * ratio;
    r.integral = std::acosh(1.0 / std::sqrt(std::max(1e-300, r.value)));
    return r;
}

ScatteringResult greybody_numeric(const GreybodyQuery& q, const SolverConfig& cfg,
                                  GreybodyWindow* window_out) {
    q.validate();
    const double m = q.m, w = q.omega;
    const double w2 = w * w;

    // left window: V dies exponentially toward the horizon
    double rs_left = tortoise(3.0 * m, m);
    while (regge_wheeler_potential(q, radius_from_tortoise(rs_left, m)) > 1e-12 * w2)
        rs_left -= m;

    // right window: truncated-tail Born remainder A/(4 w^2 R^2) <= 1e-8 for the
    // l >= 1 Coulomb-like tail, or the 2m/r^3 analogue at l = 0
    double rs_right;
    const double l2 = q.ell * (q.ell + 1.0);
    if (q.ell >= 1) {
        rs_right = std::sqrt(l2 / (4.0 * w2 * 1e-8));
    } else {
        rs_right = std::cbrt(2.0 * m * std::abs(1.0 - q.s * q.s) / (4.0 * w2 * 1e-8) + 1.0);
    }
    rs_right = std::max(rs_right, tortoise(10.0 * m, m));
    if (window_out) *window_out = {rs_left, rs_right};

    auto k2 = [q, m, w2](double rs) {
        return w2 - regge_wheeler_potential(q, radius_from_tortoise(rs, m));
    };
    Dispersion d = dispersion_from_k2(k2, w, w, rs_left, rs_right);
    return solve_scattering(d, {}, cfg);
}

} // namespace scatterbound
