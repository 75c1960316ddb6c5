#include "scatterbound/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "scatterbound/rk.hpp"

namespace scatterbound {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};
using State2 = std::array<cplx, 2>;
using State4 = std::array<double, 4>;

} // namespace

ScatteringResult solve_scattering(const Dispersion& d, const std::vector<DeltaInterface>& deltas,
                                  const SolverConfig& cfg) {
    cfg.validate();
    const double km = d.k_minus_inf;
    const double kp = d.k_plus_inf;
    if (!(km > 0.0 && kp > 0.0))
        throw BelowAsymptote("solve_scattering: asymptotic wavenumbers must be positive");

    const double xL = d.window_left - cfg.window_padding;
    const double xR = d.window_right + cfg.window_padding;

    StepControl ctl;
    ctl.rel_tol = cfg.rel_tol;
    ctl.abs_tol = cfg.abs_tol;
    ctl.max_steps = cfg.max_steps;

    // pure transmitted wave at the right edge
    State2 y{std::exp(kI * kp * xR), kI * kp * std::exp(kI * kp * xR)};

    // segment boundaries: delta interfaces and k^2 joints, sorted descending (the
    // integration runs right to left and must land on them exactly)
    std::vector<double> events;
    for (const auto& de : deltas)
        if (de.x0 > xL && de.x0 < xR) events.push_back(de.x0);
    for (double b : d.breakpoints)
        if (b > xL && b < xR) events.push_back(b);
    std::sort(events.begin(), events.end(), std::greater<>());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    const double range = xR - xL;
    // k^2 evaluations stay strictly inside the open segment so joints see the
    // correct one-sided value
    auto run_segment = [&](double from, double to) {
        const double lo = std::min(from, to), hi = std::max(from, to);
        double eps = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
        eps = std::min(eps, 0.25 * (hi - lo));
        auto rhs = [&, lo, hi, eps](double x, const State2& s) -> State2 {
            const double xc = std::clamp(x, lo + eps, hi - eps);
            return {s[1], -d.k2(xc) * s[0]};
        };
        integrate_ode(rhs, from, to, y, ctl, range);
    };

    double x_from = xR;
    for (double x0 : events) {
        run_segment(x_from, x0);
        // crossing downward: psi'(x0-) = psi'(x0+) - g psi(x0)
        for (const auto& de : deltas)
            if (de.x0 == x0) y[1] -= de.g * y[0];
        x_from = x0;
    }
    run_segment(x_from, xL);

    const cplx psi = y[0];
    const cplx dpsi = y[1];
    const cplx A = (kI * km * psi + dpsi) * std::exp(-kI * km * xL) / (2.0 * kI * km);
    const cplx B = (kI * km * psi - dpsi) * std::exp(kI * km * xL) / (2.0 * kI * km);

    if (std::abs(A) < 1e-13)
        throw DegenerateMatch("solve_scattering: |A| < 1e-13; tighten tolerances");

    ScatteringResult res;
    res.r = B / A;
    res.t = std::sqrt(kp / km) / A;
    res.T = (kp / km) / std::norm(A);
    res.R = std::norm(res.r);
    res.alpha = A * std::sqrt(km / kp);
    res.beta = res.alpha * res.r;

    // the Wronskian drift measures the integration's flux defect directly
    const double w_left = km * (std::norm(A) - std::norm(B));
    const double defect = std::abs(w_left - kp) / (km * std::norm(A));
    res.err_estimate = std::max(defect, 20.0 * cfg.rel_tol);
    return res;
}

MonodromyMatrix monodromy_matrix(const std::function<double(double)>& omega2, double t_i,
                                 double t_f, double omega0, const SolverConfig& cfg) {
    cfg.validate();
    if (!(omega0 > 0.0)) throw DomainError("monodromy_matrix: omega0 must be positive");

    StepControl ctl;
    ctl.rel_tol = cfg.rel_tol;
    ctl.abs_tol = cfg.abs_tol;
    ctl.max_steps = cfg.max_steps;

    // columns of M evolve under d/dt [phi; pi/omega0] = [[0, w0], [-w^2/w0, 0]]
    auto rhs = [&](double t, const State4& y) -> State4 {
        const double f = -omega2(t) / omega0;
        return {omega0 * y[2], omega0 * y[3], f * y[0], f * y[1]};
    };
    State4 y{1.0, 0.0, 0.0, 1.0}; // (a b; c d) packed row-wise
    integrate_ode(rhs, t_i, t_f, y, ctl, t_f - t_i);

    MonodromyMatrix m;
    m.a = y[0];
    m.b = y[1];
    m.c = y[2];
    m.d = y[3];
    m.t_i = t_i;
    m.t_f = t_f;
    return m;
}

std::pair<double, double> bogoliubov_from_monodromy(const MonodromyMatrix& m) {
    if (std::abs(m.det() - 1.0) > 1e-6)
        throw DomainError("bogoliubov_from_monodromy: |det - 1| > 1e-6");
    const double tr = m.tr_ttt();
    return {0.25 * (tr + 2.0), 0.25 * (tr - 2.0)};
}

double beta_lower_bound(const MonodromyMatrix& m) {
    if (std::abs(m.det() - 1.0) > 1e-6)
        throw DomainError("beta_lower_bound: |det - 1| > 1e-6");
    return std::max(0.0, 0.25 * (std::abs(m.tr_t2()) - 2.0));
}

std::pair<cplx, cplx> evolve_relative(const ReferenceSolution& ref, const Dispersion& d,
                                      const SolverConfig& cfg) {
    cfg.validate();
    // reference flux must be unity
    for (double x : {d.window_left, 0.5 * (d.window_left + d.window_right), d.window_right}) {
        const cplx p0 = ref.psi0(x);
        const cplx dp0 = ref.psi0_prime(x);
        const double flux = std::imag(std::conj(p0) * dp0);
        if (std::abs(flux - 1.0) > 1e-8)
            throw FluxViolation("evolve_relative: reference flux deviates from 1");
    }

    StepControl ctl;
    ctl.rel_tol = cfg.rel_tol;
    ctl.abs_tol = cfg.abs_tol;
    ctl.max_steps = cfg.max_steps;

    auto rhs = [&](double x, const State2& y) -> State2 {
        const double dk2 = d.k2(x) - ref.k0sq(x);
        const cplx p0 = ref.psi0(x);
        const double p0n = std::norm(p0);
        const cplx p0sq = p0 * p0;
        const cplx da = +0.5 * kI * dk2 * (y[0] * p0n + y[1] * std::conj(p0sq));
        const cplx db = -0.5 * kI * dk2 * (y[0] * p0sq + y[1] * p0n);
        return {da, db};
    };

    State2 y{1.0, 0.0};
    const double xL = d.window_left, xR = d.window_right;

    std::vector<double> events;
    for (const auto& de : d.deltas)
        if (de.x0 > xL && de.x0 < xR) events.push_back(de.x0);
    std::sort(events.begin(), events.end());

    double x_from = xL;
    for (double x0 : events) {
        integrate_ode(rhs, x_from, x0, y, ctl, xR - xL);
        // psi continuous, psi' jumps by g psi; re-solve (a, b) from the gauge pair
        // a psi0 + b psi0* = psi, a psi0' + b psi0*' = psi' + g psi.
        for (const auto& de : d.deltas) {
            if (de.x0 != x0) continue;
            const cplx p0 = ref.psi0(x0), dp0 = ref.psi0_prime(x0);
            const cplx psi = y[0] * p0 + y[1] * std::conj(p0);
            const cplx dpsi = y[0] * dp0 + y[1] * std::conj(dp0) + de.g * psi;
            const cplx wr = p0 * std::conj(dp0) - std::conj(p0) * dp0; // = -2i J0 = -2i
            y[0] = (psi * std::conj(dp0) - dpsi * std::conj(p0)) / wr;
            y[1] = (dpsi * p0 - psi * dp0) / wr;
        }
        x_from = x0;
    }
    integrate_ode(rhs, x_from, xR, y, ctl, xR - xL);
    return {y[0], y[1]};
}

} // namespace scatterbound
