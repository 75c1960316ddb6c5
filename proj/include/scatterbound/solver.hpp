#pragma once

#include <complex>
#include <functional>
#include <utility>

#include "scatterbound/dispersion.hpp"

namespace scatterbound {

struct SolverConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 1000000;
    double window_padding = 0.0;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-2) || !(abs_tol > 0.0 && abs_tol <= 1e-2))
            throw DomainError("SolverConfig: tolerances must lie in (0, 1e-2]");
    }
};

struct ScatteringResult {
    std::complex<double> t, r;
    double T = 0.0, R = 0.0;
    std::complex<double> alpha, beta;
    double err_estimate = 0.0;
};

// Real 2x2 time-ordered-exponential matrix of the (phi, pi/omega0) system.
struct MonodromyMatrix {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    double t_i = 0.0, t_f = 0.0;

    double det() const { return a * d - b * c; }
    double tr_ttt() const { return a * a + b * b + c * c + d * d; } // tr(T T^T)
    double tr_t2() const { return a * a + d * d + 2.0 * b * c; }    // tr(T^2)
};

// Integrates psi'' + k^2 psi = 0 backwards from a pure transmitted wave on the right,
// applying psi' jumps g psi at each delta interface, and decomposes the left boundary
// into incident + reflected plane waves. Flux-normalized outputs.
ScatteringResult solve_scattering(const Dispersion& d, const std::vector<DeltaInterface>& deltas,
                                  const SolverConfig& cfg = {});

// Convenience overload using the dispersion's own interface list.
inline ScatteringResult solve_scattering(const Dispersion& d, const SolverConfig& cfg = {}) {
    return solve_scattering(d, d.deltas, cfg);
}

MonodromyMatrix monodromy_matrix(const std::function<double(double)>& omega2, double t_i,
                                 double t_f, double omega0, const SolverConfig& cfg = {});

// alphaSq = tr(T T^T + I)/4, betaSq = tr(T T^T - I)/4; alphaSq - betaSq = 1 by
// construction.
std::pair<double, double> bogoliubov_from_monodromy(const MonodromyMatrix& m);

// max(0, (|tr T^2| - 2)/4); zero (uninformative) when the eigenvalues are complex.
double beta_lower_bound(const MonodromyMatrix& m);

// Flux-normalized exact solution of a reference problem, evaluable everywhere.
struct ReferenceSolution {
    std::function<std::complex<double>(double)> psi0;
    std::function<std::complex<double>(double)> psi0_prime;
    std::function<double(double)> k0sq;
    std::complex<double> alpha0{1.0, 0.0};
    std::complex<double> beta0{0.0, 0.0};
    double T0 = 1.0;
    double k_minus = 1.0;
    double k_plus = 1.0;
    std::vector<double> breakpoints;
};

// Integrates the relative Shabat-Zakharov pair
//   a' = +i/2 (k^2-k0^2)(a |psi0|^2 + b psi0*^2)
//   b' = -i/2 (k^2-k0^2)(a psi0^2  + b |psi0|^2)
// from (1, 0) on the left across the truncation window. Delta interfaces of the
// target enter as exact (a,b) jumps derived from the psi' matching.
std::pair<std::complex<double>, std::complex<double>>
evolve_relative(const ReferenceSolution& ref, const Dispersion& d, const SolverConfig& cfg = {});

} // namespace scatterbound
