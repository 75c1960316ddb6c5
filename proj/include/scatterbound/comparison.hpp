#pragma once

#include <complex>
#include <utility>

#include "scatterbound/bounds.hpp"
#include "scatterbound/solver.hpp"

namespace scatterbound {

struct ThetaBudget {
    double theta_bound = 0.0; // (1/2) Int |k^2 - k0^2| |psi0|^2
    double theta0 = 0.0;      // cosh^{-1} |alpha0| = cosh^{-1}(1/sqrt(T0))
};

// Flux-normalized reference solutions with closed-form psi0 everywhere. The
// reference catalogue is Free, Step, SquareBarrier, Delta: families whose psi0 is a
// finite stack of plane waves.
ReferenceSolution make_reference(const PotentialSpec& p, double energy,
                                 const UnitsConvention& u = {});

ThetaBudget theta_bound(const ReferenceSolution& ref, const Dispersion& d,
                        const QuadratureConfig& quad = {});

// lowerT = sech^2(sech^{-1} sqrt(T0) + Theta_bound), always valid;
// upperT = sech^2(sech^{-1} sqrt(T0) - Theta_bound), valid only while the argument
// stays positive (else flagged, value 1).
std::pair<BoundResult, BoundResult> bracket_transmission(const ReferenceSolution& ref,
                                                         const ThetaBudget& budget);

// |beta| bracketing under the interaction-picture composition rule:
// upper = sqrt(1+be^2) bd + be sqrt(1+bd^2), lower = |sqrt(1+be^2) bd - be sqrt(1+bd^2)|.
std::pair<double, double> compose_bogoliubov_bounds(double beta_e, double beta_delta);

struct PerturbationEstimates {
    double b_abs_bound = 0.0;              // (eps/2) Int |dv| |psi0|^2
    std::complex<double> b_infinity;       // distorted-wave Born integral
    double delta_t_estimate = 0.0;         // first-order dT (estimate, not a bound)
    double delta_n_bound = 0.0;            // eps sqrt(N0(N0+1)) Int |dv| |psi0|^2
    bool small_eps = true;                 // warn flag: eps Int |dv||psi0|^2 <= 0.3
};

// delta_v is the potential shift in k^2 units (2 m dV/hbar^2, which equals dV under
// default units); the dispersion shift is k^2 - k0^2 = -eps * delta_v.
PerturbationEstimates perturbation_estimates(const ReferenceSolution& ref,
                                             const std::function<double(double)>& delta_v,
                                             double eps, double x_lo, double x_hi,
                                             const QuadratureConfig& quad = {});

} // namespace scatterbound
