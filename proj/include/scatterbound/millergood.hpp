#pragma once

#include <functional>

#include "scatterbound/bounds.hpp"
#include "scatterbound/dispersion.hpp"

namespace scatterbound {

// Change of variables u(x) = U(X(x))/sqrt(X'), specified through one of
//   j(x) = X' > 0                ->  K^2 = (1/j^2){k^2 - j''/(2j) + 3 j'^2/(4 j^2)}
//   J(x) = (X')^{-1/2} > 0       ->  K^2 = J^4 {k^2 + J''/J}
// Derivatives are supplied by the caller; a central-difference fallback is used when
// they are omitted (and flagged through the transformed dispersion's numeric noise).
struct MgMap {
    enum class Kind { LittleJ, BigJ } kind = Kind::BigJ;
    std::function<double(double)> f;        // j(x) or J(x)
    std::function<double(double)> f_prime;  // optional
    std::function<double(double)> f_second; // optional
};

// Transformed dispersion K^2(X) with K(+-inf) = k/j = k J^2 at the tails; when the
// map tends to 1 at both infinities the input and output have identical transmission.
Dispersion mg_transform(const Dispersion& d, const MgMap& map);

// Two-free-function bound choice: H (with H') and J (with J', J''). Either function
// may be omitted (H defaults to sqrt(k- k+), J to 1).
struct MgBoundChoice {
    std::function<double(double)> H, H_prime;
    std::function<double(double)> J, J_prime, J_second;
};

// Form 3 of the improved bound:
// T >= sech^2 Int (1/2H) sqrt( (H' + 2 H J'/J)^2 + (k^2 + J''/J - H^2)^2 ).
BoundResult improved_bound(const Dispersion& d, const MgBoundChoice& choice,
                           const QuadratureConfig& quad = {});
// Forms 1 and 2 under the variable maps h = H J^2, j = J^{-2}; all three agree to
// quadrature tolerance.
BoundResult improved_bound_form1(const Dispersion& d, const MgBoundChoice& choice,
                                 const QuadratureConfig& quad = {});
BoundResult improved_bound_form2(const Dispersion& d, const MgBoundChoice& choice,
                                 const QuadratureConfig& quad = {});

// T >= sech^2( 1/2 Int |(1/sqrt k)(1/sqrt k)''| ); requires k^2 > 0 everywhere.
BoundResult schwarzian_bound(const Dispersion& d, const QuadratureConfig& quad = {});

// T >= sech^2( sqrt(Vmax/E) + Int sqrt(2 m V)/hbar ); V >= 0, V_inf = 0, single hump.
// Secondary field reports the threshold below which this beats the case-1 form:
// sqrt(Vmax) < (1/2) Int sqrt(2m) V / hbar.
BoundResult low_energy_bound(const Dispersion& d, const QuadratureConfig& quad = {});

// T >= sech^2( Int_{k^2<0} kappa + kappa_max/k_inf + k_inf L/2
//              + Int_{k^2>0} |k_inf^2 - k^2|/(2 k_inf) ).
// Single-hump barrier with symmetric asymptotes; no free parameter (the chi = kappa
// choice fixes everything). Secondary field carries Bohm's WKB estimate alongside.
BoundResult wkb_like_bound(const Dispersion& d, const QuadratureConfig& quad = {});

// T >= sech^2( (1/2) ln(k+ k-/Delta^2) + max sqrt(Delta^2-k^2)/Delta
//              + Int_{Delta^2 > k^2} sqrt(Delta^2 - k^2) ).
BoundResult delta_param_bound(const Dispersion& d, double delta,
                              const QuadratureConfig& quad = {});
BoundResult delta_param_bound_optimized(const Dispersion& d,
                                        const QuadratureConfig& quad = {});

// N <= sinh^2 of the improved-bound integral under the t <-> x relabeling.
BoundResult production_bounds(const TimeProfile& p, const MgBoundChoice& choice,
                              const QuadratureConfig& quad = {});

} // namespace scatterbound
