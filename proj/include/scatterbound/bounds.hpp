#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "scatterbound/dispersion.hpp"
#include "scatterbound/quadrature.hpp"

namespace scatterbound {

enum class BoundKind { LowerT, UpperT, UpperR, UpperAbsAlpha, UpperAbsBeta, LowerAbsBeta, UpperN };

struct BoundResult {
    BoundKind kind = BoundKind::LowerT;
    double value = 0.0;
    std::string bound_id;
    double integral = 0.0; // the hyperbolic argument
    double quad_err = 0.0;
    bool valid = true;
    std::string reason;
    // optional companion value (case1's Taylor-weakened form, low-energy's
    // comparison threshold, wkb-like's side-by-side WKB estimate)
    std::optional<double> secondary;
    std::string secondary_id;
};

// h = k0 everywhere (case-1 style; trivializes unless k0 matches both asymptotes).
struct ConstantAux {
    double k0;
};
// h = k(x) (WKB phase; requires k^2 > 0 everywhere).
struct PhaseEqualsKAux {};
// h = sqrt(max(k^2, k0^2)) (case-3 style; admissible under the barrier).
struct MaxClampAux {
    double k0;
};
// Omega = omega^eps * omega0^(1-eps); interpolates ConstantAux <-> PhaseEqualsK.
struct PowerInterpAux {
    double eps;
};
struct UserFunctionAux {
    std::function<double(double)> h;
    std::function<double(double)> h_prime;
};

using AuxiliaryChoice =
    std::variant<ConstantAux, PhaseEqualsKAux, MaxClampAux, PowerInterpAux, UserFunctionAux>;

// sqrt(h'^2 + (k^2 - h^2)^2) / (2h), pointwise.
double vartheta(double h, double h_prime, double k2);

// sqrt((phi'' + 2 chi phi')^2 + (k^2 + chi^2 + chi' - phi'^2)^2) / (2 phi');
// collapses to vartheta when chi = 0 and h = phi'.
double vartheta_general(double phi_prime, double phi_second, double chi, double chi_prime,
                        double k2);

struct GeneralBoundSet {
    BoundResult lower_t, upper_r, upper_abs_alpha, upper_abs_beta;
};

GeneralBoundSet general_bound(const Dispersion& d, const AuxiliaryChoice& aux,
                              const QuadratureConfig& quad = {});

// T >= sech^2( (m/(hbar^2 k_inf)) Int |V - V_inf| dx ); requires equal asymptotes.
// Valid over or under any interior barrier. Secondary field carries the
// Taylor-weakened form 1 - argument^2.
BoundResult bound_case1(const PotentialSpec& p, double energy, const UnitsConvention& u = {});
BoundResult bound_case1(const Dispersion& d, const QuadratureConfig& quad = {});

// T >= sech^2( 1/2 Int |k'|/|k| ) by quadrature; requires k^2 > 0 everywhere.
BoundResult bound_case2(const Dispersion& d, const QuadratureConfig& quad = {});

// Closed-form case-2 variants.
double bound_case2_monotonic(double k_minus, double k_plus);
double bound_case2_extremum(double k_minus, double k_plus, double k_ext);
double bound_case2_multi(const std::vector<ExtremumRecord>& extrema, double k_minus,
                         double k_plus);

// Wrappers attaching applicability checks (used by the CLI ids case2a/b/c).
BoundResult bound_case2a(const Dispersion& d);
BoundResult bound_case2b(const Dispersion& d);
BoundResult bound_case2c(const Dispersion& d);

// T >= 4 / ( (sqrt(k-k+)/k0) e^B + (k0/sqrt(k-k+)) e^-B )^2,
// B = (1/2k0) Int_F kappa^2 + (k0/2) L_{k^2<k0^2}.
BoundResult bound_case3(const Dispersion& d, double k0, const QuadratureConfig& quad = {});
// golden-section maximization over admissible k0
BoundResult bound_case3_optimized(const Dispersion& d, const QuadratureConfig& quad = {});

// T >= (k0^4/(k- k+ kappa_ext^2)) e^{-2 k0 L} e^{-Int kappa}; single-hump barriers.
BoundResult bound_case4(const Dispersion& d, double k0, const QuadratureConfig& quad = {});
BoundResult bound_case4_optimized(const Dispersion& d, const QuadratureConfig& quad = {});

// Bohm's WKB estimate sech^2(Int kappa + ln 2); an estimator, not a bound.
BoundResult wkb_estimate(const Dispersion& d, const QuadratureConfig& quad = {});

// First Born approximation to beta; an estimator, not a bound.
std::complex<double> born_beta_estimate(const Dispersion& d, const QuadratureConfig& quad = {});

// N = (1 - T)/T and its inverse T = 1/(1 + N).
double production_from_transmission(double T);
double transmission_from_production(double N);

struct TimeProfile {
    std::function<double(double)> omega2;
    double omega_minus = 1.0;
    double omega_plus = 1.0;
    double t_left = 0.0;  // omega^2 equals its asymptote outside [t_left, t_right]
    double t_right = 0.0; // within tail tolerance
};

// Relabel t -> x, omega(t) -> k(x); shares quadrature nodes with general_bound.
Dispersion to_dispersion(const TimeProfile& p);

struct TimeDomainBounds {
    BoundResult upper_abs_alpha, upper_abs_beta, upper_n;
};

TimeDomainBounds time_domain_bounds(const TimeProfile& p, const AuxiliaryChoice& aux,
                                    const QuadratureConfig& quad = {});

} // namespace scatterbound
