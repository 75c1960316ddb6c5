#pragma once

#include <complex>
#include <vector>

#include "scatterbound/potential.hpp"
#include "scatterbound/units.hpp"

namespace scatterbound {

// Flux-normalized transmission/reflection amplitudes, |t|^2 + |r|^2 = 1.
struct ExactAmplitudes {
    std::complex<double> t;
    std::complex<double> r;
};

struct QnmFrequency {
    std::complex<double> k; // complex wavenumber (k_{+inf} for asymmetric families)
    int n = 0;
};

// Closed-form transmission probability for the solvable catalogue.
//
// Family notes:
//  - square barrier: under the barrier the analytic continuation
//    sin(qL) -> i sinh(kappa L) applies; at E = V0 exactly the q -> 0 limit
//    T = 1/(1 + k^2 L^2/4) is used (series-evaluated for |q|L < 1e-6).
//  - sech^2 and Poschl-Teller: the radicand 1 - 8 m V0 L^2/hbar^2 may be negative;
//    cos(pi sqrt(1-rho)) continues to cosh(pi sqrt(rho-1)). Re-grouped Poschl-Teller
//    displays sometimes show cosh(pi sqrt(1-rho)); that variant reproduces neither
//    the sech^2 limit nor direct numerical integration (the Morse-Feshbach original,
//    and this implementation, carry cos).
//  - double delta: amplitudes from first-principles matching are
//    t = k^2 / ((k + i k0)^2 + k0^2 e^{2ikd}) with k0 = g/2. A commonly quoted
//    display has (k - i k0)^2, which corresponds to flipping the sign of the spike
//    strength. For g > 0 the transmission resonances therefore sit at
//    tan(kd) = -k/k0, and at tan(kd) = +k/|k0| for attractive spikes (where the
//    familiar display applies).
double exact_transmission(const PotentialSpec& p, double energy, const UnitsConvention& u = {});

// Families with closed-form amplitudes: Free, Step, Delta, DoubleDelta, SquareBarrier,
// AsymSquareWell. For tanh/sech^2/Poschl-Teller only the magnitude is analytic here
// (use exact_transmission).
ExactAmplitudes exact_amplitudes(const PotentialSpec& p, double energy,
                                 const UnitsConvention& u = {});

// Closed-form quasinormal wavenumbers for Delta, Tanh, Sech2, PoschlTeller.
// n runs over [n_min, n_max]; branch conventions per family:
//  - delta: the single pair +-i g/2, independent of the requested range
//  - tanh: k(n) = i [n/L + (V+ - V-) L c /(4 n)], n != 0 (c = 2m/hbar^2)
//  - sech2: k(n) = i [(2n+1) +- sqrt(1 - rho)] / (2L), both branches emitted
//  - Poschl-Teller: k_plus(n) = i [ c V_inf L/((2n+1) +- s) + ((2n+1) +- s)/(2L) ],
//    s = sqrt(1 - rho), both branches emitted
std::vector<QnmFrequency> qnm(const PotentialSpec& p, int n_min, int n_max,
                              const UnitsConvention& u = {});

// Magnitude of the family's transmission-amplitude denominator at complex k; zero at
// a quasinormal mode. Used to verify the closed forms.
double qnm_residual(const PotentialSpec& p, std::complex<double> k,
                    const UnitsConvention& u = {});

} // namespace scatterbound
