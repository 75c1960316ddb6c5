#pragma once

#include "scatterbound/bounds.hpp"
#include "scatterbound/solver.hpp"

namespace scatterbound {

// Geometric units G = c = 1 throughout this module.
struct GreybodyQuery {
    double m = 1.0;   // black-hole mass
    int s = 0;        // spin of the perturbing field, in {0, 1, 2}
    int ell = 0;      // angular momentum of the mode, >= s
    double omega = 1.0;

    void validate() const {
        if (!(m > 0.0)) throw DomainError("GreybodyQuery: mass must be positive");
        if (s < 0 || s > 2) throw DomainError("GreybodyQuery: spin must be 0, 1 or 2");
        if (ell < s) throw DomainError("GreybodyQuery: requires ell >= s");
        if (!(omega > 0.0)) throw DomainError("GreybodyQuery: omega must be positive");
    }
};

struct RwPeak {
    double r_peak = 0.0;
    double v_peak = 0.0;
};

// V(r) = (1 - 2m/r) [ l(l+1)/r^2 + 2m(1-s^2)/r^3 ], r > 2m.
double regge_wheeler_potential(const GreybodyQuery& q, double r);

// r* = r + 2m ln((r-2m)/2m) and its Lambert-W inversion.
double tortoise(double r, double m);
double radius_from_tortoise(double r_star, double m);

// Principal branch on x >= 0, Halley iteration.
double lambert_w0(double x);
// W(e^z) without forming e^z; solves W + ln W = z for large z.
double lambert_w0_of_exp(double z);

// Peak of the Regge-Wheeler potential. Closed forms: r_peak = 3m for s = 1
// (v = l(l+1)/(27 m^2)) and r_peak = 8m/3, v = 27/(1024 m^2) for s = l = 0;
// numeric maximization otherwise.
RwPeak rw_peak(const GreybodyQuery& q);

// T >= sech^2( ((l+1)^2 + l^2 - s^2) / (8 omega m) ); meaningful at all frequencies.
BoundResult greybody_bound_1(const GreybodyQuery& q);

// T >= 1 - V_peak^2/(2 omega^2 - V_peak)^2; invalid once omega^2 <= V_peak.
BoundResult greybody_bound_2(const GreybodyQuery& q);

struct GreybodyWindow {
    double r_star_left = 0.0;
    double r_star_right = 0.0;
};

// Numeric greybody factor: k^2(r*) = omega^2 - V(r(r*)) fed to solve_scattering.
// The left window follows V < 1e-12 omega^2 (exponential horizon approach); the
// right window is cut where the truncated Coulomb-like tail's Born remainder
// ~ A/(4 omega^2 R^2) drops below 1e-8.
ScatteringResult greybody_numeric(const GreybodyQuery& q, const SolverConfig& cfg = {},
                                  GreybodyWindow* window_out = nullptr);

} // namespace scatterbound
