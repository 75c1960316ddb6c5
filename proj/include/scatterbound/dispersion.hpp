#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "scatterbound/potential.hpp"
#include "scatterbound/units.hpp"

namespace scatterbound {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

enum class ExtremumKind { Peak, Valley };

struct ExtremumRecord {
    double x = 0.0;
    double k2 = 0.0;
    ExtremumKind kind = ExtremumKind::Peak;
};

// Evaluable k^2(x) = (2m/hbar^2)(E - V(x)) with its asymptotics, classically
// forbidden regions, delta interfaces and the truncation window all other modules
// share.
struct Dispersion {
    std::function<double(double)> k2;
    std::function<double(double)> k2_prime;
    std::function<double(double)> k2_second;
    double k_minus_inf = 0.0;
    double k_plus_inf = 0.0;
    std::vector<Interval> forbidden_regions;
    std::vector<DeltaInterface> deltas;
    std::vector<double> breakpoints; // interior joints, sorted, within the window
    double window_left = 0.0;
    double window_right = 0.0;
    double energy = 0.0;
    double k2_factor = 1.0; // 2m/hbar^2 that built this dispersion

    bool has_forbidden_region() const { return !forbidden_regions.empty(); }
    double window_width() const { return window_right - window_left; }
};

// Tail threshold from the shared truncation rule |V - V_inf| < 1e-10 max(1, |E|).
double tail_tolerance(double energy);

std::pair<double, double> asymptotic_wavenumbers(const PotentialSpec& p, double energy,
                                                 const UnitsConvention& u = {});

Dispersion build_dispersion(const PotentialSpec& p, double energy,
                            const UnitsConvention& u = {});

// Dispersion from a raw k^2 profile (time-domain relabeling and greybody use this).
Dispersion dispersion_from_k2(std::function<double(double)> k2, double k_minus,
                              double k_plus, double window_left, double window_right,
                              std::function<double(double)> k2_prime = nullptr,
                              std::function<double(double)> k2_second = nullptr);

std::vector<ExtremumRecord> find_extrema(const Dispersion& d, Interval window,
                                         int n_scan = 2001);

} // namespace scatterbound
