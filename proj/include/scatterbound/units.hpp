#pragma once

#include "scatterbound/errors.hpp"

namespace scatterbound {

// Defaults hbar = 1, m = 1/2 so that 2m/hbar^2 = 1 and k^2(x) = E - V(x).
struct UnitsConvention {
    double hbar = 1.0;
    double mass = 0.5;

    // 2m/hbar^2, the factor converting (E - V) to k^2.
    double k2_factor() const { return 2.0 * mass / (hbar * hbar); }

    void validate() const {
        if (!(hbar > 0.0)) throw DomainError("UnitsConvention: hbar must be positive");
        if (!(mass > 0.0)) throw DomainError("UnitsConvention: mass must be positive");
    }
};

} // namespace scatterbound
