#pragma once

#include <stdexcept>
#include <string>

namespace scatterbound {

// Scattering problem undefined: E does not exceed both asymptotic potential values.
struct BelowAsymptote : std::domain_error {
    using std::domain_error::domain_error;
};

// Sampled profile does not settle to its declared asymptotes within tolerance.
struct NonconvergentTail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Family outside the set an operation supports.
struct UnsupportedFamily : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Adaptive integrator exceeded its step budget.
struct StiffFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |A| below threshold when decomposing the left boundary; over-resolved resonance.
struct DegenerateMatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature error estimate exceeds the requested tolerance after max refinement.
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AsymmetricAsymptotes : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ForbiddenRegion : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoForbiddenRegion : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotSingleHump : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MultiHump : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NegativePotential : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParameterOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonMonotoneMap : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Reference solution flux deviates from unity beyond tolerance.
struct FluxViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsideHorizon : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace scatterbound
