#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "scatterbound/errors.hpp"

namespace scatterbound {

struct FreePotential {
    double v_inf = 0.0;
};

struct StepPotential {
    double v_minus = 0.0;
    double v_plus = 0.0;
};

// Point interaction V = alpha * delta(x - x0). Stored as the wavefunction-derivative
// jump strength g = 2 m alpha / hbar^2 (psi'(x0+) - psi'(x0-) = g psi(x0)); the spike
// never appears in pointwise potential values.
struct DeltaPotential {
    double g = 0.0;
    double x0 = 0.0;
};

// Two equal spikes at x = -d/2 and x = +d/2. Textbook displays alternate between a
// full-separation symbol L and a half-separation a; here d is always the full
// separation.
struct DoubleDeltaPotential {
    double g = 0.0;
    double d = 1.0;
};

// V = v0 on [0, length], zero elsewhere.
struct SquareBarrierPotential {
    double v0 = 1.0;
    double length = 1.0;
};

// V = v1 for x < a, v2 on (a, b), v3 for x > b.
struct AsymSquareWellPotential {
    double v1 = 0.0;
    double v2 = 0.0;
    double v3 = 0.0;
    double a = 0.0;
    double b = 1.0;
};

// Smoothed step between v_minus and v_plus over scale `length`.
struct TanhPotential {
    double v_minus = 0.0;
    double v_plus = 0.0;
    double length = 1.0;
};

struct Sech2Potential {
    double ve = 1.0;
    double length = 1.0;
};

// Re-grouped form V = v0 sech^2(x/L) + v_inf tanh(x/L); the Morse-Feshbach
// cosh^2(mu) presentation converts to this on input.
struct PoschlTellerPotential {
    double v0 = 1.0;
    double v_inf = 0.0;
    double length = 1.0;
};

// V = v0 + v1 [(A + B w)/(C + D w)]^2 with w = exp(-2 x / a).
struct MobiusPotential {
    double v0 = 0.0;
    double v1 = 1.0;
    double A = 1.0;
    double B = 0.0;
    double C = 1.0;
    double D = 0.0;
    double a = 1.0;
};

enum class NamedFamily { Eckart, RosenMorse, Morse, ManningRosen, Hulthen, Tietz, Hua };

// Denominator flavour for the Tietz family.
enum class TietzDenominator { Sinh, Cosh, Exp };

struct NamedPotential {
    NamedFamily family = NamedFamily::Eckart;
    std::map<std::string, double> params;
    TietzDenominator tietz_denominator = TietzDenominator::Sinh;

    double param(const std::string& name) const;
};

// Tabulated profile; monotone cubic interpolation between samples, clamped to the
// declared asymptotes beyond the sample range.
struct SampledPotential {
    std::vector<double> x;
    std::vector<double> v;
    double v_minus = 0.0;
    double v_plus = 0.0;
};

struct PotentialSpec;

// base potential plus eps * delta_v(x).
struct ShiftedPotential {
    std::shared_ptr<const PotentialSpec> base;
    double eps = 0.0;
    std::function<double(double)> delta_v;
};

using PotentialVariant =
    std::variant<FreePotential, StepPotential, DeltaPotential, DoubleDeltaPotential,
                 SquareBarrierPotential, AsymSquareWellPotential, TanhPotential,
                 Sech2Potential, PoschlTellerPotential, MobiusPotential, NamedPotential,
                 SampledPotential, ShiftedPotential>;

struct PotentialSpec {
    PotentialVariant value;

    PotentialSpec() : value(FreePotential{}) {}
    template <class T, class = std::enable_if_t<!std::is_same_v<std::decay_t<T>, PotentialSpec>>>
    PotentialSpec(T&& v) : value(std::forward<T>(v)) {}

    template <class T> const T* get_if() const { return std::get_if<T>(&value); }
    template <class T> bool holds() const { return std::holds_alternative<T>(value); }
};

struct DeltaInterface {
    double x0 = 0.0;
    double g = 0.0;
};

// Pointwise smooth part of the potential (delta spikes excluded).
double potential_value(const PotentialSpec& p, double x);
// dV/dx of the smooth part; analytic for the closed-form catalogue, spline/central
// difference for Sampled and Shifted.
double potential_derivative(const PotentialSpec& p, double x);
double potential_second_derivative(const PotentialSpec& p, double x);

double v_minus_inf(const PotentialSpec& p);
double v_plus_inf(const PotentialSpec& p);

std::vector<DeltaInterface> delta_interfaces(const PotentialSpec& p);

// Joints, interface points and other locations where V or V' is non-smooth.
std::vector<double> potential_breakpoints(const PotentialSpec& p);

// Characteristic spatial extent, used to seed tail searches and scan grids.
double potential_length_scale(const PotentialSpec& p);

// True when the potential is identically at its asymptote outside a finite interval;
// fills [lo, hi] with that interval.
bool compact_support(const PotentialSpec& p, double& lo, double& hi);

void validate(const PotentialSpec& p);

std::string family_name(const PotentialSpec& p);

// Evaluators with per-instance state prebuilt (sampled profiles get one interpolant
// shared by all evaluations instead of a rebuild per call).
std::function<double(double)> make_value_fn(const PotentialSpec& p);
std::function<double(double)> make_derivative_fn(const PotentialSpec& p);

// Monotone cubic (Fritsch-Carlson) interpolant used for sampled profiles.
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys);
    double operator()(double x) const;
    double derivative(double x) const;
    bool empty() const { return x_.empty(); }

  private:
    std::vector<double> x_, y_, m_;
    std::size_t interval(double x) const;
};

} // namespace scatterbound
