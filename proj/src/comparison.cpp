#include "scatterbound/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace scatterbound {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

double sech2_of(double x) {
    const double c = std::cosh(x);
    if (!std::isfinite(c)) return 0.0;
    return 1.0 / (c * c);
}

// Plane-wave stack: psi0 = (A_i e^{i q_i x} + B_i e^{-i q_i x})/1 on region i.
// The left region carries the unit-flux incoming normalization 1/sqrt(k-).
struct Region {
    cplx q;
    cplx A, B;
};

struct StackSolution {
    std::vector<double> edges; // region i covers (edges[i-1], edges[i])
    std::vector<Region> regions;

    std::size_t region_at(double x) const {
        std::size_t i = 0;
        while (i < edges.size() && x >= edges[i]) ++i;
        return i;
    }
    cplx psi(double x) const {
        const auto& r = regions[region_at(x)];
        return r.A * std::exp(kI * r.q * x) + r.B * std::exp(-kI * r.q * x);
    }
    cplx psi_prime(double x) const {
        const auto& r = regions[region_at(x)];
        return kI * r.q * (r.A * std::exp(kI * r.q * x) - r.B * std::exp(-kI * r.q * x));
    }
};

} // namespace

ReferenceSolution make_reference(const PotentialSpec& p, double energy,
                                 const UnitsConvention& u) {
    u.validate();
    const double c = u.k2_factor();
    const double vm = v_minus_inf(p);
    const double vp = v_plus_inf(p);
    if (!(energy > std::max(vm, vp)))
        throw BelowAsymptote("make_reference: E must exceed both asymptotes");
    const double km = std::sqrt(c * (energy - vm));
    const double kp = std::sqrt(c * (energy - vp));

    auto stack = std::make_shared<StackSolution>();
    std::vector<cplx> qs;
    std::vector<double> gs;

    if (p.holds<FreePotential>()) {
        qs = {cplx(km)};
    } else if (p.holds<StepPotential>()) {
        qs = {cplx(km), cplx(kp)};
        stack->edges = {0.0};
        gs = {0.0};
    } else if (const auto* d = p.get_if<DeltaPotential>()) {
        qs = {cplx(km), cplx(km)};
        stack->edges = {d->x0};
        gs = {d->g};
    } else if (const auto* sb = p.get_if<SquareBarrierPotential>()) {
        qs = {cplx(km), std::sqrt(cplx(c * (energy - sb->v0))), cplx(kp)};
        stack->edges = {0.0, sb->length};
        gs = {0.0, 0.0};
    } else {
        throw UnsupportedFamily("make_reference: reference catalogue is Free, Step, "
                                "SquareBarrier, Delta");
    }

    // march the unit-flux incoming wave A_0 = 1/sqrt(km) across the interfaces
    stack->regions.resize(qs.size());
    stack->regions[0] = {qs[0], cplx(1.0 / std::sqrt(km)), cplx(0.0)};
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        const double x = stack->edges[i];
        const auto& r = stack->regions[i];
        const cplx e1p = std::exp(kI * r.q * x), e1m = std::exp(-kI * r.q * x);
        const cplx psi = r.A * e1p + r.B * e1m;
        const cplx dpsi = kI * r.q * (r.A * e1p - r.B * e1m) + gs[i] * psi;
        const cplx q2 = qs[i + 1];
        const cplx e2p = std::exp(kI * q2 * x), e2m = std::exp(-kI * q2 * x);
        const cplx uu = dpsi / (kI * q2);
        stack->regions[i + 1] = {q2, 0.5 * (psi + uu) / e2p, 0.5 * (psi - uu) / e2m};
    }

    ReferenceSolution ref;
    ref.k_minus = km;
    ref.k_plus = kp;
    ref.psi0 = [stack](double x) { return stack->psi(x); };
    ref.psi0_prime = [stack](double x) { return stack->psi_prime(x); };

    auto spec = std::make_shared<PotentialSpec>(p);
    ref.k0sq = [spec, energy, c](double x) {
        return c * (energy - potential_value(*spec, x));
    };
    ref.breakpoints = stack->edges;

    // alpha0, beta0 from the rightmost region in the sqrt(kp)-normalized basis
    const auto& last = stack->regions.back();
    ref.alpha0 = last.A * std::sqrt(kp);
    ref.beta0 = last.B * std::sqrt(kp);
    ref.T0 = 1.0 / std::norm(ref.alpha0);
    return ref;
}

ThetaBudget theta_bound(const ReferenceSolution& ref, const Dispersion& d,
                        const QuadratureConfig& quad) {
    // flux check at a few window points
    for (double x : {d.window_left, 0.5 * (d.window_left + d.window_right), d.window_right}) {
        const double flux = std::imag(std::conj(ref.psi0(x)) * ref.psi0_prime(x));
        if (std::abs(flux - 1.0) > 1e-8)
            throw FluxViolation("theta_bound: reference flux deviates from 1");
    }

    QuadratureConfig cfg = quad;
    cfg.split_points = d.breakpoints;
    for (double b : ref.breakpoints) cfg.split_points.push_back(b);
    for (const auto& de : d.deltas) cfg.split_points.push_back(de.x0);

    auto res = integrate(
        [&](double x) {
            return 0.5 * std::abs(d.k2(x) - ref.k0sq(x)) * std::norm(ref.psi0(x));
        },
        d.window_left, d.window_right, cfg);

    ThetaBudget out;
    out.theta_bound = res.value;
    // target deltas beyond the reference's own contribute g |psi0(x0)|^2 / 2 exactly
    for (const auto& de : d.deltas)
        out.theta_bound += 0.5 * std::abs(de.g) * std::norm(ref.psi0(de.x0));
    out.theta0 = std::acosh(1.0 / std::sqrt(ref.T0));
    return out;
}

std::pair<BoundResult, BoundResult> bracket_transmission(const ReferenceSolution& ref,
                                                         const ThetaBudget& budget) {
    const double theta0 = std::acosh(1.0 / std::sqrt(ref.T0));

    BoundResult lower;
    lower.kind = BoundKind::LowerT;
    lower.bound_id = "compare-lower";
    lower.integral = theta0 + budget.theta_bound;
    lower.value = sech2_of(lower.integral);

    BoundResult upper;
    upper.kind = BoundKind::UpperT;
    upper.bound_id = "compare-upper";
    upper.integral = theta0 - budget.theta_bound;
    if (upper.integral > 0.0) {
        upper.value = sech2_of(upper.integral);
    } else {
        upper.value = 1.0;
        upper.valid = false;
        upper.reason = "only the trivial bound: Theta_bound >= Theta0";
    }
    return {lower, upper};
}

std::pair<double, double> compose_bogoliubov_bounds(double beta_e, double beta_delta) {
    if (beta_e < 0.0 || beta_delta < 0.0)
        throw DomainError("compose_bogoliubov_bounds: inputs must be nonnegative");
    const double ae = std::sqrt(1.0 + beta_e * beta_e);
    const double ad = std::sqrt(1.0 + beta_delta * beta_delta);
    const double upper = ae * beta_delta + beta_e * ad;
    const double lower = std::max(0.0, std::abs(ae * beta_delta - beta_e * ad));
    return {lower, upper};
}

PerturbationEstimates perturbation_estimates(const ReferenceSolution& ref,
                                             const std::function<double(double)>& delta_v,
                                             double eps, double x_lo, double x_hi,
                                             const QuadratureConfig& quad) {
    QuadratureConfig cfg = quad;
    for (double b : ref.breakpoints) cfg.split_points.push_back(b);

    auto weight = integrate(
        [&](double x) { return std::abs(delta_v(x)) * std::norm(ref.psi0(x)); }, x_lo, x_hi,
        cfg);

    PerturbationEstimates out;
    out.b_abs_bound = 0.5 * std::abs(eps) * weight.value;
    out.small_eps = std::abs(eps) * weight.value <= 0.3;

    // the potential shift lowers k^2: k^2 - k0^2 = -eps dv, so the running
    // distorted-wave phase is Phi(x) = -eps Int_{lo}^{x} dv |psi0|^2
    const int n = 4096;
    std::vector<double> xs(n + 1), phi(n + 1, 0.0);
    const double h = (x_hi - x_lo) / n;
    for (int i = 0; i <= n; ++i) xs[i] = x_lo + i * h;
    for (int i = 1; i <= n; ++i) {
        const double xm = xs[i - 1] + 0.5 * h;
        const double f0 = delta_v(xs[i - 1]) * std::norm(ref.psi0(xs[i - 1]));
        const double fm = delta_v(xm) * std::norm(ref.psi0(xm));
        const double f1 = delta_v(xs[i]) * std::norm(ref.psi0(xs[i]));
        phi[i] = phi[i - 1] - eps * h / 6.0 * (f0 + 4.0 * fm + f1);
    }
    MonotoneCubic phi_interp(xs, phi);

    cplx b_inf;
    integrate_complex_real(
        [&](double x) {
            const cplx p0 = ref.psi0(x);
            const cplx ph = std::exp(kI * phi_interp(x));
            return 0.5 * kI * eps * delta_v(x) * p0 * p0 * ph;
        },
        x_lo, x_hi, cfg, b_inf);
    out.b_infinity = b_inf;

    out.delta_t_estimate =
        -ref.T0 * 2.0 * std::real(std::conj(ref.beta0) * b_inf / ref.alpha0);

    const double n0 = std::norm(ref.beta0);
    out.delta_n_bound = std::abs(eps) * std::sqrt(n0 * (n0 + 1.0)) * weight.value;
    return out;
}

} // namespace scatterbound
