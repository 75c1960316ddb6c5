#include "scatterbound/exact.hpp"

#include <cmath>

#include "scatterbound/dispersion.hpp"

namespace scatterbound {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

// sin^2(sqrt(y) L)/y, continued through y <= 0 (sinh^2(sqrt(-y)L)/(-y)); smooth at 0.
double sin2_over(double y, double L) {
    const double z = y * L * L;
    if (std::abs(z) < 1e-12) {
        // L^2 (1 - z/3 + 2 z^2/45)
        return L * L * (1.0 - z / 3.0 + 2.0 * z * z / 45.0);
    }
    if (y > 0.0) {
        const double s = std::sin(std::sqrt(y) * L);
        return s * s / y;
    }
    const double s = std::sinh(std::sqrt(-y) * L);
    return s * s / (-y);
}

// cos(pi sqrt(1-rho)) continued to cosh(pi sqrt(rho-1)) for rho > 1.
double cos_continued(double rho) {
    if (rho <= 1.0) return std::cos(M_PI * std::sqrt(1.0 - rho));
    return std::cosh(M_PI * std::sqrt(rho - 1.0));
}

// Transfer of plane-wave coefficients (A, B) across interfaces at given positions,
// with optional derivative jumps g at each interface. psi = A e^{iqx} + B e^{-iqx}.
struct CoefficientPair {
    cplx A, B;
};

CoefficientPair cross_interface(const CoefficientPair& in, cplx q1, cplx q2, double x,
                                double g) {
    const cplx e1p = std::exp(kI * q1 * x), e1m = std::exp(-kI * q1 * x);
    const cplx e2p = std::exp(kI * q2 * x), e2m = std::exp(-kI * q2 * x);
    const cplx psi = in.A * e1p + in.B * e1m;
    const cplx dpsi = kI * q1 * (in.A * e1p - in.B * e1m) + g * psi;
    // solve A2 e2p + B2 e2m = psi ; i q2 (A2 e2p - B2 e2m) = dpsi
    const cplx u = dpsi / (kI * q2);
    return {0.5 * (psi + u) / e2p, 0.5 * (psi - u) / e2m};
}

// r and flux-normalized t for a piecewise-constant structure. regions[i].q applies on
// (x_{i-1}, x_i) with interface positions xs (size regions-1) and jumps gs (same size).
ExactAmplitudes piecewise_amplitudes(const std::vector<cplx>& q, const std::vector<double>& xs,
                                     const std::vector<double>& gs) {
    const cplx km = q.front();
    const cplx kp = q.back();
    // incident from the left: (1, r) on the far left, (that, 0) on the far right.
    // Build the map M with two basis propagations.
    auto propagate = [&](CoefficientPair c) {
        for (std::size_t i = 0; i + 1 < q.size(); ++i)
            c = cross_interface(c, q[i], q[i + 1], xs[i], gs[i]);
        return c;
    };
    const CoefficientPair m1 = propagate({1.0, 0.0});
    const CoefficientPair m2 = propagate({0.0, 1.0});
    // (A_N, B_N) = (m1.A + r m2.A, m1.B + r m2.B); require B_N = 0
    const cplx r = -m1.B / m2.B;
    const cplx that = m1.A + r * m2.A;
    const cplx t = std::sqrt(kp / km) * that;
    return {t, r};
}

} // namespace

double exact_transmission(const PotentialSpec& p, double energy, const UnitsConvention& u) {
    u.validate();
    const double c = u.k2_factor();
    const double vm = v_minus_inf(p);
    const double vp = v_plus_inf(p);
    if (!(energy > std::max(vm, vp)))
        throw BelowAsymptote("exact_transmission: E must exceed both asymptotes");

    if (p.holds<FreePotential>()) return 1.0;

    if (const auto* st = p.get_if<StepPotential>()) {
        const double km = std::sqrt(c * (energy - st->v_minus));
        const double kp = std::sqrt(c * (energy - st->v_plus));
        return 4.0 * km * kp / ((km + kp) * (km + kp));
    }

    if (const auto* d = p.get_if<DeltaPotential>()) {
        const double k = std::sqrt(c * energy);
        const double k0 = d->g / 2.0;
        return 1.0 / (1.0 + k0 * k0 / (k * k));
    }

    if (const auto* dd = p.get_if<DoubleDeltaPotential>()) {
        const double k = std::sqrt(c * energy);
        const double k0 = dd->g / 2.0;
        const double s = k * std::cos(k * dd->d) + k0 * std::sin(k * dd->d);
        const double k4 = k * k * k * k;
        return k4 / (k4 + 4.0 * k0 * k0 * s * s);
    }

    if (const auto* sb = p.get_if<SquareBarrierPotential>()) {
        const double k2 = c * energy;
        const double y = c * (energy - sb->v0); // q^2, any sign
        const double f = sin2_over(y, sb->length);
        return 4.0 * k2 / (4.0 * k2 + (k2 - y) * (k2 - y) * f);
    }

    if (const auto* aw = p.get_if<AsymSquareWellPotential>()) {
        const double k1 = std::sqrt(c * (energy - aw->v1));
        const double k3 = std::sqrt(c * (energy - aw->v3));
        const double y2 = c * (energy - aw->v2); // k2^2, any sign
        const double L = aw->b - aw->a;
        const double f = sin2_over(y2, L);
        const double cos2 = 1.0 - y2 * f; // cos^2(k2 L), continued (cosh^2 for y2<0)
        // common factor k2^2 cancelled so the formula stays finite at E = v2
        return 4.0 * k1 * k3 /
               ((k1 + k3) * (k1 + k3) * cos2 + (y2 + k1 * k3) * (y2 + k1 * k3) * f);
    }

    if (const auto* th = p.get_if<TanhPotential>()) {
        const double km = std::sqrt(c * (energy - th->v_minus));
        const double kp = std::sqrt(c * (energy - th->v_plus));
        const double L = th->length;
        const double ratio = std::sinh(M_PI * (km - kp) * L / 2.0) / std::sinh(M_PI * (km + kp) * L / 2.0);
        return 1.0 - ratio * ratio;
    }

    if (const auto* s2 = p.get_if<Sech2Potential>()) {
        const double k = std::sqrt(c * energy);
        const double L = s2->length;
        const double rho = 4.0 * c * s2->ve * L * L; // 8 m Ve L^2/hbar^2 = 4 c Ve L^2
        const double sh = std::sinh(M_PI * k * L);
        const double cc = 0.5 * (1.0 + cos_continued(rho)); // cos^2(pi sqrt(1-rho)/2), continued
        return sh * sh / (sh * sh + cc);
    }

    if (const auto* pt = p.get_if<PoschlTellerPotential>()) {
        const double km = std::sqrt(c * (energy + pt->v_inf));
        const double kp = std::sqrt(c * (energy - pt->v_inf));
        const double L = pt->length;
        const double rho = 4.0 * c * pt->v0 * L * L; // 8 m V0 L^2/hbar^2
        const double num = 2.0 * std::sinh(M_PI * km * L) * std::sinh(M_PI * kp * L);
        const double den = std::cosh(M_PI * (km + kp) * L) + cos_continued(rho);
        return num / den;
    }

    throw UnsupportedFamily("exact_transmission: no closed form for family '" +
                            family_name(p) + "' (use the numeric solver)");
}

ExactAmplitudes exact_amplitudes(const PotentialSpec& p, double energy,
                                 const UnitsConvention& u) {
    u.validate();
    const double c = u.k2_factor();
    const double vm = v_minus_inf(p);
    const double vp = v_plus_inf(p);
    if (!(energy > std::max(vm, vp)))
        throw BelowAsymptote("exact_amplitudes: E must exceed both asymptotes");

    if (p.holds<FreePotential>()) return {1.0, 0.0};

    if (const auto* st = p.get_if<StepPotential>()) {
        const cplx km = std::sqrt(c * (energy - st->v_minus));
        const cplx kp = std::sqrt(c * (energy - st->v_plus));
        return piecewise_amplitudes({km, kp}, {0.0}, {0.0});
    }

    if (const auto* d = p.get_if<DeltaPotential>()) {
        const double k = std::sqrt(c * energy);
        const cplx kk{k, 0.0};
        return piecewise_amplitudes({kk, kk}, {d->x0}, {d->g});
    }

    if (const auto* dd = p.get_if<DoubleDeltaPotential>()) {
        const double k = std::sqrt(c * energy);
        const cplx kk{k, 0.0};
        return piecewise_amplitudes({kk, kk, kk}, {-dd->d / 2.0, dd->d / 2.0}, {dd->g, dd->g});
    }

    if (const auto* sb = p.get_if<SquareBarrierPotential>()) {
        const cplx k = std::sqrt(cplx(c * energy));
        const cplx q = std::sqrt(cplx(c * (energy - sb->v0)));
        return piecewise_amplitudes({k, q, k}, {0.0, sb->length}, {0.0, 0.0});
    }

    if (const auto* aw = p.get_if<AsymSquareWellPotential>()) {
        const cplx k1 = std::sqrt(cplx(c * (energy - aw->v1)));
        const cplx k2 = std::sqrt(cplx(c * (energy - aw->v2)));
        const cplx k3 = std::sqrt(cplx(c * (energy - aw->v3)));
        return piecewise_amplitudes({k1, k2, k3}, {aw->a, aw->b}, {0.0, 0.0});
    }

    throw UnsupportedFamily("exact_amplitudes: phases not implemented for family '" +
                            family_name(p) + "' (magnitudes via exact_transmission)");
}

std::vector<QnmFrequency> qnm(const PotentialSpec& p, int n_min, int n_max,
                              const UnitsConvention& u) {
    u.validate();
    const double c = u.k2_factor();
    std::vector<QnmFrequency> out;

    if (const auto* d = p.get_if<DeltaPotential>()) {
        // pole of t at 1 - i g/(2k) = 0; exactly one conjugate pair
        out.push_back({cplx(0.0, d->g / 2.0), 0});
        out.push_back({cplx(0.0, -d->g / 2.0), 0});
        return out;
    }

    if (const auto* th = p.get_if<TanhPotential>()) {
        const double L = th->length;
        const double dv = c * (th->v_plus - th->v_minus);
        for (int n = n_min; n <= n_max; ++n) {
            if (n == 0) continue;
            out.push_back({kI * (n / L + dv * L / (4.0 * n)), n});
        }
        return out;
    }

    if (const auto* s2 = p.get_if<Sech2Potential>()) {
        const double L = s2->length;
        const double rho = 4.0 * c * s2->ve * L * L;
        const cplx s = std::sqrt(cplx(1.0 - rho));
        for (int n = n_min; n <= n_max; ++n) {
            out.push_back({kI * ((2.0 * n + 1.0) + s) / (2.0 * L), n});
            out.push_back({kI * ((2.0 * n + 1.0) - s) / (2.0 * L), n});
        }
        return out;
    }

    if (const auto* pt = p.get_if<PoschlTellerPotential>()) {
        const double L = pt->length;
        const double rho = 4.0 * c * pt->v0 * L * L;
        const cplx s = std::sqrt(cplx(1.0 - rho));
        const double w = c * pt->v_inf;
        for (int n = n_min; n <= n_max; ++n) {
            for (double sign : {+1.0, -1.0}) {
                const cplx m = (2.0 * n + 1.0) + sign * s;
                if (std::abs(m) < 1e-12) continue;
                out.push_back({kI * (w * L / m + m / (2.0 * L)), n});
            }
        }
        return out;
    }

    throw UnsupportedFamily("qnm: no explicit closed form for family '" + family_name(p) +
                            "'");
}

double qnm_residual(const PotentialSpec& p, cplx k, const UnitsConvention& u) {
    const double c = u.k2_factor();

    if (const auto* d = p.get_if<DeltaPotential>()) {
        // T-denominator 1 + g^2/(4k^2) vanishes at both members of the pair
        const double k0 = d->g / 2.0;
        return std::abs(1.0 + k0 * k0 / (k * k));
    }

    if (const auto* th = p.get_if<TanhPotential>()) {
        // k is k_{+inf}; k_{-inf}^2 = k^2 + c (V+ - V-); pick the sqrt branch that
        // minimizes the residual (global branch choice is a convention)
        const double L = th->length;
        const cplx km2 = k * k + c * (th->v_plus - th->v_minus);
        const cplx km = std::sqrt(km2);
        double best = 1e300;
        for (double sgn : {+1.0, -1.0}) {
            const cplx arg = M_PI * (sgn * km + k) * L / 2.0;
            // normalized: sinh grows fast, compare against cosh to keep O(1)
            best = std::min(best, std::abs(std::sinh(arg)) / std::max(1.0, std::abs(std::cosh(arg))));
        }
        return best;
    }

    if (const auto* s2 = p.get_if<Sech2Potential>()) {
        const double L = s2->length;
        const double rho = 4.0 * c * s2->ve * L * L;
        const cplx shk = std::sinh(M_PI * k * L);
        const cplx cc = std::cos(M_PI * std::sqrt(cplx(1.0 - rho)) / 2.0);
        const cplx den = shk * shk + cc * cc;
        return std::abs(den) / std::max(1.0, std::abs(shk * shk) + std::abs(cc * cc));
    }

    if (const auto* pt = p.get_if<PoschlTellerPotential>()) {
        const double L = pt->length;
        const double rho = 4.0 * c * pt->v0 * L * L;
        const cplx km2 = k * k + 2.0 * c * pt->v_inf;
        const cplx km = std::sqrt(km2);
        double best = 1e300;
        for (double sgn : {+1.0, -1.0}) {
            const cplx den =
                std::cosh(M_PI * (sgn * km + k) * L) + std::cos(M_PI * std::sqrt(cplx(1.0 - rho)));
            const double norm = std::max(1.0, std::abs(std::cosh(M_PI * (sgn * km + k) * L)));
            best = std::min(best, std::abs(den) / norm);
        }
        return best;
    }

    throw UnsupportedFamily("qnm_residual: unsupported family '" + family_name(p) + "'");
}

} // namespace scatterbound
