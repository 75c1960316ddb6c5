#include "scatterbound/millergood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

namespace scatterbound {

namespace {

double sech2_of(double x) {
    const double c = std::cosh(x);
    if (!std::isfinite(c)) return 0.0;
    return 1.0 / (c * c);
}

std::function<double(double)> numeric_derivative(std::function<double(double)> f) {
    return [f = std::move(f)](double x) {
        const double h = 1e-6 * std::max(1.0, std::abs(x));
        return (f(x + h) - f(x - h)) / (2.0 * h);
    };
}

struct ResolvedChoice {
    std::function<double(double)> H, H_prime, J, J_prime, J_second;
    bool numeric_fallback = false;
};

ResolvedChoice resolve(const Dispersion& d, const MgBoundChoice& choice) {
    ResolvedChoice rc;
    if (choice.H) {
        rc.H = choice.H;
        if (choice.H_prime) {
            rc.H_prime = choice.H_prime;
        } else {
            rc.H_prime = numeric_derivative(choice.H);
            rc.numeric_fallback = true;
        }
    } else {
        const double kinf = std::sqrt(d.k_minus_inf * d.k_plus_inf);
        rc.H = [kinf](double) { return kinf; };
        rc.H_prime = [](double) { return 0.0; };
    }
    if (choice.J) {
        rc.J = choice.J;
        if (choice.J_prime) {
            rc.J_prime = choice.J_prime;
        } else {
            rc.J_prime = numeric_derivative(choice.J);
            rc.numeric_fallback = true;
        }
        if (choice.J_second) {
            rc.J_second = choice.J_second;
        } else {
            rc.J_second = numeric_derivative(rc.J_prime);
            rc.numeric_fallback = true;
        }
    } else {
        rc.J = [](double) { return 1.0; };
        rc.J_prime = [](double) { return 0.0; };
        rc.J_second = [](double) { return 0.0; };
    }
    return rc;
}

BoundResult bound_from_integral(std::string id, double integral, double err, bool valid = true,
                                std::string reason = {}) {
    BoundResult r;
    r.kind = BoundKind::LowerT;
    r.bound_id = std::move(id);
    r.integral = integral;
    r.quad_err = err;
    r.valid = valid;
    r.reason = std::move(reason);
    r.value = sech2_of(integral);
    return r;
}

QuadratureConfig with_splits(const Dispersion& d, const QuadratureConfig& quad) {
    QuadratureConfig cfg = quad;
    cfg.split_points = d.breakpoints;
    for (const auto& fr : d.forbidden_regions) {
        cfg.split_points.push_back(fr.lo);
        cfg.split_points.push_back(fr.hi);
    }
    for (const auto& de : d.deltas) cfg.split_points.push_back(de.x0);
    return cfg;
}

double delta_masses(const Dispersion& d, const std::function<double(double)>& h) {
    double s = 0.0;
    for (const auto& de : d.deltas) s += std::abs(de.g) / (2.0 * h(de.x0));
    return s;
}

} // namespace

Dispersion mg_transform(const Dispersion& d, const MgMap& map) {
    if (!map.f) throw NonMonotoneMap("mg_transform: missing map function");
    if (!d.deltas.empty())
        throw UnsupportedFamily("mg_transform: delta interfaces are not remapped");
    auto f = map.f;
    auto fp = map.f_prime ? map.f_prime : numeric_derivative(f);
    auto fpp = map.f_second ? map.f_second : numeric_derivative(fp);

    // j(x) = X', positive; from either representation
    const bool big = (map.kind == MgMap::Kind::BigJ);
    auto jfun = [f, big](double x) {
        const double v = f(x);
        if (!(v > 0.0)) throw NonMonotoneMap("mg_transform: map must be positive");
        return big ? 1.0 / (v * v) : v;
    };

    // K^2 as a function of x
    auto K2x = [f, fp, fpp, big, &d](double x) {
        const double v = f(x);
        if (big) {
            // K^2 = J^4 (k^2 + J''/J)
            return v * v * v * v * (d.k2(x) + fpp(x) / v);
        }
        const double j = v, jp = fp(x), jpp = fpp(x);
        return (d.k2(x) - 0.5 * jpp / j + 0.75 * jp * jp / (j * j)) / (j * j);
    };

    // X(x) on a dense grid over the window (trapezoid-refined Simpson), then the
    // inverse x(X) by monotone interpolation.
    const int n = 8192;
    const double a = d.window_left, b = d.window_right;
    const double h = (b - a) / n;
    std::vector<double> xs(n + 1), Xs(n + 1);
    std::vector<double> jv(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = a + i * h;
        jv[i] = jfun(xs[i]);
    }
    Xs[0] = xs[0];
    for (int i = 1; i <= n; ++i) {
        // Simpson on each step via midpoint
        const double jm = jfun(xs[i - 1] + 0.5 * h);
        Xs[i] = Xs[i - 1] + h / 6.0 * (jv[i - 1] + 4.0 * jm + jv[i]);
    }
    auto inverse = std::make_shared<MonotoneCubic>(Xs, xs);

    const double Km = d.k_minus_inf / jfun(a);
    const double Kp = d.k_plus_inf / jfun(b);

    auto K2 = [inverse, K2x, Xs, a, b, Km, Kp](double X) {
        if (X <= Xs.front()) return Km * Km;
        if (X >= Xs.back()) return Kp * Kp;
        return K2x((*inverse)(X));
    };
    return dispersion_from_k2(K2, Km, Kp, Xs.front(), Xs.back());
}

BoundResult improved_bound(const Dispersion& d, const MgBoundChoice& choice,
                           const QuadratureConfig& quad) {
    ResolvedChoice rc = resolve(d, choice);
    auto cfg = with_splits(d, quad);
    auto integrand = [&](double x) {
        const double H = rc.H(x);
        if (!(H > 0.0)) throw DomainError("improved_bound: H must be positive");
        const double J = rc.J(x);
        if (!(J > 0.0)) throw DomainError("improved_bound: J must be positive");
        const double t1 = rc.H_prime(x) + 2.0 * H * rc.J_prime(x) / J;
        const double t2 = d.k2(x) + rc.J_second(x) / J - H * H;
        return std::hypot(t1, t2) / (2.0 * H);
    };
    auto res = integrate(integrand, d.window_left, d.window_right, cfg);
    const double mass = delta_masses(d, rc.H);
    BoundResult r = bound_from_integral("mg-form3", res.value + mass,
                                        res.error + (rc.numeric_fallback ? 1e-8 : 0.0));
    return r;
}

BoundResult improved_bound_form1(const Dispersion& d, const MgBoundChoice& choice,
                                 const QuadratureConfig& quad) {
    // h = H J^2, j = J^{-2}: integrand (1/2h) sqrt( h'^2 + [ (1/j){k^2 - j''/(2j)
    // + 3 j'^2/(4 j^2)} - j h^2 ]^2 )
    ResolvedChoice rc = resolve(d, choice);
    auto cfg = with_splits(d, quad);
    auto integrand = [&](double x) {
        const double H = rc.H(x), Hp = rc.H_prime(x);
        const double J = rc.J(x), Jp = rc.J_prime(x), Jpp = rc.J_second(x);
        const double h = H * J * J;
        const double hp = Hp * J * J + 2.0 * H * J * Jp;
        const double j = 1.0 / (J * J);
        const double jp = -2.0 * Jp / (J * J * J);
        const double jpp = (-2.0 * Jpp + 6.0 * Jp * Jp / J) / (J * J * J);
        const double inner = (d.k2(x) - 0.5 * jpp / j + 0.75 * jp * jp / (j * j)) / j;
        return std::hypot(hp, inner - j * h * h) / (2.0 * h);
    };
    auto res = integrate(integrand, d.window_left, d.window_right, cfg);
    auto h = [&rc](double x) {
        const double J = rc.J(x);
        return rc.H(x) * J * J;
    };
    BoundResult r = bound_from_integral("mg-form1", res.value + delta_masses(d, h), res.error);
    return r;
}

BoundResult improved_bound_form2(const Dispersion& d, const MgBoundChoice& choice,
                                 const QuadratureConfig& quad) {
    // h = H J^2: integrand (1/2h) sqrt( h'^2 + [ J^2 (k^2 + J''/J) - h^2/J^2 ]^2 )
    ResolvedChoice rc = resolve(d, choice);
    auto cfg = with_splits(d, quad);
    auto integrand = [&](double x) {
        const double H = rc.H(x), Hp = rc.H_prime(x);
        const double J = rc.J(x), Jp = rc.J_prime(x), Jpp = rc.J_second(x);
        const double h = H * J * J;
        const double hp = Hp * J * J + 2.0 * H * J * Jp;
        const double t2 = J * J * (d.k2(x) + Jpp / J) - h * h / (J * J);
        return std::hypot(hp, t2) / (2.0 * h);
    };
    auto res = integrate(integrand, d.window_left, d.window_right, cfg);
    auto h = [&rc](double x) {
        const double J = rc.J(x);
        return rc.H(x) * J * J;
    };
    BoundResult r = bound_from_integral("mg-form2", res.value + delta_masses(d, h), res.error);
    return r;
}

BoundResult schwarzian_bound(const Dispersion& d, const QuadratureConfig& quad) {
    if (d.has_forbidden_region())
        throw ForbiddenRegion("schwarzian_bound: requires k^2 > 0 everywhere");
    // a jump in k^2 makes (1/sqrt k)'' distributionally divergent: the sharp-corner
    // limit of the integral is +inf and the bound degenerates to the trivial T >= 0
    for (double b : d.breakpoints) {
        const double eps = 1e-9 * std::max(1.0, std::abs(b));
        const double k2l = d.k2(b - eps), k2r = d.k2(b + eps);
        if (std::abs(k2r - k2l) > 1e-9 * std::max(1.0, std::abs(k2l))) {
            BoundResult r;
            r.kind = BoundKind::LowerT;
            r.bound_id = "schwarzian";
            r.integral = std::numeric_limits<double>::infinity();
            r.value = 0.0;
            r.reason = "divergent at sharp corners; only the trivial bound remains";
            return r;
        }
    }
    if (!d.deltas.empty()) {
        BoundResult r;
        r.kind = BoundKind::LowerT;
        r.bound_id = "schwarzian";
        r.integral = std::numeric_limits<double>::infinity();
        r.value = 0.0;
        r.reason = "divergent at delta interfaces; only the trivial bound remains";
        return r;
    }
    auto cfg = with_splits(d, quad);
    // u = (k^2)^{-1/4}; integrand = |u u''| / 2 with
    // u'' = (5/16)(k^2)^{-9/4} (k^2)'^2 - (1/4)(k^2)^{-5/4} (k^2)''
    auto integrand = [&](double x) {
        const double k2 = d.k2(x);
        if (!(k2 > 0.0)) throw ForbiddenRegion("schwarzian_bound: k^2 <= 0 encountered");
        const double dp = d.k2_prime(x);
        const double dpp = d.k2_second(x);
        const double u = std::pow(k2, -0.25);
        const double upp =
            (5.0 / 16.0) * std::pow(k2, -2.25) * dp * dp - 0.25 * std::pow(k2, -1.25) * dpp;
        return 0.5 * std::abs(u * upp);
    };
    auto res = integrate(integrand, d.window_left, d.window_right, cfg);
    return bound_from_integral("schwarzian", res.value, res.error);
}

BoundResult low_energy_bound(const Dispersion& d, const QuadratureConfig& quad) {
    const double km = d.k_minus_inf, kp = d.k_plus_inf;
    if (std::abs(km - kp) > 1e-9 * std::max(km, kp))
        throw AsymmetricAsymptotes("low_energy_bound: requires V(+inf) = V(-inf) = 0");
    const double kinf2 = km * kp;

    // chi^2 = k_inf^2 - k^2 = 2 m V / hbar^2 must be nonnegative
    auto ext = find_extrema(d, {d.window_left, d.window_right});
    std::size_t humps = 0;
    for (const auto& e : ext)
        if (e.kind == ExtremumKind::Valley) ++humps;
    if (humps > 1) throw MultiHump("low_energy_bound: requires a single-hump potential");
    double chi2_max = 0.0;
    for (const auto& e : ext) chi2_max = std::max(chi2_max, kinf2 - e.k2);
    const int nf = 4096;
    int best_i = 0;
    for (int i = 0; i <= nf; ++i) {
        const double x = d.window_left + d.window_width() * i / nf;
        const double v = kinf2 - d.k2(x);
        if (v > chi2_max) {
            chi2_max = v;
            best_i = i;
        }
    }
    if (best_i > 0) {
        // golden-section polish around the best grid cell
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = d.window_left + d.window_width() * (best_i - 1) / nf;
        double b = d.window_left + d.window_width() * (best_i + 1) / nf;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = kinf2 - d.k2(c1), f2 = kinf2 - d.k2(c2);
        for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
            if (f1 < f2) {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + gr * (b - a);
                f2 = kinf2 - d.k2(c2);
            } else {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - gr * (b - a);
                f1 = kinf2 - d.k2(c1);
            }
        }
        chi2_max = std::max(chi2_max, std::max(f1, f2));
    }

    auto cfg = with_splits(d, quad);
    double neg_check = 0.0;
    auto integrand = [&](double x) {
        const double chi2 = kinf2 - d.k2(x);
        if (chi2 < -1e-9 * kinf2) neg_check = std::min(neg_check, chi2);
        return std::sqrt(std::max(0.0, chi2));
    };
    // sqrt(V) decays at half the rate of V; widen the truncation window accordingly
    const double pad = d.window_width();
    auto res = integrate(integrand, d.window_left - pad, d.window_right + pad, cfg);
    if (neg_check < 0.0)
        throw NegativePotential("low_energy_bound: requires V(x) >= 0 everywhere");

    // deltas carry infinite sup V; only finite profiles qualify
    if (!d.deltas.empty())
        throw NegativePotential("low_energy_bound: not defined for delta interfaces");

    const double arg = std::sqrt(chi2_max) / std::sqrt(kinf2) + res.value;
    // computing chi^2 = k_inf^2 - k^2 loses the tail where V < eps_mach * E; the
    // sqrt integrand there is ~ k_inf sqrt(eps_mach)
    const double cancellation = 1e-9 * std::sqrt(kinf2) * d.window_width();
    BoundResult r = bound_from_integral("low-energy", arg, res.error + cancellation);
    // more stringent than case 1 when sqrt(Vmax) < (1/2) Int sqrt(2m) V/hbar; in k
    // language: chi_max < (1/(2 k_inf)) Int chi^2
    auto res2 = integrate([&](double x) { return std::max(0.0, kinf2 - d.k2(x)); },
                          d.window_left, d.window_right, cfg);
    r.secondary = res2.value / (2.0 * std::sqrt(kinf2)) - std::sqrt(chi2_max);
    r.secondary_id = "low-energy-advantage";
    return r;
}

BoundResult wkb_like_bound(const Dispersion& d, const QuadratureConfig& quad) {
    if (!d.has_forbidden_region())
        throw NoForbiddenRegion("wkb_like_bound: requires a classically forbidden region");
    const double km = d.k_minus_inf, kp = d.k_plus_inf;
    if (std::abs(km - kp) > 1e-9 * std::max(km, kp))
        throw AsymmetricAsymptotes("wkb_like_bound: requires symmetric asymptotes");
    if (d.forbidden_regions.size() != 1)
        throw NotSingleHump("wkb_like_bound: requires a single forbidden region");
    const double kinf = km;

    auto cfg = with_splits(d, quad);
    const auto& fr = d.forbidden_regions.front();
    auto res_kappa = integrate([&](double x) { return std::sqrt(std::max(0.0, -d.k2(x))); },
                               fr.lo, fr.hi, cfg);

    // kappa_max over the barrier
    auto ext = find_extrema(d, {fr.lo, fr.hi});
    double kap2 = 0.0;
    for (const auto& e : ext) kap2 = std::max(kap2, -e.k2);
    const int nf = 512;
    for (int i = 0; i <= nf; ++i)
        kap2 = std::max(kap2, -d.k2(fr.lo + (fr.hi - fr.lo) * i / nf));
    const double kappa_max = std::sqrt(kap2);

    // allowed-region contribution
    double allowed = 0.0, err = res_kappa.error;
    auto allowed_part = [&](double a, double b) {
        if (b <= a) return;
        auto res = integrate(
            [&](double x) { return std::abs(kinf * kinf - d.k2(x)) / (2.0 * kinf); }, a, b,
            cfg);
        allowed += res.value;
        err += res.error;
    };
    allowed_part(d.window_left, fr.lo);
    allowed_part(fr.hi, d.window_right);

    const double L = fr.width();
    const double arg = res_kappa.value + kappa_max / kinf + 0.5 * kinf * L + allowed;
    BoundResult r = bound_from_integral("wkb-like", arg, err);
    r.secondary = sech2_of(res_kappa.value + std::log(2.0));
    r.secondary_id = "wkb-estimate";
    return r;
}

BoundResult delta_param_bound(const Dispersion& d, double delta, const QuadratureConfig& quad) {
    const double km = d.k_minus_inf, kp = d.k_plus_inf;
    if (!(delta > 0.0 && delta * delta <= km * km + 1e-12 && delta * delta <= kp * kp + 1e-12))
        throw ParameterOutOfRange("delta_param_bound: need 0 < Delta <= min(k-, k+)");

    auto ext = find_extrema(d, {d.window_left, d.window_right});
    std::size_t humps = 0;
    for (const auto& e : ext) {
        if (e.kind == ExtremumKind::Valley) ++humps;
        // positive-potential hypothesis: interior k^2 peaks above the asymptotes add
        // clamped-h travel the displayed ln(k+ k-/Delta^2) term does not cover
        if (e.kind == ExtremumKind::Peak &&
            e.k2 > std::max(km * km, kp * kp) + 1e-9 * std::max(1.0, km * km))
            throw NegativePotential(
                "delta_param_bound: requires the potential to stay above its asymptotes");
    }
    if (humps > 1) throw NotSingleHump("delta_param_bound: requires a single-hump potential");

    auto cfg = with_splits(d, quad);
    const double d2 = delta * delta;
    double sup = 0.0;
    // the sqrt integrand decays at half the rate of V; widen the window
    const double pad = (delta < std::min(km, kp) - 1e-9) ? 0.0 : d.window_width();
    auto res = integrate(
        [&](double x) {
            const double v = d2 - d.k2(x);
            if (v > sup) sup = v;
            return std::sqrt(std::max(0.0, v));
        },
        d.window_left - pad, d.window_right + pad, cfg);
    // refine sup over a fixed grid as the quadrature may not have visited the top
    const int nf = 2048;
    for (int i = 0; i <= nf; ++i) {
        const double x = d.window_left + d.window_width() * i / nf;
        sup = std::max(sup, d2 - d.k2(x));
    }

    const double arg =
        0.5 * std::log(km * kp / d2) + std::sqrt(std::max(0.0, sup)) / delta + res.value;
    return bound_from_integral("delta-param", arg, res.error);
}

BoundResult delta_param_bound_optimized(const Dispersion& d, const QuadratureConfig& quad) {
    const double dmax = std::min(d.k_minus_inf, d.k_plus_inf);
    // bounds are cheap; a capped golden-section suffices
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 1e-6 * dmax, b = dmax;
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    auto value_at = [&](double dd) { return delta_param_bound(d, dd, quad).value; };
    double f1 = value_at(c1), f2 = value_at(c2);
    int evals = 2;
    while (b - a > 1e-6 * dmax && evals < 200) {
        if (f1 < f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + gr * (b - a);
            f2 = value_at(c2);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = value_at(c1);
        }
        ++evals;
    }
    return delta_param_bound(d, 0.5 * (a + b), quad);
}

BoundResult production_bounds(const TimeProfile& p, const MgBoundChoice& choice,
                              const QuadratureConfig& quad) {
    Dispersion d = to_dispersion(p);
    BoundResult base = improved_bound(d, choice, quad);
    BoundResult r = base;
    r.kind = BoundKind::UpperN;
    const double s = std::sinh(base.integral);
    r.value = s * s;
    return r;
}

} // namespace scatterbound
