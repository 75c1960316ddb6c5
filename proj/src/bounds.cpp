#include "scatterbound/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace scatterbound {

namespace {

double sech2_of(double x) {
    const double c = std::cosh(x);
    if (!std::isfinite(c)) return 0.0;
    return 1.0 / (c * c);
}

double tanh2_of(double x) {
    const double t = std::tanh(x);
    return t * t;
}

// Locations where k^2 crosses k0^2 inside the window, bisected to 1e-12.
std::vector<double> level_crossings(const Dispersion& d, double level) {
    std::vector<double> out;
    const int n = 4001;
    const double w = d.window_width();
    double px = d.window_left;
    double pf = d.k2(px) - level;
    for (int i = 1; i < n; ++i) {
        const double x = d.window_left + w * i / (n - 1);
        const double f = d.k2(x) - level;
        if ((pf < 0.0) != (f < 0.0)) {
            double a = px, b = x, fa = pf;
            while (b - a > 1e-12) {
                const double m = 0.5 * (a + b);
                const double fm = d.k2(m) - level;
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push_back(0.5 * (a + b));
        }
        px = x;
        pf = f;
    }
    return out;
}

// Exponential-tail estimate for the neglected part of Int |k^2 - h^2|/(2h) beyond the
// window, folded into quadErr.
double tail_estimate(const Dispersion& d, const std::function<double(double)>& h) {
    double est = 0.0;
    const double w = std::max(1.0, 0.05 * d.window_width());
    for (double edge : {d.window_left, d.window_right}) {
        const double he = std::max(1e-30, h(edge));
        const double mis = std::abs(d.k2(edge) - he * he);
        est += mis * w / (2.0 * he);
    }
    return est;
}

struct AuxFunctions {
    std::function<double(double)> h;
    std::function<double(double)> h_prime;
    std::vector<double> extra_splits;
    bool matched_tails = true;
    std::string mismatch_reason;
};

AuxFunctions make_aux(const Dispersion& d, const AuxiliaryChoice& aux) {
    AuxFunctions fns;
    const double km = d.k_minus_inf, kp = d.k_plus_inf;
    const double match_tol = 1e-6 * std::max(km, kp);

    if (const auto* ca = std::get_if<ConstantAux>(&aux)) {
        const double k0 = ca->k0;
        if (!(k0 > 0.0)) throw DomainError("ConstantAux: k0 must be positive");
        fns.h = [k0](double) { return k0; };
        fns.h_prime = [](double) { return 0.0; };
        if (std::abs(k0 - km) > match_tol || std::abs(k0 - kp) > match_tol) {
            fns.matched_tails = false;
            fns.mismatch_reason = "divergent integral: h(+-inf) != k(+-inf)";
        }
        return fns;
    }
    if (std::get_if<PhaseEqualsKAux>(&aux)) {
        if (d.has_forbidden_region())
            throw ForbiddenRegion("PhaseEqualsK: requires k^2 > 0 everywhere");
        fns.h = [&d](double x) { return std::sqrt(std::max(1e-300, d.k2(x))); };
        fns.h_prime = [&d](double x) {
            const double k2 = std::max(1e-300, d.k2(x));
            return d.k2_prime(x) / (2.0 * std::sqrt(k2));
        };
        return fns;
    }
    if (const auto* mc = std::get_if<MaxClampAux>(&aux)) {
        const double k0 = mc->k0;
        if (!(k0 > 0.0)) throw DomainError("MaxClampAux: k0 must be positive");
        fns.h = [&d, k0](double x) { return std::sqrt(std::max(d.k2(x), k0 * k0)); };
        fns.h_prime = [&d, k0](double x) {
            const double k2 = d.k2(x);
            if (k2 <= k0 * k0) return 0.0;
            return d.k2_prime(x) / (2.0 * std::sqrt(k2));
        };
        fns.extra_splits = level_crossings(d, k0 * k0);
        if (k0 > std::min(km, kp) + match_tol) {
            fns.matched_tails = false;
            fns.mismatch_reason = "divergent integral: k0 exceeds an asymptotic wavenumber";
        }
        return fns;
    }
    if (const auto* pi = std::get_if<PowerInterpAux>(&aux)) {
        const double eps = pi->eps;
        if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("PowerInterpAux: eps in [0,1]");
        if (d.has_forbidden_region() && eps > 0.0)
            throw ForbiddenRegion("PowerInterp: requires k^2 > 0 everywhere");
        const double kinf = std::sqrt(km * kp);
        fns.h = [&d, eps, kinf](double x) {
            const double k = std::sqrt(std::max(1e-300, d.k2(x)));
            return std::pow(k, eps) * std::pow(kinf, 1.0 - eps);
        };
        fns.h_prime = [&d, eps, kinf](double x) {
            const double k2 = std::max(1e-300, d.k2(x));
            const double k = std::sqrt(k2);
            const double h = std::pow(k, eps) * std::pow(kinf, 1.0 - eps);
            return eps * h * d.k2_prime(x) / (2.0 * k2);
        };
        if (std::abs(km - kp) > match_tol && eps < 1.0) {
            fns.matched_tails = false;
            fns.mismatch_reason = "divergent integral: asymmetric asymptotes under PowerInterp";
        }
        return fns;
    }
    const auto& uf = std::get<UserFunctionAux>(aux);
    if (!uf.h || !uf.h_prime) throw DomainError("UserFunctionAux: h and h' required");
    fns.h = uf.h;
    fns.h_prime = uf.h_prime;
    if (std::abs(uf.h(d.window_left) - km) > match_tol ||
        std::abs(uf.h(d.window_right) - kp) > match_tol) {
        fns.matched_tails = false;
        fns.mismatch_reason = "divergent integral: h(+-inf) != k(+-inf)";
    }
    return fns;
}

BoundResult make_result(BoundKind kind, std::string id, double integral, double quad_err,
                        bool valid, std::string reason) {
    BoundResult r;
    r.kind = kind;
    r.bound_id = std::move(id);
    r.integral = integral;
    r.quad_err = quad_err;
    r.valid = valid;
    r.reason = std::move(reason);
    switch (kind) {
        case BoundKind::LowerT: r.value = sech2_of(integral); break;
        case BoundKind::UpperR: r.value = tanh2_of(integral); break;
        case BoundKind::UpperAbsAlpha: r.value = std::cosh(integral); break;
        case BoundKind::UpperAbsBeta: r.value = std::sinh(integral); break;
        case BoundKind::UpperN: {
            const double s = std::sinh(integral);
            r.value = s * s;
            break;
        }
        default: r.value = integral; break;
    }
    return r;
}

// Scalar golden-section maximization on (lo, hi).
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol,
                  int max_evals = 200) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = f(c1), f2 = f(c2);
    int evals = 2;
    while (b - a > tol && evals < max_evals) {
        if (f1 < f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + gr * (b - a);
            f2 = f(c2);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = f(c1);
        }
        ++evals;
    }
    return 0.5 * (a + b);
}

} // namespace

double vartheta(double h, double h_prime, double k2) {
    if (!(h > 0.0)) throw DomainError("vartheta: h must be positive");
    return std::hypot(h_prime, k2 - h * h) / (2.0 * h);
}

double vartheta_general(double phi_prime, double phi_second, double chi, double chi_prime,
                        double k2) {
    if (!(phi_prime > 0.0)) throw DomainError("vartheta_general: phi' must be positive");
    const double a = phi_second + 2.0 * chi * phi_prime;
    const double b = k2 + chi * chi + chi_prime - phi_prime * phi_prime;
    return std::hypot(a, b) / (2.0 * phi_prime);
}

GeneralBoundSet general_bound(const Dispersion& d, const AuxiliaryChoice& aux,
                              const QuadratureConfig& quad) {
    AuxFunctions fns = make_aux(d, aux);

    QuadratureConfig cfg = quad;
    cfg.split_points = d.breakpoints;
    for (const auto& fr : d.forbidden_regions) {
        cfg.split_points.push_back(fr.lo);
        cfg.split_points.push_back(fr.hi);
    }
    for (const auto& de : d.deltas) cfg.split_points.push_back(de.x0);
    for (double s : fns.extra_splits) cfg.split_points.push_back(s);

    auto integrand = [&](double x) {
        return vartheta(fns.h(x), fns.h_prime(x), d.k2(x));
    };
    auto res = integrate(integrand, d.window_left, d.window_right, cfg);

    double integral = res.value;
    // delta spikes live in k^2; they contribute |g|/(2 h(x0)) as exact point masses
    for (const auto& de : d.deltas) integral += std::abs(de.g) / (2.0 * fns.h(de.x0));
    // a jump of h across a k^2 joint carries Int |h'|/(2h) = |ln(h+/h-)|/2, the
    // sharp-corner limit of the smooth result
    for (double b : d.breakpoints) {
        const double eps = 1e-9 * std::max(1.0, std::abs(b));
        const double hl = fns.h(b - eps), hr = fns.h(b + eps);
        if (hl > 0.0 && hr > 0.0) integral += 0.5 * std::abs(std::log(hr / hl));
    }

    const double err = res.error + tail_estimate(d, fns.h);

    GeneralBoundSet out;
    out.lower_t = make_result(BoundKind::LowerT, "general", integral, err, fns.matched_tails,
                              fns.mismatch_reason);
    out.upper_r = make_result(BoundKind::UpperR, "general", integral, err, fns.matched_tails,
                              fns.mismatch_reason);
    out.upper_abs_alpha = make_result(BoundKind::UpperAbsAlpha, "general", integral, err,
                                      fns.matched_tails, fns.mismatch_reason);
    out.upper_abs_beta = make_result(BoundKind::UpperAbsBeta, "general", integral, err,
                                     fns.matched_tails, fns.mismatch_reason);
    return out;
}

BoundResult bound_case1(const PotentialSpec& p, double energy, const UnitsConvention& u) {
    u.validate();
    const double vm = v_minus_inf(p);
    const double vp = v_plus_inf(p);
    if (std::abs(vm - vp) > 1e-12 * std::max(1.0, std::abs(vm)))
        throw AsymmetricAsymptotes("bound_case1: requires V(+inf) = V(-inf)");
    if (!(energy > vm)) throw BelowAsymptote("bound_case1: E must exceed the asymptote");

    Dispersion d = build_dispersion(p, energy, u);
    return bound_case1(d);
}

BoundResult bound_case1(const Dispersion& d, const QuadratureConfig& quad) {
    const double kinf = d.k_minus_inf;
    if (std::abs(d.k_minus_inf - d.k_plus_inf) > 1e-9 * kinf)
        throw AsymmetricAsymptotes("bound_case1: requires V(+inf) = V(-inf)");

    // (m/(hbar^2 k_inf)) |V - V_inf| == |k^2 - k_inf^2|/(2 k_inf); integrating the
    // k-space form keeps the reduction identity against the Miller-Good family exact
    // on shared quadrature nodes.
    QuadratureConfig cfg = quad;
    cfg.split_points = d.breakpoints;
    for (const auto& fr : d.forbidden_regions) {
        cfg.split_points.push_back(fr.lo);
        cfg.split_points.push_back(fr.hi);
    }
    for (const auto& de : d.deltas) cfg.split_points.push_back(de.x0);
    auto res = integrate(
        [&](double x) { return std::hypot(0.0, d.k2(x) - kinf * kinf) / (2.0 * kinf); },
        d.window_left, d.window_right, cfg);

    double arg = res.value;
    for (const auto& de : d.deltas) arg += std::abs(de.g) / (2.0 * kinf);

    BoundResult r = make_result(BoundKind::LowerT, "case1", arg, res.error, true, "");
    r.secondary = 1.0 - arg * arg;
    r.secondary_id = "case1-weak";
    return r;
}

BoundResult bound_case2(const Dispersion& d, const QuadratureConfig& quad) {
    if (d.has_forbidden_region())
        throw ForbiddenRegion("bound_case2: requires k^2 > 0 everywhere");
    for (const auto& de : d.deltas) {
        if (de.g > 0.0)
            throw ForbiddenRegion("bound_case2: delta interface drives k^2 negative");
        if (de.g < 0.0) {
            BoundResult r = make_result(BoundKind::LowerT, "case2", 0.0, 0.0, false,
                                        "divergent phase integral at attractive delta");
            r.value = 0.0;
            return r;
        }
    }

    QuadratureConfig cfg = quad;
    cfg.split_points = d.breakpoints;
    auto res = integrate(
        [&](double x) {
            const double k2 = std::max(1e-300, d.k2(x));
            return std::abs(d.k2_prime(x)) / (4.0 * k2);
        },
        d.window_left, d.window_right, cfg);

    // jump discontinuities of k^2 contribute |ln(k+/k-)| across each joint
    double integral = res.value;
    for (double b : d.breakpoints) {
        const double eps = 1e-9 * std::max(1.0, std::abs(b));
        const double k2l = d.k2(b - eps), k2r = d.k2(b + eps);
        if (k2l > 0.0 && k2r > 0.0) integral += 0.25 * std::abs(std::log(k2r / k2l));
    }
    return make_result(BoundKind::LowerT, "case2", integral, res.error, true, "");
}

double bound_case2_monotonic(double k_minus, double k_plus) {
    return 4.0 * k_plus * k_minus / ((k_plus + k_minus) * (k_plus + k_minus));
}

double bound_case2_extremum(double k_minus, double k_plus, double k_ext) {
    const double e2 = k_ext * k_ext;
    const double prod = k_plus * k_minus;
    return 4.0 * prod * e2 / ((e2 + prod) * (e2 + prod));
}

double bound_case2_multi(const std::vector<ExtremumRecord>& extrema, double k_minus,
                         double k_plus) {
    // Int |k'|/k telescopes over the alternating extrema sequence; valid in any
    // ordering (the familiar product display assumes peak-first/peak-last).
    double total = 0.0;
    double prev = k_minus;
    for (const auto& e : extrema) {
        if (!(e.k2 > 0.0)) throw ForbiddenRegion("bound_case2_multi: extremum with k^2 <= 0");
        const double k = std::sqrt(e.k2);
        total += std::abs(std::log(k / prev));
        prev = k;
    }
    total += std::abs(std::log(k_plus / prev));
    return sech2_of(0.5 * total);
}

BoundResult bound_case2a(const Dispersion& d) {
    if (d.has_forbidden_region())
        throw ForbiddenRegion("bound_case2a: requires k^2 > 0 everywhere");
    auto ext = find_extrema(d, {d.window_left, d.window_right});
    BoundResult r;
    r.kind = BoundKind::LowerT;
    r.bound_id = "case2a";
    r.value = bound_case2_monotonic(d.k_minus_inf, d.k_plus_inf);
    r.integral = std::acosh(1.0 / std::sqrt(r.value));
    r.valid = ext.empty();
    if (!r.valid) r.reason = "potential is not monotonic";
    return r;
}

BoundResult bound_case2b(const Dispersion& d) {
    if (d.has_forbidden_region())
        throw ForbiddenRegion("bound_case2b: requires k^2 > 0 everywhere");
    auto ext = find_extrema(d, {d.window_left, d.window_right});
    BoundResult r;
    r.kind = BoundKind::LowerT;
    r.bound_id = "case2b";
    if (ext.size() != 1) {
        r.valid = false;
        r.reason = "potential does not have exactly one extremum";
        r.value = 0.0;
        return r;
    }
    r.value = bound_case2_extremum(d.k_minus_inf, d.k_plus_inf, std::sqrt(ext[0].k2));
    r.integral = std::acosh(1.0 / std::sqrt(r.value));
    return r;
}

BoundResult bound_case2c(const Dispersion& d) {
    if (d.has_forbidden_region())
        throw ForbiddenRegion("bound_case2c: requires k^2 > 0 everywhere");
    auto ext = find_extrema(d, {d.window_left, d.window_right});
    BoundResult r;
    r.kind = BoundKind::LowerT;
    r.bound_id = "case2c";
    r.value = bound_case2_multi(ext, d.k_minus_inf, d.k_plus_inf);
    r.integral = std::acosh(1.0 / std::sqrt(std::max(1e-300, r.value)));
    return r;
}

BoundResult bound_case3(const Dispersion& d, double k0, const QuadratureConfig& quad) {
    const double kmin = std::min(d.k_minus_inf, d.k_plus_inf);
    if (!(k0 > 0.0 && k0 < kmin))
        throw ParameterOutOfRange("bound_case3: need 0 < k0 < min(k-, k+)");

    // regions with k^2 < k0^2
    auto cross = level_crossings(d, k0 * k0);
    std::vector<Interval> low;
    {
        std::vector<double> edges = cross;
        edges.insert(edges.begin(), d.window_left);
        edges.push_back(d.window_right);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double mid = 0.5 * (edges[i] + edges[i + 1]);
            if (d.k2(mid) < k0 * k0) low.push_back({edges[i], edges[i + 1]});
        }
    }

    double L = 0.0;
    for (const auto& iv : low) L += iv.width();

    QuadratureConfig cfg = quad;
    cfg.split_points = d.breakpoints;
    for (const auto& fr : d.forbidden_regions) {
        cfg.split_points.push_back(fr.lo);
        cfg.split_points.push_back(fr.hi);
    }
    double int_kappa2 = 0.0, err = 0.0;
    for (const auto& fr : d.forbidden_regions) {
        auto res = integrate([&](double x) { return std::max(0.0, -d.k2(x)); }, fr.lo, fr.hi,
                             cfg);
        int_kappa2 += res.value;
        err += res.error;
    }
    for (const auto& de : d.deltas) int_kappa2 += std::max(0.0, de.g);

    const double B = int_kappa2 / (2.0 * k0) + 0.5 * k0 * L;

    // ln travel of h = sqrt(max(k^2, k0^2)). The displayed (1/2) ln(k- k+/k0^2)
    // telescopes from this when k^2 has a single valley reaching below k0^2; interior
    // peaks add travel the display misses, so take the larger of the two (each is an
    // upper bound for Oint theta whenever it dominates).
    const double s_display = 0.5 * std::log((d.k_minus_inf * d.k_plus_inf) / (k0 * k0));
    double s_travel = 0.0;
    {
        auto clamped = [&](double k2) { return std::sqrt(std::max(k2, k0 * k0)); };
        double prev = clamped(d.k_minus_inf * d.k_minus_inf);
        for (const auto& e : find_extrema(d, {d.window_left, d.window_right})) {
            const double h = clamped(e.k2);
            s_travel += 0.5 * std::abs(std::log(h / prev));
            prev = h;
        }
        s_travel += 0.5 * std::abs(std::log(clamped(d.k_plus_inf * d.k_plus_inf) / prev));
    }
    const double arg = std::max(s_display, s_travel) + B;

    BoundResult r;
    r.kind = BoundKind::LowerT;
    r.bound_id = "case3";
    const double ch = std::cosh(arg);
    r.value = 1.0 / (ch * ch);
    r.integral = arg;
    r.quad_err = err / (2.0 * k0);
    return r;
}

BoundResult bound_case3_optimized(const Dispersion& d, const QuadratureConfig& quad) {
    const double kmin = std::min(d.k_minus_inf, d.k_plus_inf);
    auto value_at = [&](double k0) { return bound_case3(d, k0, quad).value; };
    const double k0 = golden_max(value_at, 1e-6 * kmin, kmin * (1.0 - 1e-9), 1e-6 * kmin);
    BoundResult r = bound_case3(d, k0, quad);
    r.bound_id = "case3";
    return r;
}

BoundResult bound_case4(const Dispersion& d, double k0, const QuadratureConfig& quad) {
    if (!d.has_forbidden_region())
        throw NoForbiddenRegion("bound_case4: requires a classically forbidden region");
    if (d.forbidden_regions.size() != 1)
        throw NotSingleHump("bound_case4: requires a single forbidden region");
    auto ext = find_extrema(d, {d.window_left, d.window_right});
    std::size_t valleys = 0;
    for (const auto& e : ext)
        if (e.kind == ExtremumKind::Valley) ++valleys;
    if (valleys != 1) throw NotSingleHump("bound_case4: requires a single-hump potential");

    QuadratureConfig cfg = quad;
    const auto& fr = d.forbidden_regions.front();
    cfg.split_points = {fr.lo, fr.hi};

    // kappa_ext = max sqrt(-k^2) over the forbidden region
    double kap2_max = 0.0;
    for (const auto& e : ext)
        if (e.kind == ExtremumKind::Valley) kap2_max = std::max(kap2_max, -e.k2);
    const double kappa_ext = std::sqrt(kap2_max);

    const double kmin = std::min({d.k_minus_inf, d.k_plus_inf, kappa_ext});
    if (!(k0 > 0.0 && k0 < kmin))
        throw ParameterOutOfRange("bound_case4: need 0 < k0 < min(k-, k+, kappa_ext)");

    // transition regions -k0^2 < k^2 < k0^2
    auto up = level_crossings(d, k0 * k0);
    auto dn = level_crossings(d, -k0 * k0);
    std::vector<double> edges;
    edges.insert(edges.end(), up.begin(), up.end());
    edges.insert(edges.end(), dn.begin(), dn.end());
    edges.push_back(d.window_left);
    edges.push_back(d.window_right);
    std::sort(edges.begin(), edges.end());
    double L = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double mid = 0.5 * (edges[i] + edges[i + 1]);
        const double k2 = d.k2(mid);
        if (k2 > -k0 * k0 && k2 < k0 * k0) L += edges[i + 1] - edges[i];
    }

    auto res = integrate([&](double x) { return std::sqrt(std::max(0.0, -d.k2(x))); }, fr.lo,
                         fr.hi, cfg);

    BoundResult r;
    r.kind = BoundKind::LowerT;
    r.bound_id = "case4";
    const double pref = std::pow(k0, 4) / (d.k_minus_inf * d.k_plus_inf * kap2_max);
    r.value = pref * std::exp(-2.0 * k0 * L) * std::exp(-res.value);
    r.integral = -0.5 * std::log(pref) + k0 * L + 0.5 * res.value;
    r.quad_err = res.error;
    return r;
}

BoundResult bound_case4_optimized(const Dispersion& d, const QuadratureConfig& quad) {
    // establish kappa_ext for the admissible range first
    auto probe = [&]() {
        auto ext = find_extrema(d, {d.window_left, d.window_right});
        double kap2 = 0.0;
        for (const auto& e : ext)
            if (e.kind == ExtremumKind::Valley) kap2 = std::max(kap2, -e.k2);
        return std::sqrt(kap2);
    };
    const double kmin = std::min({d.k_minus_inf, d.k_plus_inf, probe()});
    auto value_at = [&](double k0) { return bound_case4(d, k0, quad).value; };
    const double k0 = golden_max(value_at, 1e-6 * kmin, kmin * (1.0 - 1e-9), 1e-6 * kmin);
    return bound_case4(d, k0, quad);
}

BoundResult wkb_estimate(const Dispersion& d, const QuadratureConfig& quad) {
    if (!d.has_forbidden_region())
        throw NoForbiddenRegion("wkb_estimate: requires a classically forbidden region");
    QuadratureConfig cfg = quad;
    double total = 0.0, err = 0.0;
    for (const auto& fr : d.forbidden_regions) {
        cfg.split_points = {fr.lo, fr.hi};
        auto res =
            integrate([&](double x) { return std::sqrt(std::max(0.0, -d.k2(x))); }, fr.lo,
                      fr.hi, cfg);
        total += res.value;
        err += res.error;
    }
    BoundResult r = make_result(BoundKind::LowerT, "wkb-estimate", total + std::log(2.0), err,
                                true, "estimate, not a bound");
    return r;
}

std::complex<double> born_beta_estimate(const Dispersion& d, const QuadratureConfig& quad) {
    const double km = d.k_minus_inf, kp = d.k_plus_inf;
    if (std::abs(km - kp) > 1e-9 * std::max(km, kp))
        throw AsymmetricAsymptotes("born_beta_estimate: requires V(+inf) = V(-inf)");
    const double kinf = km;

    QuadratureConfig cfg = quad;
    cfg.split_points = d.breakpoints;
    for (const auto& de : d.deltas) cfg.split_points.push_back(de.x0);
    // beta ~ (i/(2 k_inf)) Int (k_inf^2 - k^2(x)) e^{2 i k_inf x} dx
    std::complex<double> val;
    integrate_complex_real(
        [&](double x) {
            const std::complex<double> phase{std::cos(2.0 * kinf * x),
                                             std::sin(2.0 * kinf * x)};
            return (kinf * kinf - d.k2(x)) * phase;
        },
        d.window_left, d.window_right, cfg, val);
    for (const auto& de : d.deltas) {
        const std::complex<double> phase{std::cos(2.0 * kinf * de.x0),
                                         std::sin(2.0 * kinf * de.x0)};
        val += de.g * phase;
    }
    return std::complex<double>(0.0, 1.0) * val / (2.0 * kinf);
}

double production_from_transmission(double T) {
    if (!(T > 0.0 && T <= 1.0))
        throw DomainError("production_from_transmission: T must lie in (0, 1]");
    return (1.0 - T) / T;
}

double transmission_from_production(double N) {
    if (!(N >= 0.0)) throw DomainError("transmission_from_production: N must be >= 0");
    return 1.0 / (1.0 + N);
}

Dispersion to_dispersion(const TimeProfile& p) {
    if (!(p.omega_minus > 0.0 && p.omega_plus > 0.0))
        throw DomainError("TimeProfile: asymptotic frequencies must be positive");
    return dispersion_from_k2(p.omega2, p.omega_minus, p.omega_plus, p.t_left, p.t_right);
}

TimeDomainBounds time_domain_bounds(const TimeProfile& p, const AuxiliaryChoice& aux,
                                    const QuadratureConfig& quad) {
    Dispersion d = to_dispersion(p);
    GeneralBoundSet set = general_bound(d, aux, quad);
    TimeDomainBounds out;
    out.upper_abs_alpha = set.upper_abs_alpha;
    out.upper_abs_beta = set.upper_abs_beta;
    out.upper_n = make_result(BoundKind::UpperN, "general", set.upper_abs_beta.integral,
                              set.upper_abs_beta.quad_err, set.upper_abs_beta.valid,
                              set.upper_abs_beta.reason);
    return out;
}

} // namespace scatterbound
