#include "scatterbound/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scatterbound {

namespace {

// Bisect a sign change of f on [a, b] to absolute tolerance tol.
double bisect(const std::function<double(double)>& f, double a, double b, double fa,
              double tol) {
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Walk outward from x0 in direction sign until |V - v_asym| stays below tol.
double find_tail(const PotentialSpec& p, double v_asym, double x0, double sign, double tol,
                 double scale) {
    double x = x0;
    double step = 0.25 * scale;
    int quiet = 0;
    for (int it = 0; it < 4000; ++it) {
        x += sign * step;
        if (std::abs(potential_value(p, x) - v_asym) < tol) {
            if (++quiet >= 4) return x;
        } else {
            quiet = 0;
        }
        if (it % 16 == 15) step *= 1.3;
        if (std::abs(x - x0) > 1e7 * scale)
            throw NonconvergentTail("potential does not settle to its asymptote");
    }
    throw NonconvergentTail("potential does not settle to its asymptote");
}

} // namespace

double tail_tolerance(double energy) { return 1e-10 * std::max(1.0, std::abs(energy)); }

std::pair<double, double> asymptotic_wavenumbers(const PotentialSpec& p, double energy,
                                                 const UnitsConvention& u) {
    u.validate();
    const double vm = v_minus_inf(p);
    const double vp = v_plus_inf(p);
    if (!(energy > std::max(vm, vp)))
        throw BelowAsymptote("asymptotic_wavenumbers: E must exceed both asymptotes");
    const double c = u.k2_factor();
    return {std::sqrt(c * (energy - vm)), std::sqrt(c * (energy - vp))};
}

Dispersion build_dispersion(const PotentialSpec& p, double energy, const UnitsConvention& u) {
    validate(p);
    auto [km, kp] = asymptotic_wavenumbers(p, energy, u);
    const double c = u.k2_factor();

    Dispersion d;
    d.energy = energy;
    d.k2_factor = c;
    d.k_minus_inf = km;
    d.k_plus_inf = kp;
    d.deltas = delta_interfaces(p);

    // the clamped tails must take over close to the declared asymptotes
    if (const auto* s = p.get_if<SampledPotential>()) {
        const double tol = 1e-6 * std::max(1.0, std::abs(energy));
        if (std::abs(s->v.front() - s->v_minus) > tol ||
            std::abs(s->v.back() - s->v_plus) > tol)
            throw NonconvergentTail(
                "sampled profile does not settle to its declared asymptotes");
    }

    auto value = make_value_fn(p);
    auto deriv = make_derivative_fn(p);
    d.k2 = [value, energy, c](double x) { return c * (energy - value(x)); };
    d.k2_prime = [deriv, c](double x) { return -c * deriv(x); };
    auto spec = std::make_shared<PotentialSpec>(p);
    d.k2_second = [spec, c](double x) { return -c * potential_second_derivative(*spec, x); };

    // truncation window
    const double tol = tail_tolerance(energy) * std::max(1.0, c);
    const double scale = potential_length_scale(p);
    double lo, hi;
    if (compact_support(p, lo, hi)) {
        d.window_left = lo - 0.5 * scale;
        d.window_right = hi + 0.5 * scale;
    } else {
        const double vm = v_minus_inf(p);
        const double vp = v_plus_inf(p);
        auto bp = potential_breakpoints(p);
        const double seed_lo = bp.empty() ? -scale : bp.front() - scale;
        const double seed_hi = bp.empty() ? scale : bp.back() + scale;
        d.window_left = find_tail(p, vm, seed_lo, -1.0, tol / std::max(1.0, c), scale);
        d.window_right = find_tail(p, vp, seed_hi, +1.0, tol / std::max(1.0, c), scale);
    }

    for (double b : potential_breakpoints(p))
        if (b > d.window_left && b < d.window_right) d.breakpoints.push_back(b);

    // forbidden regions: sign-change scan refined by bisection to 1e-12 absolute
    const int n = 4001;
    std::vector<double> xs;
    xs.reserve(n + d.breakpoints.size() * 2);
    const double w = d.window_width();
    for (int i = 0; i < n; ++i) xs.push_back(d.window_left + w * i / (n - 1));
    for (double b : d.breakpoints) {
        xs.push_back(b - 1e-9 * std::max(1.0, std::abs(b)));
        xs.push_back(b + 1e-9 * std::max(1.0, std::abs(b)));
    }
    std::sort(xs.begin(), xs.end());

    double prev_x = xs.front();
    double prev_f = d.k2(prev_x);
    double open_lo = std::numeric_limits<double>::quiet_NaN();
    if (prev_f < 0.0) open_lo = d.window_left;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double f = d.k2(xs[i]);
        if ((prev_f < 0.0) != (f < 0.0)) {
            const double x0 = bisect(d.k2, prev_x, xs[i], prev_f, 1e-12);
            if (f < 0.0) {
                open_lo = x0;
            } else if (!std::isnan(open_lo)) {
                d.forbidden_regions.push_back({open_lo, x0});
                open_lo = std::numeric_limits<double>::quiet_NaN();
            }
        }
        prev_x = xs[i];
        prev_f = f;
    }
    if (!std::isnan(open_lo)) d.forbidden_regions.push_back({open_lo, d.window_right});

    return d;
}

Dispersion dispersion_from_k2(std::function<double(double)> k2, double k_minus, double k_plus,
                              double window_left, double window_right,
                              std::function<double(double)> k2_prime,
                              std::function<double(double)> k2_second) {
    Dispersion d;
    d.k2 = std::move(k2);
    d.k_minus_inf = k_minus;
    d.k_plus_inf = k_plus;
    d.window_left = window_left;
    d.window_right = window_right;
    d.k2_factor = 1.0;
    d.energy = k_plus * k_plus;
    if (k2_prime) {
        d.k2_prime = std::move(k2_prime);
    } else {
        auto f = d.k2;
        d.k2_prime = [f](double x) {
            const double h = 1e-6 * std::max(1.0, std::abs(x));
            return (f(x + h) - f(x - h)) / (2.0 * h);
        };
    }
    if (k2_second) {
        d.k2_second = std::move(k2_second);
    } else {
        auto fp = d.k2_prime;
        d.k2_second = [fp](double x) {
            const double h = 1e-5 * std::max(1.0, std::abs(x));
            return (fp(x + h) - fp(x - h)) / (2.0 * h);
        };
    }

    // forbidden-region scan over the window
    const int n = 4001;
    double prev_x = window_left;
    double prev_f = d.k2(prev_x);
    double open_lo = std::numeric_limits<double>::quiet_NaN();
    if (prev_f < 0.0) open_lo = window_left;
    for (int i = 1; i < n; ++i) {
        const double x = window_left + (window_right - window_left) * i / (n - 1);
        const double f = d.k2(x);
        if ((prev_f < 0.0) != (f < 0.0)) {
            const double x0 = bisect(d.k2, prev_x, x, prev_f, 1e-12);
            if (f < 0.0) open_lo = x0;
            else if (!std::isnan(open_lo)) {
                d.forbidden_regions.push_back({open_lo, x0});
                open_lo = std::numeric_limits<double>::quiet_NaN();
            }
        }
        prev_x = x;
        prev_f = f;
    }
    if (!std::isnan(open_lo)) d.forbidden_regions.push_back({open_lo, window_right});
    return d;
}

std::vector<ExtremumRecord> find_extrema(const Dispersion& d, Interval window, int n_scan) {
    if (n_scan < 3) throw DomainError("find_extrema: n_scan must be >= 3");
    if (!(window.hi > window.lo)) throw DomainError("find_extrema: window must be finite and ordered");

    const double w = window.width();
    std::vector<double> xs(n_scan);
    std::vector<double> fs(n_scan);
    for (int i = 0; i < n_scan; ++i) {
        xs[i] = window.lo + w * i / (n_scan - 1);
        fs[i] = d.k2(xs[i]);
    }

    // Plateau-aware scan: equal neighbours collapse into runs so piecewise-constant
    // potentials report one extremum at the plateau midpoint.
    const double feps = 1e-13 * std::max(1.0, std::abs(d.energy) * d.k2_factor);
    std::vector<ExtremumRecord> out;
    int i = 1;
    while (i < n_scan - 1) {
        int j = i;
        while (j + 1 < n_scan - 1 && std::abs(fs[j + 1] - fs[i]) <= feps) ++j;
        const double before = fs[i - 1];
        const double after = fs[j + 1];
        const double here = fs[i];
        const bool is_peak = here > before + feps && here > after + feps;
        const bool is_valley = here < before - feps && here < after - feps;
        if (is_peak || is_valley) {
            double x_ext;
            if (j > i) {
                x_ext = 0.5 * (xs[i] + xs[j]); // plateau midpoint
            } else {
                // refine on the derivative sign change
                double a = xs[i - 1], b = xs[i + 1];
                double fa = d.k2_prime(a);
                const double tol = 1e-10 * w;
                if (d.k2_prime(b) * fa < 0.0) {
                    x_ext = bisect(d.k2_prime, a, b, fa, tol);
                } else {
                    // fall back to golden-section on k2 itself
                    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
                    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
                    double f1 = d.k2(c1), f2 = d.k2(c2);
                    while (b - a > tol) {
                        const bool shrink_right = is_peak ? (f1 < f2) : (f1 > f2);
                        if (shrink_right) {
                            a = c1;
                            c1 = c2;
                            f1 = f2;
                            c2 = a + gr * (b - a);
                            f2 = d.k2(c2);
                        } else {
                            b = c2;
                            c2 = c1;
                            f2 = f1;
                            c1 = b - gr * (b - a);
                            f1 = d.k2(c1);
                        }
                    }
                    x_ext = 0.5 * (a + b);
                }
            }
            out.push_back({x_ext, d.k2(x_ext), is_peak ? ExtremumKind::Peak : ExtremumKind::Valley});
        }
        i = j + 1;
    }

    // enforce alternation; keep the more extreme of adjacent same-kind records
    std::vector<ExtremumRecord> alt;
    for (const auto& e : out) {
        if (!alt.empty() && alt.back().kind == e.kind) {
            const bool replace = (e.kind == ExtremumKind::Peak) ? (e.k2 > alt.back().k2)
                                                                : (e.k2 < alt.back().k2);
            if (replace) alt.back() = e;
        } else {
            alt.push_back(e);
        }
    }
    return alt;
}

} // namespace scatterbound
