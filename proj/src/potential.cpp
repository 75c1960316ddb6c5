#include "scatterbound/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scatterbound {

namespace {

// sech^2 without overflow for large arguments.
double sech2(double z) {
    const double az = std::abs(z);
    if (az > 350.0) return 0.0;
    const double c = std::cosh(z);
    return 1.0 / (c * c);
}

// Mobius ratio (A + B w)/(C + D w) with w = exp(-2x/a), evaluated overflow-safely.
double mobius_ratio(const MobiusPotential& m, double x) {
    const double u = -2.0 * x / m.a;
    if (u > 300.0) {
        // w huge: ratio -> (A/w + B)/(C/w + D)
        const double iw = std::exp(-u);
        return (m.A * iw + m.B) / (m.C * iw + m.D);
    }
    const double w = std::exp(u);
    return (m.A + m.B * w) / (m.C + m.D * w);
}

// d/dx of the Mobius ratio.
double mobius_ratio_derivative(const MobiusPotential& m, double x) {
    const double u = -2.0 * x / m.a;
    // R' = (BC - AD) w' /(C + Dw)^2, w' = -2w/a
    if (u > 300.0) {
        const double iw = std::exp(-u); // 1/w
        // (C + Dw)^2 = w^2 (C/w + D)^2 ; w'/w^2 = -2/(a w) = -2 iw / a
        const double den = m.C * iw + m.D;
        return (m.B * m.C - m.A * m.D) * (-2.0 * iw / m.a) / (den * den);
    }
    const double w = std::exp(u);
    const double den = m.C + m.D * w;
    return (m.B * m.C - m.A * m.D) * (-2.0 * w / m.a) / (den * den);
}

struct ValueVisitor {
    double x;

    double operator()(const FreePotential& p) const { return p.v_inf; }
    double operator()(const StepPotential& p) const { return x < 0.0 ? p.v_minus : p.v_plus; }
    double operator()(const DeltaPotential&) const { return 0.0; }
    double operator()(const DoubleDeltaPotential&) const { return 0.0; }
    double operator()(const SquareBarrierPotential& p) const {
        return (x >= 0.0 && x <= p.length) ? p.v0 : 0.0;
    }
    double operator()(const AsymSquareWellPotential& p) const {
        if (x < p.a) return p.v1;
        if (x > p.b) return p.v3;
        return p.v2;
    }
    double operator()(const TanhPotential& p) const {
        return 0.5 * (p.v_minus + p.v_plus) + 0.5 * (p.v_plus - p.v_minus) * std::tanh(x / p.length);
    }
    double operator()(const Sech2Potential& p) const { return p.ve * sech2(x / p.length); }
    double operator()(const PoschlTellerPotential& p) const {
        return p.v0 * sech2(x / p.length) + p.v_inf * std::tanh(x / p.length);
    }
    double operator()(const MobiusPotential& p) const {
        const double r = mobius_ratio(p, x);
        return p.v0 + p.v1 * r * r;
    }
    double operator()(const NamedPotential& p) const;
    double operator()(const SampledPotential& p) const {
        if (p.x.empty()) return 0.0;
        if (x <= p.x.front()) return p.v_minus;
        if (x >= p.x.back()) return p.v_plus;
        return MonotoneCubic(p.x, p.v)(x);
    }
    double operator()(const ShiftedPotential& p) const {
        double base = p.base ? potential_value(*p.base, x) : 0.0;
        return base + p.eps * (p.delta_v ? p.delta_v(x) : 0.0);
    }
};

double named_value(const NamedPotential& p, double x) {
    switch (p.family) {
        case NamedFamily::Eckart: {
            const double A = p.param("A"), B = p.param("B"), a = p.param("a");
            const double xi = -std::exp(std::min(2.0 * x / a, 600.0));
            if (2.0 * x / a > 300.0) {
                // xi -> -inf: xi/(1-xi) -> -1, so -A xi/(1-xi) -> A; the B term dies
                return A;
            }
            return -A * xi / (1.0 - xi) - B * xi / ((1.0 - xi) * (1.0 - xi));
        }
        case NamedFamily::RosenMorse: {
            const double B = p.param("B"), C = p.param("C"), d = p.param("d");
            return B * std::tanh(x / d) - C * sech2(x / d);
        }
        case NamedFamily::Morse: {
            const double v0 = p.param("V0"), x0 = p.param("x0"), a = p.param("a");
            const double e = std::exp(std::min(-(x - x0) / a, 600.0));
            const double s = 1.0 - e;
            return v0 * s * s;
        }
        case NamedFamily::ManningRosen: {
            const double A = p.param("A"), B = p.param("B"), b = p.param("b");
            const double e = std::exp(-x / b);
            const double s = 1.0 - e;
            return A * e * e / (s * s) + B * e / s;
        }
        case NamedFamily::Hulthen: {
            const double v0 = p.param("V0"), a = p.param("a");
            const double e = std::exp(-x / a);
            return v0 * e / (1.0 - e);
        }
        case NamedFamily::Tietz: {
            const double v0 = p.param("V0"), x0 = p.param("x0"), a = p.param("a");
            const double num = std::sinh((x - x0) / a);
            double den;
            switch (p.tietz_denominator) {
                case TietzDenominator::Sinh: den = std::sinh(x / a); break;
                case TietzDenominator::Cosh: den = std::cosh(x / a); break;
                default: den = std::exp(x / a); break;
            }
            const double r = num / den;
            return v0 * r * r;
        }
        case NamedFamily::Hua: {
            const double v0 = p.param("V0"), q = p.param("q"), a = p.param("a");
            const double u = -2.0 * x / a;
            if (u > 300.0) {
                const double iw = std::exp(-u);
                const double r = (iw - 1.0) / (iw - q);
                return v0 * r * r;
            }
            const double w = std::exp(u);
            const double r = (1.0 - w) / (1.0 - q * w);
            return v0 * r * r;
        }
    }
    throw UnsupportedFamily("named potential: unknown family");
}

double ValueVisitor::operator()(const NamedPotential& p) const { return named_value(p, x); }

struct DerivativeVisitor {
    double x;

    double operator()(const FreePotential&) const { return 0.0; }
    double operator()(const StepPotential&) const { return 0.0; }
    double operator()(const DeltaPotential&) const { return 0.0; }
    double operator()(const DoubleDeltaPotential&) const { return 0.0; }
    double operator()(const SquareBarrierPotential&) const { return 0.0; }
    double operator()(const AsymSquareWellPotential&) const { return 0.0; }
    double operator()(const TanhPotential& p) const {
        return 0.5 * (p.v_plus - p.v_minus) / p.length * sech2(x / p.length);
    }
    double operator()(const Sech2Potential& p) const {
        const double z = x / p.length;
        return -2.0 * p.ve / p.length * sech2(z) * std::tanh(z);
    }
    double operator()(const PoschlTellerPotential& p) const {
        const double z = x / p.length;
        return (-2.0 * p.v0 * std::tanh(z) + p.v_inf) * sech2(z) / p.length;
    }
    double operator()(const MobiusPotential& p) const {
        return 2.0 * p.v1 * mobius_ratio(p, x) * mobius_ratio_derivative(p, x);
    }
    double operator()(const NamedPotential& p) const {
        const double h = 1e-6 * std::max(1.0, std::abs(x));
        return (named_value(p, x + h) - named_value(p, x - h)) / (2.0 * h);
    }
    double operator()(const SampledPotential& p) const {
        if (p.x.empty() || x <= p.x.front() || x >= p.x.back()) return 0.0;
        return MonotoneCubic(p.x, p.v).derivative(x);
    }
    double operator()(const ShiftedPotential& p) const {
        double base = p.base ? potential_derivative(*p.base, x) : 0.0;
        if (p.delta_v && p.eps != 0.0) {
            const double h = 1e-6 * std::max(1.0, std::abs(x));
            base += p.eps * (p.delta_v(x + h) - p.delta_v(x - h)) / (2.0 * h);
        }
        return base;
    }
};

} // namespace

double NamedPotential::param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end())
        throw UnsupportedFamily("named potential: missing parameter '" + name + "'");
    return it->second;
}

double potential_value(const PotentialSpec& p, double x) {
    return std::visit(ValueVisitor{x}, p.value);
}

double potential_derivative(const PotentialSpec& p, double x) {
    return std::visit(DerivativeVisitor{x}, p.value);
}

double potential_second_derivative(const PotentialSpec& p, double x) {
    // analytic where cheap, otherwise symmetric difference of the first derivative
    if (const auto* s = p.get_if<Sech2Potential>()) {
        const double z = x / s->length;
        const double t = std::tanh(z);
        return 2.0 * s->ve / (s->length * s->length) * sech2(z) * (2.0 * t * t - sech2(z));
    }
    if (const auto* t = p.get_if<TanhPotential>()) {
        const double z = x / t->length;
        return -(t->v_plus - t->v_minus) / (t->length * t->length) * sech2(z) * std::tanh(z);
    }
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    return (potential_derivative(p, x + h) - potential_derivative(p, x - h)) / (2.0 * h);
}

double v_minus_inf(const PotentialSpec& p) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FreePotential>) return v.v_inf;
            else if constexpr (std::is_same_v<T, StepPotential>) return v.v_minus;
            else if constexpr (std::is_same_v<T, DeltaPotential>) return 0.0;
            else if constexpr (std::is_same_v<T, DoubleDeltaPotential>) return 0.0;
            else if constexpr (std::is_same_v<T, SquareBarrierPotential>) return 0.0;
            else if constexpr (std::is_same_v<T, AsymSquareWellPotential>) return v.v1;
            else if constexpr (std::is_same_v<T, TanhPotential>) return v.v_minus;
            else if constexpr (std::is_same_v<T, Sech2Potential>) return 0.0;
            else if constexpr (std::is_same_v<T, PoschlTellerPotential>) return -v.v_inf;
            else if constexpr (std::is_same_v<T, MobiusPotential>) {
                if (v.D == 0.0)
                    throw BelowAsymptote("mobius: no finite left asymptote (D = 0)");
                const double r = v.B / v.D;
                return v.v0 + v.v1 * r * r;
            } else if constexpr (std::is_same_v<T, NamedPotential>) {
                switch (v.family) {
                    case NamedFamily::Eckart: return 0.0;
                    case NamedFamily::RosenMorse: return -v.param("B");
                    case NamedFamily::Morse:
                        throw BelowAsymptote("morse: diverges at -infinity");
                    case NamedFamily::ManningRosen:
                    case NamedFamily::Hulthen:
                        throw BelowAsymptote("half-line potential: no left asymptote");
                    case NamedFamily::Tietz: {
                        if (v.tietz_denominator == TietzDenominator::Exp)
                            throw BelowAsymptote("tietz(exp): diverges at -infinity");
                        const double r = std::exp(v.param("x0") / v.param("a"));
                        return v.param("V0") * r * r;
                    }
                    case NamedFamily::Hua: {
                        const double q = v.param("q");
                        return v.param("V0") / (q * q);
                    }
                }
                throw UnsupportedFamily("named potential: unknown family");
            } else if constexpr (std::is_same_v<T, SampledPotential>) return v.v_minus;
            else if constexpr (std::is_same_v<T, ShiftedPotential>) {
                return v.base ? v_minus_inf(*v.base) : 0.0;
            } else
                return 0.0;
        },
        p.value);
}

double v_plus_inf(const PotentialSpec& p) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FreePotential>) return v.v_inf;
            else if constexpr (std::is_same_v<T, StepPotential>) return v.v_plus;
            else if constexpr (std::is_same_v<T, DeltaPotential>) return 0.0;
            else if constexpr (std::is_same_v<T, DoubleDeltaPotential>) return 0.0;
            else if constexpr (std::is_same_v<T, SquareBarrierPotential>) return 0.0;
            else if constexpr (std::is_same_v<T, AsymSquareWellPotential>) return v.v3;
            else if constexpr (std::is_same_v<T, TanhPotential>) return v.v_plus;
            else if constexpr (std::is_same_v<T, Sech2Potential>) return 0.0;
            else if constexpr (std::is_same_v<T, PoschlTellerPotential>) return v.v_inf;
            else if constexpr (std::is_same_v<T, MobiusPotential>) {
                if (v.C == 0.0)
                    throw BelowAsymptote("mobius: no finite right asymptote (C = 0)");
                const double r = v.A / v.C;
                return v.v0 + v.v1 * r * r;
            } else if constexpr (std::is_same_v<T, NamedPotential>) {
                switch (v.family) {
                    case NamedFamily::Eckart: return v.param("A");
                    case NamedFamily::RosenMorse: return v.param("B");
                    case NamedFamily::Morse: return v.param("V0");
                    case NamedFamily::ManningRosen: return 0.0;
                    case NamedFamily::Hulthen: return 0.0;
                    case NamedFamily::Tietz: {
                        const double r = std::exp(-v.param("x0") / v.param("a"));
                        return v.param("V0") * r * r *
                               ((v.tietz_denominator == TietzDenominator::Exp) ? 0.25 : 1.0);
                    }
                    case NamedFamily::Hua: return v.param("V0");
                }
                throw UnsupportedFamily("named potential: unknown family");
            } else if constexpr (std::is_same_v<T, SampledPotential>) return v.v_plus;
            else if constexpr (std::is_same_v<T, ShiftedPotential>) {
                return v.base ? v_plus_inf(*v.base) : 0.0;
            } else
                return 0.0;
        },
        p.value);
}

std::vector<DeltaInterface> delta_interfaces(const PotentialSpec& p) {
    std::vector<DeltaInterface> out;
    if (const auto* d = p.get_if<DeltaPotential>()) {
        out.push_back({d->x0, d->g});
    } else if (const auto* dd = p.get_if<DoubleDeltaPotential>()) {
        out.push_back({-dd->d / 2.0, dd->g});
        out.push_back({+dd->d / 2.0, dd->g});
    } else if (const auto* s = p.get_if<ShiftedPotential>()) {
        if (s->base) out = delta_interfaces(*s->base);
    }
    std::sort(out.begin(), out.end(),
              [](const DeltaInterface& a, const DeltaInterface& b) { return a.x0 < b.x0; });
    return out;
}

std::vector<double> potential_breakpoints(const PotentialSpec& p) {
    std::vector<double> bp;
    if (const auto* d = p.get_if<DeltaPotential>()) bp = {d->x0};
    else if (const auto* dd = p.get_if<DoubleDeltaPotential>()) bp = {-dd->d / 2.0, dd->d / 2.0};
    else if (const auto* sb = p.get_if<SquareBarrierPotential>()) bp = {0.0, sb->length};
    else if (const auto* aw = p.get_if<AsymSquareWellPotential>()) bp = {aw->a, aw->b};
    else if (p.holds<StepPotential>()) bp = {0.0};
    else if (const auto* sp = p.get_if<SampledPotential>()) bp = sp->x;
    else if (const auto* sh = p.get_if<ShiftedPotential>()) {
        if (sh->base) bp = potential_breakpoints(*sh->base);
    }
    std::sort(bp.begin(), bp.end());
    return bp;
}

double potential_length_scale(const PotentialSpec& p) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FreePotential>) return 1.0;
            else if constexpr (std::is_same_v<T, StepPotential>) return 1.0;
            else if constexpr (std::is_same_v<T, DeltaPotential>) return std::max(1.0, std::abs(v.x0));
            else if constexpr (std::is_same_v<T, DoubleDeltaPotential>) return std::max(1.0, v.d);
            else if constexpr (std::is_same_v<T, SquareBarrierPotential>) return std::max(1.0, v.length);
            else if constexpr (std::is_same_v<T, AsymSquareWellPotential>)
                return std::max({1.0, std::abs(v.a), std::abs(v.b), v.b - v.a});
            else if constexpr (std::is_same_v<T, TanhPotential>) return v.length;
            else if constexpr (std::is_same_v<T, Sech2Potential>) return v.length;
            else if constexpr (std::is_same_v<T, PoschlTellerPotential>) return v.length;
            else if constexpr (std::is_same_v<T, MobiusPotential>) return v.a;
            else if constexpr (std::is_same_v<T, NamedPotential>) {
                auto it = v.params.find("a");
                if (it != v.params.end()) return std::abs(it->second);
                it = v.params.find("d");
                if (it != v.params.end()) return std::abs(it->second);
                it = v.params.find("b");
                if (it != v.params.end()) return std::abs(it->second);
                return 1.0;
            } else if constexpr (std::is_same_v<T, SampledPotential>)
                return v.x.empty() ? 1.0 : std::max(1.0, v.x.back() - v.x.front());
            else if constexpr (std::is_same_v<T, ShiftedPotential>)
                return v.base ? potential_length_scale(*v.base) : 1.0;
            else
                return 1.0;
        },
        p.value);
}

bool compact_support(const PotentialSpec& p, double& lo, double& hi) {
    if (const auto* d = p.get_if<DeltaPotential>()) {
        lo = hi = d->x0;
        return true;
    }
    if (const auto* dd = p.get_if<DoubleDeltaPotential>()) {
        lo = -dd->d / 2.0;
        hi = dd->d / 2.0;
        return true;
    }
    if (const auto* sb = p.get_if<SquareBarrierPotential>()) {
        lo = 0.0;
        hi = sb->length;
        return true;
    }
    if (const auto* aw = p.get_if<AsymSquareWellPotential>()) {
        lo = aw->a;
        hi = aw->b;
        return true;
    }
    if (p.holds<StepPotential>()) {
        lo = hi = 0.0;
        return true;
    }
    if (p.holds<FreePotential>()) {
        lo = hi = 0.0;
        return true;
    }
    return false;
}

void validate(const PotentialSpec& p) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SquareBarrierPotential>) {
                if (!(v.length > 0.0)) throw DomainError("square barrier: length must be positive");
            } else if constexpr (std::is_same_v<T, AsymSquareWellPotential>) {
                if (!(v.a < v.b)) throw DomainError("asymmetric square well: requires a < b");
            } else if constexpr (std::is_same_v<T, TanhPotential>) {
                if (!(v.length > 0.0)) throw DomainError("tanh: length must be positive");
            } else if constexpr (std::is_same_v<T, Sech2Potential>) {
                if (!(v.length > 0.0)) throw DomainError("sech2: length must be positive");
            } else if constexpr (std::is_same_v<T, PoschlTellerPotential>) {
                if (!(v.length > 0.0)) throw DomainError("poschl-teller: length must be positive");
            } else if constexpr (std::is_same_v<T, DoubleDeltaPotential>) {
                if (!(v.d > 0.0)) throw DomainError("double delta: separation must be positive");
            } else if constexpr (std::is_same_v<T, MobiusPotential>) {
                if (!(v.a > 0.0)) throw DomainError("mobius: scale a must be positive");
            } else if constexpr (std::is_same_v<T, SampledPotential>) {
                if (v.x.size() != v.v.size() || v.x.size() < 2)
                    throw DomainError("sampled: need matching x/v arrays with >= 2 points");
                for (std::size_t i = 1; i < v.x.size(); ++i)
                    if (!(v.x[i] > v.x[i - 1]))
                        throw DomainError("sampled: x must be strictly increasing");
            } else if constexpr (std::is_same_v<T, ShiftedPotential>) {
                if (!v.base) throw DomainError("shifted: missing base potential");
                if (std::holds_alternative<ShiftedPotential>(v.base->value))
                    throw DomainError("shifted: no self-nesting beyond depth 1");
            }
        },
        p.value);
}

std::string family_name(const PotentialSpec& p) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FreePotential>) return "free";
            else if constexpr (std::is_same_v<T, StepPotential>) return "step";
            else if constexpr (std::is_same_v<T, DeltaPotential>) return "delta";
            else if constexpr (std::is_same_v<T, DoubleDeltaPotential>) return "double_delta";
            else if constexpr (std::is_same_v<T, SquareBarrierPotential>) return "square_barrier";
            else if constexpr (std::is_same_v<T, AsymSquareWellPotential>) return "asym_square_well";
            else if constexpr (std::is_same_v<T, TanhPotential>) return "tanh";
            else if constexpr (std::is_same_v<T, Sech2Potential>) return "sech2";
            else if constexpr (std::is_same_v<T, PoschlTellerPotential>) return "poschl_teller";
            else if constexpr (std::is_same_v<T, MobiusPotential>) return "mobius";
            else if constexpr (std::is_same_v<T, NamedPotential>) {
                switch (v.family) {
                    case NamedFamily::Eckart: return "eckart";
                    case NamedFamily::RosenMorse: return "rosen_morse";
                    case NamedFamily::Morse: return "morse";
                    case NamedFamily::ManningRosen: return "manning_rosen";
                    case NamedFamily::Hulthen: return "hulthen";
                    case NamedFamily::Tietz: return "tietz";
                    case NamedFamily::Hua: return "hua";
                }
                return "named";
            } else if constexpr (std::is_same_v<T, SampledPotential>) return "sampled";
            else if constexpr (std::is_same_v<T, ShiftedPotential>) return "shifted";
            else return "unknown";
        },
        p.value);
}

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : x_(std::move(xs)), y_(std::move(ys)) {
    const std::size_t n = x_.size();
    m_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) m_[i] = 0.0;
        else m_[i] = 0.5 * (d[i - 1] + d[i]);
    }
    // Fritsch-Carlson limiter keeps the interpolant monotone between samples.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            m_[i] = m_[i + 1] = 0.0;
            continue;
        }
        const double a = m_[i] / d[i];
        const double b = m_[i + 1] / d[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            m_[i] = tau * a * d[i];
            m_[i + 1] = tau * b * d[i];
        }
    }
}

std::size_t MonotoneCubic::interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(std::distance(x_.begin(), it));
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double MonotoneCubic::operator()(double x) const {
    if (x_.empty()) return 0.0;
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
    if (x_.empty()) return 0.0;
    if (x <= x_.front() || x >= x_.back()) return 0.0;
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double dh00 = 6 * t * t - 6 * t;
    const double dh10 = 3 * t * t - 4 * t + 1;
    const double dh01 = -6 * t * t + 6 * t;
    const double dh11 = 3 * t * t - 2 * t;
    return (dh00 * y_[i] + dh01 * y_[i + 1]) / h + dh10 * m_[i] + dh11 * m_[i + 1];
}


std::function<double(double)> make_value_fn(const PotentialSpec& p) {
    if (const auto* s = p.get_if<SampledPotential>()) {
        auto interp = std::make_shared<MonotoneCubic>(s->x, s->v);
        const double x_lo = s->x.front(), x_hi = s->x.back();
        const double v_lo = s->v_minus, v_hi = s->v_plus;
        return [interp, x_lo, x_hi, v_lo, v_hi](double x) {
            if (x <= x_lo) return v_lo;
            if (x >= x_hi) return v_hi;
            return (*interp)(x);
        };
    }
    if (const auto* sh = p.get_if<ShiftedPotential>()) {
        auto base = sh->base ? make_value_fn(*sh->base)
                             : std::function<double(double)>([](double) { return 0.0; });
        const double eps = sh->eps;
        auto dv = sh->delta_v;
        return [base, eps, dv](double x) {
            return base(x) + eps * (dv ? dv(x) : 0.0);
        };
    }
    auto spec = std::make_shared<PotentialSpec>(p);
    return [spec](double x) { return potential_value(*spec, x); };
}

std::function<double(double)> make_derivative_fn(const PotentialSpec& p) {
    if (const auto* s = p.get_if<SampledPotential>()) {
        auto interp = std::make_shared<MonotoneCubic>(s->x, s->v);
        const double x_lo = s->x.front(), x_hi = s->x.back();
        return [interp, x_lo, x_hi](double x) {
            if (x <= x_lo || x >= x_hi) return 0.0;
            return interp->derivative(x);
        };
    }
    if (const auto* sh = p.get_if<ShiftedPotential>()) {
        auto base = sh->base ? make_derivative_fn(*sh->base)
                             : std::function<double(double)>([](double) { return 0.0; });
        const double eps = sh->eps;
        auto dv = sh->delta_v;
        return [base, eps, dv](double x) {
            double out = base(x);
            if (dv && eps != 0.0) {
                const double h = 1e-6 * std::max(1.0, std::abs(x));
                out += eps * (dv(x + h) - dv(x - h)) / (2.0 * h);
            }
            return out;
        };
    }
    auto spec = std::make_shared<PotentialSpec>(p);
    return [spec](double x) { return potential_derivative(*spec, x); };
}

} // namespace scatterbound
