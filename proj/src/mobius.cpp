#include "scatterbound/mobius.hpp"

#include <cmath>

#include "scatterbound/errors.hpp"

namespace scatterbound {

namespace {

// Canonicalize c0 + ct tanh(x/L) + cs sech^2(x/L) with the denominator (1 + w),
// w = exp(-2x/L). Matching
//   V0 (1+w)^2 + V1 (A + B w)^2 = (c0+ct) + (2 c0 + 4 cs) w + (c0-ct) w^2
// forces V0 = c0 + (ct^2 + 4 cs^2)/(4 cs); the completion needs cs != 0 whenever
// ct != 0 (a bare tanh has a simple structure the squared ratio cannot produce).
MobiusPotential from_tanh_sech2(double c0, double ct, double cs, double L) {
    MobiusPotential m;
    m.C = 1.0;
    m.D = 1.0;
    m.a = L;
    if (cs == 0.0 && ct == 0.0) {
        m.v0 = c0;
        m.v1 = 0.0;
        m.A = 0.0;
        m.B = 0.0;
        return m;
    }
    if (cs == 0.0)
        throw UnsupportedFamily("mobius canonicalization: bare tanh term is not squared-Mobius");
    const double v0 = c0 + (ct * ct + 4.0 * cs * cs) / (4.0 * cs);
    const double pp = c0 + ct - v0;       // V1 A^2
    const double qq = c0 - ct - v0;       // V1 B^2
    const double rr = c0 + 2.0 * cs - v0; // V1 A B
    if (pp == 0.0 && qq == 0.0) {
        m.v0 = v0;
        m.v1 = 1.0;
        m.A = 0.0;
        m.B = 0.0;
        return m;
    }
    const double v1 = (std::abs(pp) >= std::abs(qq)) ? (pp >= 0.0 ? 1.0 : -1.0)
                                                     : (qq >= 0.0 ? 1.0 : -1.0);
    double A, B;
    if (std::abs(pp) >= std::abs(qq)) {
        if (pp / v1 < 0.0)
            throw UnsupportedFamily("mobius canonicalization: completion is not real");
        A = std::sqrt(pp / v1);
        B = (A != 0.0) ? rr / (v1 * A) : std::sqrt(std::max(0.0, qq / v1));
    } else {
        if (qq / v1 < 0.0)
            throw UnsupportedFamily("mobius canonicalization: completion is not real");
        B = std::sqrt(qq / v1);
        A = (B != 0.0) ? rr / (v1 * B) : 0.0;
    }
    // consistency of the completed square
    if (std::abs(v1 * A * B - rr) > 1e-9 * (1.0 + std::abs(rr)) ||
        std::abs(v1 * B * B - qq) > 1e-9 * (1.0 + std::abs(qq)))
        throw UnsupportedFamily("mobius canonicalization: parameters admit no exact Mobius form");
    m.v0 = v0;
    m.v1 = v1;
    m.A = A;
    m.B = B;
    return m;
}

} // namespace

MobiusPotential canonicalize_mobius(const PotentialSpec& p) {
    if (const auto* m = p.get_if<MobiusPotential>()) return *m; // idempotent

    if (const auto* pt = p.get_if<PoschlTellerPotential>()) {
        if (pt->v0 == 0.0)
            throw UnsupportedFamily(
                "poschl-teller canonicalization needs V0 != 0 (pure tanh is not squared-Mobius)");
        return from_tanh_sech2(0.0, pt->v_inf, pt->v0, pt->length);
    }

    if (const auto* np = p.get_if<NamedPotential>()) {
        switch (np->family) {
            case NamedFamily::RosenMorse: {
                // B tanh(x/d) - C sech^2(x/d)
                const double B = np->param("B"), C = np->param("C"), d = np->param("d");
                if (C == 0.0 && B != 0.0)
                    throw UnsupportedFamily("rosen-morse canonicalization needs C != 0");
                return from_tanh_sech2(0.0, B, -C, d);
            }
            case NamedFamily::Eckart: {
                // (A/2)(1 + tanh(x/a)) + (B/4) sech^2(x/a)
                const double A = np->param("A"), B = np->param("B"), a = np->param("a");
                if (B == 0.0 && A != 0.0)
                    throw UnsupportedFamily("eckart canonicalization needs B != 0");
                return from_tanh_sech2(A / 2.0, A / 2.0, B / 4.0, a);
            }
            case NamedFamily::Morse: {
                // V0 (1 - e^{-(x-x0)/a})^2: Mobius with D = 0, w = e^{-2x/(2a)}
                const double v0 = np->param("V0"), x0 = np->param("x0"), a = np->param("a");
                MobiusPotential m;
                m.v0 = 0.0;
                m.v1 = v0;
                m.A = 1.0;
                m.B = -std::exp(x0 / a);
                m.C = 1.0;
                m.D = 0.0;
                m.a = 2.0 * a;
                return m;
            }
            case NamedFamily::ManningRosen: {
                // A w^2/(1-w)^2 + B w/(1-w), w = e^{-x/b}
                const double A = np->param("A"), B = np->param("B"), b = np->param("b");
                if (A == 0.0)
                    throw UnsupportedFamily(
                        "manning-rosen canonicalization needs A != 0 (completion constant is "
                        "-B^2/(4A))");
                const double v0 = -B * B / (4.0 * A);
                const double pp = -v0;
                const double qq = A - B - v0;
                const double rr = B / 2.0 + v0;
                MobiusPotential m;
                m.a = 2.0 * b;
                m.C = 1.0;
                m.D = -1.0;
                m.v0 = v0;
                m.v1 = pp >= 0.0 ? 1.0 : -1.0;
                m.A = std::sqrt(pp / m.v1);
                m.B = (m.A != 0.0) ? rr / (m.v1 * m.A) : std::sqrt(std::max(0.0, qq / m.v1));
                if (std::abs(m.v1 * m.B * m.B - qq) > 1e-9 * (1.0 + std::abs(qq)))
                    throw UnsupportedFamily("manning-rosen canonicalization failed consistency");
                return m;
            }
            case NamedFamily::Hulthen:
                throw UnsupportedFamily(
                    "hulthen is linear in coth(x/2a) (simple pole); the squared-Mobius form only "
                    "produces double poles, so no exact Mobius parameters exist (the Manning-Rosen "
                    "reduction A = 0 is exactly where the equivalence degenerates)");
            case NamedFamily::Tietz: {
                const double v0 = np->param("V0"), x0 = np->param("x0"), a = np->param("a");
                MobiusPotential m;
                m.v0 = 0.0;
                m.v1 = v0;
                m.A = std::exp(-x0 / a);
                m.B = -std::exp(x0 / a);
                m.a = a;
                switch (np->tietz_denominator) {
                    case TietzDenominator::Sinh: m.C = 1.0; m.D = -1.0; break;
                    case TietzDenominator::Cosh: m.C = 1.0; m.D = 1.0; break;
                    case TietzDenominator::Exp: m.C = 2.0; m.D = 0.0; break;
                }
                return m;
            }
            case NamedFamily::Hua: {
                const double v0 = np->param("V0"), q = np->param("q"), a = np->param("a");
                if (q == 0.0) throw UnsupportedFamily("hua requires q != 0");
                MobiusPotential m;
                m.v0 = 0.0;
                m.v1 = v0;
                m.A = 1.0;
                m.B = -1.0;
                m.C = 1.0;
                m.D = -q;
                m.a = a;
                return m;
            }
        }
        throw UnsupportedFamily("canonicalize_mobius: unknown named family");
    }

    throw UnsupportedFamily("canonicalize_mobius: only named families, poschl-teller and "
                            "mobius inputs are supported");
}

} // namespace scatterbound
