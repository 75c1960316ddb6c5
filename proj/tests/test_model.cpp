#include <cmath>

#include "doctest.h"

#include "scatterbound/dispersion.hpp"
#include "scatterbound/mobius.hpp"
#include "scatterbound/potential.hpp"
#include "scatterbound/potential_io.hpp"

using namespace scatterbound;

namespace {

// standard comparison grid: 101 points spanning +-10 length scales
double worst_mismatch(const PotentialSpec& a, const PotentialSpec& b, double scale) {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double x = -10.0 * scale + 20.0 * scale * i / 100.0;
        const double va = potential_value(a, x);
        const double vb = potential_value(b, x);
        worst = std::max(worst, std::abs(va - vb) / std::max(1.0, std::abs(va)));
    }
    return worst;
}

} // namespace

TEST_CASE("asymptotic wavenumbers") {
    auto [km, kp] = asymptotic_wavenumbers(FreePotential{0.0}, 1.0);
    CHECK(km == doctest::Approx(1.0));
    CHECK(kp == doctest::Approx(1.0));

    std::tie(km, kp) = asymptotic_wavenumbers(StepPotential{0.0, 3.0}, 4.0);
    CHECK(km == doctest::Approx(2.0));
    CHECK(kp == doctest::Approx(1.0));

    std::tie(km, kp) = asymptotic_wavenumbers(TanhPotential{-1.0, 1.0, 1.0}, 2.0);
    CHECK(km == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(kp == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(asymptotic_wavenumbers(StepPotential{0.0, 3.0}, 2.5), BelowAsymptote);

    // non-default units: hbar = 2, m = 1 => k^2 = (E - V)/2
    UnitsConvention u{2.0, 1.0};
    std::tie(km, kp) = asymptotic_wavenumbers(FreePotential{0.0}, 8.0, u);
    CHECK(km == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("dispersion round-trips the asymptotics") {
    // k_minus^2 + V(-inf) = E = k_plus^2 + V(+inf) in default units, to 1e-12
    std::vector<PotentialSpec> catalogue = {
        FreePotential{0.0},
        StepPotential{0.0, 0.5},
        DeltaPotential{2.0, 0.0},
        DoubleDeltaPotential{1.0, 1.5},
        SquareBarrierPotential{1.0, 1.0},
        AsymSquareWellPotential{0.0, -1.0, 0.5, 0.0, 1.0},
        TanhPotential{-0.5, 0.5, 1.0},
        Sech2Potential{0.25, 1.0},
        PoschlTellerPotential{0.3, 0.5, 1.0},
    };
    for (const auto& p : catalogue) {
        const double E = 2.0;
        auto d = build_dispersion(p, E);
        CHECK(d.k_minus_inf * d.k_minus_inf + v_minus_inf(p) == doctest::Approx(E).epsilon(1e-12));
        CHECK(d.k_plus_inf * d.k_plus_inf + v_plus_inf(p) == doctest::Approx(E).epsilon(1e-12));
        // window edges really are in the tails
        CHECK(std::abs(potential_value(p, d.window_left) - v_minus_inf(p)) <= 2e-10);
        CHECK(std::abs(potential_value(p, d.window_right) - v_plus_inf(p)) <= 2e-10);
    }
}

TEST_CASE("dispersion pointwise values and forbidden regions") {
    auto d = build_dispersion(SquareBarrierPotential{1.0, 1.0}, 2.0);
    CHECK(d.k2(-0.5) == doctest::Approx(2.0));
    CHECK(d.k2(0.5) == doctest::Approx(1.0));
    CHECK(d.forbidden_regions.empty());

    d = build_dispersion(SquareBarrierPotential{1.0, 1.0}, 0.5);
    REQUIRE(d.forbidden_regions.size() == 1);
    CHECK(d.forbidden_regions[0].lo == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d.forbidden_regions[0].hi == doctest::Approx(1.0).epsilon(1e-9));

    d = build_dispersion(Sech2Potential{0.25, 1.0}, 1.0);
    CHECK(d.k2(0.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(d.k2(d.window_right) == doctest::Approx(1.0).epsilon(1e-9));

    // under-barrier sech2: turning points at sech^2(x) = E/Ve
    d = build_dispersion(Sech2Potential{2.0, 1.0}, 1.0);
    REQUIRE(d.forbidden_regions.size() == 1);
    const double xt = std::acosh(std::sqrt(2.0)); // sech^2(xt) = 1/2
    CHECK(d.forbidden_regions[0].lo == doctest::Approx(-xt).epsilon(1e-9));
    CHECK(d.forbidden_regions[0].hi == doctest::Approx(xt).epsilon(1e-9));
}

TEST_CASE("sampled potential interpolation and tails") {
    SampledPotential s;
    for (int i = 0; i <= 80; ++i) {
        const double x = -8.0 + 16.0 * i / 80.0;
        s.x.push_back(x);
        s.v.push_back(0.25 / std::cosh(x) / std::cosh(x));
    }
    s.v_minus = s.v_plus = 0.0;
    auto d = build_dispersion(PotentialSpec{s}, 1.0);
    // interpolant tracks the smooth profile between samples
    CHECK(potential_value(PotentialSpec{s}, 0.1) ==
          doctest::Approx(0.25 / std::cosh(0.1) / std::cosh(0.1)).epsilon(1e-3));
    CHECK(d.k2(100.0) == doctest::Approx(1.0));

    SampledPotential bad = s;
    bad.v_plus = 0.7; // never reached by the samples
    CHECK_THROWS_AS(build_dispersion(PotentialSpec{bad}, 1.0), NonconvergentTail);
}

TEST_CASE("find_extrema") {
    // square barrier: one valley of k^2 reported at the plateau midpoint
    auto d = build_dispersion(SquareBarrierPotential{1.0, 1.0}, 2.0);
    auto ext = find_extrema(d, {d.window_left, d.window_right});
    REQUIRE(ext.size() == 1);
    CHECK(ext[0].kind == ExtremumKind::Valley);
    CHECK(ext[0].x == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(ext[0].k2 == doctest::Approx(1.0));

    // sech2 barrier: single valley of k^2 at x = 0
    d = build_dispersion(Sech2Potential{0.25, 1.0}, 1.0);
    ext = find_extrema(d, {d.window_left, d.window_right});
    REQUIRE(ext.size() == 1);
    CHECK(ext[0].kind == ExtremumKind::Valley);
    CHECK(std::abs(ext[0].x) < 1e-8);

    // double delta: spikes are interfaces, not sampled extrema
    d = build_dispersion(DoubleDeltaPotential{1.0, 1.5}, 1.0);
    ext = find_extrema(d, {d.window_left, d.window_right});
    CHECK(ext.empty());

    CHECK_THROWS_AS(find_extrema(d, {0.0, 1.0}, 2), DomainError);
}

TEST_CASE("find_extrema mirror symmetry") {
    // mirrored potential gives mirrored extremum locations
    SampledPotential s;
    auto vfun = [](double x) {
        return 0.3 / std::cosh(x - 0.7) / std::cosh(x - 0.7) +
               0.2 / std::cosh(x + 1.3) / std::cosh(x + 1.3);
    };
    SampledPotential sm;
    for (int i = 0; i <= 400; ++i) {
        const double x = -12.0 + 24.0 * i / 400.0;
        s.x.push_back(x);
        s.v.push_back(vfun(x));
        sm.x.push_back(x);
        sm.v.push_back(vfun(-x));
    }
    auto d = build_dispersion(PotentialSpec{s}, 1.0);
    auto dm = build_dispersion(PotentialSpec{sm}, 1.0);
    auto ea = find_extrema(d, {-12.0, 12.0});
    auto eb = find_extrema(dm, {-12.0, 12.0});
    REQUIRE(ea.size() == eb.size());
    REQUIRE(ea.size() >= 2);
    for (std::size_t i = 0; i < ea.size(); ++i) {
        const auto& mirrored = eb[eb.size() - 1 - i];
        CHECK(std::abs(ea[i].x + mirrored.x) <= 1e-9 * 24.0);
        CHECK(ea[i].kind == mirrored.kind);
    }
}

TEST_CASE("mobius canonicalization matches pointwise") {
    // RosenMorse{B=0,C=Ve,d=L} is -Ve sech^2(x/L)
    NamedPotential rm;
    rm.family = NamedFamily::RosenMorse;
    rm.params = {{"B", 0.0}, {"C", 0.25}, {"d", 1.0}};
    auto m = canonicalize_mobius(rm);
    CHECK(worst_mismatch(rm, m, 1.0) <= 1e-10);
    for (int i = 0; i <= 10; ++i) {
        const double x = -5.0 + i;
        CHECK(potential_value(m, x) ==
              doctest::Approx(-0.25 / std::cosh(x) / std::cosh(x)).epsilon(1e-12));
    }

    NamedPotential rm2;
    rm2.family = NamedFamily::RosenMorse;
    rm2.params = {{"B", 0.4}, {"C", 0.7}, {"d", 1.3}};
    CHECK(worst_mismatch(rm2, canonicalize_mobius(rm2), 1.3) <= 1e-10);

    PoschlTellerPotential pt{0.3, 0.5, 1.0};
    CHECK(worst_mismatch(pt, canonicalize_mobius(pt), 1.0) <= 1e-10);

    PoschlTellerPotential ptw{-0.3, 0.2, 2.0}; // well variant
    CHECK(worst_mismatch(ptw, canonicalize_mobius(ptw), 2.0) <= 1e-10);

    NamedPotential ek;
    ek.family = NamedFamily::Eckart;
    ek.params = {{"A", 0.8}, {"B", 1.1}, {"a", 1.0}};
    CHECK(worst_mismatch(ek, canonicalize_mobius(ek), 1.0) <= 1e-10);

    NamedPotential mo;
    mo.family = NamedFamily::Morse;
    mo.params = {{"V0", 1.5}, {"x0", 0.4}, {"a", 1.0}};
    CHECK(worst_mismatch(mo, canonicalize_mobius(mo), 1.0) <= 1e-10);

    NamedPotential mr;
    mr.family = NamedFamily::ManningRosen;
    mr.params = {{"A", 0.9}, {"B", -0.3}, {"b", 1.0}};
    // half-line family: compare on x > 0 only
    auto mcan = canonicalize_mobius(mr);
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double x = 0.05 + 10.0 * i / 100.0;
        worst = std::max(worst, std::abs(potential_value(mr, x) - potential_value(mcan, x)));
    }
    CHECK(worst <= 1e-10);

    NamedPotential hua;
    hua.family = NamedFamily::Hua;
    hua.params = {{"V0", 0.6}, {"q", 0.5}, {"a", 1.2}};
    CHECK(worst_mismatch(hua, canonicalize_mobius(hua), 1.2) <= 1e-10);

    NamedPotential tz;
    tz.family = NamedFamily::Tietz;
    tz.params = {{"V0", 0.5}, {"x0", 0.3}, {"a", 1.0}};
    for (auto den : {TietzDenominator::Sinh, TietzDenominator::Cosh, TietzDenominator::Exp}) {
        tz.tietz_denominator = den;
        auto mt = canonicalize_mobius(tz);
        double w2 = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double x = 0.05 + 8.0 * i / 100.0; // sinh denominator is singular at 0
            w2 = std::max(w2, std::abs(potential_value(tz, x) - potential_value(mt, x)));
        }
        CHECK(w2 <= 1e-10);
    }
}

TEST_CASE("mobius canonicalization is idempotent") {
    PoschlTellerPotential pt{0.3, 0.5, 1.0};
    auto m1 = canonicalize_mobius(pt);
    auto m2 = canonicalize_mobius(PotentialSpec{m1});
    CHECK(worst_mismatch(m1, m2, 1.0) <= 1e-12);
}

TEST_CASE("hulthen has no exact squared-Mobius form") {
    NamedPotential h;
    h.family = NamedFamily::Hulthen;
    h.params = {{"V0", 1.0}, {"a", 1.0}};
    CHECK_THROWS_AS(canonicalize_mobius(h), UnsupportedFamily);
    // its Manning-Rosen reduction point (A = 0) degenerates the same way
    NamedPotential mr0;
    mr0.family = NamedFamily::ManningRosen;
    mr0.params = {{"A", 0.0}, {"B", 1.0}, {"b", 1.0}};
    CHECK_THROWS_AS(canonicalize_mobius(mr0), UnsupportedFamily);
}

TEST_CASE("potential validation") {
    CHECK_THROWS_AS(validate(AsymSquareWellPotential{0, 0, 0, 2.0, 1.0}), DomainError);
    CHECK_THROWS_AS(validate(SquareBarrierPotential{1.0, -1.0}), DomainError);
    SampledPotential bad;
    bad.x = {0.0, 0.0};
    bad.v = {1.0, 1.0};
    CHECK_THROWS_AS(validate(PotentialSpec{bad}), DomainError);
}

TEST_CASE("potential document parsing") {
    auto p = parse_potential_document("# a barrier\nkind = square_barrier\nV0 = 1.5\nL = 2\n");
    REQUIRE(p.holds<SquareBarrierPotential>());
    CHECK(p.get_if<SquareBarrierPotential>()->v0 == 1.5);
    CHECK(p.get_if<SquareBarrierPotential>()->length == 2.0);

    auto q = parse_potential_inline("tanh:Vminus=-1,Vplus=1,L=0.5");
    REQUIRE(q.holds<TanhPotential>());
    CHECK(q.get_if<TanhPotential>()->length == 0.5);

    auto s = parse_potential_document("kind = sampled\nx = 0 1 2\nv = 0 1 0\n");
    REQUIRE(s.holds<SampledPotential>());
    CHECK(s.get_if<SampledPotential>()->x.size() == 3);

    CHECK_THROWS_AS(parse_potential_inline("martian:x=1"), UnsupportedFamily);
}
