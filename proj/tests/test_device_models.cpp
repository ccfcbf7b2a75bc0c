#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nvff/device_models.hpp"

#include <cmath>
#include <random>

using namespace nvff;

namespace {

MtjParams perp_mtj() {
    MtjParams p;
    p.area = 40e-9 * 40e-9;
    return p;
}

MtjParams inplane_mtj() {
    MtjParams p;
    p.area = M_PI / 4.0 * 120e-9 * 40e-9;
    return p;
}

HeavyMetalStrip perp_strip(StripOrientation o) {
    HeavyMetalStrip s;
    s.w = 80e-9;
    s.l = 60e-9;
    s.d = 5e-9;
    s.orientation = o;
    return s;
}

HeavyMetalStrip inplane_strip(StripOrientation o) {
    HeavyMetalStrip s;
    s.w = 180e-9;
    s.l = 60e-9;
    s.d = 5e-9;
    s.orientation = o;
    return s;
}

} // namespace

TEST_CASE("strip resistance matches hand-computed values") {
    CHECK(heavy_metal_resistance(perp_strip(StripOrientation::y_type))
          == doctest::Approx(300.0).epsilon(1e-9));
    CHECK(heavy_metal_resistance(perp_strip(StripOrientation::x_type))
          == doctest::Approx(533.3333333).epsilon(1e-9));
    CHECK(heavy_metal_resistance(inplane_strip(StripOrientation::y_type))
          == doctest::Approx(133.3333333).epsilon(1e-9));
    CHECK(heavy_metal_resistance(inplane_strip(StripOrientation::x_type))
          == doctest::Approx(1200.0).epsilon(1e-9));
}

TEST_CASE("strip resistance is rho * path / cross-section for random geometry") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dim(10e-9, 500e-9);
    std::uniform_real_distribution<double> res(5e-7, 5e-6);
    for (int i = 0; i < 100; ++i) {
        HeavyMetalStrip s;
        s.w = dim(rng);
        s.l = dim(rng);
        s.d = dim(rng) * 0.05;
        s.rho = res(rng);
        s.orientation = StripOrientation::y_type;
        CHECK(heavy_metal_resistance(s)
              == doctest::Approx(s.rho * s.l / (s.w * s.d)).epsilon(1e-12));
        s.orientation = StripOrientation::x_type;
        CHECK(heavy_metal_resistance(s)
              == doctest::Approx(s.rho * s.w / (s.l * s.d)).epsilon(1e-12));
    }
}

TEST_CASE("MTJ endpoint resistances at zero bias") {
    auto p = perp_mtj();
    CHECK(1.0 / mtj_conductance(1.0, 0.0, p) == doctest::Approx(3125.0).epsilon(1e-9));
    CHECK(1.0 / mtj_conductance(-1.0, 0.0, p) == doctest::Approx(6875.0).epsilon(1e-9));

    auto q = inplane_mtj();
    CHECK(1.0 / mtj_conductance(1.0, 0.0, q) == doctest::Approx(1326.2912).epsilon(1e-6));
    CHECK(1.0 / mtj_conductance(-1.0, 0.0, q) == doctest::Approx(2917.8406).epsilon(1e-6));
}

TEST_CASE("antiparallel resistance rolls off with bias") {
    auto p = perp_mtj();
    // At V = Vh the TMR halves: R_AP = R_P (1 + 0.6) = 5000.
    CHECK(1.0 / mtj_conductance(-1.0, 0.5, p) == doctest::Approx(5000.0).epsilon(1e-9));
    // Strictly decreasing in |V|, symmetric in sign, approaches R_P.
    double prev = 1.0 / mtj_conductance(-1.0, 0.0, p);
    for (double v = 0.1; v < 2.05; v += 0.1) {
        double r = 1.0 / mtj_conductance(-1.0, v, p);
        CHECK(r < prev);
        CHECK(mtj_conductance(-1.0, -v, p) == doctest::Approx(mtj_conductance(-1.0, v, p)).epsilon(1e-12));
        prev = r;
    }
    CHECK(1.0 / mtj_conductance(-1.0, 500.0, p) == doctest::Approx(3125.0).epsilon(1e-5));
    // Parallel branch has no bias dependence.
    CHECK(mtj_conductance(1.0, 0.9, p) == doctest::Approx(mtj_conductance(1.0, 0.0, p)).epsilon(1e-12));
}

TEST_CASE("conductance is affine in cos and stays within endpoint bounds") {
    auto p = perp_mtj();
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> cosd(-1.0, 1.0);
    std::uniform_real_distribution<double> vd(-1.2, 1.2);
    for (int i = 0; i < 200; ++i) {
        double v = vd(rng);
        double g_p = mtj_conductance(1.0, v, p);
        double g_ap = mtj_conductance(-1.0, v, p);
        double c = cosd(rng);
        double g = mtj_conductance(c, v, p);
        CHECK(g == doctest::Approx(g_ap + (g_p - g_ap) * 0.5 * (1.0 + c)).epsilon(1e-12));
        CHECK(g >= g_ap - 1e-15);
        CHECK(g <= g_p + 1e-15);
    }
    CHECK_THROWS_AS(mtj_conductance(1.5, 0.0, p), std::domain_error);
    CHECK_THROWS_AS(mtj_conductance(-1.0001, 0.0, p), std::domain_error);
}

namespace {

TransistorParams bench_nfet() {
    TransistorParams t;
    t.polarity = FetPolarity::nfet;
    t.W = 400e-9;
    t.L = 40e-9;
    t.Vth = 0.4;
    t.k_drive = 1e-4;
    t.alpha_sat = 1.3;
    t.lambda_ch = 0.1;
    return t;
}

} // namespace

TEST_CASE("transistor saturation and triode match hand-computed values") {
    auto t = bench_nfet();
    // W/L = 10, Vov = 0.6, 0.6^1.3 = 0.51475032, clm 1.1 -> 5.6623e-4 A.
    CHECK(transistor_current(t, 1.0, 1.0) == doctest::Approx(5.66225e-4).epsilon(1e-4));
    // Triode x = 0.5: s = 0.75, clm 1.03 -> 3.97644e-4 A.
    CHECK(transistor_current(t, 1.0, 0.3) == doctest::Approx(3.97644e-4).epsilon(1e-4));
}

TEST_CASE("transistor cutoff, scaling and monotonicity") {
    auto t = bench_nfet();
    CHECK(transistor_current(t, 0.0, 1.0) == 0.0);
    CHECK(transistor_current(t, 0.4, 1.0) == 0.0);
    CHECK(transistor_current(t, 0.39, 1.0) == 0.0);

    auto t2 = t;
    t2.W = 2.0 * t.W;
    for (double vds : {0.05, 0.3, 0.8, 1.1})
        CHECK(transistor_current(t2, 1.0, vds)
              == doctest::Approx(2.0 * transistor_current(t, 1.0, vds)).epsilon(1e-12));

    double prev = 0.0;
    for (double vgs = 0.45; vgs < 1.15; vgs += 0.05) {
        double i = transistor_current(t, vgs, 1.0);
        CHECK(i > prev);
        prev = i;
    }
    prev = -1.0;
    for (double vds = 0.0; vds < 1.15; vds += 0.01) {
        double i = transistor_current(t, 1.0, vds);
        CHECK(i >= prev);
        prev = i;
    }
}

TEST_CASE("transistor current is C1 across the saturation boundary") {
    auto t = bench_nfet();
    double vov = 0.6;
    double below = transistor_current(t, 1.0, vov - 1e-9);
    double above = transistor_current(t, 1.0, vov + 1e-9);
    CHECK(std::fabs(above - below) < 1e-6 * above);
    double h = 1e-6;
    double d_below = (transistor_current(t, 1.0, vov - h) - transistor_current(t, 1.0, vov - 2 * h)) / h;
    double d_above = (transistor_current(t, 1.0, vov + 2 * h) - transistor_current(t, 1.0, vov + h)) / h;
    CHECK(d_above == doctest::Approx(d_below).epsilon(1e-2));
}

TEST_CASE("terminal swap antisymmetry and PFET mirror") {
    auto t = bench_nfet();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> v(-1.2, 1.2);
    for (int i = 0; i < 200; ++i) {
        double vgs = v(rng), vds = v(rng);
        CHECK(transistor_current(t, vgs, vds)
              == doctest::Approx(-transistor_current(t, vgs - vds, -vds)).epsilon(1e-12));
    }

    auto p = t;
    p.polarity = FetPolarity::pfet;
    p.Vth = -0.4;
    for (int i = 0; i < 200; ++i) {
        double vgs = v(rng), vds = v(rng);
        CHECK(transistor_current(p, vgs, vds)
              == doctest::Approx(-transistor_current(t, -vgs, -vds)).epsilon(1e-12));
    }
    // Conducting PFET sinks current from source to drain (negative drain-source sign).
    CHECK(transistor_current(p, -1.0, -1.0) < 0.0);
}

TEST_CASE("default devices carry polarity-signed thresholds") {
    auto n = default_nfet(290e-9);
    auto p = default_pfet(1000e-9);
    CHECK(n.Vth == 0.45);
    CHECK(p.Vth == -0.45);
    CHECK(transistor_current(n, 1.1, 1.1) > 0.0);
    CHECK(transistor_current(p, -1.1, -1.1) < 0.0);
    CHECK(transistor_current(n, 1.1, 1.1) > -transistor_current(p, -1.1, -1.1));
}

TEST_CASE("node capacitance aggregates gate terms plus parasitic") {
    TransistorParams g;
    g.W = 400e-9;
    g.L = 40e-9;
    g.C_gate_per_area = 0.02;
    CHECK(g.gate_cap() == doctest::Approx(0.32e-15).epsilon(1e-12));
    CHECK(derive_supply_and_caps(0, {}) == doctest::Approx(1.0e-15).epsilon(1e-12));
    CHECK(derive_supply_and_caps(1, {g}) == doctest::Approx(1.32e-15).epsilon(1e-12));
    CHECK(derive_supply_and_caps(2, {g, g}) == doctest::Approx(1.64e-15).epsilon(1e-12));
    CHECK(derive_supply_and_caps(1, {g}, 0.0) == doctest::Approx(0.32e-15).epsilon(1e-12));
}
