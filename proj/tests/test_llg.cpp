#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nvff/llg.hpp"

using namespace nvff;

namespace {

FreeLayerParams perp_free_layer() {
    // 40 x 40 x 0.7 nm perpendicular device, E = 32 kBT, alpha = 0.035
    FreeLayerParams fl;
    fl.Ms = 1.0e6;
    fl.alpha = 0.035;
    fl.t_F = 0.7e-9;
    fl.area = 40e-9 * 40e-9;
    fl.anisotropy_kind = AnisotropyKind::perpendicular;
    fl.easy_axis = {0, 0, 1};
    fl.E_barrier = 32.0;
    return fl;
}

FreeLayerParams inplane_free_layer() {
    // pi/4 * 120 x 40 x 1.5 nm elliptical in-plane device, E = 92 kBT
    FreeLayerParams fl;
    fl.Ms = 1.0e6;
    fl.alpha = 0.0122;
    fl.t_F = 1.5e-9;
    fl.area = M_PI / 4.0 * 120e-9 * 40e-9;
    fl.anisotropy_kind = AnisotropyKind::in_plane;
    fl.easy_axis = {1, 0, 0};
    fl.E_barrier = 92.0;
    fl.demag_nz = 0.0;
    return fl;
}

MagnetizationState tilted(const Vec3& axis, double sign, double theta) {
    Vec3 pole = axis * sign;
    Vec3 perp = std::abs(pole.z) < 0.9 ? Vec3{0, 0, 1}.cross(pole).normalized()
                                       : Vec3{1, 0, 0}.cross(pole).normalized();
    return {(pole * std::cos(theta) + perp * std::sin(theta)).normalized()};
}

} // namespace

TEST_CASE("stt efficiency algebra at the endpoints") {
    // phi(+1) = P: denominator (L^2+1)+(L^2-1) = 2 L^2
    CHECK(stt_efficiency(1.0, 0.62, 1.3) == doctest::Approx(0.62).epsilon(1e-12));
    // phi(-1) = P L^2 = 0.62 * 1.69 = 1.0478 (hand-evaluated)
    CHECK(stt_efficiency(-1.0, 0.62, 1.3) ==
          doctest::Approx(1.0478).epsilon(1e-12));
    // Lambda = 1 eliminates the asymmetry for any angle
    for (double c : {-1.0, -0.4, 0.0, 0.3, 1.0})
        CHECK(stt_efficiency(c, 0.62, 1.0) == doctest::Approx(0.62).epsilon(1e-12));
}

TEST_CASE("stt efficiency property-sampled endpoints") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dP(0.05, 0.95), dL(1.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        double P = dP(rng), L = dL(rng);
        CHECK(std::abs(stt_efficiency(1.0, P, L) - P) < 1e-12);
        CHECK(std::abs(stt_efficiency(-1.0, P, L) - P * L * L) < 1e-12);
    }
    CHECK_THROWS_AS((void)stt_efficiency(1.5, 0.62, 1.3), std::domain_error);
    CHECK_THROWS_AS((void)stt_efficiency(-1.0001, 0.62, 1.3), std::domain_error);
}

TEST_CASE("anisotropy field oracles") {
    // Hand oracle: Hk = 2*32*kB*300 / (mu0 * 1e6 * 1.12e-24) = 1.8835e5 A/m
    auto fl = perp_free_layer();
    CHECK(anisotropy_field(fl) == doctest::Approx(1.8835e5).epsilon(1e-3));
    // and against the closed-form expression exactly
    const auto& pc = phys_constants();
    double expect = 2.0 * 32.0 * pc.kB * 300.0 / (pc.mu0 * 1e6 * fl.volume());
    CHECK(anisotropy_field(fl) == doctest::Approx(expect).epsilon(1e-12));

    // Hand oracle in-plane: 2*92*kB*300 / (mu0 * 1e6 * 5.6549e-24) = 1.0725e5
    CHECK(anisotropy_field(inplane_free_layer()) ==
          doctest::Approx(1.0725e5).epsilon(1e-3));

    FreeLayerParams bad = fl;
    bad.area = 0.0;
    CHECK_THROWS_AS((void)anisotropy_field(bad), std::invalid_argument);
}

TEST_CASE("effective field composition") {
    auto fl = perp_free_layer();
    MagnetizationState m{{0, 0, 1}};
    Vec3 H = effective_field(m, fl, {0, 0, 0});
    CHECK(H.x == 0.0);
    CHECK(H.y == 0.0);
    CHECK(H.z == doctest::Approx(1.8835e5).epsilon(1e-3));

    // m perpendicular to the easy axis of a perpendicular device: zero field
    MagnetizationState mx{{1, 0, 0}};
    Vec3 H2 = effective_field(mx, fl, {0, 0, 0});
    CHECK(H2.norm() == doctest::Approx(0.0));

    // m = z on the in-plane device with the demag factor injected: pure demag
    auto ifl = inplane_free_layer();
    ifl.demag_nz = 1.0;
    Vec3 H3 = effective_field({{0, 0, 1}}, ifl, {0, 0, 0});
    CHECK(H3.x == 0.0);
    CHECK(H3.y == 0.0);
    CHECK(H3.z == doctest::Approx(-1.0e6).epsilon(1e-12));
}

TEST_CASE("llg rhs: fixed point, orthogonality, damping direction") {
    auto fl = perp_free_layer();
    TorqueDrive none;
    none.J_stt = 0.0;
    none.J_she = 0.0;

    Vec3 rhs0 = llg_rhs({{0, 0, 1}}, none, fl);
    CHECK(rhs0.norm() == doctest::Approx(0.0));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        Vec3 m{d(rng), d(rng), d(rng)};
        if (m.norm() < 1e-3) continue;
        MagnetizationState ms{m.normalized()};
        TorqueDrive drive;
        drive.J_stt = 5e10 * d(rng);
        drive.J_she = 2e11 * d(rng);
        drive.m_p = Vec3{d(rng), d(rng), d(rng)}.normalized();
        drive.sigma_she = Vec3{d(rng), d(rng), d(rng)}.normalized();
        Vec3 rhs = llg_rhs(ms, drive, fl);
        if (rhs.norm() > 0.0)
            CHECK(std::abs(ms.m.dot(rhs)) <= 1e-10 * rhs.norm());
    }

    // with zero drive, a tilt decays: energy is non-increasing
    auto m = tilted({0, 0, 1}, 1.0, 0.5);
    double e_prev = anisotropy_energy(m, fl);
    for (int i = 0; i < 2000; ++i) {
        m = integrate_step(m, none, fl, 1e-12);
        double e = anisotropy_energy(m, fl);
        CHECK(e <= e_prev + 1e-30);
        e_prev = e;
    }
    CHECK(m.m.z > 0.999);
}

TEST_CASE("integrate step invariants and guard") {
    auto fl = perp_free_layer();
    TorqueDrive none;
    MagnetizationState eq{{0, 0, 1}};
    auto r = integrate_step(eq, none, fl, 1e-12);
    CHECK((r.m - eq.m).norm() < 1e-15);

    CHECK_THROWS_AS((void)integrate_step(eq, none, fl, 3e-12),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)integrate_step(eq, none, fl, 0.0),
                    std::invalid_argument);

    // norm stays unit over 1e5 driven steps
    TorqueDrive drive;
    drive.J_stt = 4.9e10;
    drive.m_p = {0, 0, -1};
    drive.J_she = 1e11;
    drive.sigma_she = {1, 0, 0};
    auto m = tilted({0, 0, 1}, 1.0, 0.18);
    for (int i = 0; i < 100000; ++i) {
        m = integrate_step(m, drive, fl, 1e-12);
        if ((i & 1023) == 0)
            REQUIRE(std::abs(m.m.norm() - 1.0) <= 1e-9);
    }
    CHECK(std::abs(m.m.norm() - 1.0) <= 1e-9);
}

TEST_CASE("stt switching at the backup-scale current density") {
    // 78.9 uA through 40x40 nm: J = 4.93e10 A/m^2; AP (m = +z, m_p = -z)
    // must switch to P within the ~1 ns scale.
    auto fl = perp_free_layer();
    TorqueDrive drive;
    drive.J_stt = 78.9e-6 / fl.area;
    drive.m_p = {0, 0, -1};
    auto m0 = tilted({0, 0, 1}, 1.0, 1.0 / std::sqrt(fl.E_barrier));
    auto res = simulate_switching(
        m0, [&](double) { return drive; }, fl, 5e-9, 1e-12);
    REQUIRE(res.switch_time.has_value());
    CHECK(*res.switch_time > 0.4e-9);
    CHECK(*res.switch_time < 2.8e-9);
    CHECK(res.trajectory.back().z < -0.9);

    // zero drive from equilibrium: no switch
    auto quiet = simulate_switching(
        {{0, 0, 1}}, [](double) { return TorqueDrive{}; }, fl, 1e-9, 1e-12);
    CHECK(!quiet.switch_time.has_value());
}

TEST_CASE("dt refinement: switch time converges with order >= 3") {
    auto fl = perp_free_layer();
    TorqueDrive drive;
    drive.J_stt = 6.0e10;
    drive.m_p = {0, 0, -1};
    auto m0 = tilted({0, 0, 1}, 1.0, 0.18);
    auto profile = [&](double) { return drive; };

    double t2 = *simulate_switching(m0, profile, fl, 4e-9, 2.0e-12).switch_time;
    double t1 = *simulate_switching(m0, profile, fl, 4e-9, 1.0e-12).switch_time;
    double th = *simulate_switching(m0, profile, fl, 4e-9, 0.5e-12).switch_time;
    double tq = *simulate_switching(m0, profile, fl, 4e-9, 0.25e-12).switch_time;

    // halving dt from 1 ps changes the switching time by far less than 1%
    CHECK(std::abs(t1 - th) / th < 0.01);

    double order = std::log2(std::abs(t2 - t1) / std::abs(t1 - th));
    double order2 = std::log2(std::abs(t1 - th) / std::abs(th - tq));
    CHECK(std::max(order, order2) >= 3.0);
}

TEST_CASE("stt asymmetry: threshold current ratio tracks Lambda^2") {
    auto fl = perp_free_layer();
    double theta0 = 1.0 / std::sqrt(fl.E_barrier);

    auto switches_within = [&](double J_mag, double j_sign, double mp_z) {
        TorqueDrive drive;
        drive.J_stt = J_mag * j_sign;
        drive.m_p = {0, 0, mp_z};
        auto m0 = tilted({0, 0, 1}, +1.0, theta0);
        auto res = simulate_switching(
            m0, [&](double) { return drive; }, fl, 5e-9, 1e-12);
        return res.switch_time.has_value();
    };

    auto bisect_threshold = [&](double j_sign, double mp_z) {
        double lo = 5e9, hi = 4e11;
        for (int i = 0; i < 24; ++i) {
            double mid = 0.5 * (lo + hi);
            (switches_within(mid, j_sign, mp_z) ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };

    // AP -> P: m starts opposite m_p, positive current (phi = P L^2 helps)
    double j_ap_to_p = bisect_threshold(+1.0, -1.0);
    // P -> AP: m starts along m_p, current reversed (phi = P works against L^2)
    double j_p_to_ap = bisect_threshold(-1.0, +1.0);

    CHECK(j_ap_to_p < j_p_to_ap);
    double ratio = j_p_to_ap / j_ap_to_p;
    CHECK(ratio > 1.69 * 0.75);
    CHECK(ratio < 1.69 * 1.25);
}
