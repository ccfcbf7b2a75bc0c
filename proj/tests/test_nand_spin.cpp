#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nvff/nand_spin.hpp"

#include <cmath>
#include <stdexcept>

using namespace nvff;

namespace {

constexpr double kDt = 1e-12;

struct EraseNominal {
    DeviceKind kind;
    StripOrientation orientation;
    double i_strip;   // A
    double window;    // s, provisioned drive duration
};

// Nominal erase drive points used by the reference cell sizings. Windows
// follow the provisioning rule 1.2 * t_commit + pad (0.35 ns y / 0.45 ns x).
const EraseNominal kEraseTable[] = {
    {DeviceKind::perpendicular, StripOrientation::y_type, 178e-6, 0.47e-9},
    {DeviceKind::perpendicular, StripOrientation::x_type, 184e-6, 0.73e-9},
    {DeviceKind::in_plane, StripOrientation::y_type, 176e-6, 0.99e-9},
    {DeviceKind::in_plane, StripOrientation::x_type, 170e-6, 1.87e-9},
};

void set_pair(NandSpinDevice& dev, bool mtj1_parallel, bool mtj2_parallel) {
    dev.mtj1.m.m = mtj1_parallel ? dev.mtj1.m_p : -1.0 * dev.mtj1.m_p;
    dev.mtj2.m.m = mtj2_parallel ? dev.mtj2.m_p : -1.0 * dev.mtj2.m_p;
}

double cos1(const NandSpinDevice& dev) {
    return dev.mtj1.m.m.dot(dev.mtj1.m_p);
}

double cos2(const NandSpinDevice& dev) {
    return dev.mtj2.m.m.dot(dev.mtj2.m_p);
}

double program_current(DeviceKind kind) {
    return kind == DeviceKind::perpendicular ? 78.9e-6 : 85e-6;
}

double program_window(DeviceKind kind) {
    return kind == DeviceKind::perpendicular ? 2.42e-9 : 2.82e-9;
}

} // namespace

TEST_CASE("strip current maps to shear density over the orientation section") {
    auto py = make_nand_spin(DeviceKind::perpendicular, StripOrientation::y_type);
    auto d = terminal_currents_to_densities(py, 120e-6, 0.0, 0.0);
    CHECK(d.J_she == doctest::Approx(3.0e11).epsilon(1e-12));
    CHECK(d.J_stt1 == 0.0);
    CHECK(d.J_stt2 == 0.0);

    auto px = make_nand_spin(DeviceKind::perpendicular, StripOrientation::x_type);
    auto dx = terminal_currents_to_densities(px, 120e-6, 0.0, 0.0);
    CHECK(dx.J_she == doctest::Approx(1.5e11).epsilon(1e-12));

    auto iy = make_nand_spin(DeviceKind::in_plane, StripOrientation::y_type);
    auto di = terminal_currents_to_densities(iy, 120e-6, 0.0, 0.0);
    CHECK(di.J_she == doctest::Approx(120e-6 / (180e-9 * 5e-9)).epsilon(1e-12));
}

TEST_CASE("pillar current maps to torque density over the pillar area") {
    auto py = make_nand_spin(DeviceKind::perpendicular, StripOrientation::y_type);
    auto d = terminal_currents_to_densities(py, 0.0, 79e-6, -15e-6);
    CHECK(d.J_stt1 == doctest::Approx(4.9375e10).epsilon(1e-12));
    CHECK(d.J_stt2 == doctest::Approx(-15e-6 / py.mtj2.mtj.area).epsilon(1e-12));
    CHECK(d.J_she == 0.0);

    auto dn = terminal_currents_to_densities(py, -60e-6, 0.0, 0.0);
    CHECK(dn.J_she == doctest::Approx(-1.5e11).epsilon(1e-12));
}

TEST_CASE("state decoding covers all pair combinations") {
    for (auto kind : {DeviceKind::perpendicular, DeviceKind::in_plane}) {
        for (auto o : {StripOrientation::y_type, StripOrientation::x_type}) {
            auto dev = make_nand_spin(kind, o);
            set_pair(dev, true, false);
            CHECK(decode_state(dev).value == StoredBitValue::bit0);
            set_pair(dev, false, true);
            CHECK(decode_state(dev).value == StoredBitValue::bit1);
            set_pair(dev, false, false);
            CHECK(decode_state(dev).value == StoredBitValue::erased);
            set_pair(dev, true, true);
            CHECK(decode_state(dev).value == StoredBitValue::invalid);
        }
    }
}

TEST_CASE("magnetization inside the dead band decodes as invalid") {
    auto dev = make_nand_spin(DeviceKind::perpendicular, StripOrientation::y_type);
    set_pair(dev, false, false);
    // Tip mtj1 to 85 degrees from the reference direction: |cos| < 0.5.
    double th = 85.0 * M_PI / 180.0;
    dev.mtj1.m.m = Vec3{std::sin(th), 0.0, std::cos(th)};
    CHECK(decode_state(dev).value == StoredBitValue::invalid);
    // Exactly on the threshold still counts as the dead band.
    dev.mtj1.m.m = Vec3{std::sqrt(0.75), 0.0, 0.5};
    CHECK(decode_state(dev).value == StoredBitValue::invalid);
}

TEST_CASE("erase settles both pillars antiparallel from every initial pair") {
    for (const auto& n : kEraseTable) {
        for (int init = 0; init < 4; ++init) {
            auto dev = make_nand_spin(n.kind, n.orientation);
            set_pair(dev, init & 1, init & 2);
            auto out = erase_pulse(dev, n.i_strip, n.window, kDt);
            INFO("kind=", int(n.kind), " orient=", int(n.orientation),
                 " init=", init);
            CHECK(decode_state(out).value == StoredBitValue::erased);
            CHECK(cos1(out) < -0.9);
            CHECK(cos2(out) < -0.9);
        }
    }
}

TEST_CASE("erase is deterministic") {
    for (const auto& n : kEraseTable) {
        auto dev = make_nand_spin(n.kind, n.orientation);
        set_pair(dev, true, false);
        auto a = erase_pulse(dev, n.i_strip, n.window, kDt);
        auto b = erase_pulse(dev, n.i_strip, n.window, kDt);
        CHECK(a.mtj1.m.m.x == b.mtj1.m.m.x);
        CHECK(a.mtj1.m.m.y == b.mtj1.m.m.y);
        CHECK(a.mtj1.m.m.z == b.mtj1.m.m.z);
        CHECK(a.mtj2.m.m.x == b.mtj2.m.m.x);
        CHECK(a.mtj2.m.m.y == b.mtj2.m.m.y);
        CHECK(a.mtj2.m.m.z == b.mtj2.m.m.z);
    }
}

TEST_CASE("insufficient drive does not commit an erase") {
    // Perpendicular kind below the in-plane pull threshold: falls back.
    auto p = make_nand_spin(DeviceKind::perpendicular, StripOrientation::y_type);
    set_pair(p, true, false);
    auto pe = erase_pulse(p, 50e-6, 0.47e-9, kDt);
    CHECK(decode_state(pe).value != StoredBitValue::erased);
    CHECK(cos1(pe) > 0.9);

    // In-plane kind with weak overdrive: too slow for the window.
    auto i = make_nand_spin(DeviceKind::in_plane, StripOrientation::y_type);
    set_pair(i, true, false);
    auto ie = erase_pulse(i, 40e-6, 0.99e-9, kDt);
    CHECK(decode_state(ie).value != StoredBitValue::erased);

    // A too-short pulse at full current does not commit either.
    auto s = make_nand_spin(DeviceKind::perpendicular, StripOrientation::y_type);
    set_pair(s, true, false);
    auto se = erase_pulse(s, 178e-6, 0.02e-9, kDt);
    CHECK(decode_state(se).value != StoredBitValue::erased);
}

TEST_CASE("zero-current pulses leave the stored state untouched") {
    auto dev = make_nand_spin(DeviceKind::perpendicular, StripOrientation::y_type);
    set_pair(dev, true, false);
    auto out = erase_pulse(dev, 0.0, 0.47e-9, kDt);
    CHECK(decode_state(out).value == StoredBitValue::bit0);

    auto er = make_nand_spin(DeviceKind::in_plane, StripOrientation::x_type);
    auto pr = program_pulse(er, MtjBranch::mtj1, 0.0, 2.82e-9, kDt);
    CHECK(decode_state(pr).value == StoredBitValue::erased);
}

TEST_CASE("program after erase yields the selected bit") {
    for (auto kind : {DeviceKind::perpendicular, DeviceKind::in_plane}) {
        for (auto o : {StripOrientation::y_type, StripOrientation::x_type}) {
            auto dev = make_nand_spin(kind, o); // fresh devices start erased
            auto b0 = program_pulse(dev, MtjBranch::mtj1,
                                    program_current(kind),
                                    program_window(kind), kDt);
            CHECK(decode_state(b0).value == StoredBitValue::bit0);
            auto b1 = program_pulse(dev, MtjBranch::mtj2,
                                    program_current(kind),
                                    program_window(kind), kDt);
            CHECK(decode_state(b1).value == StoredBitValue::bit1);
        }
    }
}

TEST_CASE("programming one pillar barely disturbs the other") {
    for (auto kind : {DeviceKind::perpendicular, DeviceKind::in_plane}) {
        auto dev = make_nand_spin(kind, StripOrientation::y_type);
        double before = cos2(dev);
        auto out = program_pulse(dev, MtjBranch::mtj1, program_current(kind),
                                 program_window(kind), kDt);
        CHECK(std::fabs(cos2(out) - before) < 0.05);
    }
}

TEST_CASE("program requires an erased device") {
    auto dev = make_nand_spin(DeviceKind::perpendicular, StripOrientation::y_type);
    auto once = program_pulse(dev, MtjBranch::mtj1, 78.9e-6, 2.42e-9, kDt);
    CHECK_THROWS_AS(program_pulse(once, MtjBranch::mtj2, 78.9e-6, 2.42e-9, kDt),
                    std::logic_error);
    set_pair(dev, true, true);
    CHECK_THROWS_AS(program_pulse(dev, MtjBranch::mtj1, 78.9e-6, 2.42e-9, kDt),
                    std::logic_error);
}

TEST_CASE("reversed program current cannot produce a valid bit") {
    for (auto kind : {DeviceKind::perpendicular, DeviceKind::in_plane}) {
        auto dev = make_nand_spin(kind, StripOrientation::y_type);
        auto out = program_pulse(dev, MtjBranch::mtj1, -program_current(kind),
                                 program_window(kind), kDt);
        auto v = decode_state(out).value;
        CHECK(v != StoredBitValue::bit0);
        CHECK(v != StoredBitValue::bit1);
    }
}

TEST_CASE("program timescale matches the torque overdrive") {
    auto dev = make_nand_spin(DeviceKind::perpendicular, StripOrientation::y_type);
    auto early = program_pulse(dev, MtjBranch::mtj1, 78.9e-6, 0.9e-9, kDt);
    CHECK(cos1(early) < 0.5); // not yet committed
    auto late = program_pulse(dev, MtjBranch::mtj1, 78.9e-6, 2.42e-9, kDt);
    CHECK(cos1(late) > 0.9);
}

TEST_CASE("thermal tilt is deterministic, bounded and idempotent") {
    auto dev = make_nand_spin(DeviceKind::perpendicular, StripOrientation::y_type);
    double target = std::cos(1.0 / std::sqrt(2.0 * dev.mtj1.fl.E_barrier));
    apply_thermal_tilt(dev);
    CHECK(cos1(dev) == doctest::Approx(-target).epsilon(1e-12));
    auto again = dev;
    apply_thermal_tilt(again);
    CHECK(again.mtj1.m.m.x == dev.mtj1.m.m.x);
    CHECK(again.mtj1.m.m.y == dev.mtj1.m.m.y);
    CHECK(again.mtj1.m.m.z == dev.mtj1.m.m.z);

    // Already-tipped states beyond the cone are left alone.
    dev.mtj1.m.m = Vec3{1.0, 0.0, 0.0};
    apply_thermal_tilt(dev);
    CHECK(dev.mtj1.m.m.x == 1.0);
}

TEST_CASE("erase delay is longer for the lateral orientation") {
    // Drive-window plus settle comparison at the nominal currents; the
    // lateral strip spreads the same current over twice the section.
    auto ty = [&](const EraseNominal& n) {
        auto dev = make_nand_spin(n.kind, n.orientation);
        set_pair(dev, true, true);
        auto out = erase_pulse(dev, n.i_strip, n.window, kDt);
        REQUIRE(decode_state(out).value == StoredBitValue::erased);
        return n.window;
    };
    CHECK(ty(kEraseTable[1]) > ty(kEraseTable[0]));
    CHECK(ty(kEraseTable[3]) > ty(kEraseTable[2]));
}
