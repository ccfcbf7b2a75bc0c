#include "nvff/nand_spin.hpp"

#include <cmath>
#include <stdexcept>

namespace nvff {

namespace {

constexpr double kBiasFieldT = 0.001; // 1 mT in-plane assist for perpendicular kind

// Torque calibration multipliers per kind, frozen after the one-time tuning
// against the reference erase/backup timings (see README).
constexpr double kSotScalePerp = 3.40;
constexpr double kSttScalePerp = 0.75;
constexpr double kSotScaleInPlane = 3.20;
constexpr double kSttScaleInPlane = 2.90;

// Perpendicular free layers saturate near the film plane while the strip
// current is on and only commit to a pole after release. The erase helper
// therefore appends a fixed drive-off settling window before callers decode.
constexpr double kEraseSettleWindow = 3.0e-9;

FreeLayerParams perp_free_layer() {
    FreeLayerParams fl;
    fl.Ms = 1.0e6;
    fl.alpha = 0.035;
    fl.t_F = 0.7e-9;
    fl.area = 40e-9 * 40e-9;
    fl.anisotropy_kind = AnisotropyKind::perpendicular;
    fl.easy_axis = Vec3{0.0, 0.0, 1.0};
    fl.E_barrier = 32.0;
    return fl;
}

FreeLayerParams inplane_free_layer(const Vec3& easy) {
    FreeLayerParams fl;
    fl.Ms = 1.0e6;
    fl.alpha = 0.024;
    fl.t_F = 1.5e-9;
    fl.area = M_PI / 4.0 * 120e-9 * 40e-9;
    fl.anisotropy_kind = AnisotropyKind::in_plane;
    fl.easy_axis = easy;
    fl.E_barrier = 92.0;
    return fl;
}

Vec3 tilt_direction(const FreeLayerParams& fl) {
    // Fixed transverse direction, orthonormalized against the easy axis.
    Vec3 t = std::fabs(fl.easy_axis.z) > 0.9 ? Vec3{1.0, 0.0, 0.0}
                                             : Vec3{0.0, 0.0, 1.0};
    Vec3 e = fl.easy_axis.normalized();
    return (t - t.dot(e) * e).normalized();
}

void tilt_bundle(MtjBundle& b) {
    // Equipartition cone of the easy-axis macrospin well, <theta^2> = kT/2E.
    double theta = 1.0 / std::sqrt(2.0 * b.fl.E_barrier);
    Vec3 e = b.fl.easy_axis.normalized();
    double proj = b.m.m.dot(e);
    if (std::fabs(proj) > std::cos(theta)) {
        double s = proj >= 0.0 ? 1.0 : -1.0;
        b.m.m = (std::cos(theta) * s) * e + std::sin(theta) * tilt_direction(b.fl);
    }
}

void integrate_bundle(MtjBundle& b, const TorqueDrive& drive, double duration,
                      double dt) {
    long steps = std::lround(duration / dt);
    for (long i = 0; i < steps; ++i)
        b.m = integrate_step(b.m, drive, b.fl, dt);
}

StoredBitValue pair_value(double c1, double c2) {
    auto state = [](double c) { return c > 0.5 ? 1 : (c < -0.5 ? -1 : 0); };
    int s1 = state(c1), s2 = state(c2);
    if (s1 == 1 && s2 == -1) return StoredBitValue::bit0;
    if (s1 == -1 && s2 == 1) return StoredBitValue::bit1;
    if (s1 == -1 && s2 == -1) return StoredBitValue::erased;
    return StoredBitValue::invalid;
}

} // namespace

Vec3 NandSpinDevice::current_axis() const {
    return strip.orientation == StripOrientation::y_type ? Vec3{0.0, 1.0, 0.0}
                                                         : Vec3{1.0, 0.0, 0.0};
}

Vec3 NandSpinDevice::sigma_axis() const {
    // Spins accumulated at the top surface for positive strip current: z x j.
    return sigma_sign * Vec3{0.0, 0.0, 1.0}.cross(current_axis());
}

double NandSpinDevice::sot_cross_section() const {
    // y-type current crosses w*d. The x-type strip spans both pillars
    // laterally, so the same current spreads over twice the section.
    if (strip.orientation == StripOrientation::y_type)
        return strip.w * strip.d;
    return 2.0 * strip.w * strip.d;
}

NandSpinDevice make_nand_spin(DeviceKind kind, StripOrientation orientation) {
    NandSpinDevice dev;
    dev.kind = kind;
    dev.strip.l = 60e-9;
    dev.strip.d = 5e-9;
    dev.strip.rho = 2.0e-6;
    dev.strip.orientation = orientation;

    if (kind == DeviceKind::perpendicular) {
        dev.strip.w = 80e-9;
        MtjBundle b;
        b.fl = perp_free_layer();
        b.mtj.area = b.fl.area;
        b.m_p = Vec3{0.0, 0.0, 1.0};
        b.m.m = Vec3{0.0, 0.0, -1.0}; // start AP (erased)
        dev.mtj1 = b;
        dev.mtj2 = b;
        // In-plane assist field antiparallel to the positive current axis;
        // with sigma_sign below this polarity erases to AP.
        dev.bias_field = (-kBiasFieldT / phys_constants().mu0) * dev.current_axis();
        dev.sigma_sign = 1.0;
        dev.sot_scale = kSotScalePerp;
        dev.stt_scale = kSttScalePerp;
    } else {
        dev.strip.w = 180e-9;
        // Easy axis collinear with the spin polarization of this orientation.
        Vec3 sigma = Vec3{0.0, 0.0, 1.0}.cross(
                           orientation == StripOrientation::y_type
                               ? Vec3{0.0, 1.0, 0.0}
                               : Vec3{1.0, 0.0, 0.0});
        Vec3 easy = sigma.normalized();
        MtjBundle b;
        b.fl = inplane_free_layer(easy);
        b.mtj.area = b.fl.area;
        b.m_p = -1.0 * easy; // positive erase current parks m along +sigma
        b.m.m = easy;        // start AP (erased)
        dev.mtj1 = b;
        dev.mtj2 = b;
        dev.bias_field = Vec3{0.0, 0.0, 0.0};
        dev.sigma_sign = 1.0;
        dev.sot_scale = kSotScaleInPlane;
        dev.stt_scale = kSttScaleInPlane;
    }
    return dev;
}

CurrentDensities terminal_currents_to_densities(const NandSpinDevice& dev,
                                                double i_strip, double i_mtj1,
                                                double i_mtj2) {
    CurrentDensities d;
    d.J_she = i_strip / dev.sot_cross_section();
    d.J_stt1 = i_mtj1 / dev.mtj1.mtj.area;
    d.J_stt2 = i_mtj2 / dev.mtj2.mtj.area;
    return d;
}

StoredBit decode_state(const NandSpinDevice& dev) {
    double c1 = dev.mtj1.m.m.dot(dev.mtj1.m_p.normalized());
    double c2 = dev.mtj2.m.m.dot(dev.mtj2.m_p.normalized());
    return StoredBit{pair_value(c1, c2)};
}

void apply_thermal_tilt(NandSpinDevice& dev) {
    tilt_bundle(dev.mtj1);
    tilt_bundle(dev.mtj2);
}

NandSpinDevice erase_pulse(const NandSpinDevice& dev, double i_strip,
                           double duration, double dt) {
    NandSpinDevice out = dev;
    apply_thermal_tilt(out);
    TorqueDrive drive;
    drive.J_stt = 0.0;
    drive.J_she = out.sot_scale * i_strip / out.sot_cross_section();
    drive.sigma_she = out.sigma_axis();
    drive.H_ext = out.bias_field;
    integrate_bundle(out.mtj1, drive, duration, dt);
    integrate_bundle(out.mtj2, drive, duration, dt);
    TorqueDrive rest;
    rest.H_ext = out.bias_field;
    integrate_bundle(out.mtj1, rest, kEraseSettleWindow, dt);
    integrate_bundle(out.mtj2, rest, kEraseSettleWindow, dt);
    return out;
}

NandSpinDevice program_pulse(const NandSpinDevice& dev, MtjBranch branch,
                             double i_mtj, double duration, double dt) {
    if (decode_state(dev).value != StoredBitValue::erased)
        throw std::logic_error("program_pulse: device not erased");
    NandSpinDevice out = dev;
    apply_thermal_tilt(out);
    MtjBundle& sel = branch == MtjBranch::mtj1 ? out.mtj1 : out.mtj2;
    MtjBundle& idle = branch == MtjBranch::mtj1 ? out.mtj2 : out.mtj1;
    TorqueDrive drive;
    drive.J_stt = out.stt_scale * i_mtj / sel.mtj.area;
    drive.m_p = sel.m_p;
    drive.J_she = 0.0;
    drive.H_ext = out.bias_field;
    integrate_bundle(sel, drive, duration, dt);
    TorqueDrive rest;
    rest.H_ext = out.bias_field;
    integrate_bundle(idle, rest, duration, dt);
    return out;
}

} // namespace nvff
