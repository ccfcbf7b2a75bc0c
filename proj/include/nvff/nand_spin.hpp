#pragma once

#include "nvff/device_models.hpp"
#include "nvff/llg.hpp"
#include "nvff/vec3.hpp"

// Two MTJs sharing one heavy-metal strip. The strip current erases both free
// layers to AP via SOT; a vertical current through one MTJ programs it to P
// via STT. Geometry (x/y) sets the current axis, spin polarization axis and,
// for in-plane devices, the easy axis.

namespace nvff {

enum class DeviceKind { perpendicular, in_plane };
enum class MtjBranch { mtj1, mtj2 };

struct MtjBundle {
    MtjParams mtj;
    FreeLayerParams fl;
    MagnetizationState m;
    Vec3 m_p{0.0, 0.0, 1.0}; // pinned-layer unit vector
};

struct NandSpinDevice {
    DeviceKind kind = DeviceKind::perpendicular;
    MtjBundle mtj1;
    MtjBundle mtj2;
    HeavyMetalStrip strip;
    Vec3 bias_field{0.0, 0.0, 0.0}; // A/m, along the erase-current axis (perpendicular kind only)
    double sigma_sign = 1.0;        // flips the spin polarization for the erase polarity
    // Torque calibration multipliers (applied when building drives, not in the
    // raw current-to-density mapping).
    double sot_scale = 1.0;
    double stt_scale = 1.0;

    Vec3 current_axis() const;      // unit vector of positive strip current
    Vec3 sigma_axis() const;        // spin polarization for positive strip current
    double sot_cross_section() const;
};

enum class StoredBitValue { bit0, bit1, erased, invalid };

struct StoredBit {
    StoredBitValue value = StoredBitValue::invalid;
};

struct CurrentDensities {
    double J_she = 0.0;  // A/m^2 through the strip cross-section
    double J_stt1 = 0.0; // A/m^2 through mtj1
    double J_stt2 = 0.0; // A/m^2 through mtj2
};

// Factory with per-kind magnetic and electrical defaults. In-plane devices get
// their easy axis collinear with the spin polarization of the chosen
// orientation; perpendicular devices get a 1 mT in-plane assist field along
// the current axis.
NandSpinDevice make_nand_spin(DeviceKind kind, StripOrientation orientation);

// Raw signed mapping from terminal currents to densities; no calibration.
CurrentDensities terminal_currents_to_densities(const NandSpinDevice& dev,
                                                double i_strip, double i_mtj1,
                                                double i_mtj2);

// Thresholds each free layer against its pinned layer at +-0.5 projection and
// maps the (mtj1, mtj2) pair: (P,AP)=bit0, (AP,P)=bit1, (AP,AP)=erased,
// anything else invalid.
StoredBit decode_state(const NandSpinDevice& dev);

// Deterministic stand-in for the thermal distribution: if a free layer sits
// closer to a pole than the equipartition cone <theta^2> = kT/2E, tilt it onto
// that cone along a fixed transverse direction. Applied at pulse starts.
void apply_thermal_tilt(NandSpinDevice& dev);

// Integrates both free layers under the shared strip current (SOT plus bias
// field, zero STT). Failure is observable through decode_state, not thrown.
NandSpinDevice erase_pulse(const NandSpinDevice& dev, double i_strip,
                           double duration, double dt);

// Integrates the selected free layer under pure STT. Requires an erased
// device (erase-before-program protocol).
NandSpinDevice program_pulse(const NandSpinDevice& dev, MtjBranch branch,
                             double i_mtj, double duration, double dt);

} // namespace nvff
