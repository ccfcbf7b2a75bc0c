#pragma once

#include "nvff/nand_spin.hpp"
#include "nvff/netlist.hpp"

#include <string>

namespace nvff {

enum class DesignKind { py, iy, px, ix, baseline };

std::string design_name(DesignKind k);

// Knobs of one flip-flop instance. Latch widths set the VFF size; the
// write/erase header width is the drivability knob swept in experiments.
struct DesignSpec {
    DesignKind kind = DesignKind::py;
    double w_p = 400e-9;       // latch PMOS width, m
    double w_n = 290e-9;       // latch NMOS width, m
    double w_header = 0.0;     // 0 selects the per-kind default
    double tie_break = 0.0;    // V, deterministic restore seed on QT
    double dt = 1e-12;         // s, electrical step
    double mtj_ra = 5.0e-12;   // junction RA override, Ohm m^2
    double mtj_tmr = 1.2;      // junction zero-bias TMR override
};

// Drive windows resolved by characterization before a cycle is run.
struct ProvisionedWindows {
    double backup = 0.0;        // s, write-enable pulse
    double erase = 0.0;         // s, erase drive pulse
    double backup_switch = 0.0; // s, characterized worst-case switch time
    double erase_commit = 0.0;  // s, characterized minimal erase drive
};

struct Design {
    DesignSpec spec;
    Netlist net;
    NandSpinDevice dev; // starts erased; carries torque calibration
    ProvisionedWindows win;
    bool has_restore = true;
    bool has_erase = true;
};

double default_header_width(DesignKind k);

// Builds the complete netlist of one instance: master/slave latch, write
// and erase drivers, read footers, and the bound storage device.
Design build_design(const DesignSpec& spec);

} // namespace nvff
