#pragma once

#include <vector>

// Compact electrical models: bias-dependent MTJ conductance, heavy-metal strip
// resistance, and an alpha-power-law behavioral transistor standing in for a
// 40 nm CMOS kit. Calibration constants are frozen here (see README).

namespace nvff {

struct MtjParams {
    double area = 1.6e-15;  // m^2
    double RA = 5.0e-12;    // resistance-area product, Ohm m^2 (5 Ohm um^2)
    double TMR0 = 1.2;      // zero-bias TMR ratio
    double Vh = 0.5;        // TMR bias roll-off voltage, V

    double r_parallel() const { return RA / area; }
};

enum class StripOrientation { x_type, y_type };

struct HeavyMetalStrip {
    double w = 80e-9;   // m
    double l = 60e-9;   // m
    double d = 5e-9;    // m
    double rho = 2.0e-6; // resistivity, Ohm m (200 uOhm cm)
    StripOrientation orientation = StripOrientation::y_type;
};

enum class FetPolarity { nfet, pfet };

struct TransistorParams {
    FetPolarity polarity = FetPolarity::nfet;
    double W = 290e-9;          // m
    double L = 40e-9;           // m
    double Vth = 0.45;          // V, signed by polarity (negative for PFET)
    double k_drive = 5.5e-5;    // A / V^alpha_sat per unit W/L
    double alpha_sat = 1.3;     // velocity-saturation exponent
    double lambda_ch = 0.2;     // channel-length modulation, 1/V
    double C_gate_per_area = 0.02; // F/m^2 (20 fF/um^2)

    double gate_cap() const { return C_gate_per_area * W * L; }
};

// Behavioral transistor calibration (one-point anchored to the 78.9 uA write
// current of the reference perpendicular design; see README).
TransistorParams default_nfet(double W, double L = 40e-9);
TransistorParams default_pfet(double W, double L = 40e-9);

// G = G_P (1+cos)/2 + G_AP(V) (1-cos)/2 with Lorentzian TMR roll-off.
double mtj_conductance(double cos_angle, double V_bias, const MtjParams& p);

// rho * L_path / A_cross along the orientation's current axis.
double heavy_metal_resistance(const HeavyMetalStrip& strip);

// Drain-to-source channel current for the (Vgs, Vds) pair referenced to the
// nominal source. Cutoff returns 0; triode uses a C1 quadratic blend; both
// terminal orderings handled by symmetry.
double transistor_current(const TransistorParams& t, double Vgs, double Vds);

// Lumped node capacitance: attached gate caps plus a fixed parasitic.
double derive_supply_and_caps(int node_fanout,
                              const std::vector<TransistorParams>& gates,
                              double C_par = 1.0e-15);

} // namespace nvff
