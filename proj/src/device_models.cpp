#include "nvff/device_models.hpp"

#include <cmath>
#include <stdexcept>

namespace nvff {

namespace {

constexpr double kCosTol = 1e-9;

// Calibrated drive constants, A / V^1.3 per square of W/L.
constexpr double kNfetK = 5.5e-5;
constexpr double kPfetK = 1.50e-5;
constexpr double kLambda = 0.2;

} // namespace

TransistorParams default_nfet(double W, double L) {
    TransistorParams t;
    t.polarity = FetPolarity::nfet;
    t.W = W;
    t.L = L;
    t.Vth = 0.45;
    t.k_drive = kNfetK;
    t.lambda_ch = kLambda;
    return t;
}

TransistorParams default_pfet(double W, double L) {
    TransistorParams t;
    t.polarity = FetPolarity::pfet;
    t.W = W;
    t.L = L;
    t.Vth = -0.45;
    t.k_drive = kPfetK;
    t.lambda_ch = kLambda;
    return t;
}

double mtj_conductance(double cos_angle, double V_bias, const MtjParams& p) {
    if (cos_angle < -1.0 - kCosTol || cos_angle > 1.0 + kCosTol)
        throw std::domain_error("mtj_conductance: cos_angle outside [-1, 1]");
    double c = cos_angle < -1.0 ? -1.0 : (cos_angle > 1.0 ? 1.0 : cos_angle);
    if (p.area <= 0.0 || p.RA <= 0.0)
        throw std::invalid_argument("mtj_conductance: non-positive RA or area");

    double g_p = p.area / p.RA;
    // Antiparallel TMR collapses with bias, Lorentzian in V with scale Vh.
    double tmr_v = p.TMR0 / (1.0 + (V_bias / p.Vh) * (V_bias / p.Vh));
    double g_ap = g_p / (1.0 + tmr_v);
    return g_p * 0.5 * (1.0 + c) + g_ap * 0.5 * (1.0 - c);
}

double heavy_metal_resistance(const HeavyMetalStrip& strip) {
    if (strip.w <= 0.0 || strip.l <= 0.0 || strip.d <= 0.0)
        throw std::invalid_argument("heavy_metal_resistance: non-positive dimension");
    // Current flows along l for y-type strips, along w for x-type.
    if (strip.orientation == StripOrientation::y_type)
        return strip.rho * strip.l / (strip.w * strip.d);
    return strip.rho * strip.w / (strip.l * strip.d);
}

namespace {

// Forward current for an NFET-normalized device: vgs, vds both >= 0 at entry.
double forward_current(const TransistorParams& t, double vgs, double vds,
                       double vth_mag) {
    double vov = vgs - vth_mag;
    if (vov <= 0.0)
        return 0.0;
    double i_sat = t.k_drive * (t.W / t.L) * std::pow(vov, t.alpha_sat);
    double clm = 1.0 + t.lambda_ch * vds;
    if (vds >= vov)
        return i_sat * clm;
    double x = vds / vov;       // triode, 0 <= x < 1
    return i_sat * (2.0 - x) * x * clm;
}

} // namespace

double transistor_current(const TransistorParams& t, double Vgs, double Vds) {
    double vth_mag = std::fabs(t.Vth);
    double vgs = Vgs;
    double vds = Vds;
    if (t.polarity == FetPolarity::pfet) {
        // Mirror a PFET onto the NFET equations; current sign mirrors back.
        vgs = -Vgs;
        vds = -Vds;
    }
    double sign = 1.0;
    if (vds < 0.0) {
        // The lower terminal acts as source: re-reference the gate and swap.
        vgs = vgs - vds;
        vds = -vds;
        sign = -1.0;
    }
    double i = sign * forward_current(t, vgs, vds, vth_mag);
    return t.polarity == FetPolarity::pfet ? -i : i;
}

double derive_supply_and_caps(int node_fanout,
                              const std::vector<TransistorParams>& gates,
                              double C_par) {
    (void)node_fanout;
    double c = C_par;
    for (const auto& g : gates)
        c += g.gate_cap();
    return c;
}

} // namespace nvff
