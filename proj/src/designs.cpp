#include "nvff/designs.hpp"

#include <stdexcept>

namespace nvff {

namespace {

constexpr double kGateLen = 40e-9;
constexpr double kNodeParasitic = 1e-15; // F

// Fixed periphery sizings (widths in meters). The write access pair and the
// read footers do not scale with the latch; the erase footer is shared.
constexpr double kAccessW = 165e-9;
constexpr double kWriteLineR = 1750.0; // Ohm per write leg
constexpr double kEraseFooterW = 200e-9;
constexpr double kReadFooterW = 140e-9;
constexpr double kEqualizerRatio = 0.5;  // of latch PMOS width
constexpr double kMasterRatio = 0.5;     // master stage vs slave widths

// Baseline surrogate write chain: latch-sourced strip current through a
// narrow access NFET with a series degeneration resistor on each leg.
constexpr double kBaselineAccessRatio = 0.18; // of latch NMOS width
constexpr double kBaselineDegeneration = 1e3; // Ohm, total

struct LatchNodes {
    NodeId qt, qc;
};

// Cross-coupled slave inverters plus the negative-edge master stage.
LatchNodes build_latch_and_master(Netlist& net, const DesignSpec& s,
                                  NodeId pwr) {
    NodeId qt = net.add_node("QT");
    NodeId qc = net.add_node("QC");
    NodeId mt = net.add_node("MT");
    NodeId mc = net.add_node("MC");
    NodeId mbo = net.add_node("MBO");
    NodeId d = net.node("D");
    NodeId clk = net.node("CLK");
    NodeId clkb = net.node("CLKB");

    auto lp = default_pfet(s.w_p, kGateLen);
    auto ln = default_nfet(s.w_n, kGateLen);
    net.add_fet(lp, qt, qc, pwr);
    net.add_fet(ln, qt, qc, kGround);
    // The QT -> QC feedback inverter is clock-gated so the master never has
    // to fight the latch while the transfer gate is open. While CLK is high
    // (hold, writeback, wakeup) the loop is closed and the pair regenerates.
    // The NFETs are drawn at twice the latch width so the stacked pull-down
    // matches the plain inverter on the QT side; the PFETs stay at 1x since
    // the gate NFET passes the low range and the pull-up is PFET-limited.
    NodeId qci = net.add_node("QCI");
    net.add_fet(lp, qci, qt, pwr);
    net.add_fet(default_nfet(2.0 * s.w_n, kGateLen), qci, qt, kGround);
    net.add_fet(default_nfet(2.0 * s.w_n, kGateLen), qci, clk, qc);
    net.add_fet(lp, qci, clkb, qc);

    double f_p = kMasterRatio * s.w_p, f_n = kMasterRatio * s.w_n;
    auto mp = default_pfet(f_p, kGateLen);
    auto mn = default_nfet(f_n, kGateLen);
    // D -> MT pass gate, open while CLK is high.
    net.add_fet(mn, d, clk, mt);
    net.add_fet(mp, d, clkb, mt);
    // MT -> MC inverter.
    net.add_fet(mp, mc, mt, pwr);
    net.add_fet(mn, mc, mt, kGround);
    // MC -> MBO -> MT keeper loop, closed while CLK is low.
    net.add_fet(mp, mbo, mc, pwr);
    net.add_fet(mn, mbo, mc, kGround);
    net.add_fet(mn, mbo, clkb, mt);
    net.add_fet(mp, mbo, clk, mt);
    // MC -> QC transfer into the slave on the falling edge.
    net.add_fet(mn, mc, clkb, qc);
    net.add_fet(mp, mc, clk, qc);
    return {qt, qc};
}

void build_strip(Netlist& net, Design& d, NodeId t1, NodeId t2) {
    double r = heavy_metal_resistance(d.dev.strip);
    if (d.dev.strip.orientation == StripOrientation::y_type) {
        NodeId a1 = net.add_node("A1");
        NodeId a2 = net.add_node("A2");
        int s0 = net.add_resistor(t1, a1, r / 4.0);
        int s1 = net.add_resistor(a1, a2, r / 2.0);
        int s2 = net.add_resistor(a2, t2, r / 4.0);
        net.strip_segments = {s0, s1, s2};
        NodeId m1t = net.add_node("M1T");
        NodeId m2t = net.add_node("M2T");
        net.add_junction(m1t, a1, 1, d.dev.mtj1.mtj);
        net.add_junction(m2t, a2, 2, d.dev.mtj2.mtj);
        net.junction_segments = {{s0, s1}, {s1, s2}};
    } else {
        NodeId a = net.add_node("A");
        int s0 = net.add_resistor(t1, a, r / 2.0);
        int s1 = net.add_resistor(a, t2, r / 2.0);
        net.strip_segments = {s0, s1};
        NodeId m1t = net.add_node("M1T");
        NodeId m2t = net.add_node("M2T");
        net.add_junction(m1t, a, 1, d.dev.mtj1.mtj);
        net.add_junction(m2t, a, 2, d.dev.mtj2.mtj);
        net.junction_segments = {{s0, s1}, {s0, s1}};
    }
}

void add_controls(Netlist& net, const std::vector<std::string>& names) {
    for (const auto& n : names) net.force(net.add_node(n), n);
}

} // namespace

std::string design_name(DesignKind k) {
    switch (k) {
        case DesignKind::py: return "p-y";
        case DesignKind::iy: return "i-y";
        case DesignKind::px: return "p-x";
        case DesignKind::ix: return "i-x";
        case DesignKind::baseline: return "baseline";
    }
    return "?";
}

double default_header_width(DesignKind k) {
    switch (k) {
        case DesignKind::py: return 1000e-9;
        case DesignKind::iy: return 500e-9;
        case DesignKind::px: return 2000e-9;
        case DesignKind::ix: return 2000e-9;
        case DesignKind::baseline: return 0.0;
    }
    return 0.0;
}

Design build_design(const DesignSpec& spec) {
    Design d;
    d.spec = spec;
    if (d.spec.w_header <= 0.0) d.spec.w_header = default_header_width(spec.kind);

    Netlist& net = d.net;
    NodeId pwr = net.add_node("PWR");
    net.force(pwr, "PWR");

    auto tweak_junctions = [&d](double ra, double tmr) {
        d.dev.mtj1.mtj.RA = ra;
        d.dev.mtj2.mtj.RA = ra;
        d.dev.mtj1.mtj.TMR0 = tmr;
        d.dev.mtj2.mtj.TMR0 = tmr;
    };

    if (spec.kind == DesignKind::baseline) {
        d.has_restore = false;
        d.has_erase = false;
        d.dev = make_nand_spin(DeviceKind::in_plane, StripOrientation::y_type);
        tweak_junctions(spec.mtj_ra, spec.mtj_tmr);
        add_controls(net, {"D", "CLK", "CLKB", "WEN"});
        auto latch = build_latch_and_master(net, d.spec, pwr);

        NodeId t1 = net.add_node("T1");
        NodeId t2 = net.add_node("T2");
        NodeId lga = net.add_node("LGA");
        NodeId lgb = net.add_node("LGB");
        auto acc = default_nfet(kBaselineAccessRatio * spec.w_n, kGateLen);
        net.add_fet(acc, latch.qt, net.node("WEN"), lga);
        net.add_fet(acc, latch.qc, net.node("WEN"), lgb);
        net.add_resistor(lga, t1, kBaselineDegeneration / 2.0);
        net.add_resistor(lgb, t2, kBaselineDegeneration / 2.0);
        build_strip(net, d, t1, t2);
    } else {
        bool perp = spec.kind == DesignKind::py || spec.kind == DesignKind::px;
        bool ytyp = spec.kind == DesignKind::py || spec.kind == DesignKind::iy;
        d.dev = make_nand_spin(
            perp ? DeviceKind::perpendicular : DeviceKind::in_plane,
            ytyp ? StripOrientation::y_type : StripOrientation::x_type);
        tweak_junctions(spec.mtj_ra, spec.mtj_tmr);
        add_controls(net, {"D", "CLK", "CLKB", "WEN", "EEN", "REN", "EQ", "PG"});
        auto latch = build_latch_and_master(net, d.spec, pwr);

        // Equalizer between the slave nodes, active low.
        auto eq = default_pfet(kEqualizerRatio * spec.w_p, kGateLen);
        net.add_fet(eq, latch.qt, net.node("EQ"), latch.qc);

        NodeId t1 = net.add_node("T1");
        NodeId t2 = net.add_node("T2");
        // Write/erase header into terminal 1, erase footer at terminal 2.
        net.add_fet(default_pfet(d.spec.w_header, kGateLen), t1,
                    net.node("PG"), pwr);
        net.add_fet(default_nfet(kEraseFooterW, kGateLen), t2,
                    net.node("EEN"), kGround);
        // Read footers ground both terminals during restore.
        auto rf = default_nfet(kReadFooterW, kGateLen);
        net.add_fet(rf, t1, net.node("REN"), kGround);
        net.add_fet(rf, t2, net.node("REN"), kGround);

        build_strip(net, d, t1, t2);

        // Access pair from the pillar electrodes to the slave nodes, with the
        // write-line wiring resistance in series on each leg.
        NodeId w1 = net.add_node("W1");
        NodeId w2 = net.add_node("W2");
        auto acc = default_nfet(kAccessW, kGateLen);
        net.add_fet(acc, latch.qt, net.node("WEN"), w1);
        net.add_fet(acc, latch.qc, net.node("WEN"), w2);
        net.add_resistor(w1, net.node("M1T"), kWriteLineR);
        net.add_resistor(w2, net.node("M2T"), kWriteLineR);
    }

    net.attach_node_capacitance(kNodeParasitic);
    return d;
}

} // namespace nvff
