#pragma once

#include "nvff/modes.hpp"

#include <iosfwd>
#include <string>
#include <vector>

// Experiment harness on top of the mode runner: window provisioning, full
// operating cycles, driver/latch sizing sweeps and the design comparison
// table. All results flatten to metric rows for CSV export.

namespace nvff {

// A strip write that has not settled within this budget counts as failed.
constexpr double kBackupTimeout = 10e-9; // s

struct MetricRow {
    std::string design;
    std::string operation;
    double delay = -1.0; // s, negative when the operation never completed
    double energy = 0.0; // J
    bool pass = false;
};

struct CycleMetrics {
    DesignKind kind = DesignKind::py;
    bool data = false;
    ModeMetrics active, backup, standby, restore;
    bool pass = false;
};

// Resolves the drive windows of one sizing by exploratory runs: a long erase
// drive gives the commit time, then a long write drive (after a provisioned
// erase) gives the worst-case switch time over both data values. Windows are
// derated 1.2x plus a fixed pad. Results are cached per sizing.
ProvisionedWindows characterize(const DesignSpec& spec);

// build_design plus characterized windows.
Design provisioned_design(const DesignSpec& spec);

// active (with hidden erase where the design has one) -> backup -> standby ->
// restore. The baseline kind runs active -> backup only, preconditioned to
// the complement state so the strip write must flip the device.
CycleMetrics full_cycle(const DesignSpec& spec, bool data,
                        Trace* trace_out = nullptr);

std::vector<MetricRow> cycle_rows(const CycleMetrics& c);

struct SweepPoint {
    double w_header = 0.0; // m
    double w_p = 0.0, w_n = 0.0;
    double delay = -1.0;  // s, backup switch
    double energy = 0.0;  // J, backup
    double i_write = 0.0; // A
    double v_low = 0.0;   // V
    bool pass = false;
};

// Backup metrics versus write-driver width at fixed latch size.
std::vector<SweepPoint> sweep_header(const DesignSpec& base,
                                     const std::vector<double>& widths,
                                     bool data);

struct VffPoint {
    double w_p = 0.0, w_n = 0.0;
    SweepPoint nominal; // at the kind's default driver width, worst data
    double delay_lo = 0.0, delay_hi = 0.0;   // band across driver widths
    double energy_lo = 0.0, energy_hi = 0.0; // band across driver widths
    bool pass = false; // both data values completed at every driver width
};

// Backup metrics versus latch sizing. Every point is re-characterized at its
// own sizing; the band spans `band_headers` (empty means the kind default
// only). The baseline kind ignores band_headers and applies the timeout.
std::vector<VffPoint> sweep_vff(
    DesignKind kind, const std::vector<std::pair<double, double>>& latch_sizes,
    const std::vector<double>& band_headers);

// One row per design and operation, worst of the two data values.
std::vector<MetricRow> compare_designs(const std::vector<DesignSpec>& specs);

// header: design,operation,delay_ns,energy_fJ,pass
void write_metrics_csv(std::ostream& os, const std::vector<MetricRow>& rows);

// header: time_s,<node names>,mz1,mz2,i_strip_A,i_mtj1_A,i_mtj2_A,p_supply_W
void write_trace_csv(std::ostream& os, const Trace& tr, int decimation);

} // namespace nvff
