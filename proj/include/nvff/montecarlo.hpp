#pragma once

#include "nvff/experiments.hpp"

#include <cstdint>
#include <vector>

// Process-variation campaigns over the backup operation: independent Gaussian
// perturbations of every transistor (Vth, W) and junction (RA, TMR) instance,
// sampled per run from a single campaign seed. Runs are index-keyed so a
// parallel execution reports in the same order as a serial one.

namespace nvff {

struct VariationSpec {
    double sigma_vth = 0.07;    // V
    double sigma_w_rel = 0.05;
    double sigma_ra_rel = 0.09;
    double sigma_tmr_rel = 0.09;
    std::uint64_t seed = 1;
    int n_runs = 1000;
};

struct McSample {
    int index = 0;
    bool ok = false;
    double delay = -1.0;  // s
    double energy = 0.0;  // J
    double i_write = 0.0; // A, total write current at the sample instant
    double v_qt = 0.0;    // V, QT during the write
    double v_qc = 0.0;    // V, QC during the write
};

struct McStats {
    int n = 0;
    int n_ok = 0;
    double iw_mean = 0.0, iw_std = 0.0;
    double qt_mean = 0.0, qt_std = 0.0;
    double qc_mean = 0.0, qc_std = 0.0;
    double delay_mean = 0.0, delay_std = 0.0;
};

struct McReport {
    DesignKind kind = DesignKind::py;
    bool data = false;
    VariationSpec variation;
    std::vector<McSample> samples; // index order
    McStats stats;
};

// Applies one sampled perturbation in place; deterministic per (seed, index).
void perturb_design(Design& d, const VariationSpec& v, int index);

// Backup campaign from the erased device: active (latch only) then backup.
McReport monte_carlo(const DesignSpec& spec, const VariationSpec& v,
                     bool data);

McStats reduce_stats(const std::vector<McSample>& samples);

// header: index,pass,delay_ns,energy_fJ,iw_uA,qt_mV,qc_mV
void write_mc_samples_csv(std::ostream& os, const McReport& rep);

// single row of campaign statistics
void write_mc_stats_csv(std::ostream& os, const McReport& rep);

} // namespace nvff
