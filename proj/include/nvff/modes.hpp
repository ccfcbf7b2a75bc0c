#pragma once

#include "nvff/designs.hpp"
#include "nvff/transient.hpp"

#include <map>
#include <string>

namespace nvff {

enum class Mode { active, backup, standby, restore };

std::string mode_name(Mode m);

struct ModeMetrics {
    Mode mode = Mode::active;
    double t_start = 0.0, t_end = 0.0;
    double delay = -1.0;  // s, negative when not reached or not applicable
    double energy = 0.0;  // J over the operation window
    double erase_delay = -1.0, erase_energy = 0.0; // hidden erase, if any
    double i_write = 0.0; // A, total write current during backup
    double v_low = 0.0;   // V, sinking latch node during backup
    double v_high = 0.0;  // V, complementary latch node at the same instant
    bool ok = true;
};

// Drives one flip-flop instance through its operating modes on a shared
// time axis, enforcing the legal mode order and keeping circuit and
// magnetic state continuous across phases.
class FlipFlopRun {
public:
    explicit FlipFlopRun(Design design);

    ModeMetrics run_active(bool data, bool hidden_erase);
    ModeMetrics run_backup();
    ModeMetrics run_standby();
    ModeMetrics run_restore();

    const Design& design() const { return design_; }
    const NandSpinDevice& device() const { return design_.dev; }
    const Trace& trace() const { return trace_; }
    double now() const { return t_; }

    bool latched_data() const;
    StoredBit stored() const { return decode_state(design_.dev); }
    double node_voltage(const std::string& name) const;

private:
    void require_transition(Mode next) const;
    Schedule fresh_schedule() const;
    void commit_levels(const Schedule& s, double t_end);
    Trace segment(const Schedule& s, double t0, double t1, double dt);
    std::vector<double> pillar_projection(const Trace& tr, int bundle,
                                          size_t from_index) const;

    Design design_;
    Trace trace_;
    TransientState state_;
    std::map<std::string, double> levels_;
    double t_ = 0.0;
    bool started_ = false;
    Mode last_ = Mode::active;
};

} // namespace nvff
