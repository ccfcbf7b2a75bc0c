#include "nvff/modes.hpp"

#include <cmath>
#include <stdexcept>

namespace nvff {

namespace {

constexpr double kVdd = 1.1;
constexpr double kProjTarget = 0.9;
constexpr double kSepTarget = 0.9 * kVdd;

// Phase-internal offsets (s).
constexpr double kPowerLead = 0.05e-9;
constexpr double kClockRise = 0.15e-9;
constexpr double kClockHigh = 0.55e-9;  // transparent window
constexpr double kSlaveSettle = 0.5e-9;
constexpr double kEraseStart = 1.1e-9;  // into the active phase
constexpr double kEraseSettle = 2.8e-9; // release relaxation budget
constexpr double kBackupLead = 0.1e-9;
// Perpendicular pillars that saw pass-under strip current need the same
// release relaxation as after erase before their state can be read back.
constexpr double kBackupTailPerp = 2.6e-9;
constexpr double kBackupTailInPlane = 0.5e-9;
constexpr double kWriteSample = 0.25e-9;
constexpr double kStandbyLen = 8e-6;
constexpr double kStandbyStep = 5e-9;
constexpr double kEqualizeLen = 0.3e-9;
constexpr double kReadStart = 0.35e-9;
constexpr double kReadStop = 1.15e-9;
constexpr double kRestoreLen = 1.9e-9;

} // namespace

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::active: return "active";
        case Mode::backup: return "backup";
        case Mode::standby: return "standby";
        case Mode::restore: return "restore";
    }
    return "?";
}

FlipFlopRun::FlipFlopRun(Design design) : design_(std::move(design)) {
    for (const auto& s : design_.net.sources) levels_[s.signal] = 0.0;
}

void FlipFlopRun::require_transition(Mode next) const {
    bool ok = false;
    if (!started_) {
        ok = next == Mode::active;
    } else {
        switch (next) {
            case Mode::active:
                ok = last_ == Mode::active || last_ == Mode::restore;
                break;
            case Mode::backup: ok = last_ == Mode::active; break;
            case Mode::standby: ok = last_ == Mode::backup; break;
            case Mode::restore: ok = last_ == Mode::standby; break;
        }
    }
    if (!ok)
        throw std::logic_error("mode " + mode_name(next) +
                               " is not allowed after " +
                               (started_ ? mode_name(last_) : "start"));
}

Schedule FlipFlopRun::fresh_schedule() const {
    Schedule s;
    for (const auto& [name, level] : levels_) s.define(name, level);
    return s;
}

void FlipFlopRun::commit_levels(const Schedule& s, double t_end) {
    for (auto& [name, level] : levels_) level = s.value(name, t_end);
}

Trace FlipFlopRun::segment(const Schedule& s, double t0, double t1,
                           double dt) {
    TransientOptions opt;
    opt.t_start = t0;
    opt.t_stop = t1;
    opt.dt = dt;
    Trace tr = run_transient(design_.net, s, &design_.dev, opt, &state_);
    trace_.append(tr);
    return tr;
}

std::vector<double> FlipFlopRun::pillar_projection(const Trace& tr, int bundle,
                                                   size_t from_index) const {
    const MtjBundle& b = bundle == 1 ? design_.dev.mtj1 : design_.dev.mtj2;
    double sign = b.m_p.dot(b.fl.easy_axis) >= 0.0 ? 1.0 : -1.0;
    const auto& col = bundle == 1 ? tr.mz1 : tr.mz2;
    std::vector<double> out;
    for (size_t i = from_index; i < col.size(); ++i)
        out.push_back(sign * col[i]);
    return out;
}

bool FlipFlopRun::latched_data() const {
    return node_voltage("QT") > 0.5 * kVdd;
}

double FlipFlopRun::node_voltage(const std::string& name) const {
    NodeId n = design_.net.node(name);
    if (state_.v.empty()) return 0.0;
    return state_.v[static_cast<size_t>(n)];
}

ModeMetrics FlipFlopRun::run_active(bool data, bool hidden_erase) {
    require_transition(Mode::active);
    if (hidden_erase && !design_.has_erase)
        throw std::logic_error("this design has no erase path");
    if (hidden_erase && design_.win.erase <= 0.0)
        throw std::logic_error("erase window not provisioned");

    ModeMetrics m;
    m.mode = Mode::active;
    m.t_start = t_;
    double t0 = t_;
    Schedule s = fresh_schedule();
    double lvl = data ? kVdd : 0.0;

    s.at("D").add_step(t0, lvl);
    if (levels_["PWR"] < 0.5 * kVdd) {
        s.at("PWR").add_step(t0 + kPowerLead, kVdd);
        if (design_.has_erase) {
            s.at("EQ").add_step(t0 + kPowerLead, kVdd);
            s.at("PG").add_step(t0 + kPowerLead, kVdd);
        }
    }
    s.at("CLK").add_step(t0 + kClockRise, kVdd);
    s.at("CLKB").add_step(t0 + kClockRise, 0.0);
    s.at("CLK").add_step(t0 + kClockRise + kClockHigh, 0.0);
    s.at("CLKB").add_step(t0 + kClockRise + kClockHigh, kVdd);

    double t_end;
    if (!hidden_erase) {
        t_end = t0 + kClockRise + kClockHigh + kSlaveSettle;
        segment(s, t0, t_end, design_.spec.dt);
    } else {
        double te = t0 + kEraseStart;
        double we = design_.win.erase;
        s.at("EEN").add_step(te, kVdd);
        s.at("PG").add_step(te, 0.0);
        s.at("EEN").add_step(te + we, 0.0);
        s.at("PG").add_step(te + we, kVdd);
        // The flip-flop keeps clocking while the strip settles: load the
        // complement and then the original data again.
        double tt = te + we + 0.2e-9;
        s.at("D").add_step(tt, data ? 0.0 : kVdd);
        s.at("CLK").add_step(tt + 0.1e-9, kVdd);
        s.at("CLKB").add_step(tt + 0.1e-9, 0.0);
        s.at("CLK").add_step(tt + 0.6e-9, 0.0);
        s.at("CLKB").add_step(tt + 0.6e-9, kVdd);
        s.at("D").add_step(tt + 0.8e-9, lvl);
        s.at("CLK").add_step(tt + 0.9e-9, kVdd);
        s.at("CLKB").add_step(tt + 0.9e-9, 0.0);
        s.at("CLK").add_step(tt + 1.4e-9, 0.0);
        s.at("CLKB").add_step(tt + 1.4e-9, kVdd);
        t_end = te + we + kEraseSettle;

        segment(s, t0, te, design_.spec.dt);
        apply_thermal_tilt(design_.dev);
        size_t mark = trace_.size();
        segment(s, te, t_end, design_.spec.dt);

        auto p1 = pillar_projection(trace_, 1, mark);
        auto p2 = pillar_projection(trace_, 2, mark);
        std::vector<double> tt_axis(trace_.t.begin() + mark, trace_.t.end());
        // Commit is the under-drive crossing; the state check at phase end
        // covers the release. A pillar already antiparallel reports zero.
        auto commit_of = [&](const std::vector<double>& p) {
            if (!p.empty() && p.front() <= -kProjTarget) return 0.0;
            double c = crossing_time(tt_axis, p, -kProjTarget, false, te);
            return c >= 0.0 ? c - te : -1.0;
        };
        double d1 = commit_of(p1);
        double d2 = commit_of(p2);
        m.erase_delay = (d1 < 0.0 || d2 < 0.0) ? -1.0 : std::max(d1, d2);
        m.erase_energy = trace_energy(trace_, te, te + we);
        m.ok = m.ok && stored().value == StoredBitValue::erased;
    }

    commit_levels(s, t_end);
    t_ = t_end;
    m.t_end = t_end;
    m.energy = trace_energy(trace_, t0, t_end);
    m.ok = m.ok && latched_data() == data;
    started_ = true;
    last_ = Mode::active;
    return m;
}

ModeMetrics FlipFlopRun::run_backup() {
    require_transition(Mode::backup);
    if (design_.win.backup <= 0.0)
        throw std::logic_error("backup window not provisioned");

    ModeMetrics m;
    m.mode = Mode::backup;
    m.t_start = t_;
    double t0 = t_;
    bool data = latched_data();
    int sel = data ? 2 : 1; // the low latch node steers the programmed pillar
    bool bidir = design_.spec.kind == DesignKind::baseline;
    bool perp = design_.spec.kind == DesignKind::py ||
                design_.spec.kind == DesignKind::px;
    double tw = t0 + kBackupLead;
    double wb = design_.win.backup;
    double t_end = tw + wb + (perp ? kBackupTailPerp : kBackupTailInPlane);

    Schedule s = fresh_schedule();
    // Hold CLK high so the slave pair regenerates on its own and the master
    // stage is cut off from the write current path.
    s.at("CLK").add_step(t0, kVdd);
    s.at("CLKB").add_step(t0, 0.0);
    s.at("WEN").add_step(tw, kVdd);
    s.at("WEN").add_step(tw + wb, 0.0);
    if (design_.has_erase) {
        s.at("PG").add_step(tw, 0.0);
        s.at("PG").add_step(tw + wb, kVdd);
    }

    segment(s, t0, tw, design_.spec.dt);
    apply_thermal_tilt(design_.dev);
    size_t mark = trace_.size();
    Trace tr = segment(s, tw, t_end, design_.spec.dt);

    std::vector<double> ta(trace_.t.begin() + mark, trace_.t.end());
    double cross;
    if (bidir) {
        // The strip write moves both pillars to one polarity-selected state;
        // the write completes when the slower pillar settles.
        double sgn = data ? -1.0 : 1.0;
        auto p1 = pillar_projection(trace_, 1, mark);
        auto p2 = pillar_projection(trace_, 2, mark);
        for (auto& x : p1) x *= sgn;
        for (auto& x : p2) x *= sgn;
        double c1 = settled_crossing_time(ta, p1, kProjTarget, true, tw);
        double c2 = settled_crossing_time(ta, p2, kProjTarget, true, tw);
        cross = (c1 < 0.0 || c2 < 0.0) ? -1.0 : std::max(c1, c2);
    } else {
        auto proj = pillar_projection(trace_, sel, mark);
        cross = settled_crossing_time(ta, proj, kProjTarget, true, tw);
    }
    m.delay = cross > 0.0 ? cross - tw : -1.0;
    // Energy booked against the backup is the supply draw until the
    // programmed pillar commits; the tail of the drive window is margin.
    m.energy = m.delay > 0.0 ? trace_energy(trace_, tw, cross)
                             : trace_energy(trace_, tw, tw + wb);
    if (bidir) {
        m.i_write = std::fabs(sample_at(tr.t, tr.i_strip, tw + kWriteSample));
    } else {
        m.i_write = std::fabs(sample_at(tr.t, tr.i_mtj1, tw + kWriteSample)) +
                    std::fabs(sample_at(tr.t, tr.i_mtj2, tw + kWriteSample));
    }
    NodeId low = design_.net.node(data ? "QC" : "QT");
    NodeId high = design_.net.node(data ? "QT" : "QC");
    std::vector<double> vlow, vhigh;
    for (const auto& row : tr.v) {
        vlow.push_back(row[low]);
        vhigh.push_back(row[high]);
    }
    m.v_low = sample_at(tr.t, vlow, tw + kWriteSample);
    m.v_high = sample_at(tr.t, vhigh, tw + kWriteSample);

    if (bidir) {
        double sgn = data ? -1.0 : 1.0;
        double e1 = sgn * design_.dev.mtj1.m.m.dot(design_.dev.mtj1.m_p);
        double e2 = sgn * design_.dev.mtj2.m.m.dot(design_.dev.mtj2.m_p);
        m.ok = m.delay > 0.0 && e1 > 0.5 && e2 > 0.5 &&
               latched_data() == data;
    } else {
        StoredBitValue want =
            data ? StoredBitValue::bit1 : StoredBitValue::bit0;
        m.ok = m.delay > 0.0 && stored().value == want &&
               latched_data() == data;
    }

    commit_levels(s, t_end);
    t_ = t_end;
    m.t_end = t_end;
    last_ = Mode::backup;
    return m;
}

ModeMetrics FlipFlopRun::run_standby() {
    require_transition(Mode::standby);
    ModeMetrics m;
    m.mode = Mode::standby;
    m.t_start = t_;
    double t0 = t_;
    StoredBitValue before = stored().value;

    Schedule s = fresh_schedule();
    for (auto& [name, level] : levels_)
        if (level != 0.0) s.at(name).add_step(t0 + kPowerLead, 0.0);

    double t_end = t0 + kStandbyLen;
    segment(s, t0, t_end, kStandbyStep);
    commit_levels(s, t_end);
    t_ = t_end;
    m.t_end = t_end;
    m.energy = trace_energy(trace_, t0, t_end);

    double vmax = 0.0;
    for (double v : state_.v) vmax = std::max(vmax, std::fabs(v));
    m.ok = vmax < 0.05 && stored().value == before;
    last_ = Mode::standby;
    return m;
}

ModeMetrics FlipFlopRun::run_restore() {
    require_transition(Mode::restore);
    if (!design_.has_restore)
        throw std::logic_error("this design has no restore path");
    ModeMetrics m;
    m.mode = Mode::restore;
    m.t_start = t_;
    double t0 = t_;
    StoredBitValue before = stored().value;

    if (design_.spec.tie_break != 0.0) {
        NodeId qt = design_.net.node("QT");
        state_.v[static_cast<size_t>(qt)] += design_.spec.tie_break;
    }

    Schedule s = fresh_schedule();
    s.at("CLK").add_step(t0, kVdd); // transfer gate opposite phase: slave isolated
    s.at("EQ").add_step(t0 + kEqualizeLen, kVdd);
    s.at("PWR").add_step(t0 + kReadStart, kVdd);
    s.at("PG").add_step(t0 + kReadStart, kVdd);
    s.at("WEN").add_step(t0 + kReadStart, kVdd);
    s.at("REN").add_step(t0 + kReadStart, kVdd);
    s.at("WEN").add_step(t0 + kReadStop, 0.0);
    s.at("REN").add_step(t0 + kReadStop, 0.0);

    double t_end = t0 + kRestoreLen;
    Trace tr = segment(s, t0, t_end, design_.spec.dt);

    NodeId qt = design_.net.node("QT");
    NodeId qc = design_.net.node("QC");
    std::vector<double> sep;
    for (const auto& row : tr.v) sep.push_back(std::fabs(row[qt] - row[qc]));
    double cross = crossing_time(tr.t, sep, kSepTarget, true, t0 + kReadStart);
    m.delay = cross > 0.0 ? cross - t0 - kReadStart : -1.0;
    m.energy = trace_energy(trace_, t0, t_end);

    bool qt_high = node_voltage("QT") > 0.5 * kVdd;
    bool consistent = true;
    if (before == StoredBitValue::bit1) consistent = qt_high;
    if (before == StoredBitValue::bit0) consistent = !qt_high;
    // A device with no programmed datum (erased or degenerate pair) gives the
    // read no differential to regenerate; whatever the latch settles to is
    // noise, so the run is flagged rather than trusted.
    bool has_datum =
        before == StoredBitValue::bit0 || before == StoredBitValue::bit1;
    m.ok = m.delay > 0.0 && consistent && has_datum &&
           stored().value == before;

    commit_levels(s, t_end);
    t_ = t_end;
    m.t_end = t_end;
    last_ = Mode::restore;
    return m;
}

} // namespace nvff
