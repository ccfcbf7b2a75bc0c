#pragma once

#include "nvff/nand_spin.hpp"
#include "nvff/netlist.hpp"
#include "nvff/schedule.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace nvff {

// Per-step sampled waveforms of one transient run.
struct Trace {
    std::vector<std::string> node_names;
    std::vector<double> t;
    std::vector<std::vector<double>> v; // [step][node]
    std::vector<double> mz1, mz2;       // easy-axis projections of the pillars
    std::vector<double> i_strip;        // terminal-1 side strip current, A
    std::vector<double> i_mtj1, i_mtj2; // pillar currents, positive upward, A
    std::vector<double> p_supply;       // total source power, W

    size_t size() const { return t.size(); }
    void append(const Trace& other);
};

class SolverError : public std::runtime_error {
public:
    explicit SolverError(double t_fail);
    double t;
};

struct TransientOptions {
    double t_start = 0.0;
    double t_stop = 0.0;
    double dt = 1e-12;
    double abstol = 1e-12; // A, KCL residual bound
    int max_newton = 80;
    int max_halvings = 14;
};

// Node voltages carried between runs; covers every node, forced ones too.
struct TransientState {
    std::vector<double> v;
};

// Integrates the circuit over [t_start, t_stop]. `dev` may be null for
// magnet-free circuits; when present, pillar torques advance its
// magnetization each accepted step and the junction conductances follow.
// `state` is read for the initial condition (empty means all nodes at
// their source values or zero) and holds the final voltages on return.
Trace run_transient(const Netlist& net, const Schedule& sched,
                    NandSpinDevice* dev, const TransientOptions& opt,
                    TransientState* state);

// First time y crosses `level` at or after t_from; negative if never.
double crossing_time(const std::vector<double>& t,
                     const std::vector<double>& y, double level, bool rising,
                     double t_from = 0.0);

// Earliest time after which y stays at or beyond `level` (above for rising,
// below for falling) until the end of the record. Returns t_from when the
// whole region already satisfies the bound and negative when the end does
// not. Immune to precession ringing around the threshold.
double settled_crossing_time(const std::vector<double>& t,
                             const std::vector<double>& y, double level,
                             bool rising, double t_from = 0.0);

// Trapezoidal integral of source power over [t0, t1].
double trace_energy(const Trace& tr, double t0, double t1);

// Linear interpolation of a sampled waveform at time tq.
double sample_at(const std::vector<double>& t, const std::vector<double>& y,
                 double tq);

} // namespace nvff
