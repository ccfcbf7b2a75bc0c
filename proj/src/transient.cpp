#include "nvff/transient.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace nvff {

namespace {

constexpr double kGmin = 1e-9;        // S, permanent bleed on every node
constexpr double kDiffStep = 1e-6;    // V, for numerical element partials
constexpr double kMaxNewtonStep = 0.5; // V, damping clip per iteration
constexpr double kLlgSubstep = 1e-12; // s
// Below these drive levels a settled pillar is left untouched, which lets
// long idle phases run with large electrical steps.
constexpr double kIdleDensity = 1e7;  // A/m^2
constexpr double kSettledProj = 0.995;

struct Workspace {
    const Netlist& net;
    std::vector<int> free_index; // node -> position in unknown vector, -1 forced
    std::vector<NodeId> free_nodes;
    Eigen::VectorXd v;           // all node voltages
    Eigen::VectorXd v_prev;      // previous accepted step
    Eigen::VectorXd f;           // KCL residual per node (all nodes)
    Eigen::MatrixXd jac;         // free x free
    Eigen::VectorXd rhs;

    explicit Workspace(const Netlist& n) : net(n) {
        int nn = static_cast<int>(n.node_names.size());
        free_index.assign(nn, -1);
        for (NodeId i = 0; i < nn; ++i) {
            if (!n.is_forced(i)) {
                free_index[i] = static_cast<int>(free_nodes.size());
                free_nodes.push_back(i);
            }
        }
        v = Eigen::VectorXd::Zero(nn);
        v_prev = v;
        f = Eigen::VectorXd::Zero(nn);
        int nf = static_cast<int>(free_nodes.size());
        jac = Eigen::MatrixXd::Zero(nf, nf);
        rhs = Eigen::VectorXd::Zero(nf);
    }

    double volt(NodeId n) const { return n == kGround ? 0.0 : v(n); }
    double volt_prev(NodeId n) const { return n == kGround ? 0.0 : v_prev(n); }
};

double junction_cos(const NandSpinDevice* dev, int bundle) {
    if (!dev) return -1.0;
    const MtjBundle& b = bundle == 1 ? dev->mtj1 : dev->mtj2;
    return std::clamp(b.m.m.dot(b.m_p), -1.0, 1.0);
}

double junction_current(const TunnelJunction& j, const NandSpinDevice* dev,
                        double v_top, double v_bottom) {
    double vd = v_top - v_bottom;
    double g = mtj_conductance(junction_cos(dev, j.bundle), vd, j.mtj);
    return g * vd; // top -> bottom
}

void stamp_pair(Workspace& w, NodeId a, NodeId b, double i, double g) {
    if (a != kGround) w.f(a) += i;
    if (b != kGround) w.f(b) -= i;
    int ia = a == kGround ? -1 : w.free_index[a];
    int ib = b == kGround ? -1 : w.free_index[b];
    if (ia >= 0) w.jac(ia, ia) += g;
    if (ib >= 0) w.jac(ib, ib) += g;
    if (ia >= 0 && ib >= 0) {
        w.jac(ia, ib) -= g;
        w.jac(ib, ia) -= g;
    }
}

void assemble(Workspace& w, const NandSpinDevice* dev, double dt) {
    w.f.setZero();
    w.jac.setZero();

    for (const auto& r : w.net.resistors) {
        double g = 1.0 / r.r;
        stamp_pair(w, r.a, r.b, g * (w.volt(r.a) - w.volt(r.b)), g);
    }

    for (const auto& c : w.net.capacitors) {
        double g = c.c / dt;
        double i = g * ((w.volt(c.a) - w.volt(c.b)) -
                        (w.volt_prev(c.a) - w.volt_prev(c.b)));
        stamp_pair(w, c.a, c.b, i, g);
    }

    for (const auto& j : w.net.junctions) {
        double vt = w.volt(j.top), vb = w.volt(j.bottom);
        double i = junction_current(j, dev, vt, vb);
        double ip = junction_current(j, dev, vt + kDiffStep, vb);
        double im = junction_current(j, dev, vt - kDiffStep, vb);
        double g = (ip - im) / (2.0 * kDiffStep);
        stamp_pair(w, j.top, j.bottom, i, g);
    }

    for (const auto& t : w.net.fets) {
        double vg = w.volt(t.gate), vd = w.volt(t.drain), vs = w.volt(t.source);
        double id = transistor_current(t.p, vg - vs, vd - vs);
        double gm = (transistor_current(t.p, vg - vs + kDiffStep, vd - vs) -
                     transistor_current(t.p, vg - vs - kDiffStep, vd - vs)) /
                    (2.0 * kDiffStep);
        double gds = (transistor_current(t.p, vg - vs, vd - vs + kDiffStep) -
                      transistor_current(t.p, vg - vs, vd - vs - kDiffStep)) /
                     (2.0 * kDiffStep);
        if (t.drain != kGround) w.f(t.drain) += id;
        if (t.source != kGround) w.f(t.source) -= id;
        int idr = t.drain == kGround ? -1 : w.free_index[t.drain];
        int isr = t.source == kGround ? -1 : w.free_index[t.source];
        int igt = t.gate == kGround ? -1 : w.free_index[t.gate];
        double gs = -(gm + gds);
        if (idr >= 0) {
            w.jac(idr, idr) += gds;
            if (igt >= 0) w.jac(idr, igt) += gm;
            if (isr >= 0) w.jac(idr, isr) += gs;
        }
        if (isr >= 0) {
            if (idr >= 0) w.jac(isr, idr) -= gds;
            if (igt >= 0) w.jac(isr, igt) -= gm;
            w.jac(isr, isr) -= gs;
        }
    }

    for (NodeId n : w.free_nodes) {
        w.f(n) += kGmin * w.v(n);
        w.jac(w.free_index[n], w.free_index[n]) += kGmin;
    }
}

double free_residual_norm(const Workspace& w) {
    double m = 0.0;
    for (NodeId n : w.free_nodes) m = std::max(m, std::fabs(w.f(n)));
    return m;
}

bool newton_solve(Workspace& w, const NandSpinDevice* dev, double dt,
                  const TransientOptions& opt) {
    for (int it = 0; it < opt.max_newton; ++it) {
        assemble(w, dev, dt);
        if (free_residual_norm(w) < opt.abstol) return true;
        for (NodeId n : w.free_nodes) w.rhs(w.free_index[n]) = -w.f(n);
        Eigen::VectorXd delta = w.jac.partialPivLu().solve(w.rhs);
        double mx = delta.cwiseAbs().maxCoeff();
        double scale = mx > kMaxNewtonStep ? kMaxNewtonStep / mx : 1.0;
        for (NodeId n : w.free_nodes) w.v(n) += scale * delta(w.free_index[n]);
    }
    assemble(w, dev, dt);
    return free_residual_norm(w) < opt.abstol;
}

struct BranchReadout {
    double i_strip = 0.0;
    double i_up1 = 0.0, i_up2 = 0.0;        // pillar currents, bottom to top
    double i_under1 = 0.0, i_under2 = 0.0;  // shear current under each pillar
};

double signed_min(double a, double b) {
    if (a >= 0.0 && b >= 0.0) return std::min(a, b);
    if (a <= 0.0 && b <= 0.0) return std::max(a, b);
    return 0.0;
}

BranchReadout read_branches(const Workspace& w, const NandSpinDevice* dev) {
    BranchReadout out;
    std::vector<double> seg;
    for (int idx : w.net.strip_segments) {
        const auto& r = w.net.resistors[idx];
        seg.push_back((w.volt(r.a) - w.volt(r.b)) / r.r);
    }
    if (!seg.empty()) out.i_strip = seg.front();
    for (size_t k = 0; k < w.net.junctions.size() && k < 2; ++k) {
        const auto& j = w.net.junctions[k];
        double i_tb = junction_current(j, dev, w.volt(j.top), w.volt(j.bottom));
        double up = -i_tb;
        double under = 0.0;
        if (k < w.net.junction_segments.size()) {
            auto [sa, sb] = w.net.junction_segments[k];
            const auto& ra = w.net.resistors[sa];
            const auto& rb = w.net.resistors[sb];
            double ia = (w.volt(ra.a) - w.volt(ra.b)) / ra.r;
            double ib = (w.volt(rb.a) - w.volt(rb.b)) / rb.r;
            under = signed_min(ia, ib);
        }
        if (j.bundle == 1) {
            out.i_up1 = up;
            out.i_under1 = under;
        } else {
            out.i_up2 = up;
            out.i_under2 = under;
        }
    }
    return out;
}

void advance_magnetics(NandSpinDevice* dev, const BranchReadout& br,
                       double dt) {
    if (!dev) return;
    struct Leg {
        MtjBundle* b;
        double i_up, i_under;
    } legs[2] = {{&dev->mtj1, br.i_up1, br.i_under1},
                 {&dev->mtj2, br.i_up2, br.i_under2}};
    for (auto& leg : legs) {
        TorqueDrive drive;
        drive.J_stt = dev->stt_scale * leg.i_up / leg.b->mtj.area;
        drive.m_p = leg.b->m_p;
        drive.J_she = dev->sot_scale * leg.i_under / dev->sot_cross_section();
        drive.sigma_she = dev->sigma_axis();
        drive.H_ext = dev->bias_field;
        bool idle = std::fabs(drive.J_stt) < kIdleDensity &&
                    std::fabs(drive.J_she) < kIdleDensity;
        if (idle &&
            std::fabs(leg.b->m.m.dot(leg.b->fl.easy_axis)) > kSettledProj)
            continue;
        long subs = std::lround(std::ceil(dt / kLlgSubstep));
        double h = dt / static_cast<double>(subs);
        for (long s = 0; s < subs; ++s)
            leg.b->m = integrate_step(leg.b->m, drive, leg.b->fl, h);
    }
}

double source_power(const Workspace& w, const Schedule& sched, double t) {
    double p = 0.0;
    for (const auto& s : w.net.sources)
        p += sched.value(s.signal, t) * w.f(s.node);
    return p;
}

void record(Trace& tr, const Workspace& w, const NandSpinDevice* dev,
            const BranchReadout& br, double t, double p) {
    tr.t.push_back(t);
    std::vector<double> row(w.net.node_names.size());
    for (size_t i = 0; i < row.size(); ++i) row[i] = w.v(static_cast<int>(i));
    tr.v.push_back(std::move(row));
    double m1 = 0.0, m2 = 0.0;
    if (dev) {
        m1 = dev->mtj1.m.m.dot(dev->mtj1.fl.easy_axis);
        m2 = dev->mtj2.m.m.dot(dev->mtj2.fl.easy_axis);
    }
    tr.mz1.push_back(m1);
    tr.mz2.push_back(m2);
    tr.i_strip.push_back(br.i_strip);
    tr.i_mtj1.push_back(br.i_up1);
    tr.i_mtj2.push_back(br.i_up2);
    tr.p_supply.push_back(p);
}

} // namespace

SolverError::SolverError(double t_fail)
    : std::runtime_error("transient solver failed to converge at t = " +
                         std::to_string(t_fail)),
      t(t_fail) {}

void Trace::append(const Trace& other) {
    if (node_names.empty()) node_names = other.node_names;
    t.insert(t.end(), other.t.begin(), other.t.end());
    v.insert(v.end(), other.v.begin(), other.v.end());
    mz1.insert(mz1.end(), other.mz1.begin(), other.mz1.end());
    mz2.insert(mz2.end(), other.mz2.begin(), other.mz2.end());
    i_strip.insert(i_strip.end(), other.i_strip.begin(), other.i_strip.end());
    i_mtj1.insert(i_mtj1.end(), other.i_mtj1.begin(), other.i_mtj1.end());
    i_mtj2.insert(i_mtj2.end(), other.i_mtj2.begin(), other.i_mtj2.end());
    p_supply.insert(p_supply.end(), other.p_supply.begin(),
                    other.p_supply.end());
}

Trace run_transient(const Netlist& net, const Schedule& sched,
                    NandSpinDevice* dev, const TransientOptions& opt,
                    TransientState* state) {
    Workspace w(net);
    int nn = static_cast<int>(net.node_names.size());
    if (state && static_cast<int>(state->v.size()) == nn) {
        for (int i = 0; i < nn; ++i) w.v(i) = state->v[i];
    }
    for (const auto& s : net.sources)
        w.v(s.node) = sched.value(s.signal, opt.t_start);
    w.v_prev = w.v;

    Trace tr;
    tr.node_names = net.node_names;

    // Record the initial point.
    assemble(w, dev, opt.dt);
    BranchReadout br = read_branches(w, dev);
    record(tr, w, dev, br, opt.t_start, source_power(w, sched, opt.t_start));

    double t = opt.t_start;
    while (t < opt.t_stop - 0.5 * opt.dt) {
        double target = std::min(t + opt.dt, opt.t_stop);
        while (t < target - 1e-18) {
            double dt_try = target - t;
            int halvings = 0;
            for (;;) {
                Eigen::VectorXd v_backup = w.v;
                double t_new = t + dt_try;
                for (const auto& s : net.sources)
                    w.v(s.node) = sched.value(s.signal, t_new);
                if (newton_solve(w, dev, dt_try, opt)) {
                    br = read_branches(w, dev);
                    advance_magnetics(dev, br, dt_try);
                    w.v_prev = w.v;
                    t = t_new;
                    break;
                }
                w.v = v_backup;
                if (++halvings > opt.max_halvings) throw SolverError(t);
                dt_try *= 0.5;
            }
        }
        assemble(w, dev, opt.dt);
        br = read_branches(w, dev);
        record(tr, w, dev, br, t, source_power(w, sched, t));
    }

    if (state) {
        state->v.resize(nn);
        for (int i = 0; i < nn; ++i) state->v[i] = w.v(i);
    }
    return tr;
}

double crossing_time(const std::vector<double>& t,
                     const std::vector<double>& y, double level, bool rising,
                     double t_from) {
    for (size_t i = 1; i < t.size(); ++i) {
        if (t[i] < t_from) continue;
        bool hit = rising ? (y[i - 1] < level && y[i] >= level)
                          : (y[i - 1] > level && y[i] <= level);
        if (hit) {
            double frac = (level - y[i - 1]) / (y[i] - y[i - 1]);
            return t[i - 1] + frac * (t[i] - t[i - 1]);
        }
    }
    return -1.0;
}

double settled_crossing_time(const std::vector<double>& t,
                             const std::vector<double>& y, double level,
                             bool rising, double t_from) {
    if (t.empty()) return -1.0;
    bool end_ok = rising ? y.back() >= level : y.back() <= level;
    if (!end_ok) return -1.0;
    // Walk backwards to the last sample on the wrong side of the level.
    size_t last = t.size();
    for (size_t i = t.size(); i-- > 0;) {
        if (t[i] < t_from) break;
        bool ok = rising ? y[i] >= level : y[i] <= level;
        if (!ok) {
            last = i;
            break;
        }
    }
    if (last == t.size()) return t_from;
    if (last + 1 >= t.size()) return -1.0;
    double frac = (level - y[last]) / (y[last + 1] - y[last]);
    return t[last] + frac * (t[last + 1] - t[last]);
}

double trace_energy(const Trace& tr, double t0, double t1) {
    double e = 0.0;
    for (size_t i = 1; i < tr.t.size(); ++i) {
        double a = std::max(tr.t[i - 1], t0), b = std::min(tr.t[i], t1);
        if (b <= a) continue;
        // Power endpoints interpolated onto the clipped interval.
        double pa = tr.p_supply[i - 1], pb = tr.p_supply[i];
        double dt_full = tr.t[i] - tr.t[i - 1];
        double fa = (a - tr.t[i - 1]) / dt_full, fb = (b - tr.t[i - 1]) / dt_full;
        double p0 = pa + (pb - pa) * fa, p1 = pa + (pb - pa) * fb;
        e += 0.5 * (p0 + p1) * (b - a);
    }
    return e;
}

double sample_at(const std::vector<double>& t, const std::vector<double>& y,
                 double tq) {
    if (t.empty()) return 0.0;
    if (tq <= t.front()) return y.front();
    if (tq >= t.back()) return y.back();
    for (size_t i = 1; i < t.size(); ++i) {
        if (t[i] >= tq) {
            double frac = (tq - t[i - 1]) / (t[i] - t[i - 1]);
            return y[i - 1] + frac * (y[i] - y[i - 1]);
        }
    }
    return y.back();
}

} // namespace nvff
