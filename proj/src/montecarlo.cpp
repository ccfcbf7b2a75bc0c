#include "nvff/montecarlo.hpp"

#include <cmath>
#include <future>
#include <ostream>
#include <random>
#include <thread>

namespace nvff {

namespace {

// Portable normal deviates: 53-bit uniforms through Box-Muller, so a campaign
// replays bit-identically for a given (seed, index) on any platform.
class Gauss {
public:
    explicit Gauss(std::uint64_t seed, int index) {
        std::seed_seq seq{static_cast<std::uint64_t>(0x6e76ff),
                          seed,
                          static_cast<std::uint64_t>(index)};
        rng_.seed(seq);
    }

    double operator()() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

private:
    double uniform() {
        return static_cast<double>(rng_() >> 11) * 0x1p-53;
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_ = false;
};

void scale_junction(Design& d, int bundle, double ra_f, double tmr_f) {
    MtjBundle& b = bundle == 1 ? d.dev.mtj1 : d.dev.mtj2;
    b.mtj.RA *= ra_f;
    b.mtj.TMR0 *= tmr_f;
    for (auto& j : d.net.junctions) {
        if (j.bundle != bundle) continue;
        j.mtj.RA *= ra_f;
        j.mtj.TMR0 *= tmr_f;
    }
}

McSample run_sample(const DesignSpec& spec, const ProvisionedWindows& win,
                    const VariationSpec& v, bool data, int index) {
    Design d = build_design(spec);
    d.win = win;
    // Slow outliers must fail by the timeout criterion, not because the
    // nominal derated window clipped their drive.
    d.win.backup = kBackupTimeout;
    perturb_design(d, v, index);

    McSample s;
    s.index = index;
    FlipFlopRun run(std::move(d));
    ModeMetrics act = run.run_active(data, false);
    ModeMetrics b = run.run_backup();
    s.ok = act.ok && b.ok && b.delay <= kBackupTimeout;
    s.delay = b.delay;
    s.energy = b.energy;
    s.i_write = b.i_write;
    s.v_qt = data ? b.v_high : b.v_low;
    s.v_qc = data ? b.v_low : b.v_high;
    return s;
}

} // namespace

void perturb_design(Design& d, const VariationSpec& v, int index) {
    Gauss g(v.seed, index);
    for (auto& f : d.net.fets) {
        f.p.Vth += v.sigma_vth * g();
        double w = f.p.W * (1.0 + v.sigma_w_rel * g());
        f.p.W = std::max(w, 10e-9);
    }
    for (int bundle : {1, 2}) {
        double ra_f = std::max(1.0 + v.sigma_ra_rel * g(), 0.1);
        double tmr_f = std::max(1.0 + v.sigma_tmr_rel * g(), 0.1);
        scale_junction(d, bundle, ra_f, tmr_f);
    }
}

McStats reduce_stats(const std::vector<McSample>& samples) {
    McStats st;
    st.n = static_cast<int>(samples.size());
    if (st.n == 0) return st;
    double siw = 0, sqt = 0, sqc = 0, sd = 0;
    for (const auto& s : samples) {
        if (s.ok) ++st.n_ok;
        siw += s.i_write;
        sqt += s.v_qt;
        sqc += s.v_qc;
        sd += s.delay;
    }
    st.iw_mean = siw / st.n;
    st.qt_mean = sqt / st.n;
    st.qc_mean = sqc / st.n;
    st.delay_mean = sd / st.n;
    if (st.n > 1) {
        double viw = 0, vqt = 0, vqc = 0, vd = 0;
        for (const auto& s : samples) {
            viw += (s.i_write - st.iw_mean) * (s.i_write - st.iw_mean);
            vqt += (s.v_qt - st.qt_mean) * (s.v_qt - st.qt_mean);
            vqc += (s.v_qc - st.qc_mean) * (s.v_qc - st.qc_mean);
            vd += (s.delay - st.delay_mean) * (s.delay - st.delay_mean);
        }
        st.iw_std = std::sqrt(viw / (st.n - 1));
        st.qt_std = std::sqrt(vqt / (st.n - 1));
        st.qc_std = std::sqrt(vqc / (st.n - 1));
        st.delay_std = std::sqrt(vd / (st.n - 1));
    }
    return st;
}

McReport monte_carlo(const DesignSpec& spec, const VariationSpec& v,
                     bool data) {
    McReport rep;
    rep.kind = spec.kind;
    rep.data = data;
    rep.variation = v;
    rep.samples.resize(static_cast<size_t>(std::max(v.n_runs, 0)));

    ProvisionedWindows win = characterize(spec);

    unsigned hw = std::thread::hardware_concurrency();
    int n_threads = static_cast<int>(std::min<unsigned>(hw ? hw : 1, 8));
    int n = static_cast<int>(rep.samples.size());
    if (n_threads <= 1 || n < 4) {
        for (int i = 0; i < n; ++i)
            rep.samples[static_cast<size_t>(i)] =
                run_sample(spec, win, v, data, i);
    } else {
        std::vector<std::future<void>> workers;
        for (int t = 0; t < n_threads; ++t) {
            workers.push_back(std::async(std::launch::async, [&, t] {
                for (int i = t; i < n; i += n_threads)
                    rep.samples[static_cast<size_t>(i)] =
                        run_sample(spec, win, v, data, i);
            }));
        }
        for (auto& w : workers) w.get();
    }

    rep.stats = reduce_stats(rep.samples);
    return rep;
}

void write_mc_samples_csv(std::ostream& os, const McReport& rep) {
    os << "index,pass,delay_ns,energy_fJ,iw_uA,qt_mV,qc_mV\n";
    char buf[160];
    for (const auto& s : rep.samples) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.6g,%.6g,%.6g,%.6g,%.6g\n",
                      s.index, s.ok ? 1 : 0, s.delay * 1e9, s.energy * 1e15,
                      s.i_write * 1e6, s.v_qt * 1e3, s.v_qc * 1e3);
        os << buf;
    }
}

void write_mc_stats_csv(std::ostream& os, const McReport& rep) {
    os << "design,data,n,n_pass,iw_mean_uA,iw_std_uA,qt_mean_mV,qt_std_mV,"
          "qc_mean_mV,qc_std_mV,delay_mean_ns,delay_std_ns\n";
    const McStats& st = rep.stats;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%s,%d,%d,%d,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g\n",
                  design_name(rep.kind).c_str(), rep.data ? 1 : 0, st.n,
                  st.n_ok, st.iw_mean * 1e6, st.iw_std * 1e6, st.qt_mean * 1e3,
                  st.qt_std * 1e3, st.qc_mean * 1e3, st.qc_std * 1e3,
                  st.delay_mean * 1e9, st.delay_std * 1e9);
    os << buf;
}

} // namespace nvff
