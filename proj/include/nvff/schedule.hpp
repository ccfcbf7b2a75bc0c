#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nvff {

// Piecewise-constant control waveform with linear edges of fixed slew.
// Breakpoints are (time, target level); the signal ramps from the previous
// level starting at the breakpoint time and reaches the target after kSlew.
class PiecewiseSignal {
public:
    static constexpr double kSlew = 10e-12; // s

    explicit PiecewiseSignal(double initial = 0.0) : initial_(initial) {}

    void add_step(double t, double level) {
        if (!steps_.empty() && t < steps_.back().first)
            throw std::invalid_argument("signal steps must be time-ordered");
        steps_.emplace_back(t, level);
    }

    double value(double t) const {
        double level = initial_;
        for (const auto& [ts, target] : steps_) {
            if (t <= ts) break;
            if (t >= ts + kSlew) {
                level = target;
            } else {
                level += (target - level) * (t - ts) / kSlew;
                break;
            }
        }
        return level;
    }

    double initial() const { return initial_; }

private:
    double initial_;
    std::vector<std::pair<double, double>> steps_;
};

// Named control signals for one transient run.
struct Schedule {
    std::map<std::string, PiecewiseSignal> signals;

    PiecewiseSignal& at(const std::string& name) {
        auto it = signals.find(name);
        if (it == signals.end())
            throw std::out_of_range("no signal named " + name);
        return it->second;
    }

    double value(const std::string& name, double t) const {
        auto it = signals.find(name);
        if (it == signals.end())
            throw std::out_of_range("no signal named " + name);
        return it->second.value(t);
    }

    void define(const std::string& name, double initial) {
        signals.emplace(name, PiecewiseSignal(initial));
    }

    // Convenience: a pulse from t0 to t1 at `high`, returning to `low`.
    void pulse(const std::string& name, double t0, double t1, double high,
               double low) {
        auto& s = at(name);
        s.add_step(t0, high);
        s.add_step(t1, low);
    }
};

} // namespace nvff
