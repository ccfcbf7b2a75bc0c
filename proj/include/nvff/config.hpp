#pragma once

#include "nvff/designs.hpp"
#include "nvff/montecarlo.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Flat key=value run configuration. Every physical quantity carries its unit
// in the key name; unspecified keys keep the documented defaults, and the
// fully-defaulted file reproduces the reference perpendicular-y cycle.

namespace nvff {

struct SimConfig {
    std::string design = "p-y"; // p-y | i-y | p-x | i-x | baseline
    int data = 0;
    double vff_pfet_w_nm = 400.0;
    double vff_nfet_w_nm = 290.0;
    double p2_w_nm = 0.0; // 0 selects the per-design default
    double tie_break_mv = 0.0;
    double dt_ps = 1.0;
    double mtj_ra_ohm_um2 = 5.0;
    double mtj_tmr = 1.2;
    int decimation = 10;
    std::uint64_t seed = 1;
    int n_runs = 1000;
    double sigma_vth_mv = 70.0;
    double sigma_w_pct = 5.0;
    double sigma_ra_pct = 9.0;
    double sigma_tmr_pct = 9.0;
    std::vector<double> sweep_p2_w_nm = {1000.0, 1250.0, 1500.0, 1750.0,
                                         2000.0};
    std::vector<std::pair<double, double>> sweep_vff_w_nm = {
        {400.0, 300.0}, {320.0, 240.0}, {240.0, 180.0}};
    std::string out_dir = ".";
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, int line, const std::string& message);
    std::string key;
    int line; // 0 when the failure is not tied to a file line
};

SimConfig parse_config(std::istream& in);
SimConfig parse_config_file(const std::string& path);

// Full defaults-merged dump; parsing it back reproduces the struct exactly.
std::string dump_config(const SimConfig& c);

DesignKind design_kind_from_name(const std::string& name);
DesignSpec to_design_spec(const SimConfig& c);
VariationSpec to_variation_spec(const SimConfig& c);

} // namespace nvff
