#include "nvff/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace nvff {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, int line, const std::string& v) {
    size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key, line, "value '" + v + "' is not a number");
    }
    if (pos != v.size())
        throw ConfigError(key, line, "trailing characters in number '" + v + "'");
    return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

using Setter = std::function<void(SimConfig&, const std::string& key, int line,
                                  const std::string& value)>;

Setter num_setter(double SimConfig::*field) {
    return [field](SimConfig& c, const std::string& k, int ln,
                   const std::string& v) { c.*field = parse_number(k, ln, v); };
}

Setter int_setter(int SimConfig::*field) {
    return [field](SimConfig& c, const std::string& k, int ln,
                   const std::string& v) {
        double x = parse_number(k, ln, v);
        if (x != static_cast<int>(x))
            throw ConfigError(k, ln, "value '" + v + "' is not an integer");
        c.*field = static_cast<int>(x);
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"design",
         [](SimConfig& c, const std::string& k, int ln, const std::string& v) {
             try {
                 design_kind_from_name(v);
             } catch (const std::exception&) {
                 throw ConfigError(k, ln, "unknown design '" + v + "'");
             }
             c.design = v;
         }},
        {"data", int_setter(&SimConfig::data)},
        {"vff_pfet_w_nm", num_setter(&SimConfig::vff_pfet_w_nm)},
        {"vff_nfet_w_nm", num_setter(&SimConfig::vff_nfet_w_nm)},
        {"p2_w_nm", num_setter(&SimConfig::p2_w_nm)},
        {"tie_break_mv", num_setter(&SimConfig::tie_break_mv)},
        {"dt_ps", num_setter(&SimConfig::dt_ps)},
        {"mtj_ra_ohm_um2", num_setter(&SimConfig::mtj_ra_ohm_um2)},
        {"mtj_tmr", num_setter(&SimConfig::mtj_tmr)},
        {"decimation", int_setter(&SimConfig::decimation)},
        {"seed",
         [](SimConfig& c, const std::string& k, int ln, const std::string& v) {
             double x = parse_number(k, ln, v);
             if (x < 0 || x != static_cast<std::uint64_t>(x))
                 throw ConfigError(k, ln, "seed must be a whole number");
             c.seed = static_cast<std::uint64_t>(x);
         }},
        {"n_runs", int_setter(&SimConfig::n_runs)},
        {"sigma_vth_mv", num_setter(&SimConfig::sigma_vth_mv)},
        {"sigma_w_pct", num_setter(&SimConfig::sigma_w_pct)},
        {"sigma_ra_pct", num_setter(&SimConfig::sigma_ra_pct)},
        {"sigma_tmr_pct", num_setter(&SimConfig::sigma_tmr_pct)},
        {"sweep_p2_w_nm",
         [](SimConfig& c, const std::string& k, int ln, const std::string& v) {
             c.sweep_p2_w_nm.clear();
             for (const auto& item : split(v, ','))
                 c.sweep_p2_w_nm.push_back(parse_number(k, ln, item));
         }},
        {"sweep_vff_w_nm",
         [](SimConfig& c, const std::string& k, int ln, const std::string& v) {
             c.sweep_vff_w_nm.clear();
             for (const auto& item : split(v, ',')) {
                 auto parts = split(item, '/');
                 if (parts.size() != 2)
                     throw ConfigError(
                         k, ln, "expected PFET/NFET pair, got '" + item + "'");
                 c.sweep_vff_w_nm.emplace_back(
                     parse_number(k, ln, parts[0]),
                     parse_number(k, ln, parts[1]));
             }
         }},
        {"out_dir",
         [](SimConfig& c, const std::string&, int, const std::string& v) {
             c.out_dir = v;
         }},
    };
    return table;
}

void validate(const SimConfig& c) {
    auto positive = [](double x, const char* key) {
        if (!(x > 0.0)) throw ConfigError(key, 0, "must be positive");
    };
    if (c.data != 0 && c.data != 1)
        throw ConfigError("data", 0, "must be 0 or 1");
    positive(c.vff_pfet_w_nm, "vff_pfet_w_nm");
    positive(c.vff_nfet_w_nm, "vff_nfet_w_nm");
    if (c.p2_w_nm < 0.0) throw ConfigError("p2_w_nm", 0, "must be >= 0");
    positive(c.dt_ps, "dt_ps");
    positive(c.mtj_ra_ohm_um2, "mtj_ra_ohm_um2");
    if (c.mtj_tmr <= 0.0) throw ConfigError("mtj_tmr", 0, "must be positive");
    if (c.decimation < 1) throw ConfigError("decimation", 0, "must be >= 1");
    if (c.n_runs < 1) throw ConfigError("n_runs", 0, "must be >= 1");
    auto nonneg = [](double x, const char* key) {
        if (x < 0.0) throw ConfigError(key, 0, "must be >= 0");
    };
    nonneg(c.sigma_vth_mv, "sigma_vth_mv");
    nonneg(c.sigma_w_pct, "sigma_w_pct");
    nonneg(c.sigma_ra_pct, "sigma_ra_pct");
    nonneg(c.sigma_tmr_pct, "sigma_tmr_pct");
    if (c.sweep_p2_w_nm.empty())
        throw ConfigError("sweep_p2_w_nm", 0, "needs at least one width");
    for (double w : c.sweep_p2_w_nm) positive(w, "sweep_p2_w_nm");
    if (c.sweep_vff_w_nm.empty())
        throw ConfigError("sweep_vff_w_nm", 0, "needs at least one pair");
    for (const auto& [p, n] : c.sweep_vff_w_nm) {
        positive(p, "sweep_vff_w_nm");
        positive(n, "sweep_vff_w_nm");
    }
}

} // namespace

ConfigError::ConfigError(std::string key_, int line_,
                         const std::string& message)
    : std::runtime_error(line_ > 0
                             ? "config key '" + key_ + "' (line " +
                                   std::to_string(line_) + "): " + message
                             : "config key '" + key_ + "': " + message),
      key(std::move(key_)),
      line(line_) {}

SimConfig parse_config(std::istream& in) {
    SimConfig c;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(s, line, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError(key, line, "unknown key");
        it->second(c, key, line, value);
    }
    validate(c);
    return c;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "cannot open config file");
    return parse_config(in);
}

std::string dump_config(const SimConfig& c) {
    std::ostringstream os;
    os << "design = " << c.design << '\n';
    os << "data = " << c.data << '\n';
    os << "vff_pfet_w_nm = " << format_number(c.vff_pfet_w_nm) << '\n';
    os << "vff_nfet_w_nm = " << format_number(c.vff_nfet_w_nm) << '\n';
    os << "p2_w_nm = " << format_number(c.p2_w_nm) << '\n';
    os << "tie_break_mv = " << format_number(c.tie_break_mv) << '\n';
    os << "dt_ps = " << format_number(c.dt_ps) << '\n';
    os << "mtj_ra_ohm_um2 = " << format_number(c.mtj_ra_ohm_um2) << '\n';
    os << "mtj_tmr = " << format_number(c.mtj_tmr) << '\n';
    os << "decimation = " << c.decimation << '\n';
    os << "seed = " << c.seed << '\n';
    os << "n_runs = " << c.n_runs << '\n';
    os << "sigma_vth_mv = " << format_number(c.sigma_vth_mv) << '\n';
    os << "sigma_w_pct = " << format_number(c.sigma_w_pct) << '\n';
    os << "sigma_ra_pct = " << format_number(c.sigma_ra_pct) << '\n';
    os << "sigma_tmr_pct = " << format_number(c.sigma_tmr_pct) << '\n';
    os << "sweep_p2_w_nm = ";
    for (size_t i = 0; i < c.sweep_p2_w_nm.size(); ++i)
        os << (i ? "," : "") << format_number(c.sweep_p2_w_nm[i]);
    os << '\n';
    os << "sweep_vff_w_nm = ";
    for (size_t i = 0; i < c.sweep_vff_w_nm.size(); ++i)
        os << (i ? "," : "") << format_number(c.sweep_vff_w_nm[i].first) << '/'
           << format_number(c.sweep_vff_w_nm[i].second);
    os << '\n';
    os << "out_dir = " << c.out_dir << '\n';
    return os.str();
}

DesignKind design_kind_from_name(const std::string& name) {
    if (name == "p-y") return DesignKind::py;
    if (name == "i-y") return DesignKind::iy;
    if (name == "p-x") return DesignKind::px;
    if (name == "i-x") return DesignKind::ix;
    if (name == "baseline") return DesignKind::baseline;
    throw std::invalid_argument("unknown design name " + name);
}

DesignSpec to_design_spec(const SimConfig& c) {
    DesignSpec s;
    s.kind = design_kind_from_name(c.design);
    s.w_p = c.vff_pfet_w_nm * 1e-9;
    s.w_n = c.vff_nfet_w_nm * 1e-9;
    s.w_header = c.p2_w_nm * 1e-9;
    s.tie_break = c.tie_break_mv * 1e-3;
    s.dt = c.dt_ps * 1e-12;
    s.mtj_ra = c.mtj_ra_ohm_um2 * 1e-12;
    s.mtj_tmr = c.mtj_tmr;
    return s;
}

VariationSpec to_variation_spec(const SimConfig& c) {
    VariationSpec v;
    v.sigma_vth = c.sigma_vth_mv * 1e-3;
    v.sigma_w_rel = c.sigma_w_pct * 1e-2;
    v.sigma_ra_rel = c.sigma_ra_pct * 1e-2;
    v.sigma_tmr_rel = c.sigma_tmr_pct * 1e-2;
    v.seed = c.seed;
    v.n_runs = c.n_runs;
    return v;
}

} // namespace nvff
