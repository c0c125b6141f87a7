#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccqed/error.hpp"
#include "ccqed/fiber_mode.hpp"
#include "ccqed/grid.hpp"
#include "ccqed/params.hpp"
#include "ccqed/saturation.hpp"
#include "ccqed/units.hpp"

namespace ccqed {

enum class AtomLoading { none, cavity1, cavity2, both };

inline const char* to_string(AtomLoading a) {
    switch (a) {
        case AtomLoading::none: return "none";
        case AtomLoading::cavity1: return "cavity1";
        case AtomLoading::cavity2: return "cavity2";
        case AtomLoading::both: return "both";
    }
    return "?";
}

inline AtomLoading parse_loading(std::string_view s) {
    if (s == "none") return AtomLoading::none;
    if (s == "cavity1") return AtomLoading::cavity1;
    if (s == "cavity2") return AtomLoading::cavity2;
    if (s == "both") return AtomLoading::both;
    throw ConfigError("atom loading must be none|cavity1|cavity2|both, got '" + std::string(s) + "'");
}

struct ProbeGridConfig {
    double min_mhz = -30.0;
    double max_mhz = 30.0;
    std::size_t points = 601;
    double delta_c_offset_mhz = 0.0;

    DetuningGrid grid() const { return {from_mhz(min_mhz), from_mhz(max_mhz), points}; }
    bool operator==(const ProbeGridConfig&) const = default;
};

struct AtomsConfig {
    AtomLoading loading = AtomLoading::both;
    double g_band_mhz = 1.0;  // half-width of the coupling uncertainty band
    bool operator==(const AtomsConfig&) const = default;
};

struct SaturationSection {
    int cavity = 1;
    double n_eff = 0.0;  // 0: use (g_eff / g0)^2
    SaturationModel model = SaturationModel::closed_form;
    double p_min_pw = 1.0;
    double p_max_pw = 1.0e6;
    std::size_t points = 121;
    double sigma_y_over_x0 = 0.0;
    bool operator==(const SaturationSection&) const = default;
};

struct ModeSection {
    ModeConstants constants;
    double profile_r_span = 300.0e-9;
    std::size_t profile_r_points = 31;
    double profile_phi_max = std::numbers::pi / 4.0;
    std::size_t profile_phi_points = 3;
    std::size_t profile_z_points = 5;
    bool operator==(const ModeSection&) const = default;
};

struct OutputConfig {
    std::string directory;  // empty: write CSV to stdout
    bool svg = false;
    bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
    PhysicalConfig physical;
    std::vector<double> lf_report = {0.83, 1.23, 2.27};
    ProbeGridConfig probe;
    AtomsConfig atoms;
    SaturationSection saturation;
    ModeSection mode;
    OutputConfig output;
    bool operator==(const RunConfig&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError("expected a number, got '" + std::string(s) + "'");
    return v;
}

inline std::size_t parse_count(std::string_view s) {
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError("expected a non-negative integer, got '" + std::string(s) + "'");
    return v;
}

inline std::vector<double> parse_list(std::string_view s) {
    std::vector<double> out;
    while (!trim(s).empty()) {
        const auto comma = s.find(',');
        out.push_back(parse_double(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// MHz text that maps back onto exactly the same rad/s value. Parsed rates always have
// such a preimage; it lies within a few ulps of the naive conversion.
inline std::string format_rate(double rad_per_s) {
    const double guess = to_mhz(rad_per_s);
    double below = guess, above = guess;
    for (int step = 0; step < 64; ++step) {
        if (from_mhz(below) == rad_per_s) return format_double(below);
        if (from_mhz(above) == rad_per_s) return format_double(above);
        below = std::nextafter(below, -1e308);
        above = std::nextafter(above, 1e308);
    }
    return format_double(guess);
}

struct ConfigKey {
    const char* section;
    const char* key;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

// Plain number stored in the configured unit.
template <class Member>
ConfigKey number_key(const char* section, const char* key, Member member) {
    return {section, key, [member](RunConfig& c, std::string_view v) { member(c) = parse_double(v); },
            [member](const RunConfig& c) { return format_double(member(c)); }};
}

// Rate stored in rad/s, written in MHz.
template <class Member>
ConfigKey rate_key(const char* section, const char* key, Member member) {
    return {section, key,
            [member](RunConfig& c, std::string_view v) { member(c) = from_mhz(parse_double(v)); },
            [member](const RunConfig& c) { return format_rate(member(c)); }};
}

template <class Member>
ConfigKey count_key(const char* section, const char* key, Member member) {
    return {section, key, [member](RunConfig& c, std::string_view v) { member(c) = parse_count(v); },
            [member](const RunConfig& c) { return std::to_string(member(c)); }};
}

#define CCQED_FIELD(expr) [](auto& c) -> auto& { return expr; }

inline const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        k.push_back(number_key("physical", "T1", CCQED_FIELD(c.physical.T1)));
        k.push_back(number_key("physical", "T2", CCQED_FIELD(c.physical.T2)));
        k.push_back(number_key("physical", "T3", CCQED_FIELD(c.physical.T3)));
        k.push_back(number_key("physical", "T4", CCQED_FIELD(c.physical.T4)));
        k.push_back(number_key("physical", "L1", CCQED_FIELD(c.physical.L1)));
        k.push_back(number_key("physical", "L2", CCQED_FIELD(c.physical.L2)));
        k.push_back(number_key("physical", "Lf", CCQED_FIELD(c.physical.Lf)));
        k.push_back(number_key("physical", "alpha1", CCQED_FIELD(c.physical.alpha1)));
        k.push_back(number_key("physical", "alpha2", CCQED_FIELD(c.physical.alpha2)));
        k.push_back(number_key("physical", "alphaf", CCQED_FIELD(c.physical.alphaf)));
        k.push_back(rate_key("physical", "gamma_par", CCQED_FIELD(c.physical.gamma_par)));
        k.push_back(rate_key("physical", "gamma_las", CCQED_FIELD(c.physical.gamma_las)));
        k.push_back(rate_key("physical", "g1_eff", CCQED_FIELD(c.physical.g1_eff)));
        k.push_back(rate_key("physical", "g2_eff", CCQED_FIELD(c.physical.g2_eff)));
        k.push_back(rate_key("physical", "g1_0", CCQED_FIELD(c.physical.g1_0)));
        k.push_back(rate_key("physical", "g2_0", CCQED_FIELD(c.physical.g2_0)));
        k.push_back(number_key("physical", "c_fiber", CCQED_FIELD(c.physical.c_fiber)));
        k.push_back(number_key("physical", "lambda", CCQED_FIELD(c.physical.lambda_probe)));
        k.push_back({"physical", "lf_report",
                     [](RunConfig& c, std::string_view v) { c.lf_report = parse_list(v); },
                     [](const RunConfig& c) {
                         std::string s;
                         for (std::size_t i = 0; i < c.lf_report.size(); ++i)
                             s += (i ? ", " : "") + format_double(c.lf_report[i]);
                         return s;
                     }});

        k.push_back(number_key("probe", "min_MHz", CCQED_FIELD(c.probe.min_mhz)));
        k.push_back(number_key("probe", "max_MHz", CCQED_FIELD(c.probe.max_mhz)));
        k.push_back(count_key("probe", "points", CCQED_FIELD(c.probe.points)));
        k.push_back(number_key("probe", "delta_c_offset_MHz", CCQED_FIELD(c.probe.delta_c_offset_mhz)));

        k.push_back({"atoms", "loading",
                     [](RunConfig& c, std::string_view v) { c.atoms.loading = parse_loading(trim(v)); },
                     [](const RunConfig& c) { return std::string(to_string(c.atoms.loading)); }});
        k.push_back(number_key("atoms", "g_band_MHz", CCQED_FIELD(c.atoms.g_band_mhz)));

        k.push_back({"saturation", "cavity",
                     [](RunConfig& c, std::string_view v) {
                         c.saturation.cavity = static_cast<int>(parse_count(v));
                     },
                     [](const RunConfig& c) { return std::to_string(c.saturation.cavity); }});
        k.push_back(number_key("saturation", "N_eff", CCQED_FIELD(c.saturation.n_eff)));
        k.push_back({"saturation", "model",
                     [](RunConfig& c, std::string_view v) {
                         v = trim(v);
                         if (v == "closed_form") c.saturation.model = SaturationModel::closed_form;
                         else if (v == "quadrature") c.saturation.model = SaturationModel::quadrature;
                         else throw ConfigError("saturation model must be closed_form|quadrature");
                     },
                     [](const RunConfig& c) { return std::string(to_string(c.saturation.model)); }});
        k.push_back(number_key("saturation", "p_min_pW", CCQED_FIELD(c.saturation.p_min_pw)));
        k.push_back(number_key("saturation", "p_max_pW", CCQED_FIELD(c.saturation.p_max_pw)));
        k.push_back(count_key("saturation", "points", CCQED_FIELD(c.saturation.points)));
        k.push_back(number_key("saturation", "sigma_y_over_x0", CCQED_FIELD(c.saturation.sigma_y_over_x0)));

        k.push_back(number_key("mode", "beta", CCQED_FIELD(c.mode.constants.beta)));
        k.push_back(number_key("mode", "n1", CCQED_FIELD(c.mode.constants.n1)));
        k.push_back(number_key("mode", "n2", CCQED_FIELD(c.mode.constants.n2)));
        k.push_back(number_key("mode", "s", CCQED_FIELD(c.mode.constants.s)));
        k.push_back(number_key("mode", "radius", CCQED_FIELD(c.mode.constants.radius)));
        k.push_back(number_key("mode", "r0", CCQED_FIELD(c.mode.constants.r0)));
        k.push_back(number_key("mode", "A", CCQED_FIELD(c.mode.constants.A_mf)));
        k.push_back(number_key("mode", "q_prime_over_q", CCQED_FIELD(c.mode.constants.qprime_over_q)));
        k.push_back(number_key("mode", "profile_r_span", CCQED_FIELD(c.mode.profile_r_span)));
        k.push_back(count_key("mode", "profile_r_points", CCQED_FIELD(c.mode.profile_r_points)));
        k.push_back(number_key("mode", "profile_phi_max", CCQED_FIELD(c.mode.profile_phi_max)));
        k.push_back(count_key("mode", "profile_phi_points", CCQED_FIELD(c.mode.profile_phi_points)));
        k.push_back(count_key("mode", "profile_z_points", CCQED_FIELD(c.mode.profile_z_points)));

        k.push_back({"output", "directory",
                     [](RunConfig& c, std::string_view v) { c.output.directory = std::string(trim(v)); },
                     [](const RunConfig& c) { return c.output.directory; }});
        k.push_back({"output", "formats",
                     [](RunConfig& c, std::string_view v) {
                         bool csv = false, svg = false;
                         while (!trim(v).empty()) {
                             const auto comma = v.find(',');
                             const auto item = trim(v.substr(0, comma));
                             if (item == "csv") csv = true;
                             else if (item == "svg") svg = true;
                             else throw ConfigError("unknown output format '" + std::string(item) + "'");
                             if (comma == std::string_view::npos) break;
                             v.remove_prefix(comma + 1);
                         }
                         if (!csv) throw ConfigError("output formats must include csv");
                         c.output.svg = svg;
                     },
                     [](const RunConfig& c) { return std::string(c.output.svg ? "csv, svg" : "csv"); }});
        return k;
    }();
    return keys;
}

#undef CCQED_FIELD

}  // namespace detail

/// Checks everything the modules would reject later, reported as configuration errors.
inline void validate(const RunConfig& c) {
    try {
        validate(c.physical);
        for (double lf : c.lf_report)
            if (!(lf > 0.0)) throw ValidationError("lf_report lengths must be > 0");
        if (c.probe.points == 0) throw ValidationError("probe points must be >= 1");
        if (c.probe.points > 1 && !(c.probe.max_mhz > c.probe.min_mhz))
            throw ValidationError("probe max_MHz must exceed min_MHz");
        if (!(c.atoms.g_band_mhz >= 0.0)) throw ValidationError("g_band_MHz must be >= 0");
        if (c.saturation.cavity != 1 && c.saturation.cavity != 2)
            throw ValidationError("saturation cavity must be 1 or 2");
        if (!(c.saturation.n_eff >= 0.0)) throw ValidationError("N_eff must be >= 0");
        if (!(c.saturation.p_min_pw > 0.0 && c.saturation.p_max_pw > c.saturation.p_min_pw))
            throw ValidationError("need 0 < p_min_pW < p_max_pW");
        if (c.saturation.points < 2) throw ValidationError("saturation points must be >= 2");
        if (!(c.saturation.sigma_y_over_x0 >= 0.0)) throw ValidationError("sigma_y_over_x0 must be >= 0");
        ModeConstants mc = c.mode.constants;
        mc.lambda = c.physical.lambda_probe;
        (void)make_mode_params(mc);
        if (c.mode.profile_r_points == 0 || c.mode.profile_phi_points == 0 || c.mode.profile_z_points == 0)
            throw ValidationError("mode profile grid sizes must be >= 1");
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
}

/// Line-oriented `[section]` / `key = value` text with `#` comments.
/// Missing keys keep their defaults; unknown keys are rejected.
inline RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            bool known = false;
            for (const auto& k : detail::config_keys()) known = known || section == k.section;
            if (!known) throw ConfigError("unknown section [" + section + "]", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        if (section.empty()) throw ConfigError("key outside of any [section]", line_no);
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        const detail::ConfigKey* match = nullptr;
        for (const auto& k : detail::config_keys())
            if (section == k.section && key == k.key) match = &k;
        if (!match) throw ConfigError("unknown key '" + std::string(key) + "' in [" + section + "]", line_no);
        try {
            match->set(cfg, value);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), line_no);
        }
    }
    validate(cfg);
    return cfg;
}

/// Writes every key, so that parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    std::string section;
    for (const auto& k : detail::config_keys()) {
        if (section != k.section) {
            section = k.section;
            out << (out.tellp() > 0 ? "\n" : "") << '[' << section << "]\n";
        }
        out << k.key << " = " << k.get(cfg) << '\n';
    }
    return out.str();
}

/// Collective couplings (g1, g2) implied by the loading condition.
inline std::pair<double, double> atom_couplings(const PhysicalConfig& p, AtomLoading loading,
                                                double shift = 0.0) {
    const double g1 = std::max(0.0, p.g1_eff + shift), g2 = std::max(0.0, p.g2_eff + shift);
    switch (loading) {
        case AtomLoading::none: return {0.0, 0.0};
        case AtomLoading::cavity1: return {g1, 0.0};
        case AtomLoading::cavity2: return {0.0, g2};
        case AtomLoading::both: return {g1, g2};
    }
    return {0.0, 0.0};
}

inline ModeFunctionParams mode_params(const RunConfig& c) {
    ModeConstants mc = c.mode.constants;
    mc.lambda = c.physical.lambda_probe;
    return make_mode_params(mc);
}

/// Saturation setup for the configured cavity: g0 and N_eff from the physical section
/// unless overridden, trap-minimum radius from the mode section.
inline SaturationConfig saturation_config(const RunConfig& c) {
    SaturationConfig s;
    s.which_cavity = c.saturation.cavity;
    const double g_eff = s.which_cavity == 1 ? c.physical.g1_eff : c.physical.g2_eff;
    s.g0 = s.which_cavity == 1 ? c.physical.g1_0 : c.physical.g2_0;
    s.N_eff = c.saturation.n_eff > 0.0 ? c.saturation.n_eff : (g_eff / s.g0) * (g_eff / s.g0);
    s.A_mf = c.mode.constants.A_mf;
    s.power_grid = log_power_grid(from_pw(c.saturation.p_min_pw), from_pw(c.saturation.p_max_pw),
                                  c.saturation.points);
    s.model = c.saturation.model;
    s.sigma_y_over_x0 = c.saturation.sigma_y_over_x0;
    const auto mp = mode_params(c);
    s.q_prime_x0 = mp.qprime * mp.r0;
    s.lambda_probe = c.physical.lambda_probe;
    return s;
}

}  // namespace ccqed
