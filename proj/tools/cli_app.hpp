#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccqed/ccqed.hpp"

namespace ccqed::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kConfigError = 2, kNumericError = 3 };

struct Options {
    std::string config_path;
    std::string out_dir;
    bool svg = false;
    std::string grid;
    double lf = 0.0;
    std::string atoms;
    bool key_values = false;
    bool reduced = false;
    int cavity = 0;
    bool fit = false;
};

class IoError : public Error {
  public:
    using Error::Error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// `<min_MHz>:<max_MHz>:<points>`
inline ProbeGridConfig parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = text.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw ConfigError("--grid expects <min_MHz>:<max_MHz>:<points>, got '" + text + "'");
    ProbeGridConfig g;
    g.min_mhz = detail::parse_double(text.substr(0, a));
    g.max_mhz = detail::parse_double(text.substr(a + 1, b - a - 1));
    g.points = detail::parse_count(text.substr(b + 1));
    return g;
}

inline RunConfig load_config(const Options& opt) {
    RunConfig cfg = opt.config_path.empty() ? parse_config("") : parse_config(read_file(opt.config_path));
    if (!opt.grid.empty()) {
        const auto g = parse_grid(opt.grid);
        cfg.probe.min_mhz = g.min_mhz;
        cfg.probe.max_mhz = g.max_mhz;
        cfg.probe.points = g.points;
    }
    if (opt.lf != 0.0) cfg.physical.Lf = opt.lf;
    if (!opt.atoms.empty()) cfg.atoms.loading = parse_loading(opt.atoms);
    if (!opt.out_dir.empty()) cfg.output.directory = opt.out_dir;
    if (opt.svg) cfg.output.svg = true;
    if (opt.cavity != 0) cfg.saturation.cavity = opt.cavity;
    validate(cfg);
    return cfg;
}

/// Writes `name` under the output directory, or to `out` when no directory is set.
class Sink {
  public:
    Sink(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

    bool to_files() const { return !cfg_.output.directory.empty(); }

    void emit(const std::string& name, const std::string& content) {
        if (!to_files()) {
            out_ << content;
            return;
        }
        write(name, content);
    }

    void write(const std::string& name, const std::string& content) {
        namespace fs = std::filesystem;
        const fs::path dir(cfg_.output.directory);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
        const fs::path path = dir / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw IoError("cannot write '" + path.string() + "'");
        f << content;
        if (!f) throw IoError("write failed for '" + path.string() + "'");
        err_ << "wrote " << path.string() << "\n";
    }

    void plot(const std::string& name, const std::vector<PlotSeries>& series, const PlotOptions& opt) {
        if (to_files() && cfg_.output.svg) write(name, svg_line_plot(series, opt));
    }

  private:
    const RunConfig& cfg_;
    std::ostream& out_;
    std::ostream& err_;
};

inline PlotSeries spectrum_series(const SpectrumResult& s, const char* color) {
    PlotSeries p;
    p.color = color;
    for (double d : s.detunings) p.x.push_back(to_mhz(d));
    p.y = s.transmission;
    return p;
}

inline int cmd_params(const RunConfig& cfg, std::ostream& out) {
    out << rate_report(rate_table(cfg.physical, cfg.lf_report)) << "\n"
        << derived_report(derive_rates(cfg.physical));
    return kOk;
}

inline int cmd_spectrum(const RunConfig& cfg, Sink& sink) {
    const auto rates = derive_rates(cfg.physical);
    const auto grid = cfg.probe.grid();
    const double offset = from_mhz(cfg.probe.delta_c_offset_mhz);
    const auto [g1, g2] = atom_couplings(cfg.physical, cfg.atoms.loading);
    const auto sp = transmission_spectrum(rates, g1, g2, offset, grid);
    sink.emit("spectrum.csv", spectrum_csv(sp));

    std::vector<PlotSeries> series{spectrum_series(sp, "#c0392b")};
    if (sink.to_files() && cfg.atoms.loading != AtomLoading::none && cfg.atoms.g_band_mhz > 0.0) {
        const double band = from_mhz(cfg.atoms.g_band_mhz);
        const auto [lo1, lo2] = atom_couplings(cfg.physical, cfg.atoms.loading, -band);
        const auto [hi1, hi2] = atom_couplings(cfg.physical, cfg.atoms.loading, band);
        const auto lo = transmission_spectrum(rates, lo1, lo2, offset, grid);
        const auto hi = transmission_spectrum(rates, hi1, hi2, offset, grid);
        sink.write("spectrum_band_lo.csv", spectrum_csv(lo));
        sink.write("spectrum_band_hi.csv", spectrum_csv(hi));
        series.push_back(spectrum_series(lo, "#e8a0a0"));
        series.push_back(spectrum_series(hi, "#e8a0a0"));
    }
    sink.plot("spectrum.svg", series,
              {"Transmission (atoms: " + std::string(to_string(cfg.atoms.loading)) + ")",
               "Delta_a / 2pi (MHz)", "normalized transmission", false});
    return kOk;
}

inline int cmd_normal_modes(const RunConfig& cfg, const Options& opt, std::ostream& out, Sink& sink) {
    const auto rates = derive_rates(cfg.physical);
    const auto [g1, g2] = atom_couplings(cfg.physical, cfg.atoms.loading);
    const auto modes = decompose(rates, g1, g2);
    out << summary_text(modes);
    if (opt.key_values) out << summary_key_values(modes);
    if (opt.reduced) {
        ReducedOptions ro;
        ro.delta_c_offset = from_mhz(cfg.probe.delta_c_offset_mhz);
        const auto sp = reduced_spectrum(modes, rates, cfg.probe.grid(), ro);
        if (sink.to_files()) {
            sink.write("reduced_spectrum.csv", spectrum_csv(sp));
            sink.plot("reduced_spectrum.svg", {spectrum_series(sp, "#1f4e9c")},
                      {"Reduced dark-mode model", "Delta_a / 2pi (MHz)", "normalized transmission", false});
        } else {
            out << "\n" << spectrum_csv(sp);
        }
    }
    return kOk;
}

inline int cmd_saturation(const RunConfig& cfg, Sink& sink) {
    const auto rates = derive_rates(cfg.physical);
    const auto sat = saturation_config(cfg);
    const auto curve = solve_saturation(sat, rates);
    const std::string stem = "saturation_cavity" + std::to_string(sat.which_cavity);
    sink.emit(stem + ".csv", saturation_csv(curve));
    PlotSeries s;
    for (const auto& p : curve.points) {
        s.x.push_back(to_pw(p.P_in));
        s.y.push_back(p.transmission);
    }
    sink.plot(stem + ".svg", {s},
              {"Saturation, atoms in cavity " + std::to_string(sat.which_cavity), "P_in (pW)",
               "normalized transmission", true});
    return kOk;
}

inline int cmd_mode_profile(const RunConfig& cfg, const Options& opt, std::ostream& err, Sink& sink) {
    auto mp = mode_params(cfg);
    if (opt.fit) {
        const auto fit = fit_simplified(mp);
        err << "fit: q'/q = " << fmt_g(fit.qprime_over_q(mp), 6) << ", A = " << fmt_g(fit.A_mf, 6)
            << ", max relative error = " << fmt_g(fit.max_rel_error, 4) << "\n";
        mp.qprime = fit.qprime;
        mp.A_mf = fit.A_mf;
        mp.B_mf = fit.B_mf;
    }
    ProfileGrid g;
    g.r_start = mp.r0;
    g.r_stop = mp.r0 + cfg.mode.profile_r_span;
    g.r_points = cfg.mode.profile_r_points;
    g.phi_min = cfg.mode.profile_phi_points > 1 ? -cfg.mode.profile_phi_max : 0.0;
    g.phi_max = cfg.mode.profile_phi_points > 1 ? cfg.mode.profile_phi_max : 0.0;
    g.phi_points = cfg.mode.profile_phi_points;
    g.z_start = 0.0;
    g.z_stop = std::numbers::pi / mp.beta;
    g.z_points = cfg.mode.profile_z_points;
    sink.emit("mode_profile.csv", mode_profile_csv(mp, g));

    PlotSeries exact, simple;
    simple.color = "#c0392b";
    for (std::size_t i = 0; i < g.r_points; ++i) {
        const double r = g.r_points == 1 ? g.r_start
                                         : g.r_start + (g.r_stop - g.r_start) * static_cast<double>(i) /
                                                           static_cast<double>(g.r_points - 1);
        exact.x.push_back(r * 1e9);
        simple.x.push_back(r * 1e9);
        exact.y.push_back(g_squared_exact(mp, r, 0.0, 0.0));
        simple.y.push_back(g_squared_simplified(mp, r, 0.0, 0.0));
    }
    sink.plot("mode_profile.svg", {exact, simple}, {"Coupling profile (phi = 0, z = 0)", "r (nm)", "g^2 / g0^2", false});
    return kOk;
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    bool ok = true;
    for (const auto& c : run_validation(cfg)) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  max_error=" << fmt_g(c.max_error, 3)
            << "  tol=" << fmt_g(c.tolerance, 3) << "\n";
        ok = ok && c.passed;
    }
    return ok ? kOk : kNumericError;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-cavity fiber-coupled cavity QED model"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--config", opt.config_path, "config file");
    app.add_option("--out", opt.out_dir, "output directory (default: CSV to stdout)");
    app.add_flag("--svg", opt.svg, "also write SVG plots");
    app.add_option("--grid", opt.grid, "detuning grid <min_MHz>:<max_MHz>:<points>");
    app.add_option("--lf", opt.lf, "connecting-fiber length override, m");
    app.add_option("--atoms", opt.atoms, "atom loading: none|cavity1|cavity2|both");

    auto* params = app.add_subcommand("params", "rate table in 2pi*MHz");
    auto* spectrum = app.add_subcommand("spectrum", "weak-probe transmission spectrum CSV");
    auto* modes = app.add_subcommand("normal-modes", "normal-mode summary");
    modes->add_flag("--kv", opt.key_values, "also print key=value lines");
    modes->add_flag("--reduced-csv", opt.reduced, "emit the reduced dark-mode spectrum");
    auto* saturation = app.add_subcommand("saturation", "transmission vs input power CSV");
    saturation->add_option("--cavity", opt.cavity, "cavity holding the atoms (1|2)");
    auto* profile = app.add_subcommand("mode-profile", "evanescent coupling profile CSV");
    profile->add_flag("--fit", opt.fit, "fit q' and A before evaluating the simplified form");
    auto* validate_cmd = app.add_subcommand("validate", "oracle cross-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kOk : kConfigError;
    }

    try {
        const RunConfig cfg = load_config(opt);
        Sink sink(cfg, out, err);
        if (params->parsed()) return cmd_params(cfg, out);
        if (spectrum->parsed()) return cmd_spectrum(cfg, sink);
        if (modes->parsed()) return cmd_normal_modes(cfg, opt, out, sink);
        if (saturation->parsed()) return cmd_saturation(cfg, sink);
        if (profile->parsed()) return cmd_mode_profile(cfg, opt, err, sink);
        if (validate_cmd->parsed()) return cmd_validate(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumericError;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
    return kConfigError;
}

}  // namespace ccqed::cli
