#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ccqed/fiber_mode.hpp"
#include "ccqed/linear_response.hpp"
#include "ccqed/normal_modes.hpp"
#include "ccqed/params.hpp"
#include "ccqed/saturation.hpp"
#include "ccqed/units.hpp"

namespace ccqed {

inline std::string fmt_g(double v, int digits = 9) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string spectrum_csv(const SpectrumResult& s) {
    std::string out = "delta_MHz,transmission\n";
    for (std::size_t i = 0; i < s.detunings.size(); ++i)
        out += fmt_g(to_mhz(s.detunings[i])) + "," + fmt_g(s.transmission[i]) + "\n";
    return out;
}

inline std::string saturation_csv(const SaturationCurve& c) {
    std::string out = "P_in_pW,transmission,n_roots,branch\n";
    for (const auto& p : c.points)
        out += fmt_g(to_pw(p.P_in)) + "," + fmt_g(p.transmission) + "," + std::to_string(p.n_roots) +
               "," + to_string(p.branch) + "\n";
    return out;
}

struct ProfileGrid {
    double r_start = 0, r_stop = 0;
    std::size_t r_points = 1;
    double phi_min = 0, phi_max = 0;
    std::size_t phi_points = 1;
    double z_start = 0, z_stop = 0;
    std::size_t z_points = 1;
};

inline std::string mode_profile_csv(const ModeFunctionParams& p, const ProfileGrid& g) {
    auto at = [](double lo, double hi, std::size_t n, std::size_t i) {
        return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    std::string out = "r_nm,phi_rad,z_nm,g2_exact,g2_simplified\n";
    for (std::size_t i = 0; i < g.r_points; ++i)
        for (std::size_t j = 0; j < g.phi_points; ++j)
            for (std::size_t k = 0; k < g.z_points; ++k) {
                const double r = at(g.r_start, g.r_stop, g.r_points, i);
                const double phi = at(g.phi_min, g.phi_max, g.phi_points, j);
                const double z = at(g.z_start, g.z_stop, g.z_points, k);
                out += fmt_g(r * 1e9) + "," + fmt_g(phi) + "," + fmt_g(z * 1e9) + "," +
                       fmt_g(g_squared_exact(p, r, phi, z)) + "," + fmt_g(g_squared_simplified(p, r, phi, z)) +
                       "\n";
            }
    return out;
}

/// Rate table in 2pi x MHz with three significant figures.
inline std::string rate_report(const std::vector<RateRow>& rows) {
    std::ostringstream out;
    out << "parameter                      2pi*MHz\n";
    for (const auto& row : rows) {
        std::string label = row.name;
        if (row.lf > 0.0) label += " (Lf=" + fmt_g(row.lf, 3) + " m)";
        label.resize(std::max<std::size_t>(label.size() + 1, 31), ' ');
        out << label << fmt_g(to_mhz(row.value), 3) << "\n";
    }
    return out.str();
}

inline std::string derived_report(const DerivedRates& r) {
    std::ostringstream out;
    auto line = [&](const char* name, double v) {
        std::string label = name;
        label.resize(31, ' ');
        out << label << fmt_g(to_mhz(v), 3) << "\n";
    };
    out << "derived (configured Lf)        2pi*MHz\n";
    line("kappa_1", r.kappa_1);
    line("kappa_2", r.kappa_2);
    line("kappa_1p", r.kappa_1p);
    line("kappa_2p", r.kappa_2p);
    line("kappa_b", r.kappa_b);
    line("v1", r.v1);
    line("v2", r.v2);
    line("gamma_perp", r.gamma_perp);
    return out.str();
}

struct SummaryField {
    std::string key;
    double value;  // already in display units
};

inline std::vector<SummaryField> summary_fields(const NormalModeSummary& m) {
    return {{"v_tilde_MHz", to_mhz(m.v_tilde)},
            {"splitting_bright_MHz", to_mhz(m.splitting_bright)},
            {"gd1_MHz", to_mhz(m.gd1)},
            {"gd2_MHz", to_mhz(m.gd2)},
            {"collective_coupling_MHz", to_mhz(m.collective_coupling)},
            {"kappa_d_MHz", to_mhz(m.kappa_d)},
            {"kappa_plus_MHz", to_mhz(m.kappa_plus)},
            {"kappa_minus_MHz", to_mhz(m.kappa_minus)},
            {"rabi_splitting_MHz", to_mhz(m.rabi_splitting)}};
}

inline std::string summary_text(const NormalModeSummary& m) {
    std::ostringstream out;
    for (const auto& f : summary_fields(m)) {
        std::string label = f.key;
        label.resize(26, ' ');
        out << label << fmt_g(f.value, 6) << "\n";
    }
    out << "rabi_regime               " << (m.rabi_resolved ? "resolved" : "unresolved") << "\n";
    out << "mode_vectors (rows d, c+, c-; columns a1, a2, b)\n";
    for (const auto& row : m.mode_vectors)
        out << "  " << fmt_g(row[0], 6) << "  " << fmt_g(row[1], 6) << "  " << fmt_g(row[2], 6) << "\n";
    return out.str();
}

inline std::string summary_key_values(const NormalModeSummary& m) {
    std::string out;
    for (const auto& f : summary_fields(m)) out += f.key + "=" + fmt_g(f.value, 9) + "\n";
    out += std::string("rabi_regime=") + (m.rabi_resolved ? "resolved" : "unresolved") + "\n";
    return out;
}

struct PlotSeries {
    std::vector<double> x, y;
    std::string color = "#1f4e9c";
};

struct PlotOptions {
    std::string title, x_label, y_label;
    bool log_x = false;
};

/// Minimal polyline plot. No numeric authority: CSV is the canonical output.
inline std::string svg_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
    constexpr double W = 640, H = 420, left = 70, right = 20, top = 40, bottom = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto tx = [&](double x) { return opt.log_x ? std::log10(x) : x; };
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (opt.log_x && !(s.x[i] > 0.0)) continue;
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    ymin = std::min(ymin, 0.0);
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * (W - left - right); };
    auto py = [&](double y) { return H - bottom - (y - ymin) / (ymax - ymin) * (H - top - bottom); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << opt.title
        << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\""
        << H - bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
        << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 4.0;
        const double fy = ymin + (ymax - ymin) * k / 4.0;
        const double sx = left + (W - left - right) * k / 4.0;
        const double sy = H - bottom - (H - top - bottom) * k / 4.0;
        out << "<text x=\"" << sx << "\" y=\"" << H - bottom + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << (opt.log_x ? "1e" + fmt_g(fx, 3) : fmt_g(fx, 4)) << "</text>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
            << fmt_g(fy, 3) << "</text>\n";
    }
    out << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << opt.x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << (top + H - bottom) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (top + H - bottom) / 2 << ")\">" << opt.y_label << "</text>\n";
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (opt.log_x && !(s.x[i] > 0.0)) continue;
            out << fmt_g(px(s.x[i]), 6) << "," << fmt_g(py(s.y[i]), 6) << " ";
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ccqed
