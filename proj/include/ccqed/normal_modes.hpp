#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "ccqed/error.hpp"
#include "ccqed/linear_response.hpp"
#include "ccqed/params.hpp"

namespace ccqed {

/// Rows map (a1, a2, b) onto (d, c+, c-).
using ModeMatrix = std::array<std::array<double, 3>, 3>;

struct NormalModeSummary {
    double v_tilde = 0.0;
    double gd1 = 0.0;
    double gd2 = 0.0;
    double kappa_d = 0.0;
    double kappa_plus = 0.0;
    double kappa_minus = 0.0;
    double splitting_bright = 0.0;  // sqrt(2) * v_tilde
    double collective_coupling = 0.0;  // sqrt(gd1^2 + gd2^2)
    double rabi_splitting = 0.0;    // half-splitting of the dressed d-mode doublet
    bool rabi_resolved = true;      // false if the radicand was negative (clamped to 0)
    ModeMatrix mode_vectors{};
};

inline NormalModeSummary decompose(const DerivedRates& r, double g1, double g2) {
    const double v1 = r.v1, v2 = r.v2;
    if (v1 == 0.0 && v2 == 0.0) throw ValidationError("normal modes undefined for v1 = v2 = 0");
    NormalModeSummary m;
    const double vt2 = 0.5 * (v1 * v1 + v2 * v2);
    m.v_tilde = std::sqrt(vt2);
    const double root2vt = std::sqrt(2.0) * m.v_tilde;
    m.splitting_bright = root2vt;
    m.gd1 = v2 / root2vt * g1;
    m.gd2 = v1 / root2vt * g2;
    m.collective_coupling = std::hypot(m.gd1, m.gd2);

    m.kappa_d = (v2 * v2 * r.kappa_1 + v1 * v1 * r.kappa_2) / (2.0 * vt2);
    m.kappa_plus = 0.5 * (r.kappa_bloss + (v1 * v1 * r.kappa_1 + v2 * v2 * r.kappa_2) / (2.0 * vt2));
    m.kappa_minus = m.kappa_plus;

    const double half_gap = 0.5 * (m.kappa_d - r.gamma_perp);
    const double radicand = m.gd1 * m.gd1 + m.gd2 * m.gd2 - half_gap * half_gap;
    m.rabi_resolved = radicand >= 0.0;
    m.rabi_splitting = m.rabi_resolved ? std::sqrt(radicand) : 0.0;

    // d is orthogonal to (v1, v2): it carries no fiber amplitude.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double w = 1.0 / (2.0 * m.v_tilde);
    m.mode_vectors = {{
        {v2 / root2vt, -v1 / root2vt, 0.0},
        {v1 * w, v2 * w, inv_sqrt2},
        {v1 * w, v2 * w, -inv_sqrt2},
    }};
    return m;
}

struct ReducedOptions {
    /// Add gamma_las to kappa_d, matching the dressing of the full model.
    bool dress_kappa_d = true;
    double delta_c_offset = 0.0;
};

/// Weak-drive amplitude of the dark mode d in the single-mode, two-ensemble model.
inline cplx reduced_dark_amplitude(const NormalModeSummary& m, const DerivedRates& r,
                                    const ProbeSettings& p, const ReducedOptions& opt = {}) {
    const cplx i(0.0, 1.0);
    const double kd = opt.dress_kappa_d ? m.kappa_d + r.gamma_las : m.kappa_d;
    const double drive = p.drive_E1 * r.v2 / m.splitting_bright;
    const cplx atom = r.gamma_perp + i * p.delta_a;
    const cplx self = kd + i * p.delta_c + (m.gd1 * m.gd1 + m.gd2 * m.gd2) / atom;
    return -i * drive / self;
}

/// Spectrum of the reduced model. The output field is the d-projection of a2,
/// normalized by the same model's empty-cavity flux on resonance.
inline SpectrumResult reduced_spectrum(const NormalModeSummary& m, const DerivedRates& r,
                                       const std::vector<double>& detunings,
                                       const ReducedOptions& opt = {}) {
    require_increasing(detunings, "detuning grid");
    const double a2_weight = -r.v1 / m.splitting_bright;
    auto flux = [&](const NormalModeSummary& modes, double delta_c, double delta_a) {
        const ProbeSettings probe{delta_c, delta_a, 1.0};
        SteadyStateAmplitudes amps{};
        amps.a2 = a2_weight * reduced_dark_amplitude(modes, r, probe, opt);
        return output_flux(amps, r);
    };
    NormalModeSummary empty = m;
    empty.gd1 = empty.gd2 = 0.0;
    SpectrumResult out;
    out.detunings = detunings;
    out.normalization_flux = flux(empty, 0.0, 0.0);
    for (double d : detunings) out.transmission.push_back(normalized(flux(m, d + opt.delta_c_offset, d), out.normalization_flux));
    return out;
}

inline SpectrumResult reduced_spectrum(const NormalModeSummary& m, const DerivedRates& r,
                                       const DetuningGrid& grid, const ReducedOptions& opt = {}) {
    return reduced_spectrum(m, r, grid.values(), opt);
}

struct Peak {
    double detuning = 0.0;
    double height = 0.0;
};

/// Local maxima with parabolic sub-grid refinement, ordered by detuning.
inline std::vector<Peak> peak_find(const SpectrumResult& sp) {
    const auto& x = sp.detunings;
    const auto& y = sp.transmission;
    if (x.size() != y.size()) throw ValidationError("spectrum arrays differ in length");
    std::vector<Peak> peaks;
    if (x.size() < 3) return peaks;
    const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    for (std::size_t k = 1; k < x.size(); ++k)
        if (std::abs((x[k] - x[k - 1]) - h) > 1e-6 * std::abs(h))
            throw ValidationError("peak_find requires a uniform grid");

    for (std::size_t k = 1; k + 1 < y.size(); ++k) {
        if (!(y[k] > y[k - 1] && y[k] >= y[k + 1])) continue;
        const double curv = y[k - 1] - 2.0 * y[k] + y[k + 1];
        double shift = 0.0;
        if (curv < 0.0) shift = 0.5 * (y[k - 1] - y[k + 1]) / curv;
        peaks.push_back({x[k] + shift * h, y[k] - 0.25 * (y[k - 1] - y[k + 1]) * shift});
    }
    return peaks;
}

}  // namespace ccqed
