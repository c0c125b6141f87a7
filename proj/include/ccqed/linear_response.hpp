#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "ccqed/error.hpp"
#include "ccqed/grid.hpp"
#include "ccqed/params.hpp"

namespace ccqed {

using cplx = std::complex<double>;

struct ProbeSettings {
    double delta_c = 0.0;   // omega_c - omega_p, rad/s
    double delta_a = 0.0;   // omega_a - omega_p, rad/s
    double drive_E1 = 1.0;  // real, non-negative
};

/// Weak-drive stationary amplitudes. s1 and s2 are the collective atomic coherences.
struct SteadyStateAmplitudes {
    cplx a1, a2, b, s1, s2;
};

struct SpectrumResult {
    std::vector<double> detunings;  // Delta_a grid, rad/s
    std::vector<double> transmission;
    double normalization_flux = 0.0;
};

/// Closed-form steady state of the linearized equations of motion. Couplings are real;
/// `g1`, `g2` are the collective strengths g_eff.
inline SteadyStateAmplitudes steady_state(const DerivedRates& r, const ProbeSettings& p, double g1,
                                          double g2) {
    if (!(g1 >= 0.0 && g2 >= 0.0)) throw ValidationError("atom couplings must be >= 0");
    if (!(p.drive_E1 >= 0.0)) throw ValidationError("drive strength must be >= 0");
    const cplx i(0.0, 1.0);
    const cplx fiber = r.kappa_b + i * p.delta_c;
    const cplx atom = r.gamma_perp + i * p.delta_a;
    // Cavity 1 self-energy after eliminating its atoms and the fiber mode.
    const cplx dressed1 = r.kappa_1p + i * p.delta_c + g1 * g1 / atom + r.v1 * r.v1 / fiber;

    const cplx num = -i * p.drive_E1 * (r.v2 / fiber) * r.v1 / dressed1;
    const double v12 = r.v1 * r.v2;
    const cplx den = -(r.kappa_2p + i * p.delta_c) - r.v2 * r.v2 / fiber - g2 * g2 / atom +
                     (v12 * v12) / (fiber * fiber) / dressed1;
    if (std::abs(den) < 1e-300) throw NumericError("steady state denominator is singular");

    SteadyStateAmplitudes s;
    s.a2 = num / den;
    s.a1 = -(i * p.drive_E1 + v12 / fiber * s.a2) / dressed1;
    s.b = -i * r.v1 / fiber * s.a1 - i * r.v2 / fiber * s.a2;
    s.s1 = -i * g1 * s.a1 / atom;
    s.s2 = -i * g2 * s.a2 / atom;
    return s;
}

/// Photon flux leaving mirror 4, photons/s.
inline double output_flux(const SteadyStateAmplitudes& amps, const DerivedRates& r) {
    return 2.0 * r.kappa_2r * std::norm(amps.a2);
}

/// Empty-cavity, on-resonance output flux for unit drive.
inline double reference_flux(const DerivedRates& r) {
    return output_flux(steady_state(r, ProbeSettings{}, 0.0, 0.0), r);
}

inline double normalized(double flux, double reference) {
    // A zero reference only happens when the chain is cut (v1 or v2 = 0),
    // in which case every flux is zero as well.
    return reference > 0.0 ? flux / reference : 0.0;
}

/// Transmission versus Delta_a with Delta_c = Delta_a + delta_c_offset, normalized to the
/// on-resonance empty-cavity flux of the same rates.
inline SpectrumResult transmission_spectrum(const DerivedRates& r, double g1, double g2,
                                            double delta_c_offset,
                                            const std::vector<double>& detunings) {
    require_increasing(detunings, "detuning grid");
    SpectrumResult out;
    out.detunings = detunings;
    out.normalization_flux = reference_flux(r);
    out.transmission.reserve(detunings.size());
    for (double d : detunings) {
        const ProbeSettings probe{d + delta_c_offset, d, 1.0};
        out.transmission.push_back(
            normalized(output_flux(steady_state(r, probe, g1, g2), r), out.normalization_flux));
    }
    return out;
}

inline SpectrumResult transmission_spectrum(const DerivedRates& r, double g1, double g2,
                                            double delta_c_offset, const DetuningGrid& grid) {
    return transmission_spectrum(r, g1, g2, delta_c_offset, grid.values());
}

}  // namespace ccqed
