#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ccqed/bessel.hpp"
#include "ccqed/error.hpp"

namespace ccqed {

/// Geometry of the nanofiber guided mode and of the simplified coupling profile.
/// Lengths in m, wavenumbers in 1/m.
struct ModeFunctionParams {
    double beta = 0, k = 0, n1 = 0, n2 = 0, s = 0, a = 0;
    double q = 0, h = 0;
    double qprime = 0;
    double r0 = 0;
    double A_mf = 0, B_mf = 0;
};

struct ModeConstants {
    double beta = 7.87925e6;
    double lambda = 852.0e-9;
    double n1 = 1.4525;
    double n2 = 1.0;
    double s = -0.828;
    double radius = 200.0e-9;
    double r0 = 400.0e-9;    // radius + 200 nm
    double A_mf = 0.17;
    double qprime_over_q = 1.3;

    bool operator==(const ModeConstants&) const = default;
};

inline ModeFunctionParams make_mode_params(const ModeConstants& c) {
    ModeFunctionParams p;
    p.beta = c.beta;
    p.k = 2.0 * std::numbers::pi / c.lambda;
    p.n1 = c.n1;
    p.n2 = c.n2;
    p.s = c.s;
    p.a = c.radius;
    const double q2 = p.beta * p.beta - p.n2 * p.n2 * p.k * p.k;
    const double h2 = p.k * p.k * p.n1 * p.n1 - p.beta * p.beta;
    if (!(q2 > 0.0)) throw ValidationError("beta must exceed n2 k (guided mode)");
    if (!(h2 > 0.0)) throw ValidationError("beta must be below n1 k (guided mode)");
    p.q = std::sqrt(q2);
    p.h = std::sqrt(h2);
    p.qprime = c.qprime_over_q * p.q;
    p.r0 = c.r0;
    if (!(p.a > 0.0) || !(p.r0 > p.a)) throw ValidationError("need 0 < radius < r0");
    if (!(c.A_mf >= 0.0 && c.A_mf <= 1.0)) throw ValidationError("A_mf must lie in [0, 1]");
    p.A_mf = c.A_mf;
    p.B_mf = 1.0 - c.A_mf;
    return p;
}

namespace detail {

// The two axial components of the unnormalized intensity.
struct ModeComponents {
    double standing;   // multiplies cos^2(beta z)
    double quadrature;  // multiplies sin^2(beta z)
};

inline ModeComponents mode_components(const ModeFunctionParams& p, double r, double phi) {
    const auto k = bessel_k012(p.q * r);
    const double pre = p.beta / (2.0 * p.q);
    const double radial = (1.0 - p.s) * k.k0 + (1.0 + p.s) * k.k2 * std::cos(2.0 * phi);
    const double azimuthal = (1.0 + p.s) * k.k2 * std::sin(2.0 * phi);
    const double cphi = std::cos(phi);
    return {pre * pre * (radial * radial + azimuthal * azimuthal), k.k1 * k.k1 * cphi * cphi};
}

inline double mode_raw(const ModeFunctionParams& p, double r, double phi, double z) {
    const auto c = mode_components(p, r, phi);
    const double cz = std::cos(p.beta * z), sz = std::sin(p.beta * z);
    return c.standing * cz * cz + c.quadrature * sz * sz;
}

}  // namespace detail

/// Exact evanescent-field coupling profile, normalized to 1 at (r0, 0, 0).
inline double g_squared_exact(const ModeFunctionParams& p, double r, double phi, double z) {
    if (!(r > p.a)) throw ValidationError("g_squared_exact requires r > fiber radius");
    return detail::mode_raw(p, r, phi, z) / detail::mode_raw(p, p.r0, 0.0, 0.0);
}

/// Weight of the sin^2(beta z) component relative to the cos^2 one at (r, phi).
inline double quadrature_weight(const ModeFunctionParams& p, double r, double phi = 0.0) {
    const auto c = detail::mode_components(p, r, phi);
    return c.quadrature / c.standing;
}

/// 1/2 [1 + A + B cos(2 beta z)] exp(-2 q'(r - r0)) / (r/r0) cos^2(phi)
inline double g_squared_simplified(const ModeFunctionParams& p, double r, double phi, double z) {
    if (!(r > 0.0)) throw ValidationError("g_squared_simplified requires r > 0");
    const double axial = 0.5 * (1.0 + p.A_mf + p.B_mf * std::cos(2.0 * p.beta * z));
    const double radial = std::exp(-2.0 * p.qprime * (r - p.r0)) / (r / p.r0);
    const double c = std::cos(phi);
    return axial * radial * c * c;
}

/// Sampling box for the simplified-form fit: r in [r0, r0 + r_span],
/// phi in [-phi_max, phi_max], z over one axial period pi/beta.
struct FitDomain {
    double r_span = 300.0e-9;
    double phi_max = std::numbers::pi / 4.0;
    int r_points = 31;
    int phi_points = 21;
    int z_points = 21;
};

struct FitResult {
    double qprime = 0.0;
    double A_mf = 0.0;
    double B_mf = 0.0;
    double max_rel_error = 0.0;  // on a grid twice as dense as the fit grid
    double rms_rel_error = 0.0;  // at the fit samples

    double qprime_over_q(const ModeFunctionParams& p) const { return qprime / p.q; }
};

namespace detail {

struct FitSample {
    double r, cos2phi, cos2z, sin2z, exact;
};

inline std::vector<FitSample> fit_samples(const ModeFunctionParams& p, const FitDomain& d,
                                          int refine) {
    auto axis = [](double lo, double hi, int n) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        return v;
    };
    const auto rs = axis(p.r0, p.r0 + d.r_span, (d.r_points - 1) * refine + 1);
    const auto phis = axis(-d.phi_max, d.phi_max, (d.phi_points - 1) * refine + 1);
    const auto zs = axis(0.0, std::numbers::pi / p.beta, (d.z_points - 1) * refine + 1);
    std::vector<FitSample> out;
    out.reserve(rs.size() * phis.size() * zs.size());
    for (double r : rs)
        for (double phi : phis)
            for (double z : zs) {
                const double c = std::cos(phi), cz = std::cos(p.beta * z), sz = std::sin(p.beta * z);
                out.push_back({r, c * c, cz * cz, sz * sz, g_squared_exact(p, r, phi, z)});
            }
    return out;
}

// For fixed q' the relative residual is affine in A; returns the optimal A and the
// residual sum of squares.
inline std::pair<double, double> best_axial_weight(const ModeFunctionParams& p,
                                                   const std::vector<FitSample>& xs, double qprime) {
    double sww = 0.0, swr = 0.0;
    for (const auto& x : xs) {
        const double radial = std::exp(-2.0 * qprime * (x.r - p.r0)) * p.r0 / x.r * x.cos2phi;
        const double u = radial * x.cos2z / x.exact - 1.0;  // residual at A = 0
        const double w = radial * x.sin2z / x.exact;        // d residual / dA
        sww += w * w;
        swr += w * u;
    }
    const double A = sww > 0.0 ? -swr / sww : 0.0;
    double rss = 0.0;
    for (const auto& x : xs) {
        const double radial = std::exp(-2.0 * qprime * (x.r - p.r0)) * p.r0 / x.r * x.cos2phi;
        const double res = radial * (x.cos2z + A * x.sin2z) / x.exact - 1.0;
        rss += res * res;
    }
    return {A, rss};
}

}  // namespace detail

/// Least-squares fit of (q', A) with B = 1 - A, minimizing the relative error of the
/// simplified profile against the exact one over `domain`.
inline FitResult fit_simplified(const ModeFunctionParams& p, const FitDomain& domain = {}) {
    const auto samples = detail::fit_samples(p, domain, 1);
    auto cost = [&](double qp) { return detail::best_axial_weight(p, samples, qp).second; };

    // Golden-section search over q'.
    constexpr double inv_phi = 0.6180339887498949;
    double lo = 0.2 * p.q, hi = 4.0 * p.q;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = cost(x1), f2 = cost(x2);
    while (hi - lo > 1e-10 * p.q) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = cost(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = cost(x2);
        }
    }
    FitResult fit;
    fit.qprime = 0.5 * (lo + hi);
    const auto [A, rss] = detail::best_axial_weight(p, samples, fit.qprime);
    fit.A_mf = A;
    fit.B_mf = 1.0 - A;
    fit.rms_rel_error = std::sqrt(rss / static_cast<double>(samples.size()));

    double worst = 0.0;
    for (const auto& x : detail::fit_samples(p, domain, 2)) {
        const double radial = std::exp(-2.0 * fit.qprime * (x.r - p.r0)) * p.r0 / x.r * x.cos2phi;
        const double approx = radial * (x.cos2z + fit.A_mf * x.sin2z);
        worst = std::max(worst, std::abs(approx - x.exact) / x.exact);
    }
    fit.max_rel_error = worst;
    return fit;
}

}  // namespace ccqed
