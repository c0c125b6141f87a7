#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ccqed/error.hpp"
#include "ccqed/gauss_hermite.hpp"
#include "ccqed/grid.hpp"
#include "ccqed/linear_response.hpp"
#include "ccqed/params.hpp"
#include "ccqed/units.hpp"

namespace ccqed {

enum class SaturationModel { closed_form, quadrature };
enum class Branch { low, middle, high };

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::low: return "low";
        case Branch::middle: return "middle";
        case Branch::high: return "high";
    }
    return "?";
}

inline const char* to_string(SaturationModel m) {
    return m == SaturationModel::closed_form ? "closed_form" : "quadrature";
}

struct SaturationConfig {
    int which_cavity = 1;  // cavity holding the atoms
    double g0 = 0.0;       // single-atom coupling at the trap minimum, rad/s
    double N_eff = 0.0;
    double A_mf = 0.17;
    std::vector<double> power_grid;  // input powers, W
    SaturationModel model = SaturationModel::closed_form;
    // Only used by the quadrature model.
    double sigma_y_over_x0 = 0.0;
    double q_prime_x0 = 0.0;
    double lambda_probe = 852.0e-9;
};

struct SaturationPoint {
    double P_in = 0.0;  // W
    double transmission = 0.0;
    int n_roots = 0;
    Branch branch = Branch::low;
    double x_abs = 0.0;          // selected scaled amplitude |X|
    std::vector<double> roots;   // all |X| solving the scaled equation, ascending
};

struct SaturationCurve {
    std::vector<SaturationPoint> points;
    double n_sat = 0.0;
};

/// gamma_perp gamma_par / (4 g0^2)
inline double saturation_photon_number(double g0, const DerivedRates& r) {
    if (!(g0 > 0.0)) throw ValidationError("saturation photon number needs g0 > 0");
    return r.gamma_perp * r.gamma_par / (4.0 * g0 * g0);
}

namespace detail {

// (2/(1+A)) (1/x) [1 - ((1+A x)(1+x))^(-1/2)], rewritten without cancellation:
// 1 - p^(-1/2) = (p - 1) / (sqrt(p) (1 + sqrt(p))), p - 1 = x ((1+A) + A x).
inline double saturation_bracket(double A, double x) {
    const double p = (1.0 + A * x) * (1.0 + x);
    const double sp = std::sqrt(p);
    return (2.0 / (1.0 + A)) * ((1.0 + A) + A * x) / (sp * (1.0 + sp));
}

}  // namespace detail

/// Ensemble sum for a uniform axial and flat transverse distribution, without the
/// C_(0) prefactor. Tends to N_eff as X_abs2 -> 0.
inline double collective_saturation_term(double N_eff, double A_mf, double X_abs2) {
    if (!(X_abs2 >= 0.0)) throw ValidationError("|X|^2 must be >= 0");
    return N_eff * detail::saturation_bracket(A_mf, X_abs2);
}

inline const GaussHermiteRule& default_hermite_rule() {
    static const GaussHermiteRule rule = gauss_hermite(96);
    return rule;
}

/// Transverse profile factor s(x0, u) for a Gaussian cloud of width sigma_y along y.
inline double transverse_profile(double sigma_y_over_x0, double q_prime_x0, double u) {
    const double e2 = sigma_y_over_x0 * sigma_y_over_x0 * u * u;
    return std::exp(-2.0 * q_prime_x0 * (std::sqrt(1.0 + e2) - 1.0)) / std::pow(1.0 + e2, 1.5);
}

/// Same ensemble sum with the transverse average done by Gauss-Hermite quadrature.
/// Normalized by the average of s(x0,u) so the weak-field limit stays N_eff.
inline double quadrature_saturation_term(double N_eff, double A_mf, double sigma_y_over_x0,
                                         double q_prime_x0, double X_abs2,
                                         const GaussHermiteRule& rule = default_hermite_rule()) {
    if (!(sigma_y_over_x0 >= 0.0)) throw ValidationError("sigma_y/x0 must be >= 0");
    if (!(X_abs2 >= 0.0)) throw ValidationError("|X|^2 must be >= 0");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = transverse_profile(sigma_y_over_x0, q_prime_x0, rule.nodes[i]);
        // f(u)/|X|^2 = s * bracket(A, |X|^2 s)
        num += rule.weights[i] * s * detail::saturation_bracket(A_mf, X_abs2 * s);
        den += rule.weights[i] * s;
    }
    return N_eff * num / den;
}

/// Coefficients of the resonant scaled equation y = pre * |X| * (1 + K + C0 * S(|X|^2)).
struct ScaledEquation {
    int cavity = 1;
    double pre = 1.0;
    double K = 0.0;   // empty-cavity loading from the rest of the chain
    double C0 = 0.0;  // single-atom cooperativity at the trap minimum
    double n_sat = 0.0;
    double power_per_y2 = 0.0;  // P_in / y^2, W
};

inline ScaledEquation scaled_equation(const SaturationConfig& cfg, const DerivedRates& r) {
    if (cfg.which_cavity != 1 && cfg.which_cavity != 2)
        throw ValidationError("saturation cavity must be 1 or 2");
    if (!(r.v1 > 0.0 && r.v2 > 0.0)) throw ValidationError("saturation model needs v1, v2 > 0");
    ScaledEquation eq;
    eq.cavity = cfg.which_cavity;
    eq.n_sat = saturation_photon_number(cfg.g0, r);
    const double V1 = r.v1 * r.v1 / (r.kappa_b * r.kappa_1p);
    const double V2 = r.v2 * r.v2 / (r.kappa_b * r.kappa_2p);
    if (cfg.which_cavity == 1) {
        eq.pre = 1.0;
        eq.K = V1 / (1.0 + V2);
        eq.C0 = cfg.g0 * cfg.g0 / (r.kappa_1p * r.gamma_perp);
    } else {
        const double tail = 1.0 + r.kappa_b * r.kappa_1p / (r.v1 * r.v1);
        eq.pre = (r.v1 * r.kappa_2p) / (r.v2 * r.kappa_1p) * tail;
        eq.K = (r.v2 * r.v2 * r.kappa_1p) / (r.v1 * r.v1 * r.kappa_2p) / tail;
        eq.C0 = cfg.g0 * cfg.g0 / (r.kappa_2p * r.gamma_perp);
    }
    const double photon_energy = kTwoPi * kHbar * kSpeedOfLight / cfg.lambda_probe;
    eq.power_per_y2 = photon_energy * (r.kappa_1p * r.kappa_1p / (2.0 * r.kappa_1l)) * eq.n_sat;
    return eq;
}

inline double ensemble_term(const SaturationConfig& cfg, double X_abs2) {
    return cfg.model == SaturationModel::closed_form
               ? collective_saturation_term(cfg.N_eff, cfg.A_mf, X_abs2)
               : quadrature_saturation_term(cfg.N_eff, cfg.A_mf, cfg.sigma_y_over_x0,
                                            cfg.q_prime_x0, X_abs2);
}

/// Right-hand side G(|X|) of the scaled equation.
inline double scaled_drive(const ScaledEquation& eq, const SaturationConfig& cfg, double x) {
    return eq.pre * x * (1.0 + eq.K + eq.C0 * ensemble_term(cfg, x * x));
}

/// Normalized transmission written directly in the scaled variables.
inline double scaled_transmission(const ScaledEquation& eq, const DerivedRates& r, double y, double x) {
    const double V1 = r.v1 * r.v1 / (r.kappa_b * r.kappa_1p);
    const double V2 = r.v2 * r.v2 / (r.kappa_b * r.kappa_2p);
    const double total = 1.0 + V1 + V2;
    if (eq.cavity == 1) return total * total * x * x / (y * y * (1.0 + V2) * (1.0 + V2));
    const double hop = r.v1 * r.v2 / (r.kappa_b * r.kappa_2p);
    return (total / hop) * (total / hop) * x * x / (y * y);
}

namespace detail {

inline double bisect_root(const ScaledEquation& eq, const SaturationConfig& cfg, double y, double lo,
                          double hi) {
    double glo = scaled_drive(eq, cfg, lo) - y;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = scaled_drive(eq, cfg, mid) - y;
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

inline void validate(const SaturationConfig& cfg) {
    if (cfg.which_cavity != 1 && cfg.which_cavity != 2)
        throw ValidationError("saturation cavity must be 1 or 2");
    if (!(cfg.g0 > 0.0)) throw ValidationError("g0 must be > 0");
    if (!(cfg.N_eff > 0.0)) throw ValidationError("N_eff must be > 0");
    if (!(cfg.A_mf >= 0.0 && cfg.A_mf <= 1.0)) throw ValidationError("A_mf must lie in [0, 1]");
    require_increasing(cfg.power_grid, "power grid");
    if (!(cfg.power_grid.front() > 0.0)) throw ValidationError("input powers must be > 0");
    if (!(cfg.lambda_probe > 0.0)) throw ValidationError("probe wavelength must be > 0");
}

/// Normalized on-resonance transmission versus input power for atoms in one cavity.
/// Points are solved in grid order; the low branch is followed while it exists.
inline SaturationCurve solve_saturation(const SaturationConfig& cfg, const DerivedRates& r) {
    validate(cfg);
    const ScaledEquation eq = scaled_equation(cfg, r);
    const double root_n = std::sqrt(eq.n_sat);

    constexpr int scan_points = 400;
    std::vector<double> xs(scan_points), gs(scan_points);
    const double x_lo = 1e-4 * root_n, x_hi = 1e3 * root_n;
    for (int i = 0; i < scan_points; ++i) {
        xs[i] = x_lo * std::pow(x_hi / x_lo, static_cast<double>(i) / (scan_points - 1));
        gs[i] = scaled_drive(eq, cfg, xs[i]);
    }
    // Folds of G bound the low and high branches.
    double fold_max = xs.back(), fold_min = xs.front();
    bool folded = false;
    for (int i = 1; i + 1 < scan_points; ++i) {
        if (gs[i] > gs[i - 1] && gs[i] >= gs[i + 1] && !folded) {
            fold_max = xs[i];
            folded = true;
        }
        if (gs[i] < gs[i - 1] && gs[i] <= gs[i + 1]) fold_min = xs[i];
    }

    SaturationCurve curve;
    curve.n_sat = eq.n_sat;
    for (double P : cfg.power_grid) {
        const double y = std::sqrt(P / eq.power_per_y2);
        SaturationPoint pt;
        pt.P_in = P;

        if (y < gs.front()) {
            // Below the scan: G is linear near 0, extend the bracket downward.
            double lo = xs.front();
            int guard = 0;
            while (scaled_drive(eq, cfg, lo) > y && guard++ < 700) lo *= 0.1;
            if (guard >= 700) throw NumericError("saturation: could not bracket small root");
            pt.roots.push_back(detail::bisect_root(eq, cfg, y, lo, xs.front()));
        }
        for (int i = 0; i + 1 < scan_points; ++i) {
            const double a = gs[i] - y, b = gs[i + 1] - y;
            if (a == 0.0) pt.roots.push_back(xs[i]);
            else if ((a < 0.0) != (b < 0.0) && b != 0.0)
                pt.roots.push_back(detail::bisect_root(eq, cfg, y, xs[i], xs[i + 1]));
        }
        if (gs.back() == y) pt.roots.push_back(xs.back());
        if (pt.roots.empty())
            throw NumericError("saturation: no root below |X| = 1e3 sqrt(n_sat) at P_in = " +
                               std::to_string(to_pw(P)) + " pW");
        pt.n_roots = static_cast<int>(pt.roots.size());

        auto branch_of = [&](double x) {
            if (!folded || x < fold_max) return Branch::low;
            if (x > fold_min) return Branch::high;
            return Branch::middle;
        };
        if (branch_of(pt.roots.front()) == Branch::low) {
            pt.x_abs = pt.roots.front();
        } else {
            pt.x_abs = pt.roots.back();
        }
        pt.branch = branch_of(pt.x_abs);

        // |a2 / a2_0|^2 with a2_0 from the linear model at the same drive.
        const double drive = y * r.kappa_1p * root_n;
        const double a2_empty = std::abs(steady_state(r, ProbeSettings{0.0, 0.0, drive}, 0.0, 0.0).a2);
        double a2 = pt.x_abs * root_n;
        if (eq.cavity == 1) {
            const double V2 = r.v2 * r.v2 / (r.kappa_b * r.kappa_2p);
            a2 *= r.v1 * r.v2 / (r.kappa_2p * r.kappa_b) / (1.0 + V2);
        }
        pt.transmission = (a2 / a2_empty) * (a2 / a2_empty);
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

/// Geometric power grid, W.
inline std::vector<double> log_power_grid(double p_min, double p_max, std::size_t points) {
    if (!(p_min > 0.0 && p_max > p_min) || points < 2)
        throw ValidationError("power grid needs 0 < p_min < p_max and >= 2 points");
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i)
        out[i] = p_min * std::pow(p_max / p_min, static_cast<double>(i) / (points - 1));
    out.back() = p_max;
    return out;
}

}  // namespace ccqed
