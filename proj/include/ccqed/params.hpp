#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ccqed/error.hpp"
#include "ccqed/units.hpp"

namespace ccqed {

/// Raw experimental inputs of the two-cavity system. Rates in rad/s, lengths in m.
struct PhysicalConfig {
    double T1 = 0.13;  // mirror 1: probe input
    double T2 = 0.39;  // mirror 2: cavity 1 -> fiber
    double T3 = 0.33;  // mirror 3: fiber -> cavity 2
    double T4 = 0.06;  // mirror 4: output
    double L1 = 0.92;
    double L2 = 1.38;
    double Lf = 1.23;
    double alpha1 = 0.02;
    double alpha2 = 0.02;
    double alphaf = 0.02;
    double gamma_par = from_mhz(5.2);
    double gamma_las = from_mhz(0.365);
    double g1_eff = from_mhz(7.2);
    double g2_eff = from_mhz(7.3);
    double g1_0 = from_mhz(0.75);
    double g2_0 = from_mhz(1.2);
    double c_fiber = kSpeedOfLight / kFiberCoreIndex;
    double lambda_probe = 852.0e-9;

    bool operator==(const PhysicalConfig&) const = default;
};

/// Every rate of the model, in rad/s.
struct DerivedRates {
    double kappa_1l = 0, kappa_1r = 0, kappa_2l = 0, kappa_2r = 0;
    double kappa_1loss = 0, kappa_2loss = 0, kappa_bloss = 0;
    double kappa_1 = 0, kappa_2 = 0;
    // Dressed with the laser linewidth.
    double kappa_1p = 0, kappa_2p = 0, kappa_b = 0;
    double v1 = 0, v2 = 0;
    double gamma_perp = 0;
    double gamma_par = 0;
    double gamma_las = 0;
};

inline void validate(const PhysicalConfig& cfg) {
    auto show = [](double x) {
        std::ostringstream o;
        o << x;
        return o.str();
    };
    auto finite = [](const char* name, double x) {
        if (!std::isfinite(x)) throw ValidationError(std::string(name) + " is not finite");
    };
    auto open_unit = [&](const char* name, double t) {
        finite(name, t);
        if (!(t > 0.0 && t < 1.0))
            throw ValidationError(std::string(name) + " = " + show(t) +
                                  " must lie in (0, 1)");
    };
    auto loss = [&](const char* name, double a) {
        finite(name, a);
        if (!(a >= 0.0 && a < 1.0))
            throw ValidationError(std::string(name) + " = " + show(a) +
                                  " must lie in [0, 1)");
    };
    auto positive = [&](const char* name, double x) {
        finite(name, x);
        if (!(x > 0.0)) throw ValidationError(std::string(name) + " must be > 0");
    };
    auto nonneg = [&](const char* name, double x) {
        finite(name, x);
        if (!(x >= 0.0)) throw ValidationError(std::string(name) + " must be >= 0");
    };
    open_unit("T1", cfg.T1);
    open_unit("T2", cfg.T2);
    open_unit("T3", cfg.T3);
    open_unit("T4", cfg.T4);
    positive("L1", cfg.L1);
    positive("L2", cfg.L2);
    positive("Lf", cfg.Lf);
    loss("alpha1", cfg.alpha1);
    loss("alpha2", cfg.alpha2);
    loss("alphaf", cfg.alphaf);
    nonneg("gamma_par", cfg.gamma_par);
    nonneg("gamma_las", cfg.gamma_las);
    nonneg("g1_eff", cfg.g1_eff);
    nonneg("g2_eff", cfg.g2_eff);
    nonneg("g1_0", cfg.g1_0);
    nonneg("g2_0", cfg.g2_0);
    positive("c_fiber", cfg.c_fiber);
    positive("lambda_probe", cfg.lambda_probe);
}

namespace detail {

// Field decay through a mirror of transmittance t on a segment of length len.
inline double mirror_rate(double c, double t, double len) { return c * t / (4.0 * len); }

// Intrinsic decay from single-pass intensity loss alpha.
inline double loss_rate(double c, double alpha, double len) {
    return -0.5 * (c / len) * std::log1p(-alpha);
}

}  // namespace detail

inline DerivedRates derive_rates(const PhysicalConfig& cfg) {
    validate(cfg);
    const double c = cfg.c_fiber;
    DerivedRates r;
    r.kappa_1l = detail::mirror_rate(c, cfg.T1, cfg.L1);
    r.kappa_1r = detail::mirror_rate(c, cfg.T2, cfg.L1);
    r.kappa_2l = detail::mirror_rate(c, cfg.T3, cfg.L2);
    r.kappa_2r = detail::mirror_rate(c, cfg.T4, cfg.L2);
    r.kappa_1loss = detail::loss_rate(c, cfg.alpha1, cfg.L1);
    r.kappa_2loss = detail::loss_rate(c, cfg.alpha2, cfg.L2);
    r.kappa_bloss = detail::loss_rate(c, cfg.alphaf, cfg.Lf);
    r.kappa_1 = r.kappa_1l + r.kappa_1loss;
    r.kappa_2 = r.kappa_2r + r.kappa_2loss;
    r.kappa_1p = r.kappa_1 + cfg.gamma_las;
    r.kappa_2p = r.kappa_2 + cfg.gamma_las;
    r.kappa_b = r.kappa_bloss + cfg.gamma_las;
    r.v1 = 0.5 * c * std::sqrt(cfg.T2 / (cfg.L1 * cfg.Lf));
    r.v2 = 0.5 * c * std::sqrt(cfg.T3 / (cfg.L2 * cfg.Lf));
    r.gamma_par = cfg.gamma_par;
    r.gamma_las = cfg.gamma_las;
    r.gamma_perp = 0.5 * cfg.gamma_par + cfg.gamma_las;
    return r;
}

/// One line of the rate report. `lf` is 0 for rows that do not depend on the fiber length.
struct RateRow {
    std::string name;
    double lf = 0.0;
    double value = 0.0;  // rad/s
};

/// Rates in report order: the cavity rates, then
/// kappa_b_loss, v1 and v2 for each fiber length in `lf_values`, then the atomic rates.
inline std::vector<RateRow> rate_table(PhysicalConfig cfg, const std::vector<double>& lf_values) {
    const DerivedRates base = derive_rates(cfg);
    std::vector<RateRow> rows = {
        {"kappa_1l", 0.0, base.kappa_1l},   {"kappa_1loss", 0.0, base.kappa_1loss},
        {"kappa_1r", 0.0, base.kappa_1r},   {"kappa_2l", 0.0, base.kappa_2l},
        {"kappa_2loss", 0.0, base.kappa_2loss}, {"kappa_2r", 0.0, base.kappa_2r},
    };
    std::vector<DerivedRates> per_lf;
    for (double lf : lf_values) {
        cfg.Lf = lf;
        per_lf.push_back(derive_rates(cfg));
    }
    for (std::size_t i = 0; i < lf_values.size(); ++i)
        rows.push_back({"kappa_bloss", lf_values[i], per_lf[i].kappa_bloss});
    for (std::size_t i = 0; i < lf_values.size(); ++i)
        rows.push_back({"v1", lf_values[i], per_lf[i].v1});
    for (std::size_t i = 0; i < lf_values.size(); ++i)
        rows.push_back({"v2", lf_values[i], per_lf[i].v2});
    rows.push_back({"gamma_par", 0.0, base.gamma_par});
    rows.push_back({"gamma_las", 0.0, base.gamma_las});
    return rows;
}

}  // namespace ccqed
