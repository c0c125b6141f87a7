#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ccqed/bessel.hpp"
#include "ccqed/config.hpp"
#include "ccqed/fiber_mode.hpp"
#include "ccqed/linear_response.hpp"
#include "ccqed/normal_modes.hpp"
#include "ccqed/oracle.hpp"
#include "ccqed/saturation.hpp"

namespace ccqed {

struct CheckResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Oracle cross-checks on the configuration's rates.
class Validator {
  public:
    explicit Validator(RunConfig cfg) : cfg_(std::move(cfg)), rates_(derive_rates(cfg_.physical)) {}

    /// Closed-form amplitudes against the dense 5x5 solve, `draws` random parameter
    /// sets with rates within x/÷10 of the configured ones and |Delta| <= 2pi x 50 MHz.
    double random_linear_response(int draws, std::uint64_t seed = 20240601) const {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> log_scale(std::log(0.1), std::log(10.0));
        std::uniform_real_distribution<double> detuning(-from_mhz(50.0), from_mhz(50.0));
        auto scaled = [&](double x) { return x * std::exp(log_scale(rng)); };
        double worst = 0.0;
        for (int k = 0; k < draws; ++k) {
            DerivedRates r = rates_;
            r.kappa_1p = scaled(rates_.kappa_1p);
            r.kappa_2p = scaled(rates_.kappa_2p);
            r.kappa_b = scaled(rates_.kappa_b);
            r.v1 = scaled(rates_.v1);
            r.v2 = scaled(rates_.v2);
            r.gamma_perp = scaled(rates_.gamma_perp);
            const double g1 = scaled(cfg_.physical.g1_eff), g2 = scaled(cfg_.physical.g2_eff);
            const ProbeSettings p{detuning(rng), detuning(rng), 1.0};
            worst = std::max(worst, linear_mismatch(r, p, g1, g2));
        }
        return worst;
    }

    std::vector<CheckResult> run_all() const {
        std::vector<CheckResult> out;
        auto add = [&](std::string name, double err, double tol) {
            out.push_back({std::move(name), err, tol, err <= tol});
        };
        const auto [g1, g2] = atom_couplings(cfg_.physical, cfg_.atoms.loading);
        const auto grid = cfg_.probe.grid().values();
        const double offset = from_mhz(cfg_.probe.delta_c_offset_mhz);

        double grid_err = 0.0, resid = 0.0;
        for (double d : grid) {
            const ProbeSettings p{d + offset, d, 1.0};
            grid_err = std::max(grid_err, linear_mismatch(rates_, p, g1, g2));
            const auto sys = oracle::build_linear_system(rates_, p, g1, g2);
            const auto x = oracle::solve_dense(sys);
            resid = std::max(resid, oracle::residual_inf(sys, x) / oracle::norm_inf(sys.rhs));
        }
        add("linear response vs dense solve (configured grid)", grid_err, 1e-9);
        add("linear response vs dense solve (1000 random draws)", random_linear_response(1000), 1e-9);
        add("dense solve residual", resid, 1e-12);

        const auto modes = decompose(rates_, g1, g2);
        add("reduced model vs dense 3x3 solve", reduced_mismatch(modes, grid, offset), 1e-9);
        double ortho = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double dot = 0.0;
                for (int k = 0; k < 3; ++k) dot += modes.mode_vectors[k][i] * modes.mode_vectors[k][j];
                ortho = std::max(ortho, std::abs(dot - (i == j ? 1.0 : 0.0)));
            }
        add("normal-mode matrix orthogonality", ortho, 1e-12);

        const auto mp = mode_params(cfg_);
        double bessel_err = 0.0;
        for (double x : {1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 2.5, 5.0, 10.0, 30.0, mp.q * mp.a, mp.q * mp.r0})
            for (int n = 0; n <= 2; ++n) {
                const double ref = oracle::bessel_k_integral(n, x);
                bessel_err = std::max(bessel_err, std::abs(bessel_k(n, x) - ref) / ref);
            }
        add("Bessel K0/K1/K2 vs integral representation", bessel_err, 1e-7);

        double zavg_err = 0.0;
        for (double dr : {0.0, 100e-9, 250e-9}) {
            const double r = mp.r0 + dr;
            const double period = std::numbers::pi / mp.beta;
            const double avg = oracle::adaptive_quadrature(
                                   [&](double z) { return g_squared_exact(mp, r, 0.0, z); }, 0.0, period,
                                   1e-14 * period)
                                   .value /
                               period;
            const double analytic = 0.5 * g_squared_exact(mp, r, 0.0, 0.0) * (1.0 + quadrature_weight(mp, r));
            zavg_err = std::max(zavg_err, std::abs(avg - analytic) / analytic);
        }
        add("mode-function axial average vs quadrature", zavg_err, 1e-10);

        const auto sat = saturation_config(cfg_);
        double gh_flat = 0.0, gh_adapt = 0.0;
        const double sigma = sat.sigma_y_over_x0 > 0.0 ? sat.sigma_y_over_x0 : 0.3;
        for (double x2 : {0.0, 0.1, 1.0, 2.0, 10.0, 1e3}) {
            const double closed = collective_saturation_term(sat.N_eff, sat.A_mf, x2);
            gh_flat = std::max(gh_flat, std::abs(quadrature_saturation_term(sat.N_eff, sat.A_mf, 0.0,
                                                                            sat.q_prime_x0, x2) -
                                                 closed) /
                                            closed);
            gh_adapt = std::max(gh_adapt, std::abs(quadrature_saturation_term(sat.N_eff, sat.A_mf, sigma,
                                                                              sat.q_prime_x0, x2) -
                                                   adaptive_saturation_term(sat, sigma, x2)) /
                                              closed);
        }
        add("Gauss-Hermite vs closed-form saturation term (sigma=0)", gh_flat, 1e-10);
        add("Gauss-Hermite vs adaptive quadrature saturation term", gh_adapt, 1e-9);

        const auto curve = solve_saturation(sat, rates_);
        const auto eq = scaled_equation(sat, rates_);
        double sat_resid = 0.0, sat_route = 0.0;
        for (const auto& pt : curve.points) {
            const double y = std::sqrt(pt.P_in / eq.power_per_y2);
            for (double x : pt.roots) sat_resid = std::max(sat_resid, std::abs(y - scaled_drive(eq, sat, x)) / y);
            sat_route = std::max(sat_route,
                                 std::abs(pt.transmission - scaled_transmission(eq, rates_, y, pt.x_abs)));
        }
        add("saturation scaled-equation residual", sat_resid, 1e-10);
        add("saturation transmission: linear-model vs scaled-variable route", sat_route, 1e-9);
        return out;
    }

  private:
    static double linear_mismatch(const DerivedRates& r, const ProbeSettings& p, double g1, double g2) {
        const auto closed = steady_state(r, p, g1, g2);
        const auto dense = oracle::solve_linear_system(oracle::build_linear_system(r, p, g1, g2));
        return oracle::relative_difference(closed, dense);
    }

    double reduced_mismatch(const NormalModeSummary& m, const std::vector<double>& grid, double offset) const {
        const cplx i(0.0, 1.0);
        const double kd = m.kappa_d + rates_.gamma_las;
        double worst = 0.0;
        for (double d : grid) {
            const ProbeSettings p{d + offset, d, 1.0};
            oracle::DenseSystem<3> sys;
            sys.matrix[0] = {kd + i * p.delta_c, i * m.gd1, i * m.gd2};
            sys.matrix[1] = {i * m.gd1, rates_.gamma_perp + i * p.delta_a, 0.0};
            sys.matrix[2] = {i * m.gd2, 0.0, rates_.gamma_perp + i * p.delta_a};
            sys.rhs = {-i * rates_.v2 / m.splitting_bright, 0.0, 0.0};
            const cplx dense = oracle::solve_dense(sys)[0];
            const cplx closed = reduced_dark_amplitude(m, rates_, p);
            worst = std::max(worst, std::abs(closed - dense) / std::abs(dense));
        }
        return worst;
    }

    static double adaptive_saturation_term(const SaturationConfig& sat, double sigma, double x2) {
        auto weighted = [&](double u, bool numerator) {
            const double s = transverse_profile(sigma, sat.q_prime_x0, u);
            const double base = std::exp(-u * u) * s;
            if (!numerator) return base;
            const double p = (1.0 + sat.A_mf * x2 * s) * (1.0 + x2 * s);
            // f(u)/|X|^2 straight from its definition; analytic limit at 0.
            const double f_over_x2 = x2 > 0.0 ? (1.0 - 1.0 / std::sqrt(p)) / x2
                                               : 0.5 * (1.0 + sat.A_mf) * s;
            return std::exp(-u * u) * f_over_x2;
        };
        const double num = oracle::adaptive_quadrature([&](double u) { return weighted(u, true); }, -9.0, 9.0, 1e-13).value;
        const double den = oracle::adaptive_quadrature([&](double u) { return weighted(u, false); }, -9.0, 9.0, 1e-13).value;
        return sat.N_eff * (2.0 / (1.0 + sat.A_mf)) * num / den;
    }

    RunConfig cfg_;
    DerivedRates rates_;
};

inline std::vector<CheckResult> run_validation(const RunConfig& cfg) { return Validator(cfg).run_all(); }

}  // namespace ccqed
