#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>

#include "support.hpp"

using namespace ccqed;

namespace {

ModeFunctionParams default_mode() { return make_mode_params(ModeConstants{}); }

}  // namespace

TEST(FiberMode, DispersionIdentities) {
    const auto p = default_mode();
    EXPECT_NEAR((p.q * p.q + p.n2 * p.n2 * p.k * p.k) / (p.beta * p.beta), 1.0, 1e-9);
    EXPECT_NEAR((p.h * p.h + p.beta * p.beta) / (p.n1 * p.n1 * p.k * p.k), 1.0, 1e-9);
    EXPECT_DOUBLE_EQ(p.A_mf + p.B_mf, 1.0);
    EXPECT_GT(p.r0, p.a);
}

TEST(FiberMode, EvanescentDecayConstant) { EXPECT_NEAR(default_mode().q / 2.77e6, 1.0, 0.01); }

TEST(FiberMode, ExactProfileNormalization) { EXPECT_DOUBLE_EQ(g_squared_exact(default_mode(), 400e-9, 0, 0), 1.0); }

TEST(FiberMode, ExactProfileAtRightAngleMatchesLongDoubleEvaluation) {
    const auto p = default_mode();
    using ld = long double;
    auto raw = [&](ld r, ld phi) {
        const ld x = static_cast<ld>(p.q) * r;
        const ld k0 = boost::math::cyl_bessel_k(0, x), k2 = boost::math::cyl_bessel_k(2, x);
        const ld s = p.s, pre = static_cast<ld>(p.beta) / (2 * static_cast<ld>(p.q));
        const ld rad = (1 - s) * k0 + (1 + s) * k2 * std::cos(2 * phi);
        const ld az = (1 + s) * k2 * std::sin(2 * phi);
        return pre * pre * (rad * rad + az * az);
    };
    const ld phi = std::numbers::pi_v<long double> / 2;
    const double expected = static_cast<double>(raw(p.r0, phi) / raw(p.r0, 0));
    EXPECT_NEAR(g_squared_exact(p, p.r0, std::numbers::pi / 2, 0.0) / expected, 1.0, 1e-12);
}

TEST(FiberMode, ExactAxialAverageMatchesQuadrature) {
    const auto p = default_mode();
    const double period = std::numbers::pi / p.beta;
    for (double r : {p.r0, p.r0 + 150e-9}) {
        const double avg =
            oracle::adaptive_quadrature([&](double z) { return g_squared_exact(p, r, 0.0, z); }, 0.0, period,
                                        1e-13 * period)
                .value /
            period;
        EXPECT_NEAR(avg / (0.5 * g_squared_exact(p, r, 0, 0) * (1.0 + quadrature_weight(p, r))), 1.0, 1e-10);
    }
}

TEST(FiberMode, SimplifiedProfileSpecialPoints) {
    const auto p = default_mode();
    EXPECT_DOUBLE_EQ(g_squared_simplified(p, p.r0, 0, 0), 1.0);
    EXPECT_NEAR(g_squared_simplified(p, p.r0, 0, std::numbers::pi / (2 * p.beta)), 0.17, 1e-12);
    const double r = p.r0 + 1.0 / (2.0 * p.qprime);
    EXPECT_NEAR(g_squared_simplified(p, r, 0, 0), std::exp(-1.0) * p.r0 / r, 1e-14);
}

TEST(FiberMode, BothFormsAreEvenInAzimuthAndAxiallyPeriodic) {
    const auto p = default_mode();
    const double period = std::numbers::pi / p.beta;
    for (double r : {p.r0, p.r0 + 80e-9, p.r0 + 270e-9})
        for (double phi : {0.1, 0.6, 1.3})
            for (double z : {0.0, 0.3 * period, 0.77 * period}) {
                for (auto* f : {&g_squared_exact, &g_squared_simplified}) {
                    const double v = f(p, r, phi, z);
                    EXPECT_NEAR(f(p, r, -phi, z), v, 1e-12 * v);
                    EXPECT_NEAR(f(p, r, phi, z + period), v, 1e-12 * v);
                }
            }
}

TEST(FiberMode, ExactProfileDecreasesRadially) {
    const auto p = default_mode();
    double prev = 1e300;
    for (double r = p.a * 1.0001; r <= p.r0 + 500e-9; r += 5e-9) {
        const double v = g_squared_exact(p, r, 0.0, 0.0);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(FiberMode, FitIsConsistentAndBounded) {
    const auto p = default_mode();
    const auto fit = fit_simplified(p);
    EXPECT_GE(fit.A_mf, 0.0);
    EXPECT_LE(fit.A_mf, 1.0);
    EXPECT_DOUBLE_EQ(fit.A_mf + fit.B_mf, 1.0);
    EXPECT_GE(fit.qprime, 0.2 * p.q);
    EXPECT_LE(fit.qprime, 4.0 * p.q);
    EXPECT_GE(fit.max_rel_error, fit.rms_rel_error);
    EXPECT_NEAR(fit.A_mf, 0.17, 0.05);
    const auto again = fit_simplified(p);
    EXPECT_EQ(fit.qprime, again.qprime);
    EXPECT_EQ(fit.A_mf, again.A_mf);
}

TEST(FiberMode, DomainErrors) {
    const auto p = default_mode();
    EXPECT_THROW(g_squared_exact(p, p.a, 0, 0), ValidationError);
    EXPECT_THROW(g_squared_exact(p, 0.5 * p.a, 0, 0), ValidationError);
    ModeConstants c;
    c.r0 = c.radius;
    EXPECT_THROW(make_mode_params(c), ValidationError);
    c = {};
    c.A_mf = 1.5;
    EXPECT_THROW(make_mode_params(c), ValidationError);
    c = {};
    c.beta = 1.0;
    EXPECT_THROW(make_mode_params(c), ValidationError);
}
