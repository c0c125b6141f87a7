#include <gtest/gtest.h>

#include "support.hpp"

using namespace ccqed;
using ccqed::test::mhz;
using ccqed::test::default_rates;

namespace {

const double kG1 = from_mhz(7.2), kG2 = from_mhz(7.3);

SpectrumResult empty_spectrum(const DerivedRates& r, std::size_t points = 601) {
    return transmission_spectrum(r, 0.0, 0.0, 0.0, DetuningGrid{from_mhz(-30), from_mhz(30), points});
}

}  // namespace

TEST(LinearResponse, EmptyChainIsFiniteOnResonance) {
    const auto s = steady_state(default_rates(), ProbeSettings{0.0, 0.0, 1.0}, 0.0, 0.0);
    for (cplx v : {s.a1, s.a2, s.b}) EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
    EXPECT_GT(std::abs(s.a1), 0.0);
    EXPECT_EQ(s.s1, cplx(0.0));
    EXPECT_EQ(s.s2, cplx(0.0));
}

TEST(LinearResponse, EmptyChainSatisfiesEquationsOfMotion) {
    const auto r = default_rates();
    const ProbeSettings p{0.0, 0.0, 1.0};
    const auto s = steady_state(r, p, 0.0, 0.0);
    const auto sys = oracle::build_linear_system(r, p, 0.0, 0.0);
    EXPECT_LT(oracle::residual_inf(sys, {s.a1, s.a2, s.b, s.s1, s.s2}), 1e-10);
}

TEST(LinearResponse, AtomsSuppressResonantTransmission) {
    const auto r = default_rates();
    const double ref = reference_flux(r);
    const auto s = steady_state(r, ProbeSettings{0.0, 0.0, 1.0}, kG1, kG2);
    EXPECT_LT(normalized(output_flux(s, r), ref), 0.2);
}

TEST(LinearResponse, MatchesDenseSolveWithAtomsOffResonance) {
    const auto r = default_rates();
    const ProbeSettings p{from_mhz(5), from_mhz(5), 1.0};
    const auto closed = steady_state(r, p, kG1, kG2);
    const auto dense = oracle::solve_linear_system(oracle::build_linear_system(r, p, kG1, kG2));
    EXPECT_LT(oracle::relative_difference(closed, dense), 1e-12);
}

TEST(LinearResponse, MatchesDenseSolveForRandomDraws) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> det(from_mhz(-50), from_mhz(50));
    std::uniform_real_distribution<double> lg(-1.0, 1.0);
    const auto base = default_rates();
    double worst = 0.0;
    for (int k = 0; k < 300; ++k) {
        const auto r = test::random_rates(rng, base);
        const double g1 = kG1 * std::pow(10.0, lg(rng)), g2 = kG2 * std::pow(10.0, lg(rng));
        const ProbeSettings p{det(rng), det(rng), 1.0};
        const auto dense = oracle::solve_linear_system(oracle::build_linear_system(r, p, g1, g2));
        worst = std::max(worst, oracle::relative_difference(steady_state(r, p, g1, g2), dense));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(LinearResponse, OutputFluxFormula) {
    const auto r = default_rates();
    SteadyStateAmplitudes s{};
    EXPECT_EQ(output_flux(s, r), 0.0);
    s.a2 = 1.0;
    EXPECT_NEAR(output_flux(s, r), 2.0 * from_mhz(0.357), 1e-3 * from_mhz(0.357));
    EXPECT_DOUBLE_EQ(output_flux(s, r), 2.0 * r.kappa_2r);
}

TEST(LinearResponse, ReferenceFluxMatchesDenseSolve) {
    const auto r = default_rates();
    const ProbeSettings p{0.0, 0.0, 1.0};
    const auto dense = oracle::solve_linear_system(oracle::build_linear_system(r, p, 0.0, 0.0));
    EXPECT_NEAR(reference_flux(r) / output_flux(dense, r), 1.0, 1e-12);
}

TEST(LinearResponse, EmptyChainIsSelfNormalized) {
    const auto sp = transmission_spectrum(default_rates(), 0.0, 0.0, 0.0, std::vector<double>{0.0});
    EXPECT_DOUBLE_EQ(sp.transmission.at(0), 1.0);
    const auto full = empty_spectrum(default_rates());
    EXPECT_DOUBLE_EQ(full.transmission.at(300), 1.0);
}

TEST(LinearResponse, EmptySpectrumIsEvenInDetuning) {
    for (double lf : {0.83, 1.23, 2.27}) {
        const auto sp = empty_spectrum(default_rates(lf));
        const auto& t = sp.transmission;
        double worst = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, std::abs(t[i] - t[t.size() - 1 - i]));
        EXPECT_LT(worst, 1e-12);
    }
}

TEST(LinearResponse, TransmissionIndependentOfDriveStrength) {
    const auto r = default_rates();
    const double ref = reference_flux(r);
    for (double d : {-9.0, 0.0, 3.3, 12.0}) {
        const auto unit = steady_state(r, {from_mhz(d), from_mhz(d), 1.0}, kG1, kG2);
        const auto big = steady_state(r, {from_mhz(d), from_mhz(d), 1e4}, kG1, kG2);
        EXPECT_NEAR(normalized(output_flux(big, r), ref * 1e8), normalized(output_flux(unit, r), ref), 1e-12);
    }
}

TEST(LinearResponse, ZeroSecondCouplingBlocksTransmission) {
    auto r = default_rates();
    r.v2 = 0.0;
    const double ref = reference_flux(default_rates());
    for (double d : {-20.0, -5.0, 0.0, 7.0}) {
        const auto s = steady_state(r, {from_mhz(d), from_mhz(d), 1.0}, kG1, kG2);
        EXPECT_EQ(normalized(output_flux(s, r), ref), 0.0);
    }
}

TEST(LinearResponse, TransmissionIsNonNegative) {
    const auto sp = transmission_spectrum(default_rates(), kG1, kG2, from_mhz(1.5),
                                            DetuningGrid{from_mhz(-40), from_mhz(40), 801});
    for (double t : sp.transmission) EXPECT_GE(t, 0.0);
}

TEST(LinearResponse, EmptySpectrumHasBrightModeTriplet) {
    const auto r = default_rates();
    const auto peaks = peak_find(empty_spectrum(r));
    ASSERT_EQ(peaks.size(), 3u);
    EXPECT_NEAR(peaks[1].detuning, 0.0, 1e-3);
    EXPECT_NEAR(peaks[0].detuning, -peaks[2].detuning, 1e-3);
    const double bright = std::sqrt(r.v1 * r.v1 + r.v2 * r.v2);
    EXPECT_NEAR(mhz(peaks[2].detuning), mhz(bright), 0.2);
    EXPECT_NEAR(mhz(peaks[2].detuning), 12.1, 0.25);
}

TEST(LinearResponse, SpectrumPeaksMatchDenseSolveSpectrum) {
    const auto r = default_rates();
    const DetuningGrid grid{from_mhz(-30), from_mhz(30), 601};
    const auto closed = transmission_spectrum(r, kG1, kG2, 0.0, grid);
    SpectrumResult dense;
    dense.detunings = grid.values();
    const double ref = output_flux(
        oracle::solve_linear_system(oracle::build_linear_system(r, {0.0, 0.0, 1.0}, 0.0, 0.0)), r);
    for (double d : dense.detunings) {
        const auto s = oracle::solve_linear_system(oracle::build_linear_system(r, {d, d, 1.0}, kG1, kG2));
        dense.transmission.push_back(output_flux(s, r) / ref);
    }
    const auto a = peak_find(closed), b = peak_find(dense);
    ASSERT_EQ(a.size(), b.size());
    ASSERT_EQ(a.size(), 4u);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i].detuning, b[i].detuning, 1e-6);
}

TEST(LinearResponse, RejectsInvalidInputs) {
    const auto r = default_rates();
    EXPECT_THROW(steady_state(r, {0.0, 0.0, 1.0}, -1.0, 0.0), ValidationError);
    EXPECT_THROW(steady_state(r, {0.0, 0.0, -1.0}, 0.0, 0.0), ValidationError);
    EXPECT_THROW(transmission_spectrum(r, 0.0, 0.0, 0.0, std::vector<double>{1.0, 0.0}), ValidationError);
}

TEST(LinearResponse, SingularDenominatorIsReported) {
    DerivedRates r{};
    r.v1 = 1.0;
    r.v2 = 1.0;
    r.kappa_b = 1.0;
    r.gamma_perp = 1.0;
    EXPECT_THROW(steady_state(r, {0.0, 0.0, 1.0}, 0.0, 0.0), NumericError);
}

TEST(LinearResponse, ZeroReferenceGivesZeroTransmission) { EXPECT_EQ(normalized(3.0, 0.0), 0.0); }
