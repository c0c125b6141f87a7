#include <gtest/gtest.h>

#include "support.hpp"

using namespace ccqed;
using ccqed::test::mhz;

TEST(Config, EmptyTextGivesDefaults) {
    const auto cfg = parse_config("");
    EXPECT_EQ(cfg, RunConfig{});
    EXPECT_DOUBLE_EQ(cfg.physical.Lf, 1.23);
    EXPECT_NEAR(mhz(cfg.physical.g1_eff), 7.2, 1e-12);
    EXPECT_NEAR(mhz(cfg.physical.g2_eff), 7.3, 1e-12);
    EXPECT_NEAR(mhz(cfg.physical.g1_0), 0.75, 1e-12);
    EXPECT_NEAR(mhz(cfg.physical.g2_0), 1.2, 1e-12);
    EXPECT_DOUBLE_EQ(cfg.mode.constants.A_mf, 0.17);
    EXPECT_EQ(cfg.probe.points, 601u);
}

TEST(Config, FiberLengthOverrideChangesCoupling) {
    const auto cfg = parse_config("[physical]\nLf = 2.27\n");
    EXPECT_NEAR(mhz(derive_rates(cfg.physical).v1), 7.10, 0.005);
}

TEST(Config, RangeValidation) {
    EXPECT_THROW(parse_config("[physical]\nT1 = 1.5\n"), ConfigError);
    EXPECT_THROW(parse_config("[physical]\nLf = -1\n"), ConfigError);
    EXPECT_THROW(parse_config("[probe]\nmin_MHz = 5\nmax_MHz = -5\n"), ConfigError);
    EXPECT_THROW(parse_config("[saturation]\ncavity = 3\n"), ConfigError);
    EXPECT_THROW(parse_config("[mode]\nA = 1.2\n"), ConfigError);
}

TEST(Config, UnknownKeyReportsLine) {
    try {
        parse_config("# comment\n[physical]\n\nT1 = 0.1\nT5 = 0.2\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 5);
        EXPECT_NE(std::string(e.what()).find("T5"), std::string::npos);
    }
}

TEST(Config, SyntaxErrors) {
    auto line_of = [](const char* text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.line();
        }
        return -1;
    };
    EXPECT_EQ(line_of("[oops]\n"), 1);
    EXPECT_EQ(line_of("[physical\n"), 1);
    EXPECT_EQ(line_of("T1 = 0.1\n"), 1);
    EXPECT_EQ(line_of("[physical]\nT1 0.1\n"), 2);
    EXPECT_EQ(line_of("[physical]\nT1 = abc\n"), 2);
    EXPECT_EQ(line_of("[probe]\npoints = -3\n"), 2);
    EXPECT_EQ(line_of("[atoms]\n\nloading = sideways\n"), 3);
}

TEST(Config, CommentsAndWhitespace) {
    const auto cfg = parse_config("  [physical]   # fiber\n\tLf =   2.0  # m\r\n");
    EXPECT_DOUBLE_EQ(cfg.physical.Lf, 2.0);
}

TEST(Config, RatesAreReadInMegahertz) {
    const auto cfg = parse_config("[physical]\ngamma_las = 0.5\ng1_eff = 3\n");
    EXPECT_DOUBLE_EQ(cfg.physical.gamma_las, from_mhz(0.5));
    EXPECT_DOUBLE_EQ(cfg.physical.g1_eff, from_mhz(3.0));
}

TEST(Config, RoundTripDefaults) {
    const RunConfig cfg;
    EXPECT_EQ(parse_config(serialize_config(cfg)), cfg);
}

TEST(Config, RoundTripRandomConfigurations) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::uniform_real_distribution<double> pos(0.1, 20.0);
    for (int k = 0; k < 200; ++k) {
        RunConfig cfg;
        cfg.physical.T1 = u(rng);
        cfg.physical.T4 = u(rng);
        cfg.physical.Lf = pos(rng);
        cfg.physical.alphaf = 0.1 * u(rng);
        cfg.physical.gamma_las = from_mhz(pos(rng) / 10.0);
        cfg.physical.g1_eff = from_mhz(pos(rng));
        cfg.physical.g2_0 = from_mhz(pos(rng) / 7.0);
        cfg.lf_report = {pos(rng), pos(rng)};
        cfg.probe.min_mhz = -pos(rng);
        cfg.probe.max_mhz = pos(rng);
        cfg.probe.points = 2 + k;
        cfg.probe.delta_c_offset_mhz = pos(rng) - 10.0;
        cfg.atoms.loading = static_cast<AtomLoading>(k % 4);
        cfg.atoms.g_band_mhz = u(rng);
        cfg.saturation.cavity = 1 + k % 2;
        cfg.saturation.n_eff = k % 3 ? 0.0 : pos(rng) * 10.0;
        cfg.saturation.model = k % 2 ? SaturationModel::quadrature : SaturationModel::closed_form;
        cfg.saturation.sigma_y_over_x0 = u(rng);
        cfg.mode.constants.A_mf = u(rng);
        cfg.mode.constants.qprime_over_q = pos(rng) / 5.0;
        cfg.mode.profile_phi_max = u(rng);
        cfg.output.svg = k % 2 == 0;
        cfg.output.directory = k % 5 ? "" : "out dir/" + std::to_string(k);
        const auto text = serialize_config(cfg);
        ASSERT_EQ(parse_config(text), cfg) << text;
    }
}

TEST(Config, AtomLoadingSelectsCouplings) {
    const PhysicalConfig p;
    EXPECT_EQ(atom_couplings(p, AtomLoading::none), std::make_pair(0.0, 0.0));
    EXPECT_EQ(atom_couplings(p, AtomLoading::cavity1), std::make_pair(p.g1_eff, 0.0));
    EXPECT_EQ(atom_couplings(p, AtomLoading::cavity2), std::make_pair(0.0, p.g2_eff));
    EXPECT_EQ(atom_couplings(p, AtomLoading::both), std::make_pair(p.g1_eff, p.g2_eff));
    const auto shifted = atom_couplings(p, AtomLoading::both, -from_mhz(100));
    EXPECT_EQ(shifted, std::make_pair(0.0, 0.0));
    for (auto a : {AtomLoading::none, AtomLoading::cavity1, AtomLoading::cavity2, AtomLoading::both})
        EXPECT_EQ(parse_loading(to_string(a)), a);
}

TEST(Config, SaturationSectionDerivesAtomNumber) {
    const auto cfg = parse_config("[saturation]\ncavity = 2\n");
    const auto s = saturation_config(cfg);
    EXPECT_EQ(s.which_cavity, 2);
    EXPECT_NEAR(s.N_eff, 37.0, 1.0);
    const auto fixed = saturation_config(parse_config("[saturation]\nN_eff = 50\n"));
    EXPECT_DOUBLE_EQ(fixed.N_eff, 50.0);
}

TEST(Config, OutputFormats) {
    EXPECT_TRUE(parse_config("[output]\nformats = csv, svg\n").output.svg);
    EXPECT_FALSE(parse_config("[output]\nformats = csv\n").output.svg);
    EXPECT_THROW(parse_config("[output]\nformats = png\n"), ConfigError);
}
