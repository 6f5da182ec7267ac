#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rbswipt/config.hpp"
#include "rbswipt/link.hpp"

using namespace rbswipt;
using namespace rbswipt::config;

TEST(Quantity, UnitsToSi) {
    EXPECT_EQ(parse_quantity("3 cm", Dimension::length), 0.03);
    EXPECT_EQ(parse_quantity("3.015 cm", Dimension::length), 0.03015);
    EXPECT_EQ(parse_quantity("0.4 mm", Dimension::length), 0.4e-3);
    EXPECT_EQ(parse_quantity("1064 nm", Dimension::length), 1064e-9);
    EXPECT_EQ(parse_quantity("4.7 pm/V", Dimension::nonlinear), 4.7e-12);
    EXPECT_EQ(parse_quantity("91.5 %", Dimension::dimensionless), 0.915);
    EXPECT_EQ(parse_quantity("91.5%", Dimension::dimensionless), 0.915);
    EXPECT_EQ(parse_quantity("800 MHz", Dimension::frequency), 800e6);
    EXPECT_EQ(parse_quantity("10 kOhm", Dimension::resistance), 10e3);
    EXPECT_EQ(parse_quantity("37 mOhm", Dimension::resistance), 0.037);
    EXPECT_EQ(parse_quantity("5100 uA", Dimension::current), 5100e-6);
    EXPECT_EQ(parse_quantity("0.32 \xC2\xB5" "A", Dimension::current), 0.32e-6);
    EXPECT_EQ(parse_quantity("53.82 \xCE\xA9", Dimension::resistance), 53.82);
    EXPECT_EQ(parse_quantity("0.16 mm^2", Dimension::area), 0.16e-6);
    EXPECT_EQ(parse_quantity("1.1976e7 W/m^2", Dimension::intensity), 1.1976e7);
    EXPECT_EQ(parse_quantity("1197.6 W/cm^2", Dimension::intensity), 1.1976e7);
    EXPECT_EQ(parse_quantity("1e-4 1/m", Dimension::attenuation), 1e-4);
    EXPECT_EQ(parse_quantity("1e-4 m^-1", Dimension::attenuation), 1e-4);
    EXPECT_EQ(parse_quantity("30 deg", Dimension::angle), 30.0 * (kPi / 180.0));
    EXPECT_EQ(parse_quantity("-2.5e-3", Dimension::length), -2.5e-3);
    EXPECT_EQ(parse_quantity("6", Dimension::length), 6.0);
    EXPECT_EQ(parse_quantity("1.5e3 mm", Dimension::length), 1.5);
}

TEST(Quantity, Errors) {
    EXPECT_THROW(parse_quantity("", Dimension::length), ConfigError);
    EXPECT_THROW(parse_quantity("abc", Dimension::length), ConfigError);
    EXPECT_THROW(parse_quantity("3 furlong", Dimension::length), ConfigError);
    EXPECT_THROW(parse_quantity("3 W", Dimension::length), ConfigError);
    EXPECT_THROW(parse_quantity("3 cm", Dimension::dimensionless), ConfigError);
    EXPECT_THROW(parse_quantity("1e999", Dimension::length), ConfigError);
}

TEST(Parse, AssignmentsAndComments) {
    const auto p = parse_string(
        "# comment\n"
        "\n"
        "d = 4.5 m   # trailing\n"
        "  P_in=80 W\n"
        "l_s = 0.8 mm\n"
        "T = 300 K\n");
    EXPECT_EQ(p.geometry.d, 4.5);
    EXPECT_EQ(p.P_in, 80.0);
    EXPECT_EQ(p.shg.l_s, 0.8e-3);
    EXPECT_EQ(p.noise.T, 300.0);
    EXPECT_EQ(p.pv.T, 300.0);
}

TEST(Parse, SharedKeysStayInSync) {
    const auto p = parse_string("a_g = 3 mm\nlambda = 1030 nm\n");
    EXPECT_EQ(p.gain.a_g, 3e-3);
    EXPECT_EQ(p.safety.a_g, 3e-3);
    EXPECT_EQ(p.gain.lambda, 1030e-9);
    EXPECT_EQ(p.safety.lambda, 1030e-9);
}

TEST(Parse, SeparateTemperatures) {
    const auto p = parse_string("T_PV = 310 K\nT_PD = 290 K\n");
    EXPECT_EQ(p.pv.T, 310.0);
    EXPECT_EQ(p.noise.T, 290.0);
}

TEST(Parse, DiffractionAndCapture) {
    auto p = parse_string("Gamma_diff = 0.98\nGamma_PD = 1\n");
    EXPECT_EQ(p.loss.Gamma_diff.model, resonator::DiffractionModel::constant);
    EXPECT_EQ(p.loss.Gamma_diff.value, 0.98);
    EXPECT_FALSE(p.Gamma_PD.use_concentrator);
    EXPECT_EQ(p.Gamma_PD.value, 1.0);

    p = parse_string("Gamma_diff = model:receiver_pupil\nGamma_PD = concentrator\n");
    EXPECT_EQ(p.loss.Gamma_diff.model, resonator::DiffractionModel::receiver_pupil);
    EXPECT_TRUE(p.Gamma_PD.use_concentrator);

    EXPECT_THROW(parse_string("Gamma_diff = model:fresnel\n"), ConfigError);
    EXPECT_THROW(parse_string("Gamma_PD = lots\n"), ConfigError);
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse_string("warp = 9\n"), ConfigError);
    EXPECT_THROW(parse_string("d 6 m\n"), ConfigError);
    EXPECT_THROW(parse_string("d = six\n"), ConfigError);
    EXPECT_THROW(parse_string("f = 3 A\n"), ConfigError);
    try {
        parse_string("d = 6 m\nR_M2 = 3 cm\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("R_M2"), std::string::npos);
    }
}

TEST(Parse, OutOfRangeValuesFailValidation) {
    EXPECT_THROW(parse_string("R_M2 = 120 %\n").validate(), ConfigError);
    EXPECT_THROW(parse_string("f = -3 cm\n").validate(), ConfigError);
    EXPECT_THROW(parse_string("Gamma_PD = 0\n").validate(), ConfigError);
    EXPECT_THROW(evaluate_link(parse_string("eta_c = 2\n")), ConfigError);
}

TEST(Parse, MpeTablePath) {
    const auto dir = std::filesystem::temp_directory_path() / "rbswipt_cfg_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "mpe.txt") << "1000 700\n1100 900\n";
        std::ofstream(dir / "c.cfg") << "mpe_table = mpe.txt\n";
    }
    const auto p = load((dir / "c.cfg").string());
    ASSERT_TRUE(p.safety.mpe_table.has_value());
    EXPECT_NEAR(safety::mpe(p.safety), 828.0, 1e-9);
    EXPECT_THROW(parse_string("mpe_table = /nonexistent/mpe.txt\n"), ConfigError);
    EXPECT_THROW(load((dir / "missing.cfg").string()), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST(Defaults, TextReproducesBuiltInDefaultsExactly) {
    const SystemParams a;
    const SystemParams b = parse_string(defaults_text());
    EXPECT_EQ(a.geometry.f, b.geometry.f);
    EXPECT_EQ(a.geometry.l, b.geometry.l);
    EXPECT_EQ(a.geometry.d, b.geometry.d);
    EXPECT_EQ(a.P_in, b.P_in);
    EXPECT_EQ(a.gain.I_s, b.gain.I_s);
    EXPECT_EQ(a.gain.a_g, b.gain.a_g);
    EXPECT_EQ(a.gain.l_g, b.gain.l_g);
    EXPECT_EQ(a.gain.eta_c, b.gain.eta_c);
    EXPECT_EQ(a.gain.Gamma_g, b.gain.Gamma_g);
    EXPECT_EQ(a.gain.lambda, b.gain.lambda);
    EXPECT_EQ(a.shg.d_eff, b.shg.d_eff);
    EXPECT_EQ(a.shg.l_s, b.shg.l_s);
    EXPECT_EQ(a.shg.n0, b.shg.n0);
    EXPECT_EQ(a.shg.Gamma_SHG, b.shg.Gamma_SHG);
    EXPECT_EQ(a.loss.Gamma_L1, b.loss.Gamma_L1);
    EXPECT_EQ(a.loss.Gamma_L2, b.loss.Gamma_L2);
    EXPECT_EQ(a.loss.R_M1, b.loss.R_M1);
    EXPECT_EQ(a.loss.R_M2, b.loss.R_M2);
    EXPECT_EQ(a.loss.alpha_air, b.loss.alpha_air);
    EXPECT_EQ(a.loss.Gamma_diff.model, b.loss.Gamma_diff.model);
    EXPECT_EQ(a.coatings.Gamma_L3, b.coatings.Gamma_L3);
    EXPECT_EQ(a.coatings.Gamma_L4, b.coatings.Gamma_L4);
    EXPECT_EQ(a.coatings.Gamma_g_EOM, b.coatings.Gamma_g_EOM);
    EXPECT_EQ(a.coatings.Gamma_M2_2nu, b.coatings.Gamma_M2_2nu);
    EXPECT_EQ(a.coatings.Gamma_M5_nu, b.coatings.Gamma_M5_nu);
    EXPECT_EQ(a.coatings.R_M5_2nu, b.coatings.R_M5_2nu);
    EXPECT_EQ(a.coatings.Gamma_PV, b.coatings.Gamma_PV);
    EXPECT_EQ(a.concentrator.A_PD, b.concentrator.A_PD);
    EXPECT_EQ(a.concentrator.Psi_c, b.concentrator.Psi_c);
    EXPECT_EQ(a.concentrator.n_c, b.concentrator.n_c);
    EXPECT_EQ(a.concentrator.T_s, b.concentrator.T_s);
    EXPECT_EQ(a.concentrator.psi, b.concentrator.psi);
    EXPECT_EQ(a.Gamma_PD.use_concentrator, b.Gamma_PD.use_concentrator);
    EXPECT_EQ(a.noise.B, b.noise.B);
    EXPECT_EQ(a.noise.T, b.noise.T);
    EXPECT_EQ(a.noise.R_IL, b.noise.R_IL);
    EXPECT_EQ(a.noise.I_bk, b.noise.I_bk);
    EXPECT_EQ(a.noise.gamma, b.noise.gamma);
    EXPECT_EQ(a.pv.rho, b.pv.rho);
    EXPECT_EQ(a.pv.I0, b.pv.I0);
    EXPECT_EQ(a.pv.R_sh, b.pv.R_sh);
    EXPECT_EQ(a.pv.R_s, b.pv.R_s);
    EXPECT_EQ(a.pv.n, b.pv.n);
    EXPECT_EQ(a.pv.n_s, b.pv.n_s);
    EXPECT_EQ(a.pv.T, b.pv.T);
    EXPECT_EQ(a.safety.eta_P, b.safety.eta_P);
    EXPECT_EQ(a.safety.eta_t, b.safety.eta_t);
    EXPECT_EQ(a.safety.eta_a, b.safety.eta_a);
    EXPECT_EQ(a.safety.d_e, b.safety.d_e);
    EXPECT_EQ(a.safety.a_g, b.safety.a_g);
    EXPECT_EQ(a.safety.lambda, b.safety.lambda);
    EXPECT_EQ(a.safety.exposure_time, b.safety.exposure_time);
}

TEST(Defaults, EveryKeyAppears) {
    const std::string text = defaults_text();
    for (const auto& [key, info] : key_table()) {
        if (key == "T_PD" || key == "T_PV") continue;  // covered by T
        EXPECT_NE(text.find("\n" + key + " = "), std::string::npos) << key;
    }
}
