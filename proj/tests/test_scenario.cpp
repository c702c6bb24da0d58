#include <gtest/gtest.h>

#include <sstream>

#include "urdop/scenario.hpp"

using namespace urdop;

TEST(BuildConfig, DefaultsDeriveMBounds) {
    const auto cfg = build_config({{"K", "100"}, {"N", "20"}});
    EXPECT_EQ(cfg.M_min, 5);
    EXPECT_EQ(cfg.M_max, 100);
    EXPECT_DOUBLE_EQ(cfg.search_lo, -750.0);
    EXPECT_DOUBLE_EQ(cfg.search_hi, 750.0);
}

TEST(BuildConfig, ReferenceGainAtThreeE8) {
    // (4 pi 2e9 / 3e8)^-2, computed by hand.
    const auto cfg = build_config({{"c_light", "3e8"}, {"f_c", "2e9"}});
    EXPECT_NEAR(cfg.beta0 / 1.4248291449703749e-4, 1.0, 1e-12);
}

TEST(BuildConfig, NoisePowerFromDbm) {
    // 10^((-174 - 30) / 10) * 1e6 W
    const auto cfg = build_config({{"N0_dBm_per_Hz", "-174"}, {"B", "1e6"}});
    EXPECT_NEAR(cfg.sigma2 / 3.981071705534986e-15, 1.0, 1e-12);
}

TEST(BuildConfig, HoverPowerIsBladePlusInduced) {
    const auto cfg = build_config();
    EXPECT_NEAR(cfg.hover_power, 168.4842, 1e-9);
}

TEST(BuildConfig, CeilingMinimumForIndivisibleK) {
    const auto cfg = build_config({{"K", "41"}, {"N", "20"}});
    EXPECT_EQ(cfg.M_min, 3);
}

TEST(BuildConfig, CapacitySatisfiableAtLowerBound) {
    for (int K = 1; K <= 60; ++K)
        for (int N = 1; N <= 25; ++N) {
            const auto cfg = build_config({{"K", std::to_string(K)}, {"N", std::to_string(N)}});
            EXPECT_GE(cfg.M_min * cfg.N, cfg.K);
            EXPECT_LE(cfg.M_min, cfg.M_max);
        }
}

TEST(BuildConfig, RejectsInvertedAnnulus) {
    try {
        build_config({{"rb_inner", "1500"}, {"rc_outer", "750"}});
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("rb_inner < rc_outer"), std::string::npos);
    }
}

TEST(BuildConfig, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(build_config({{"bogus", "1"}}), ConfigError);
    EXPECT_THROW(build_config({{"H", "abc"}}), ConfigError);
    EXPECT_THROW(build_config({{"K", "2.5"}}), ConfigError);
    EXPECT_THROW(build_config({{"H", "0"}}), ConfigError);
    EXPECT_THROW(build_config({{"phi", "-1"}}), ConfigError);
    EXPECT_THROW(build_config({{"D_min", "0.5"}}), ConfigError);
    EXPECT_THROW(build_config({{"rho", "0"}}), ConfigError);
}

TEST(KeyValues, ParsesCommentsAndRejectsDuplicates) {
    std::istringstream ok("# scenario\nK = 40\n\nN=10 # per point\n");
    const auto raw = parse_key_values(ok);
    EXPECT_EQ(raw.at("K"), "40");
    EXPECT_EQ(raw.at("N"), "10");

    std::istringstream dup("K=1\nK=2\n");
    EXPECT_THROW(parse_key_values(dup), ConfigError);
    std::istringstream junk("K 1\n");
    EXPECT_THROW(parse_key_values(junk), ConfigError);
}

TEST(ConfigHash, StableAndSensitive) {
    EXPECT_EQ(config_hash(build_config()), config_hash(build_config()));
    EXPECT_NE(config_hash(build_config()), config_hash(build_config({{"phi", "999"}})));
    EXPECT_EQ(build_config(to_raw(build_config({{"H", "123.25"}}))).H, 123.25);
}

TEST(GenerateInstance, EmptyForZeroUes) {
    const auto cfg = build_config({{"K", "0"}});
    const auto inst = generate_instance(cfg, 3);
    EXPECT_TRUE(inst.ues.empty());
    EXPECT_TRUE(inst.demands.empty());
}

TEST(GenerateInstance, AllPointsInAnnulusAndDemandsInRange) {
    const auto cfg = build_config({{"K", "500"}});
    const auto inst = generate_instance(cfg, 11);
    ASSERT_EQ(inst.ues.size(), 500u);
    for (std::size_t k = 0; k < inst.size(); ++k) {
        const double r = chebyshev_radius(inst.ues[k]);
        EXPECT_GT(r, 375.0);
        EXPECT_LE(r, 750.0);
        EXPECT_GE(inst.demands[k], cfg.D_min);
        EXPECT_LE(inst.demands[k], cfg.D_max);
    }
    EXPECT_NO_THROW(validate_instance(inst, cfg));
}

TEST(GenerateInstance, DeterministicPerSeed) {
    const auto cfg = build_config();
    EXPECT_EQ(generate_instance(cfg, 5), generate_instance(cfg, 5));
    EXPECT_NE(generate_instance(cfg, 5), generate_instance(cfg, 6));
}

TEST(GenerateInstance, QuadrantsAreUniform) {
    const auto cfg = build_config({{"K", "10000"}});
    const auto inst = generate_instance(cfg, 2024);
    int q[4] = {0, 0, 0, 0};
    for (const auto& p : inst.ues) ++q[(p.x >= 0 ? 1 : 0) + (p.y >= 0 ? 2 : 0)];
    for (int c : q) EXPECT_NEAR(c / 10000.0, 0.25, 0.02);
}

TEST(ValidateInstance, RejectsPointInsideInnerSquare) {
    const auto cfg = build_config({{"K", "1"}});
    Instance inst{{{0.0, 0.0}}, {cfg.D_min}, 0};
    EXPECT_THROW(validate_instance(inst, cfg), ConfigError);
    inst.ues[0] = {700.0, 0.0};
    EXPECT_NO_THROW(validate_instance(inst, cfg));
    inst.demands[0] = cfg.D_max * 2;
    EXPECT_THROW(validate_instance(inst, cfg), ConfigError);
}
