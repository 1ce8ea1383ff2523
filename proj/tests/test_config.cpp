// Unit tests for the flat key-value run configuration.

#include <gtest/gtest.h>

#include "lierkhs/config.hpp"
#include "lierkhs/rng.hpp"

using namespace lierkhs;

TEST(ParseConfig, MinimalFillsDefaults) {
    const auto cfg = parse_config("group = torus1\n");
    EXPECT_EQ(cfg.group, GroupId::Torus1);
    EXPECT_EQ(cfg.family, SymbolFamily::Heat);
    EXPECT_EQ(cfg.params.t, 1.0);
    EXPECT_EQ(cfg.lambda_max, 8.0);
    EXPECT_EQ(cfg.grid_resolution, 32);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_TRUE(validate_config(cfg).empty());
}

TEST(ParseConfig, CommentsAndBlanksIgnored) {
    const auto cfg = parse_config("# a comment\n\n  group = su2  # trailing\n\nseed = 7\n");
    EXPECT_EQ(cfg.group, GroupId::SU2);
    EXPECT_EQ(cfg.seed, 7u);
}

TEST(ParseConfig, DuplicateKeyNamesLine) {
    try {
        parse_config("seed = 1\ngroup = torus1\nseed = 2\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_NE(std::string(e.what()).find("duplicate key 'seed'"), std::string::npos);
    }
}

TEST(ParseConfig, UnknownKeyNamesLine) {
    try {
        parse_config("group = torus1\nsymbol.tt = 1\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_NE(std::string(e.what()).find("unknown key"), std::string::npos);
    }
}

TEST(ParseConfig, MalformedNumberPositionAnnotated) {
    try {
        parse_config("lambda_max = eight\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 1);
    }
}

TEST(ValidateConfig, SurfacesModulePreconditions) {
    auto cfg = parse_config("group = torus1\nsymbol.family = polynomial\nsymbol.beta = 0.5\n");
    EXPECT_NE(validate_config(cfg).find("symbol.beta"), std::string::npos);
    // beta = 2 passes on the circle but fails on the 2-torus
    auto ok = parse_config("group = torus1\nsymbol.family = polynomial\nsymbol.beta = 2\n");
    EXPECT_TRUE(validate_config(ok).empty());
    auto bad = parse_config("group = torus2\nsymbol.family = polynomial\nsymbol.beta = 2\n");
    EXPECT_FALSE(validate_config(bad).empty());
}

TEST(ValidateConfig, SweepInsideTruncation) {
    auto cfg = parse_config("lambda_max = 4\nlambda.sweep = 2,6\n");
    EXPECT_FALSE(validate_config(cfg).empty());
}

TEST(RoundTrip, HundredSeededRandomConfigs) {
    Rng rng(7, 0x434647);
    for (int i = 0; i < 100; ++i) {
        RunConfig cfg;
        cfg.group = static_cast<GroupId>(rng.next_u64() % 3);
        cfg.family = static_cast<SymbolFamily>(rng.next_u64() % 3);  // analytic families
        cfg.params.t = 0.1 + rng.uniform();
        cfg.params.beta = group_dim(cfg.group) + 0.5 + 2.0 * rng.uniform();
        cfg.params.omega = 0.2 + rng.uniform();
        cfg.params.gamma = 0.3 + rng.uniform();
        cfg.lambda_max = 2.0 + 10.0 * rng.uniform();
        cfg.grid_resolution = 2 + static_cast<int>(rng.next_u64() % 62);
        cfg.lambda_sweep = {1.0 + 0.4 * cfg.lambda_max, 1.0 + 0.8 * (cfg.lambda_max - 1.0)};
        cfg.eps_values = {rng.uniform() + 0.1, rng.uniform() + 0.1, rng.uniform() + 0.1};
        cfg.eps_relative_to_norm = rng.next_u64() % 2 == 0;
        cfg.cloud_size = 1 + static_cast<int>(rng.next_u64() % 5000);
        cfg.count_alpha = rng.uniform();
        cfg.count_window = {8.0, 8.0 + 10.0 * rng.uniform(), 64.0};
        cfg.seed = rng.next_u64();
        cfg.constants_display_convention = rng.next_u64() % 2 == 0;
        cfg.output_dir = "out" + std::to_string(i);
        const auto back = parse_config(serialize_config(cfg));
        EXPECT_TRUE(back == cfg) << serialize_config(cfg);
        EXPECT_EQ(config_hash(back), config_hash(cfg));
    }
}

TEST(ConfigHash, StableAndSensitive) {
    const auto a = parse_config("group = torus1\nseed = 1\n");
    const auto b = parse_config("group = torus1\nseed = 1\n");
    const auto c = parse_config("group = torus1\nseed = 2\n");
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_NE(config_hash(a), config_hash(c));
    EXPECT_EQ(config_hash(a).size(), 16u);
}
