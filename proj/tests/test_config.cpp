#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "slidebench/config.hpp"
#include "support.hpp"

using namespace slidebench::config;

TEST_SUITE("config") {
  TEST_CASE("defaults") {
    auto c = profile_config("default");
    CHECK(c.harmony.sigma == 0.01);
    CHECK(c.entropy.luminance_weight == 0.84);
    CHECK(c.hrv.target == 0.03);
    CHECK(c.profile.rhythm_scale == 0.1);
    CHECK(c.usability.deck_scale == 10.0);
    CHECK_NOTHROW(c.validate());
  }

  TEST_CASE("unscaled profile") {
    auto c = profile_config("unscaled");
    CHECK(c.profile.name == "unscaled");
    CHECK(c.profile.rhythm_scale == 1.0);
    CHECK(c.usability.deck_scale == 1.0);
    CHECK_THROWS_AS(profile_config("fancy"), ConfigError);
  }

  TEST_CASE("apply text") {
    auto c = profile_config("default");
    apply_config_text(c, "# comment\nharmony.sigma = 0.02\nhrv.mode = linear  # trailing\nusability.mode=percentile\n"
                         "entropy.include_residuals = true\npei.group_shape_limit = 20\n");
    CHECK(c.harmony.sigma == 0.02);
    CHECK(c.hrv.mode == slidebench::rhythm::HrvMode::Linear);
    CHECK(c.usability.mode == slidebench::usability::LuminanceMode::Percentile);
    CHECK(c.entropy.include_residuals);
    CHECK(c.pei.group_shape_limit == 20);
  }

  TEST_CASE("errors name the line") {
    auto c = profile_config("default");
    try {
      apply_config_text(c, "\nharmony.sigmaa = 1\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
      CHECK(std::string(e.what()).find("harmony.sigmaa") != std::string::npos);
    }
    CHECK_THROWS_AS(apply_config_text(c, "harmony.sigma = abc"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(c, "harmony.sigma = -1"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(c, "just words"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(c, "pyramid.levels = 2.5"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(c, "profile = unscaled"), ConfigError);
  }

  TEST_CASE("config file with profile line") {
    const auto dir = slidebench::testing::scratch_dir("config");
    std::ofstream(dir / "a.conf") << "profile = unscaled\nharmony.sigma = 0.05\n";
    auto c = load_config(dir / "a.conf");
    CHECK(c.profile.name == "unscaled");
    CHECK(c.harmony.sigma == 0.05);
    auto forced = load_config(dir / "a.conf", "default");
    CHECK(forced.profile.name == "default");
    CHECK(forced.profile.rhythm_scale == 0.1);
    CHECK_THROWS_AS(load_config(dir / "missing.conf"), ConfigError);
  }

  TEST_CASE("echo covers every key except secrets and runtime") {
    auto c = profile_config("default");
    auto echo = config_echo(c);
    CHECK(std::is_sorted(echo.begin(), echo.end()));
    std::size_t public_keys = 0;
    for (const auto& k : config_keys())
      if (k.rfind("llm.", 0) != 0 && k != "run.threads") ++public_keys;
    CHECK(echo.size() == public_keys);
    for (const auto& [k, v] : echo) CHECK(k.rfind("llm.", 0) != 0);

    // echo values parse back to the same config
    auto round = profile_config("default");
    std::string text;
    for (const auto& [k, v] : echo)
      if (k != "profile") text += k + " = " + v + "\n";
    apply_config_text(round, text);
    CHECK(config_echo(round) == echo);
  }
}
