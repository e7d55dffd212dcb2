#include <doctest.h>

#include <cmath>

#include "slidebench/engagement.hpp"

using namespace slidebench;
using namespace slidebench::engagement;
using imaging::Rgb;
using imaging::SlideImage;

TEST_SUITE("engagement") {
  TEST_CASE("colorfulness closed forms") {
    CHECK(colorfulness(SlideImage(4, 4, Rgb{77, 77, 77})) == 0.0);
    CHECK(colorfulness(SlideImage(4, 4, Rgb{255, 0, 0})) == doctest::Approx(0.3 * std::sqrt(255.0 * 255.0 + 127.5 * 127.5)).epsilon(1e-12));
    SlideImage checker(4, 4, Rgb{255, 0, 0});
    for (std::size_t y = 0; y < 4; ++y)
      for (std::size_t x = 0; x < 4; ++x)
        if ((x + y) % 2) checker.at(x, y) = Rgb{0, 255, 0};
    CHECK(colorfulness(checker) == doctest::Approx(293.25).epsilon(1e-12));
  }

  TEST_CASE("population stddev") {
    const std::vector<double> v{0.0, 1.0};
    CHECK(population_stddev(v) == 0.5);
    CHECK(population_stddev(std::vector<double>{3.0}) == 0.0);
  }

  TEST_CASE("pacing examples") {
    const std::vector<double> flat{10, 10, 10};
    CHECK(pacing_score(flat, 0.0, 5.0) == 1.0);
    // std of {0, 2w+2t} is w + t
    const double t = 11.28, w = std::sqrt(72.89);
    const std::vector<double> two{0.0, 2.0 * (t + w)};
    CHECK(pacing_score(two, t, w) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    const std::vector<double> one{42.0};
    CHECK(pacing_score(one, t, w) == doctest::Approx(std::exp(-t * t / (2 * w * w))).epsilon(1e-12));
    CHECK_THROWS(pacing_score(std::vector<double>{}, t, w));
  }

  TEST_CASE("engagement component") {
    EngagementConfig cfg;
    const std::vector<double> gray{0.0, 0.0};
    CHECK(engagement_component(gray, cfg) ==
          doctest::Approx(0.5 * 10.0 * std::exp(-11.28 * 11.28 / (2 * 72.89))).epsilon(1e-12));

    EngagementConfig mean_only;
    mean_only.mean_weight = 1.0;
    mean_only.pacing_weight = 0.0;
    const std::vector<double> anchor{51.09};
    CHECK(engagement_component(anchor, mean_only) == doctest::Approx(5.109).epsilon(1e-12));

    EngagementConfig pacing_only;
    pacing_only.mean_weight = 0.0;
    pacing_only.pacing_weight = 1.0;
    pacing_only.pacing_target = 0.0;
    CHECK(engagement_component(gray, pacing_only) == 10.0);
  }

  TEST_CASE("config validation") {
    EngagementConfig bad;
    bad.pacing_width = 0.0;
    CHECK_THROWS(bad.validate());
    bad = {};
    bad.mean_weight = 0.7;
    CHECK_THROWS(bad.validate());
  }
}
