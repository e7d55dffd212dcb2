#include <doctest.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "slidebench/image_io.hpp"
#include "slidebench/imaging.hpp"
#include "support.hpp"

using namespace slidebench::imaging;

TEST_SUITE("imaging") {
  TEST_CASE("srgb_to_linear fixed points and breakpoint") {
    CHECK(srgb_to_linear(0.0) == 0.0);
    CHECK(srgb_to_linear(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(srgb_to_linear(0.04045) == doctest::Approx(0.04045 / 12.92).epsilon(1e-12));
    const double upper = std::pow((0.04045 + 0.055) / 1.055, 2.4);
    CHECK(std::fabs(upper - 0.04045 / 12.92) < 1e-6);
    CHECK_THROWS_AS(srgb_to_linear(-0.01), std::domain_error);
    CHECK_THROWS_AS(srgb_to_linear(1.01), std::domain_error);
  }

  TEST_CASE("relative luminance anchors") {
    CHECK(relative_luminance({255, 255, 255}) == 1.0);
    CHECK(relative_luminance({0, 0, 0}) == 0.0);
    CHECK(relative_luminance({255, 0, 0}) == doctest::Approx(0.2126).epsilon(1e-12));
    CHECK(relative_luminance({0, 255, 0}) == doctest::Approx(0.7152).epsilon(1e-12));
    CHECK(relative_luminance({0, 0, 255}) == doctest::Approx(0.0722).epsilon(1e-12));
  }

  TEST_CASE("rgb_to_hsv reference pixels") {
    auto red = rgb_to_hsv({255, 0, 0});
    CHECK(red.hue == 0.0);
    CHECK(red.saturation == 1.0);
    CHECK(red.value == 1.0);
    auto gray = rgb_to_hsv({128, 128, 128});
    CHECK(gray.saturation == 0.0);
    CHECK(gray.hue == 0.0);
    CHECK(rgb_to_hsv({0, 255, 255}).hue == doctest::Approx(180.0));
    CHECK(rgb_to_hsv({0, 0, 255}).hue == doctest::Approx(240.0));
    CHECK(rgb_to_hsv({255, 0, 255}).hue == doctest::Approx(300.0));
  }

  TEST_CASE("lab normalization anchors") {
    auto w = rgb_to_lab_normalized({255, 255, 255});
    CHECK(w.L == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(w.a == doctest::Approx(0.502).epsilon(0.002));
    CHECK(w.b == doctest::Approx(0.502).epsilon(0.002));
    CHECK(rgb_to_lab_normalized({0, 0, 0}).L == doctest::Approx(0.0));
    for (int g = 0; g <= 255; g += 17) {
      const auto u = static_cast<std::uint8_t>(g);
      auto n = rgb_to_lab_normalized({u, u, u});
      CHECK(std::fabs(n.a - 0.51) <= 0.01);
      CHECK(std::fabs(n.b - 0.51) <= 0.01);
    }
    // sRGB red under D65: L 53.24, a 80.09, b 67.20
    auto r = rgb_to_lab({255, 0, 0});
    CHECK(r.L == doctest::Approx(53.24).epsilon(1e-3));
    CHECK(r.a == doctest::Approx(80.09).epsilon(1e-3));
    CHECK(r.b == doctest::Approx(67.20).epsilon(1e-3));
  }

  TEST_CASE("SlideImage invariants") {
    CHECK_THROWS_AS(SlideImage(0, 3, Rgb{}), std::invalid_argument);
    CHECK_THROWS_AS(SlideImage(2, 2, std::vector<Rgb>(3)), std::invalid_argument);
    SlideImage img(3, 2, Rgb{1, 2, 3});
    CHECK(img.size() == 6);
    CHECK(img.at(2, 1) == Rgb{1, 2, 3});
  }

  TEST_CASE("png round trip and decode errors") {
    const auto dir = slidebench::testing::scratch_dir("imaging_io");
    slidebench::testing::Gen gen(7);
    const auto img = gen.image(13, 9);
    slidebench::image_io::write_png(img, dir / "a.png");
    CHECK(slidebench::image_io::read_image(dir / "a.png") == img);

    std::ofstream(dir / "bad.png") << "not an image";
    CHECK_THROWS_AS(slidebench::image_io::read_image(dir / "bad.png"), slidebench::image_io::DecodeError);
    CHECK_THROWS_AS(slidebench::image_io::read_image(dir / "missing.png"), slidebench::image_io::DecodeError);
  }
}
