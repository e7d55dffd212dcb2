#include <doctest.h>

#include <cmath>

#include "slidebench/usability.hpp"

using namespace slidebench;
using namespace slidebench::usability;
using imaging::Rgb;
using imaging::SlideImage;
using layout::Box;

namespace {

layout::LayoutDocument doc_with(std::vector<Box> boxes) {
  layout::LayoutDocument d;
  for (const auto& b : boxes) {
    layout::LayoutElement e;
    e.label = layout::Label::Text;
    e.raw_label = "text";
    e.score = 0.9;
    e.coordinate = b;
    d.elements.push_back(e);
  }
  return d;
}

}  // namespace

TEST_SUITE("usability") {
  TEST_CASE("black and white region gives 21") {
    SlideImage img(4, 2, Rgb{0, 0, 0});
    img.at(3, 1) = Rgb{255, 255, 255};
    auto r = region_contrast(img, {0, 0, 4, 2});
    CHECK(std::fabs(r.ratio - 21.0) < 1e-9);
    CHECK(r.score == 1.0);
    CHECK(r.l_max == 1.0);
    CHECK(r.l_min == 0.0);
  }

  TEST_CASE("solid region gives 1") {
    auto r = region_contrast(SlideImage(3, 3, Rgb{40, 90, 200}), {0, 0, 3, 3});
    CHECK(r.ratio == 1.0);
    CHECK(r.score == 0.0);
  }

  TEST_CASE("box outside the image is an error") {
    CHECK_THROWS_AS(region_contrast(SlideImage(3, 3, Rgb{}), {10, 10, 20, 20}), std::out_of_range);
  }

  TEST_CASE("contrast_score") {
    CHECK(contrast_score(21.0) == 1.0);
    CHECK(contrast_score(1.0) == 0.0);
    CHECK(contrast_score(std::sqrt(21.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(contrast_score(5.5) == doctest::Approx(std::log(5.5) / std::log(21.0)));
    CHECK_THROWS_AS(contrast_score(0.99), std::domain_error);
  }

  TEST_CASE("slide usability averages regions") {
    SlideImage img(8, 2, Rgb{0, 0, 0});
    img.at(0, 0) = Rgb{255, 255, 255};
    auto doc = doc_with({{0, 0, 4, 2}, {4, 0, 8, 2}});
    auto s = slide_usability(img, doc);
    REQUIRE(s.has_value());
    CHECK(*s == doctest::Approx(0.5));
    CHECK_FALSE(slide_usability(img, layout::LayoutDocument{}).has_value());
  }

  TEST_CASE("percentile mode ignores isolated extremes") {
    SlideImage img(10, 10, Rgb{128, 128, 128});
    img.at(0, 0) = Rgb{255, 255, 255};
    UsabilityConfig robust;
    robust.mode = LuminanceMode::Percentile;
    CHECK(region_contrast(img, {0, 0, 10, 10}, robust).ratio == doctest::Approx(1.0));
    CHECK(region_contrast(img, {0, 0, 10, 10}).ratio ==
          doctest::Approx(1.05 / (imaging::relative_luminance(Rgb{128, 128, 128}) + 0.05)));
  }

  TEST_CASE("deck usability") {
    const std::vector<std::optional<double>> all{1.0, 1.0};
    CHECK(*deck_usability(all) == 10.0);
    const std::vector<std::optional<double>> mixed{1.0, std::nullopt, 0.0};
    CHECK(*deck_usability(mixed) == 5.0);
    const std::vector<std::optional<double>> none{std::nullopt};
    CHECK_FALSE(deck_usability(none).has_value());
  }
}
