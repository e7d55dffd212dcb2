#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slidebench/pyramid.hpp"
#include "slidebench/rhythm.hpp"
#include "support.hpp"

using namespace slidebench;
using namespace slidebench::rhythm;
using imaging::Rgb;
using imaging::SlideImage;

namespace {

Plane grating(std::size_t n, double fx, double fy) {
  Plane p(n, n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      p.at(x, y) = 0.5 + 0.5 * std::cos(2.0 * std::numbers::pi * (fx * x + fy * y) / static_cast<double>(n));
  return p;
}

double energy_of(const Pyramid& pyr, int level, int orientation) {
  for (const auto& b : pyr.bands)
    if (b.level == level && b.orientation == orientation) return band_energy(b.coeffs, 256 * 256);
  return -1.0;
}

}  // namespace

TEST_SUITE("rhythm") {
  TEST_CASE("pyramid shape and size errors") {
    PyramidConfig cfg;
    auto pyr = steerable_pyramid(Plane(64, 48, 0.3), cfg);
    CHECK(pyr.bands.size() == 12);
    CHECK(pyr.bands[0].coeffs.width == 64);
    CHECK(pyr.bands[4].coeffs.width == 32);
    CHECK(pyr.bands[8].coeffs.height == 12);
    CHECK(pyr.highpass.size() == 0);
    for (const auto& b : pyr.bands)
      for (double v : b.coeffs.data) CHECK(std::fabs(v) < 1e-9);

    try {
      steerable_pyramid(Plane(7, 64), cfg);
      FAIL("expected PyramidSizeError");
    } catch (const PyramidSizeError& e) {
      CHECK(e.limiting_level() == 3);
    }
    CHECK_NOTHROW(steerable_pyramid(Plane(8, 8), cfg));
  }

  TEST_CASE("45 degree grating selects one orientation") {
    const Plane g = grating(256, 64, 64);
    auto pyr = steerable_pyramid(g, PyramidConfig{});
    std::vector<double> e;
    for (int k = 0; k < 4; ++k) e.push_back(energy_of(pyr, 0, k));
    const auto best = static_cast<int>(std::max_element(e.begin(), e.end()) - e.begin());
    CHECK((best == 1 || best == 3));
    for (int k = 0; k < 4; ++k)
      if (k != best) CHECK(e[best] >= 4.0 * e[k]);
  }

  TEST_CASE("noise is roughly isotropic") {
    slidebench::testing::Gen gen(11);
    Plane p(128, 128);
    for (auto& v : p.data) v = gen.unit();
    auto pyr = steerable_pyramid(p, PyramidConfig{});
    for (int level = 0; level < 3; ++level) {
      double lo = 1e300, hi = 0.0;
      for (int k = 0; k < 4; ++k) {
        for (const auto& b : pyr.bands) {
          if (b.level != level || b.orientation != k) continue;
          const double en = band_energy(b.coeffs, p.size());
          lo = std::min(lo, en);
          hi = std::max(hi, en);
        }
      }
      CHECK(hi <= 2.0 * lo);
    }
  }

  TEST_CASE("shannon entropy of subbands") {
    const std::vector<double> constant(100, 0.7);
    CHECK(subband_shannon_entropy(constant) == 0.0);
    const std::vector<double> coin{0.0, 0.0, 1.0, 1.0};
    CHECK(subband_shannon_entropy(coin) == doctest::Approx(1.0).epsilon(1e-15));
    // 16 values, 4 bins, 4 per bin
    std::vector<double> uniform;
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k) uniform.push_back(b + 0.1 * k);
    CHECK(subband_shannon_entropy(uniform) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS(subband_shannon_entropy(std::vector<double>{}));
  }

  TEST_CASE("subband entropy: blank and grayscale noise") {
    PyramidConfig pyr;
    EntropyConfig ent;
    auto blank = subband_entropy(SlideImage(64, 64, Rgb{200, 30, 30}), pyr, ent);
    CHECK(blank.blank);
    CHECK(blank.value == 0.0);

    slidebench::testing::Gen gen(5);
    std::vector<Rgb> px(64 * 64);
    for (auto& p : px) {
      const auto g = gen.byte();
      p = Rgb{g, g, g};
    }
    auto noise = subband_entropy(SlideImage(64, 64, px), pyr, ent);
    CHECK_FALSE(noise.blank);
    CHECK(noise.luminance.retained);
    CHECK_FALSE(noise.a.retained);
    CHECK_FALSE(noise.b.retained);
    CHECK(noise.value == doctest::Approx(noise.luminance.mean_entropy).epsilon(1e-15));
  }

  TEST_CASE("entropy_to_score") {
    EntropyConfig ent;
    CHECK(entropy_to_score(ent.optimal_mean, ent) == 1.0);
    CHECK(entropy_to_score(ent.optimal_mean + ent.optimal_sigma, ent) == doctest::Approx(std::exp(-0.5)));
    CHECK(entropy_to_score(ent.optimal_mean - ent.optimal_sigma, ent) == doctest::Approx(std::exp(-0.5)));
    const double z = entropy_to_score(0.0, ent);
    CHECK(z == doctest::Approx(7.4657e-7).epsilon(1e-4));
    CHECK_THROWS(entropy_to_score(-0.1, ent));
  }

  TEST_CASE("rmssd examples") {
    CHECK(rmssd(std::vector<double>{0.4, 0.4, 0.4}).value == 0.0);
    CHECK(rmssd(std::vector<double>{0, 1, 0, 1}).value == 1.0);
    CHECK(rmssd(std::vector<double>{0.2, 0.5}).value == doctest::Approx(0.3).epsilon(1e-15));
    auto single = rmssd(std::vector<double>{0.9});
    CHECK(single.value == 0.0);
    CHECK(single.degenerate);
    CHECK_THROWS(rmssd(std::vector<double>{}));
  }

  TEST_CASE("overload events") {
    CHECK(overload_events(std::vector<double>(5, 0.9), 3, 0.75) == 3);
    CHECK(overload_events(std::vector<double>(5, 0.5), 3, 0.75) == 0);
    CHECK(overload_events(std::vector<double>{0.9, 0.9, 0.9, 0.1, 0.1}, 3, 0.75) == 1);
    CHECK(overload_events(std::vector<double>{0.9, 0.9}, 3, 0.75) == 0);
    CHECK_THROWS(overload_events(std::vector<double>{0.9}, 0, 0.75));
  }

  TEST_CASE("visual hrv banded and linear") {
    HrvConfig cfg;
    auto peak = visual_hrv_score(std::vector<double>{0.5, 0.53}, cfg);
    CHECK(peak.rmssd == doctest::Approx(0.03).epsilon(1e-12));
    CHECK(peak.score == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(peak.band == HrvBand::Healthy);

    auto zero = visual_hrv_score(std::vector<double>{0.1, 0.33}, cfg);
    CHECK(zero.score == doctest::Approx(0.0).epsilon(1e-9));

    auto flat = visual_hrv_score(std::vector<double>{0.3, 0.3, 0.3}, cfg);
    CHECK(flat.band == HrvBand::Flatline);
    CHECK(flat.score == doctest::Approx(85.0));

    auto overloaded = visual_hrv_score(std::vector<double>{0.9, 0.9, 0.9, 0.9}, cfg);
    CHECK(overloaded.overloads == 2);
    CHECK(overloaded.score == doctest::Approx(85.0 - 20.0));

    HrvConfig lin;
    lin.mode = HrvMode::Linear;
    auto l = visual_hrv_score(std::vector<double>{0, 1, 0, 1}, lin);
    CHECK(l.score == doctest::Approx(0.5 * 0.5 + 0.5 * 1.0));
  }

  TEST_CASE("hrv bands") {
    CHECK(to_string(hrv_band(0.005)) == "Flatline");
    CHECK(to_string(hrv_band(0.01)) == "Healthy");
    CHECK(to_string(hrv_band(0.1)) == "Healthy");
    CHECK(to_string(hrv_band(0.2)) == "Transitional");
    CHECK(to_string(hrv_band(0.30)) == "Transitional");
    CHECK(to_string(hrv_band(0.31)) == "Strobe Light");
  }

  TEST_CASE("config validation") {
    HrvConfig h;
    h.half_width = 0;
    CHECK_THROWS(h.validate());
    h = {};
    h.overload_window = 0;
    CHECK_THROWS(h.validate());
    EntropyConfig e;
    e.optimal_sigma = 0;
    CHECK_THROWS(e.validate());
    PyramidConfig p;
    p.levels = 0;
    CHECK_THROWS(p.validate());
  }
}
