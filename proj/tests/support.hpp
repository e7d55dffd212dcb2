#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "slidebench/imaging.hpp"

namespace slidebench::testing {

// Hand-rolled generators over a fixed-seed engine. Only raw engine output is
// used so sequences are identical across standard libraries.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  // uniform integer in [lo, hi]
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::uint8_t byte() { return static_cast<std::uint8_t>(next() & 0xFF); }
  imaging::Rgb pixel() { return {byte(), byte(), byte()}; }

  imaging::SlideImage image(std::size_t w, std::size_t h) {
    std::vector<imaging::Rgb> px(w * h);
    for (auto& p : px) p = pixel();
    return imaging::SlideImage(w, h, std::move(px));
  }

  // Pixel whose hue decodes to h + 0.5 degrees: max - min = 120 keeps every
  // integer hue representable, and the rotated copy keeps the same saturation.
  static imaging::Rgb hue_pixel(int h, int base) {
    h = ((h % 360) + 360) % 360;
    const int hi = base + 120, f = 2 * (h % 60) + 1;
    auto c = [](int v) { return static_cast<std::uint8_t>(v); };
    switch (h / 60) {
      case 0: return {c(hi), c(base + f), c(base)};
      case 1: return {c(hi - f), c(hi), c(base)};
      case 2: return {c(base), c(hi), c(base + f)};
      case 3: return {c(base), c(hi - f), c(hi)};
      case 4: return {c(base + f), c(base), c(hi)};
      default: return {c(hi), c(base), c(hi - f)};
    }
  }

  std::vector<double> sequence(std::size_t n, double lo = 0.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::path(SLIDEBENCH_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace slidebench::testing
