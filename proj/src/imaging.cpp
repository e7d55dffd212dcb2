#include "slidebench/imaging.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slidebench::imaging {

SlideImage::SlideImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ == 0 || height_ == 0) {
    throw std::invalid_argument("image dimensions must be at least 1x1");
  }
  if (pixels_.size() != width_ * height_) {
    throw std::invalid_argument("pixel count " + std::to_string(pixels_.size()) +
                                " does not match " + std::to_string(width_) + "x" +
                                std::to_string(height_));
  }
}

SlideImage::SlideImage(std::size_t width, std::size_t height, Rgb fill)
    : SlideImage(width, height, std::vector<Rgb>(width * height, fill)) {}

namespace {

constexpr double kByte = 255.0;

// 256-entry table of linearized channel values; exact same arithmetic as
// srgb_to_linear, only cached.
const std::array<double, 256>& linear_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) {
      t[i] = srgb_to_linear(i / kByte);
    }
    return t;
  }();
  return table;
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  if (t > delta * delta * delta) {
    return std::cbrt(t);
  }
  return t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

double srgb_to_linear(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::domain_error("srgb_to_linear: channel outside [0,1]");
  }
  if (c <= 0.04045) {
    return c / 12.92;
  }
  return std::pow((c + 0.055) / 1.055, 2.4);
}

double relative_luminance(Rgb p) {
  const auto& lin = linear_table();
  const double l = 0.2126 * lin[p.r] + 0.7152 * lin[p.g] + 0.0722 * lin[p.b];
  return std::clamp(l, 0.0, 1.0);
}

HsvPixel rgb_to_hsv(Rgb p) {
  const double r = p.r / kByte;
  const double g = p.g / kByte;
  const double b = p.b / kByte;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;

  HsvPixel out;
  out.value = mx;
  if (delta <= 0.0) {
    return out;
  }
  out.saturation = delta / mx;

  double h;
  if (mx == r) {
    h = 60.0 * std::fmod((g - b) / delta, 6.0);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / delta + 2.0);
  } else {
    h = 60.0 * ((r - g) / delta + 4.0);
  }
  if (h < 0.0) {
    h += 360.0;
  }
  if (h >= 360.0) {
    h -= 360.0;
  }
  out.hue = h;
  return out;
}

Rgb hsv_to_rgb(const HsvPixel& hsv) {
  double h = std::fmod(hsv.hue, 360.0);
  if (h < 0.0) {
    h += 360.0;
  }
  const double s = std::clamp(hsv.saturation, 0.0, 1.0);
  const double v = std::clamp(hsv.value, 0.0, 1.0);
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  auto to_byte = [&](double ch) {
    return static_cast<std::uint8_t>(std::clamp(std::lround((ch + m) * kByte), 0L, 255L));
  };
  return {to_byte(r), to_byte(g), to_byte(b)};
}

LabPixel rgb_to_lab(Rgb p) {
  const auto& lin = linear_table();
  const double r = lin[p.r];
  const double g = lin[p.g];
  const double b = lin[p.b];

  // sRGB primaries, D65 reference white.
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

  constexpr double xn = 0.95047;
  constexpr double yn = 1.00000;
  constexpr double zn = 1.08883;

  const double fx = lab_f(x / xn);
  const double fy = lab_f(y / yn);
  const double fz = lab_f(z / zn);

  LabPixel lab;
  lab.L = 116.0 * fy - 16.0;
  lab.a = 500.0 * (fx - fy);
  lab.b = 200.0 * (fy - fz);
  return lab;
}

NormalizedLab normalize_lab(const LabPixel& lab) {
  NormalizedLab n;
  n.L = std::clamp(lab.L / 100.0, 0.0, 1.0);
  n.a = std::clamp((lab.a + 128.0) / 255.0, 0.0, 1.0);
  n.b = std::clamp((lab.b + 128.0) / 255.0, 0.0, 1.0);
  return n;
}

NormalizedLab rgb_to_lab_normalized(Rgb p) { return normalize_lab(rgb_to_lab(p)); }

}  // namespace slidebench::imaging
