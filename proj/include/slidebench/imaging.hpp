#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace slidebench::imaging {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Decoded raster page. Pixels are row-major RGB.
class SlideImage {
 public:
  SlideImage() = default;
  /// Throws std::invalid_argument unless width, height >= 1 and the pixel
  /// count matches.
  SlideImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels);
  /// Solid-filled image.
  SlideImage(std::size_t width, std::size_t height, Rgb fill);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  const Rgb& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  Rgb& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  std::span<const Rgb> pixels() const { return pixels_; }
  std::span<Rgb> pixels() { return pixels_; }

  friend bool operator==(const SlideImage&, const SlideImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Rgb> pixels_;
};

struct HsvPixel {
  double hue = 0.0;         // degrees, [0, 360)
  double saturation = 0.0;  // [0, 1]
  double value = 0.0;       // [0, 1]
};

struct LabPixel {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// Lab scaled to unit range: L' = L/100, a' = (a+128)/255, b' = (b+128)/255.
struct NormalizedLab {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// sRGB transfer function inverse. Throws std::domain_error outside [0,1].
double srgb_to_linear(double c);

/// BT.709 relative luminance of linearized sRGB, in [0,1].
double relative_luminance(Rgb p);

/// Standard hexcone conversion. Achromatic pixels get hue 0.
HsvPixel rgb_to_hsv(Rgb p);
Rgb hsv_to_rgb(const HsvPixel& hsv);

/// sRGB -> XYZ (D65) -> CIE Lab.
LabPixel rgb_to_lab(Rgb p);
NormalizedLab normalize_lab(const LabPixel& lab);
NormalizedLab rgb_to_lab_normalized(Rgb p);

}  // namespace slidebench::imaging
