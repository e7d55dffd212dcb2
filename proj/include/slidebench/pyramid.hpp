#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace slidebench::rhythm {

/// Real 2-D array, row-major.
struct Plane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> data;

  Plane() = default;
  Plane(std::size_t w, std::size_t h, double fill = 0.0) : width(w), height(h), data(w * h, fill) {}

  double& at(std::size_t x, std::size_t y) { return data[y * width + x]; }
  double at(std::size_t x, std::size_t y) const { return data[y * width + x]; }
  std::size_t size() const { return data.size(); }
};

struct PyramidConfig {
  int levels = 3;
  int orientations = 4;

  void validate() const;
};

class PyramidSizeError : public std::invalid_argument {
 public:
  PyramidSizeError(std::size_t width, std::size_t height, int limiting_level);
  int limiting_level() const { return level_; }

 private:
  int level_;
};

struct Subband {
  int level = 0;        // 0 = finest
  int orientation = 0;  // angle = pi * orientation / orientations
  Plane coeffs;
};

struct Pyramid {
  std::vector<Subband> bands;  // level-major, orientation-minor
  Plane highpass;              // empty unless residuals were requested
  Plane lowpass;               // empty unless residuals were requested
};

/// Real steerable pyramid built in the Fourier domain: raised-cosine radial
/// split per octave and cos^(K-1) angular masks, with each coarser level
/// obtained by cropping the spectrum to half size.
///
/// Throws PyramidSizeError when min(width, height) < 2^levels.
Pyramid steerable_pyramid(const Plane& channel, const PyramidConfig& config,
                          bool keep_residuals = false);

/// Energy of `plane` expressed at the resolution of `reference_size` pixels:
/// coarse bands are computed on cropped spectra and carry a size factor.
double band_energy(const Plane& plane, std::size_t reference_size);

}  // namespace slidebench::rhythm
