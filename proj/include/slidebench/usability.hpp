#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "slidebench/imaging.hpp"
#include "slidebench/layout.hpp"

namespace slidebench::usability {

enum class LuminanceMode { Endpoint, Percentile };

std::string_view to_string(LuminanceMode mode);
LuminanceMode luminance_mode_from_string(std::string_view name);

struct UsabilityConfig {
  LuminanceMode mode = LuminanceMode::Endpoint;
  double upper_percentile = 95.0;
  double lower_percentile = 5.0;
  double min_confidence = layout::kDefaultMinConfidence;
  double deck_scale = 10.0;

  void validate() const;
};

struct ContrastResult {
  layout::Box region;
  double l_max = 0.0;
  double l_min = 0.0;
  double ratio = 1.0;
  double score = 0.0;
};

/// Figure-ground contrast of the pixels inside `box` (clipped to the image).
/// Throws std::out_of_range when the clipped box holds no pixel.
ContrastResult region_contrast(const imaging::SlideImage& img, const layout::Box& box,
                               const UsabilityConfig& config = {});

/// ln(c)/ln(21) clamped to [0,1]. Throws std::domain_error for c < 1.
double contrast_score(double ratio);

/// Mean contrast score over text regions; nullopt when there are none.
std::optional<double> slide_usability(const imaging::SlideImage& img,
                                      const layout::LayoutDocument& doc,
                                      const UsabilityConfig& config = {});

/// scale * mean over available slides; nullopt when none is available.
std::optional<double> deck_usability(std::span<const std::optional<double>> slides,
                                     double scale = 10.0);

}  // namespace slidebench::usability
