#pragma once

#include <span>

#include "slidebench/imaging.hpp"

namespace slidebench::engagement {

struct EngagementConfig {
  // Pacing Gaussian, anchored to the professional-deck colorfulness spread.
  double pacing_target = 11.28;
  double pacing_width = 8.537564055396345;  // sqrt(72.89)
  double mean_weight = 0.5;    // a
  double pacing_weight = 0.5;  // b
  double mean_scale = 0.1;     // mean M -> component units
  double pacing_scale = 10.0;  // pacing score -> component units

  void validate() const;
};

/// Hasler-Suesstrunk colorfulness over raw 8-bit opponent channels,
/// population statistics.
double colorfulness(const imaging::SlideImage& img);

double population_stddev(std::span<const double> values);

/// Gaussian of the population stddev of per-slide colorfulness around the
/// target. Throws on an empty sequence.
double pacing_score(std::span<const double> per_slide_m, double target, double width);

/// a * mean(M) * mean_scale + b * pacing_scale * pacing.
double engagement_component(std::span<const double> per_slide_m, const EngagementConfig& config);

}  // namespace slidebench::engagement
