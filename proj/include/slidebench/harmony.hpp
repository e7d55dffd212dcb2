#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "slidebench/imaging.hpp"

namespace slidebench::harmony {

/// One hue-wheel sector; center and width are fractions of the wheel.
struct Sector {
  double center = 0.0;
  double width = 0.0;
};

struct HueTemplate {
  char name = 'i';
  std::vector<Sector> sectors;
};

/// The seven canonical templates in table order: i, V, L, I, T, Y, X.
const std::array<HueTemplate, 7>& canonical_templates();

struct HarmonyConfig {
  double sigma = 0.01;
  int angular_resolution = 360;
  double sat_threshold = 0.1;
  double deck_mean_weight = 5.0;
  double deck_std_weight = 30.0;

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
};

/// Saturation-weighted hue histogram. Bin b covers hues
/// [b, b+1) * 360/bins degrees and is represented by its lower edge.
struct HueHistogram {
  std::vector<double> weights;

  std::size_t bins() const { return weights.size(); }
  double total() const;
};

HueHistogram saturation_weighted_hue_histogram(const imaging::SlideImage& img,
                                               double sat_threshold = 0.1,
                                               std::size_t bins = 360);

/// Shortest wrap-around distance (wheel fractions) from `hue` to the nearest
/// sector of `tmpl` rotated by `alpha`; 0 inside a sector.
double hue_distance(double hue, const HueTemplate& tmpl, double alpha);

/// Weight-normalized mean distance. Throws AchromaticError on zero weight.
double template_distance(const HueHistogram& hist, const HueTemplate& tmpl, double alpha);

struct AchromaticError : std::runtime_error {
  AchromaticError() : std::runtime_error("histogram has zero total weight (achromatic)") {}
};

struct HarmonyFit {
  char template_name = 'i';
  double alpha = 0.0;
  double mean_distance = 0.0;
  double slide_score = 1.0;
  bool achromatic = false;
};

/// Exhaustive search over templates x rotations. Ties keep the earlier
/// template in table order, then the smaller alpha.
HarmonyFit best_fit(const HueHistogram& hist, const HarmonyConfig& config);
HarmonyFit best_fit(const imaging::SlideImage& img, const HarmonyConfig& config);

double slide_harmony_score(double mean_distance, double sigma);

/// w1 * mean - w2 * population stddev. Throws on an empty deck.
double deck_harmony_score(std::span<const double> slide_scores, double w1 = 5.0,
                          double w2 = 30.0);

}  // namespace slidebench::harmony
