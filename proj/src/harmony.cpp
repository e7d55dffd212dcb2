#include "slidebench/harmony.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slidebench::harmony {

const std::array<HueTemplate, 7>& canonical_templates() {
  static const std::array<HueTemplate, 7> templates = {{
      {'i', {{0.00, 0.05}}},
      {'V', {{0.00, 0.26}}},
      {'L', {{0.00, 0.05}, {0.25, 0.22}}},
      {'I', {{0.00, 0.05}, {0.50, 0.05}}},
      {'T', {{0.25, 0.50}}},
      {'Y', {{0.00, 0.26}, {0.50, 0.05}}},
      {'X', {{0.00, 0.26}, {0.50, 0.26}}},
  }};
  return templates;
}

void HarmonyConfig::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("harmony.sigma must be > 0");
  if (angular_resolution < 1) throw std::invalid_argument("harmony.angular_resolution must be >= 1");
  if (!(sat_threshold >= 0.0 && sat_threshold < 1.0)) {
    throw std::invalid_argument("harmony.sat_threshold must be in [0,1)");
  }
}

double HueHistogram::total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

HueHistogram saturation_weighted_hue_histogram(const imaging::SlideImage& img,
                                               double sat_threshold, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  HueHistogram hist;
  hist.weights.assign(bins, 0.0);
  for (const auto& p : img.pixels()) {
    const auto hsv = imaging::rgb_to_hsv(p);
    if (hsv.saturation < sat_threshold || hsv.saturation <= 0.0) {
      continue;
    }
    auto bin = static_cast<std::size_t>(hsv.hue * static_cast<double>(bins) / 360.0);
    if (bin >= bins) bin = bins - 1;
    hist.weights[bin] += hsv.saturation;
  }
  return hist;
}

namespace {

double wrap_unit(double x) {
  double r = std::fmod(x, 1.0);
  if (r < 0.0) r += 1.0;
  return r;
}

}  // namespace

double hue_distance(double hue, const HueTemplate& tmpl, double alpha) {
  double best = 0.5;
  for (const auto& s : tmpl.sectors) {
    const double center = wrap_unit(s.center + alpha);
    const double diff = std::fabs(wrap_unit(hue) - center);
    const double arc = std::min(diff, 1.0 - diff);
    const double gap = arc - s.width / 2.0;
    if (gap <= 0.0) return 0.0;
    best = std::min(best, gap);
  }
  return best;
}

double template_distance(const HueHistogram& hist, const HueTemplate& tmpl, double alpha) {
  const double total = hist.total();
  if (!(total > 0.0)) throw AchromaticError();
  const double bins = static_cast<double>(hist.bins());
  double acc = 0.0;
  for (std::size_t b = 0; b < hist.bins(); ++b) {
    const double w = hist.weights[b];
    if (w == 0.0) continue;
    acc += w * hue_distance(static_cast<double>(b) / bins, tmpl, alpha);
  }
  return acc / total;
}

HarmonyFit best_fit(const HueHistogram& hist, const HarmonyConfig& config) {
  config.validate();
  HarmonyFit fit;
  if (!(hist.total() > 0.0)) {
    fit.achromatic = true;
    fit.slide_score = slide_harmony_score(0.0, config.sigma);
    return fit;
  }
  const int n = config.angular_resolution;
  bool first = true;
  for (const auto& tmpl : canonical_templates()) {
    for (int k = 0; k < n; ++k) {
      const double alpha = static_cast<double>(k) / n;
      const double d = template_distance(hist, tmpl, alpha);
      if (first || d < fit.mean_distance) {
        fit.template_name = tmpl.name;
        fit.alpha = alpha;
        fit.mean_distance = d;
        first = false;
      }
    }
  }
  fit.slide_score = slide_harmony_score(fit.mean_distance, config.sigma);
  return fit;
}

HarmonyFit best_fit(const imaging::SlideImage& img, const HarmonyConfig& config) {
  return best_fit(saturation_weighted_hue_histogram(img, config.sat_threshold), config);
}

double slide_harmony_score(double mean_distance, double sigma) {
  if (mean_distance < 0.0) throw std::invalid_argument("mean distance must be >= 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  const double s = std::exp(-(mean_distance * mean_distance) / (2.0 * sigma * sigma));
  return s < 1e-300 ? 0.0 : s;
}

double deck_harmony_score(std::span<const double> slide_scores, double w1, double w2) {
  if (slide_scores.empty()) throw std::invalid_argument("deck harmony needs at least one slide");
  const double n = static_cast<double>(slide_scores.size());
  const double mean = std::accumulate(slide_scores.begin(), slide_scores.end(), 0.0) / n;
  double var = 0.0;
  for (double s : slide_scores) var += (s - mean) * (s - mean);
  var /= n;
  return w1 * mean - w2 * std::sqrt(var);
}

}  // namespace slidebench::harmony
