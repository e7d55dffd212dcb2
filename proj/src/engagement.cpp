#include "slidebench/engagement.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slidebench::engagement {

void EngagementConfig::validate() const {
  if (!(pacing_width > 0.0)) throw std::invalid_argument("engagement.pacing_width must be > 0");
  if (mean_weight < 0.0 || pacing_weight < 0.0) {
    throw std::invalid_argument("engagement blend weights must be >= 0");
  }
  if (std::fabs(mean_weight + pacing_weight - 1.0) > 1e-9) {
    throw std::invalid_argument("engagement blend weights must sum to 1");
  }
}

double colorfulness(const imaging::SlideImage& img) {
  if (img.empty()) throw std::invalid_argument("colorfulness of an empty image");
  // Welford accumulation keeps large constant images exact.
  double n = 0.0;
  double mean_rg = 0.0, mean_yb = 0.0, m2_rg = 0.0, m2_yb = 0.0;
  for (const auto& p : img.pixels()) {
    const double rg = static_cast<double>(p.r) - static_cast<double>(p.g);
    const double yb = 0.5 * (static_cast<double>(p.r) + static_cast<double>(p.g)) -
                      static_cast<double>(p.b);
    n += 1.0;
    const double d_rg = rg - mean_rg;
    mean_rg += d_rg / n;
    m2_rg += d_rg * (rg - mean_rg);
    const double d_yb = yb - mean_yb;
    mean_yb += d_yb / n;
    m2_yb += d_yb * (yb - mean_yb);
  }
  const double var_rg = m2_rg / n;
  const double var_yb = m2_yb / n;
  return std::sqrt(var_rg + var_yb) + 0.3 * std::sqrt(mean_rg * mean_rg + mean_yb * mean_yb);
}

double population_stddev(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("stddev of an empty sequence");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / n);
}

double pacing_score(std::span<const double> per_slide_m, double target, double width) {
  if (per_slide_m.empty()) throw std::invalid_argument("pacing score needs at least one slide");
  if (!(width > 0.0)) throw std::invalid_argument("pacing width must be > 0");
  const double sigma = population_stddev(per_slide_m);
  const double d = sigma - target;
  return std::exp(-(d * d) / (2.0 * width * width));
}

double engagement_component(std::span<const double> per_slide_m, const EngagementConfig& config) {
  config.validate();
  if (per_slide_m.empty()) throw std::invalid_argument("engagement needs at least one slide");
  const double mean =
      std::accumulate(per_slide_m.begin(), per_slide_m.end(), 0.0) / per_slide_m.size();
  const double pacing = pacing_score(per_slide_m, config.pacing_target, config.pacing_width);
  return config.mean_weight * mean * config.mean_scale +
         config.pacing_weight * config.pacing_scale * pacing;
}

}  // namespace slidebench::engagement
