#include "slidebench/usability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace slidebench::usability {

std::string_view to_string(LuminanceMode mode) {
  return mode == LuminanceMode::Endpoint ? "endpoint" : "percentile";
}

LuminanceMode luminance_mode_from_string(std::string_view name) {
  if (name == "endpoint") return LuminanceMode::Endpoint;
  if (name == "percentile") return LuminanceMode::Percentile;
  throw std::invalid_argument("unknown luminance mode: " + std::string(name));
}

void UsabilityConfig::validate() const {
  if (!(lower_percentile >= 0.0 && upper_percentile <= 100.0 &&
        lower_percentile <= upper_percentile)) {
    throw std::invalid_argument("usability percentiles must satisfy 0 <= lower <= upper <= 100");
  }
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
    throw std::invalid_argument("usability.min_confidence must be in [0,1]");
  }
}

namespace {

// Nearest-rank percentile over a sorted sample.
double nearest_rank(const std::vector<double>& sorted, double pct) {
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<long>(std::ceil(pct / 100.0 * n)) - 1;
  rank = std::clamp(rank, 0L, static_cast<long>(sorted.size()) - 1);
  return sorted[static_cast<std::size_t>(rank)];
}

}  // namespace

ContrastResult region_contrast(const imaging::SlideImage& img, const layout::Box& box,
                               const UsabilityConfig& config) {
  const double w = static_cast<double>(img.width());
  const double h = static_cast<double>(img.height());
  const double x0 = std::max(0.0, std::floor(box.x_min));
  const double y0 = std::max(0.0, std::floor(box.y_min));
  const double x1 = std::min(w, std::ceil(box.x_max));
  const double y1 = std::min(h, std::ceil(box.y_max));
  if (!(x1 > x0 && y1 > y0)) {
    throw std::out_of_range("text region lies entirely outside the image");
  }

  ContrastResult out;
  out.region = {x0, y0, x1, y1};
  const auto xs = static_cast<std::size_t>(x0), xe = static_cast<std::size_t>(x1);
  const auto ys = static_cast<std::size_t>(y0), ye = static_cast<std::size_t>(y1);

  if (config.mode == LuminanceMode::Endpoint) {
    double lo = 1.0, hi = 0.0;
    for (std::size_t y = ys; y < ye; ++y) {
      for (std::size_t x = xs; x < xe; ++x) {
        const double l = imaging::relative_luminance(img.at(x, y));
        lo = std::min(lo, l);
        hi = std::max(hi, l);
      }
    }
    out.l_min = lo;
    out.l_max = hi;
  } else {
    std::vector<double> lum;
    lum.reserve((xe - xs) * (ye - ys));
    for (std::size_t y = ys; y < ye; ++y) {
      for (std::size_t x = xs; x < xe; ++x) {
        lum.push_back(imaging::relative_luminance(img.at(x, y)));
      }
    }
    std::sort(lum.begin(), lum.end());
    out.l_min = nearest_rank(lum, config.lower_percentile);
    out.l_max = nearest_rank(lum, config.upper_percentile);
  }
  out.ratio = std::clamp((out.l_max + 0.05) / (out.l_min + 0.05), 1.0, 21.0);
  out.score = contrast_score(out.ratio);
  return out;
}

double contrast_score(double ratio) {
  if (!(ratio >= 1.0)) throw std::domain_error("contrast ratio must be >= 1");
  if (ratio == 21.0) return 1.0;
  return std::clamp(std::log(ratio) / std::log(21.0), 0.0, 1.0);
}

std::optional<double> slide_usability(const imaging::SlideImage& img,
                                      const layout::LayoutDocument& doc,
                                      const UsabilityConfig& config) {
  config.validate();
  const auto regions = layout::text_regions(doc, config.min_confidence);
  double acc = 0.0;
  std::size_t used = 0;
  for (const auto& box : regions) {
    acc += region_contrast(img, box, config).score;
    ++used;
  }
  if (used == 0) return std::nullopt;
  return acc / static_cast<double>(used);
}

std::optional<double> deck_usability(std::span<const std::optional<double>> slides, double scale) {
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& s : slides) {
    if (s) {
      acc += *s;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return scale * acc / static_cast<double>(n);
}

}  // namespace slidebench::usability
