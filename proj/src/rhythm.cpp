#include "slidebench/rhythm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace slidebench::rhythm {

void EntropyConfig::validate() const {
  if (luminance_weight < 0.0 || chroma_weight < 0.0) {
    throw std::invalid_argument("entropy weights must be >= 0");
  }
  if (!(optimal_sigma > 0.0)) throw std::invalid_argument("entropy.optimal_sigma must be > 0");
  if (zero_threshold < 0.0) throw std::invalid_argument("entropy.zero_threshold must be >= 0");
}

std::string_view to_string(HrvMode mode) { return mode == HrvMode::Banded ? "banded" : "linear"; }

HrvMode hrv_mode_from_string(std::string_view name) {
  if (name == "banded") return HrvMode::Banded;
  if (name == "linear") return HrvMode::Linear;
  throw std::invalid_argument("unknown VisualHRV mode: " + std::string(name));
}

void HrvConfig::validate() const {
  if (!(half_width > 0.0)) throw std::invalid_argument("hrv.half_width must be > 0");
  if (overload_window < 1) throw std::invalid_argument("hrv.overload_window must be >= 1");
  if (overload_penalty < 0.0) throw std::invalid_argument("hrv.overload_penalty must be >= 0");
}

double subband_shannon_entropy(std::span<const double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("entropy of an empty subband");
  const auto [lo_it, hi_it] = std::minmax_element(coeffs.begin(), coeffs.end());
  const double lo = *lo_it, hi = *hi_it;
  const double range = hi - lo;
  if (!(range > 0.0)) return 0.0;

  const auto bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(coeffs.size()))));
  std::vector<std::size_t> counts(bins, 0);
  const double scale = static_cast<double>(bins) / range;
  for (double v : coeffs) {
    auto idx = static_cast<std::size_t>((v - lo) * scale);
    if (idx >= bins) idx = bins - 1;
    ++counts[idx];
  }
  const double n = static_cast<double>(coeffs.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

LabPlanes lab_planes(const imaging::SlideImage& img) {
  LabPlanes planes{Plane(img.width(), img.height()), Plane(img.width(), img.height()),
                   Plane(img.width(), img.height())};
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const auto lab = imaging::rgb_to_lab_normalized(px[i]);
    planes.L.data[i] = lab.L;
    planes.a.data[i] = lab.a;
    planes.b.data[i] = lab.b;
  }
  return planes;
}

namespace {

double variance(const Plane& p) {
  const double n = static_cast<double>(p.size());
  const double mean = std::accumulate(p.data.begin(), p.data.end(), 0.0) / n;
  double acc = 0.0;
  for (double v : p.data) acc += (v - mean) * (v - mean);
  return acc / n;
}

ChannelEntropy channel_entropy(const Plane& plane, const PyramidConfig& pyr,
                               const EntropyConfig& ent) {
  ChannelEntropy out;
  out.variance = variance(plane);
  if (out.variance < ent.zero_threshold) return out;
  out.retained = true;
  const Pyramid bands = steerable_pyramid(plane, pyr, ent.include_residuals);
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& band : bands.bands) {
    acc += subband_shannon_entropy(band.coeffs.data);
    ++count;
  }
  if (ent.include_residuals) {
    acc += subband_shannon_entropy(bands.highpass.data);
    acc += subband_shannon_entropy(bands.lowpass.data);
    count += 2;
  }
  out.mean_entropy = acc / static_cast<double>(count);
  return out;
}

}  // namespace

SubbandEntropyResult subband_entropy(const imaging::SlideImage& img, const PyramidConfig& pyr,
                                     const EntropyConfig& ent) {
  ent.validate();
  pyr.validate();
  const LabPlanes planes = lab_planes(img);

  SubbandEntropyResult out;
  out.luminance = channel_entropy(planes.L, pyr, ent);
  out.a = channel_entropy(planes.a, pyr, ent);
  out.b = channel_entropy(planes.b, pyr, ent);

  double weighted = 0.0, weight = 0.0;
  auto add = [&](const ChannelEntropy& c, double w) {
    if (!c.retained) return;
    weighted += w * c.mean_entropy;
    weight += w;
  };
  add(out.luminance, ent.luminance_weight);
  add(out.a, ent.chroma_weight);
  add(out.b, ent.chroma_weight);
  if (weight > 0.0) {
    out.value = weighted / weight;
  } else {
    out.value = 0.0;
    out.blank = true;
  }
  return out;
}

double entropy_to_score(double e_se, const EntropyConfig& ent) {
  if (e_se < 0.0) throw std::invalid_argument("subband entropy must be >= 0");
  const double d = e_se - ent.optimal_mean;
  return std::exp(-(d * d) / (2.0 * ent.optimal_sigma * ent.optimal_sigma));
}

RmssdResult rmssd(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("rmssd of an empty sequence");
  if (scores.size() == 1) return {0.0, true};
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < scores.size(); ++i) {
    const double d = std::fabs(scores[i + 1] - scores[i]);
    acc += d * d;
  }
  return {std::sqrt(acc / static_cast<double>(scores.size() - 1)), false};
}

std::size_t overload_events(std::span<const double> scores, int window, double threshold) {
  if (window < 1) throw std::invalid_argument("overload window must be >= 1");
  const auto w = static_cast<std::size_t>(window);
  if (scores.size() < w) return 0;
  std::size_t events = 0;
  for (std::size_t j = 0; j + w <= scores.size(); ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < w; ++k) sum += scores[j + k];
    if (sum / static_cast<double>(w) > threshold) ++events;
  }
  return events;
}

std::string_view to_string(HrvBand band) {
  switch (band) {
    case HrvBand::Flatline: return "Flatline";
    case HrvBand::Healthy: return "Healthy";
    case HrvBand::Transitional: return "Transitional";
    case HrvBand::StrobeLight: return "Strobe Light";
  }
  return "Transitional";
}

HrvBand hrv_band(double r) {
  if (r < 0.01) return HrvBand::Flatline;
  if (r <= 0.1) return HrvBand::Healthy;
  if (r > 0.30) return HrvBand::StrobeLight;
  return HrvBand::Transitional;
}

VisualHrvResult visual_hrv_score(std::span<const double> scores, const HrvConfig& config) {
  config.validate();
  if (scores.empty()) throw std::invalid_argument("VisualHRV needs at least one slide");
  VisualHrvResult out;
  const auto r = rmssd(scores);
  out.rmssd = r.value;
  out.degenerate = r.degenerate;
  out.band = hrv_band(r.value);
  out.mean_entropy_score =
      std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
  out.overloads = overload_events(scores, config.overload_window, config.overload_threshold);
  if (config.mode == HrvMode::Banded) {
    out.score = 100.0 * (1.0 - std::fabs(out.rmssd - config.target) / config.half_width) -
                config.overload_penalty * static_cast<double>(out.overloads);
  } else {
    out.score = config.lambda_mean * out.mean_entropy_score + config.lambda_rmssd * out.rmssd;
  }
  return out;
}

}  // namespace slidebench::rhythm
