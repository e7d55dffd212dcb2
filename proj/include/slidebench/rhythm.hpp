#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "slidebench/imaging.hpp"
#include "slidebench/pyramid.hpp"

namespace slidebench::rhythm {

struct EntropyConfig {
  double luminance_weight = 0.84;  // w_L
  double chroma_weight = 0.08;     // w_ab, applied to a' and b' each
  double zero_threshold = 0.008;   // channel variance below this is dropped
  double optimal_mean = 3.878;     // mu_opt, bits
  double optimal_sigma = 0.7300684899377592;  // sqrt(0.533)
  bool include_residuals = false;  // add highpass/lowpass residuals to the mean

  void validate() const;
};

enum class HrvMode { Banded, Linear };

std::string_view to_string(HrvMode mode);
HrvMode hrv_mode_from_string(std::string_view name);

struct HrvConfig {
  HrvMode mode = HrvMode::Banded;
  double lambda_mean = 0.5;   // linear mode, weight of mean S_entropy
  double lambda_rmssd = 0.5;  // linear mode, weight of RMSSD
  double target = 0.03;       // tau
  double half_width = 0.2;    // tau_w
  int overload_window = 3;    // w
  double overload_threshold = 0.75;  // theta
  double overload_penalty = 10.0;    // p

  void validate() const;
};

/// Shannon entropy (bits) of a histogram with ceil(sqrt(n)) equal-width bins
/// spanning [min, max]. A zero-range input has entropy 0.
double subband_shannon_entropy(std::span<const double> coeffs);

struct ChannelEntropy {
  double variance = 0.0;
  double mean_entropy = 0.0;
  bool retained = false;
};

struct SubbandEntropyResult {
  double value = 0.0;  // E_SE, bits
  bool blank = false;  // every channel fell below the zero threshold
  ChannelEntropy luminance;
  ChannelEntropy a;
  ChannelEntropy b;
};

/// Normalized Lab planes (L', a', b') of an image.
struct LabPlanes {
  Plane L;
  Plane a;
  Plane b;
};
LabPlanes lab_planes(const imaging::SlideImage& img);

SubbandEntropyResult subband_entropy(const imaging::SlideImage& img, const PyramidConfig& pyr,
                                     const EntropyConfig& ent);

/// Gaussian around the optimal complexity.
double entropy_to_score(double e_se, const EntropyConfig& ent);

struct RmssdResult {
  double value = 0.0;
  bool degenerate = false;  // single-slide deck
};

/// Root mean square of successive differences. Throws on empty input.
RmssdResult rmssd(std::span<const double> scores);

/// Number of length-w windows whose mean exceeds theta.
std::size_t overload_events(std::span<const double> scores, int window, double threshold);

enum class HrvBand { Flatline, Healthy, Transitional, StrobeLight };

std::string_view to_string(HrvBand band);
HrvBand hrv_band(double rmssd_value);

struct VisualHrvResult {
  double score = 0.0;
  double rmssd = 0.0;
  std::size_t overloads = 0;
  double mean_entropy_score = 0.0;
  HrvBand band = HrvBand::Flatline;
  bool degenerate = false;
};

VisualHrvResult visual_hrv_score(std::span<const double> scores, const HrvConfig& config);

}  // namespace slidebench::rhythm
