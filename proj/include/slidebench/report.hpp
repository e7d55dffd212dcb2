#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slidebench/pei.hpp"

namespace slidebench::report {

struct SlideRecord {
  std::size_t index = 0;  // 1-based
  std::string file;
  std::size_t width = 0;
  std::size_t height = 0;

  std::string harmony_template;
  double harmony_alpha = 0.0;
  double harmony_distance = 0.0;
  double harmony_score = 0.0;
  bool achromatic = false;

  double colorfulness = 0.0;

  std::optional<double> usability;
  std::size_t text_regions = 0;
  std::string layout_status;  // ok, missing, no_text_regions, or "error: ..."

  std::optional<double> subband_entropy;
  bool entropy_blank = false;
  std::optional<double> entropy_score;
  std::string entropy_status;  // ok or "error: ..."

  bool operator==(const SlideRecord&) const = default;
};

struct Components {
  std::optional<double> usability;
  double engagement = 0.0;
  double harmony = 0.0;
  std::optional<double> rhythm;

  bool operator==(const Components&) const = default;
};

struct RhythmDetails {
  double hrv_score = 0.0;
  double rmssd = 0.0;
  std::size_t overloads = 0;
  double mean_entropy_score = 0.0;
  std::string band;
  bool degenerate = false;

  bool operator==(const RhythmDetails&) const = default;
};

struct DeckReport {
  std::string tool_version;
  std::string profile;
  int profile_version = 1;
  std::string topic;
  std::string system;

  std::vector<SlideRecord> slides;

  Components raw;      // full precision
  Components rounded;  // two decimals, as reported
  double aesthetics = 0.0;

  double harmony_mean = 0.0;
  double harmony_std = 0.0;
  double colorfulness_mean = 0.0;
  double colorfulness_std = 0.0;
  double pacing = 0.0;
  std::optional<RhythmDetails> rhythm;

  std::vector<std::string> flags;
  std::optional<pei::PeiReport> pei;
  std::string pei_error;

  std::vector<std::pair<std::string, std::string>> config;

  bool operator==(const DeckReport&) const = default;
};

double round2(double v);

Components round_components(const Components& raw);

/// Sum of the rounded components; an unavailable component contributes 0.
double aesthetics_total(const Components& rounded);

/// Fill raw, rounded and aesthetics from raw component values.
void set_components(DeckReport& report, const Components& raw);

enum class Format { Struct, Table };

Format format_from_string(std::string_view name);

std::string to_json(const DeckReport& report);
DeckReport from_json(const std::string& text);

extern const char* const kTableHeader;
std::string to_table(std::span<const DeckReport> reports);

std::string emit_report(const DeckReport& report, Format format);

std::string pei_to_json(const pei::PeiReport& report);
pei::PeiReport pei_from_json(const std::string& text);
/// "input,route,max_level,level,T1,T2,T3,T4,T5" rows.
std::string pei_table(std::span<const pei::PeiReport> reports);

}  // namespace slidebench::report
