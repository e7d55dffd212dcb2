#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slidebench/package.hpp"

namespace slidebench::pei {

enum class Route { Static, Web, Native };

std::string_view to_string(Route route);

struct TriageRoute {
  Route route = Route::Static;
  int max_level = 0;
  bool evaluable = true;
};

class UnsupportedFormatError : public std::invalid_argument {
 public:
  explicit UnsupportedFormatError(const std::string& input);
};

/// Classify an input by URL scheme or extension, falling back to sniffing the
/// leading bytes when the extension is unknown.
TriageRoute triage(const std::string& input, const std::vector<std::uint8_t>* head = nullptr);

struct PeiConfig {
  double raster_coverage = 0.95;       // picture union over slide area counted as full-page raster
  double raster_slide_fraction = 0.5;  // share of slides that must be full-page raster
  int fragment_min_boxes = 4;
  double fragment_left_tolerance = 0.01;  // fraction of slide width
  double fragment_gap_factor = 1.5;       // vertical gap < factor * box height
  double background_coverage = 0.95;      // full-bleed picture exempt from raster count
  double duplicate_position_tolerance = 0.005;  // fraction of slide size
  double duplicate_slide_fraction = 0.8;
  int duplicate_min_slides = 3;
  int group_shape_limit = 15;

  void validate() const;
};

enum class GateStatus { Passed, Failed, Unevaluated };

std::string_view to_string(GateStatus status);

struct Finding {
  std::size_t slide = 0;  // 0 = whole deck
  std::string text;

  bool operator==(const Finding&) const = default;
};

struct GateResult {
  int gate = 0;  // 1..5
  GateStatus status = GateStatus::Unevaluated;
  std::vector<Finding> evidence;

  bool passed() const { return status == GateStatus::Passed; }
  bool operator==(const GateResult&) const = default;
};

GateResult gate_t1_text_integrity(const PresentationPackage& pkg, const PeiConfig& cfg = {});
GateResult gate_t2_vector(const PresentationPackage& pkg, const PeiConfig& cfg = {});
GateResult gate_t3_structure(const PresentationPackage& pkg, const PeiConfig& cfg = {});
GateResult gate_t4_parametric(const PresentationPackage& pkg, const PeiConfig& cfg = {});
GateResult gate_t5_cinematic(const PresentationPackage& pkg, const PeiConfig& cfg = {});

struct PeiReport {
  std::string input;
  Route route = Route::Static;
  int max_level = 0;
  std::optional<int> level;  // empty when the route is not evaluable
  std::string note;
  std::array<GateResult, 5> gates;
  std::vector<Defect> defects;

  bool operator==(const PeiReport& o) const;
};

/// Knockout evaluation of an already opened package.
PeiReport evaluate_package(const PresentationPackage& pkg, const PeiConfig& cfg = {});

/// Evaluate from an in-memory input; `name` drives triage.
PeiReport evaluate_pei(const std::string& name, const std::vector<std::uint8_t>& bytes,
                       const PeiConfig& cfg = {});

/// Evaluate a path or URL. Static inputs with a known extension are never read.
PeiReport evaluate_pei_file(const std::string& input, const PeiConfig& cfg = {});

std::string level_label(const std::optional<int>& level);

}  // namespace slidebench::pei
