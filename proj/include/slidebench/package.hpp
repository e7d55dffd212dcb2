#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slidebench::pei {

/// Default 16:9 slide size in EMU, used when presentation.xml omits sldSz.
inline constexpr double kDefaultSlideWidth = 12192000.0;
inline constexpr double kDefaultSlideHeight = 6858000.0;

struct Relationship {
  std::string id;
  std::string type;    // last path segment of the relationship type URI, e.g. "slideLayout"
  std::string target;  // resolved part name for internal targets, raw value for external ones
  bool external = false;
};

struct Rect {
  double x = 0.0;
  double y = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  double area() const { return cx * cy; }
};

enum class ShapeKind { Shape, Picture, Connector, Group, GraphicFrame, Other };

struct Shape {
  ShapeKind kind = ShapeKind::Other;
  std::string element;  // qualified element name, e.g. "p:sp"
  bool placeholder = false;
  std::optional<Rect> xfrm;
  std::string geometry;  // preset name, "custom", or empty
  std::string fill;      // "solid:<color>", "blip:<part>", "grad", "none" or empty
  std::size_t paragraphs = 0;
  std::size_t text_runs = 0;  // runs carrying non-blank text
  bool raster = false;        // picture whose blip is a bitmap
  bool svg = false;           // picture carrying an SVG blip
  bool chart = false;
  std::string media_target;
  std::vector<Shape> children;  // group members

  bool has_text() const { return text_runs > 0; }
};

struct Slide {
  std::size_t index = 0;  // 1-based, presentation order
  std::string part;
  std::vector<Shape> shapes;  // children of the shape tree
  std::vector<Relationship> rels;
  std::optional<std::string> layout;
  bool has_transition = false;
  bool has_animation = false;  // timing tree containing animation behaviours
};

struct Layout {
  std::string part;
  std::optional<std::string> master;
  std::size_t shape_count = 0;
};

struct Master {
  std::string part;
  std::size_t shape_count = 0;
};

struct Chart {
  std::string part;
  std::size_t slide_index = 0;
  std::optional<std::string> workbook;  // resolved target of the embedded data link
  bool workbook_external = false;
  bool workbook_present = false;   // member exists and is non-empty
};

struct MediaRef {
  std::size_t slide_index = 0;
  std::string type;  // image, video, audio, media
  std::string target;
  bool external = false;
};

struct Defect {
  std::string part;
  std::string message;
};

struct PresentationPackage {
  double slide_width = kDefaultSlideWidth;
  double slide_height = kDefaultSlideHeight;
  std::vector<Slide> slides;
  std::map<std::string, Layout> layouts;
  std::map<std::string, Master> masters;
  std::vector<Chart> charts;
  std::vector<MediaRef> media;
  std::vector<Defect> defects;

  double slide_area() const { return slide_width * slide_height; }
};

/// Parse a presentation package. Throws CorruptPackageError when the bytes
/// are not a ZIP archive or the presentation part is missing or unreadable;
/// damage in any other part becomes a Defect.
PresentationPackage open_package(const std::vector<std::uint8_t>& bytes);

/// Resolve a relationship target against the part that owns it.
std::string resolve_target(const std::string& source_part, const std::string& target);

/// "ppt/slides/slide1.xml" -> "ppt/slides/_rels/slide1.xml.rels"
std::string rels_part_for(const std::string& part);

}  // namespace slidebench::pei
