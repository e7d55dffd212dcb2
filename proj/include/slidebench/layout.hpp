#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slidebench::layout {

enum class Label { Text, DocTitle, Image, Footer, Other };

std::string_view to_string(Label label);
/// Unknown names map to Label::Other.
Label label_from_string(std::string_view name);

struct Box {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  friend bool operator==(const Box&, const Box&) = default;
};

struct LayoutElement {
  Label label = Label::Other;
  /// Label as written in the file; kept so "other" elements stay auditable.
  std::string raw_label;
  double score = 0.0;
  Box coordinate;
  /// Set when the box was clamped to the image extent.
  bool clamped = false;
};

struct LayoutDocument {
  std::size_t slide_index = 0;
  std::vector<LayoutElement> elements;
  bool any_clamped() const;
};

struct ImageExtent {
  double width = 0.0;
  double height = 0.0;
};

/// Malformed layout file. `context` names the element index and field.
class LayoutParseError : public std::runtime_error {
 public:
  LayoutParseError(const std::string& context, const std::string& what);
  const std::string& context() const { return context_; }

 private:
  std::string context_;
};

/// Parses a sidecar `{"elements": [{"label", "score", "coordinate"}...]}`.
/// When `extent` is given, boxes are clamped to it and flagged.
LayoutDocument parse_layout(std::string_view text, std::size_t slide_index = 0,
                            std::optional<ImageExtent> extent = std::nullopt);
LayoutDocument parse_layout_file(const std::filesystem::path& path, std::size_t slide_index = 0,
                                 std::optional<ImageExtent> extent = std::nullopt);

inline constexpr double kDefaultMinConfidence = 0.5;

/// Boxes labelled text, doc_title or footer with score >= min_confidence,
/// in document order.
std::vector<Box> text_regions(const LayoutDocument& doc,
                              double min_confidence = kDefaultMinConfidence);

}  // namespace slidebench::layout
