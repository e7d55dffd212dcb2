#include "slidebench/layout.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace slidebench::layout {

using nlohmann::json;

std::string_view to_string(Label label) {
  switch (label) {
    case Label::Text: return "text";
    case Label::DocTitle: return "doc_title";
    case Label::Image: return "image";
    case Label::Footer: return "footer";
    case Label::Other: return "other";
  }
  return "other";
}

Label label_from_string(std::string_view name) {
  if (name == "text") return Label::Text;
  if (name == "doc_title") return Label::DocTitle;
  if (name == "image") return Label::Image;
  if (name == "footer") return Label::Footer;
  return Label::Other;
}

bool LayoutDocument::any_clamped() const {
  return std::any_of(elements.begin(), elements.end(),
                     [](const LayoutElement& e) { return e.clamped; });
}

LayoutParseError::LayoutParseError(const std::string& context, const std::string& what)
    : std::runtime_error(context + ": " + what), context_(context) {}

namespace {

std::string line_context(std::string_view text, std::size_t byte) {
  const std::size_t upto = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
  return "line " + std::to_string(line);
}

double number_field(const json& element, const char* field, const std::string& ctx) {
  if (!element.contains(field)) {
    throw LayoutParseError(ctx + "." + field, "missing field");
  }
  const json& v = element.at(field);
  if (!v.is_number()) {
    throw LayoutParseError(ctx + "." + field, "expected a number");
  }
  return v.get<double>();
}

}  // namespace

LayoutDocument parse_layout(std::string_view text, std::size_t slide_index,
                            std::optional<ImageExtent> extent) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw LayoutParseError(line_context(text, e.byte), e.what());
  }
  if (!root.is_object() || !root.contains("elements")) {
    throw LayoutParseError("root", "expected an object with an \"elements\" array");
  }
  const json& elements = root.at("elements");
  if (!elements.is_array()) {
    throw LayoutParseError("elements", "expected an array");
  }

  LayoutDocument doc;
  doc.slide_index = slide_index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string ctx = "elements[" + std::to_string(i) + "]";
    const json& el = elements[i];
    if (!el.is_object()) {
      throw LayoutParseError(ctx, "expected an object");
    }
    if (!el.contains("label") || !el.at("label").is_string()) {
      throw LayoutParseError(ctx + ".label", "missing or non-string label");
    }
    LayoutElement out;
    out.raw_label = el.at("label").get<std::string>();
    out.label = label_from_string(out.raw_label);
    out.score = number_field(el, "score", ctx);
    if (out.score < 0.0 || out.score > 1.0) {
      throw LayoutParseError(ctx + ".score", "score outside [0,1]");
    }
    if (!el.contains("coordinate") || !el.at("coordinate").is_array() ||
        el.at("coordinate").size() != 4) {
      throw LayoutParseError(ctx + ".coordinate", "expected [x_min, y_min, x_max, y_max]");
    }
    const json& c = el.at("coordinate");
    for (std::size_t k = 0; k < 4; ++k) {
      if (!c[k].is_number()) {
        throw LayoutParseError(ctx + ".coordinate", "non-numeric coordinate");
      }
    }
    out.coordinate = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>(),
                      c[3].get<double>()};
    if (!(out.coordinate.x_min < out.coordinate.x_max)) {
      throw LayoutParseError(ctx + ".coordinate", "x_min must be < x_max");
    }
    if (!(out.coordinate.y_min < out.coordinate.y_max)) {
      throw LayoutParseError(ctx + ".coordinate", "y_min must be < y_max");
    }
    if (extent) {
      Box clamped{std::clamp(out.coordinate.x_min, 0.0, extent->width),
                  std::clamp(out.coordinate.y_min, 0.0, extent->height),
                  std::clamp(out.coordinate.x_max, 0.0, extent->width),
                  std::clamp(out.coordinate.y_max, 0.0, extent->height)};
      if (!(clamped == out.coordinate)) {
        out.clamped = true;
        out.coordinate = clamped;
      }
    }
    doc.elements.push_back(std::move(out));
  }
  return doc;
}

LayoutDocument parse_layout_file(const std::filesystem::path& path, std::size_t slide_index,
                                 std::optional<ImageExtent> extent) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw LayoutParseError(path.string(), "cannot open layout file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_layout(buf.str(), slide_index, extent);
  } catch (const LayoutParseError& e) {
    throw LayoutParseError(path.filename().string() + ":" + e.context(), e.what());
  }
}

std::vector<Box> text_regions(const LayoutDocument& doc, double min_confidence) {
  std::vector<Box> out;
  for (const auto& e : doc.elements) {
    const bool textual =
        e.label == Label::Text || e.label == Label::DocTitle || e.label == Label::Footer;
    if (textual && e.score >= min_confidence) {
      out.push_back(e.coordinate);
    }
  }
  return out;
}

}  // namespace slidebench::layout
