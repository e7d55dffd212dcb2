#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slidebench/config.hpp"
#include "slidebench/report.hpp"

namespace slidebench::deck {

/// Bad deck input (empty directory, unreadable or undecodable file). The
/// message names the offending path.
class DeckError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SlideEntry {
  std::filesystem::path image;
  std::optional<std::filesystem::path> layout;
};

struct DeckSequence {
  std::string topic;
  std::string system;
  std::vector<SlideEntry> slides;
  std::optional<std::filesystem::path> package;
  std::vector<std::string> missing_sidecars;  // image file names without a layout
};

/// "slide_2" < "slide_10".
bool natural_less(const std::string& a, const std::string& b);

/// Loads a directory of PNG/JPEG slides, or a JSON manifest:
///   {"topic": "...", "system": "...", "package": "deck.pptx",
///    "slides": [{"image": "p1.png", "layout": "p1.layout.json"}, ...]}
/// Relative manifest paths resolve against the manifest's directory.
/// Sidecars for directory input are `<stem>.layout.json` or `<stem>.json`,
/// looked up in `layout_dir` when given, otherwise next to the images.
DeckSequence load_deck(const std::filesystem::path& input,
                       const std::optional<std::filesystem::path>& layout_dir = std::nullopt,
                       const std::optional<std::filesystem::path>& package = std::nullopt);

/// Per-slide metrics run in parallel; deck reductions run in slide order.
report::DeckReport evaluate_deck(const DeckSequence& deck, const config::Config& cfg);

}  // namespace slidebench::deck
