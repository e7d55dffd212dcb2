#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "slidebench/imaging.hpp"
#include "slidebench/layout.hpp"

namespace slidebench::sample {

struct SampleSlide {
  std::string stem;  // slide_01 ...
  imaging::SlideImage image;
  std::vector<layout::LayoutElement> layout;
  bool write_layout = true;
};

/// Six procedurally drawn 640x360 slides with layout sidecars for five of them.
std::vector<SampleSlide> sample_slides();

/// Writes `<stem>.png` and `<stem>.layout.json` files into `dir` (created if needed).
void write_sample_deck(const std::filesystem::path& dir);

std::string layout_json(const std::vector<layout::LayoutElement>& elements);

}  // namespace slidebench::sample
