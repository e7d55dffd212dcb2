#include "slidebench/sample_deck.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "slidebench/image_io.hpp"

namespace slidebench::sample {

using imaging::Rgb;
using imaging::SlideImage;

namespace {

constexpr std::size_t kW = 640;
constexpr std::size_t kH = 360;

void fill(SlideImage& img, std::size_t x0, std::size_t y0, std::size_t x1, std::size_t y1, Rgb c) {
  x1 = std::min(x1, img.width());
  y1 = std::min(y1, img.height());
  for (std::size_t y = y0; y < y1; ++y)
    for (std::size_t x = x0; x < x1; ++x) img.at(x, y) = c;
}

// Fake glyphs: short blocks with gaps, one row per text line.
layout::Box text_lines(SlideImage& img, std::size_t x0, std::size_t y0, std::size_t lines,
                       std::size_t line_h, std::size_t width, Rgb ink, std::mt19937& rng) {
  std::size_t max_x = x0;
  for (std::size_t l = 0; l < lines; ++l) {
    const std::size_t y = y0 + l * (line_h + line_h / 2);
    std::size_t x = x0;
    const std::size_t limit = x0 + width - (rng() % (width / 4 + 1));
    while (x + 4 < limit) {
      const std::size_t w = 3 + rng() % (line_h / 2 + 2);
      fill(img, x, y, std::min(x + w, limit), y + line_h, ink);
      x += w + 1 + ((rng() % 5 == 0) ? line_h / 2 : 1);
    }
    max_x = std::max(max_x, std::min(x, limit));
  }
  const std::size_t bottom = y0 + lines * (line_h + line_h / 2) - line_h / 2;
  return {static_cast<double>(x0) - 4, static_cast<double>(y0) - 4, static_cast<double>(max_x) + 4,
          static_cast<double>(bottom) + 4};
}

layout::LayoutElement element(const std::string& label, double score, layout::Box box) {
  layout::LayoutElement e;
  e.label = layout::label_from_string(label);
  e.raw_label = label;
  e.score = score;
  box.x_min = std::max(0.0, box.x_min);
  box.y_min = std::max(0.0, box.y_min);
  box.x_max = std::min(static_cast<double>(kW), box.x_max);
  box.y_max = std::min(static_cast<double>(kH), box.y_max);
  e.coordinate = box;
  return e;
}

}  // namespace

std::vector<SampleSlide> sample_slides() {
  std::mt19937 rng(20240601u);
  std::vector<SampleSlide> out;

  {  // title slide on navy
    SampleSlide s{"slide_01", SlideImage(kW, kH, Rgb{18, 32, 74}), {}};
    fill(s.image, 0, 300, kW, 308, Rgb{240, 170, 40});
    s.layout.push_back(element("doc_title", 0.93,
                               text_lines(s.image, 80, 120, 1, 28, 480, Rgb{255, 255, 255}, rng)));
    s.layout.push_back(element("text", 0.88, text_lines(s.image, 80, 190, 1, 14, 300, Rgb{200, 210, 230}, rng)));
    out.push_back(std::move(s));
  }
  {  // bullets on white
    SampleSlide s{"slide_02", SlideImage(kW, kH, Rgb{250, 250, 250}), {}};
    fill(s.image, 0, 0, kW, 56, Rgb{18, 32, 74});
    s.layout.push_back(element("doc_title", 0.91, text_lines(s.image, 40, 16, 1, 22, 360, Rgb{255, 255, 255}, rng)));
    s.layout.push_back(element("text", 0.95, text_lines(s.image, 60, 90, 6, 14, 500, Rgb{40, 40, 40}, rng)));
    s.layout.push_back(element("footer", 0.81, text_lines(s.image, 40, 336, 1, 8, 120, Rgb{140, 140, 140}, rng)));
    out.push_back(std::move(s));
  }
  {  // bar chart
    SampleSlide s{"slide_03", SlideImage(kW, kH, Rgb{255, 255, 255}), {}};
    s.layout.push_back(element("doc_title", 0.9, text_lines(s.image, 40, 20, 1, 22, 300, Rgb{18, 32, 74}, rng)));
    const Rgb bars[] = {{230, 97, 1}, {253, 184, 99}, {94, 60, 153}, {178, 171, 210}, {230, 97, 1}};
    for (std::size_t i = 0; i < 5; ++i) {
      const std::size_t h = 60 + (i * 37) % 180;
      fill(s.image, 80 + i * 100, 320 - h, 140 + i * 100, 320, bars[i]);
    }
    fill(s.image, 60, 320, 600, 322, Rgb{60, 60, 60});
    s.layout.push_back(element("image", 0.86, {60, 80, 600, 324}));
    out.push_back(std::move(s));
  }
  {  // photo-like gradient with noise and a caption
    SampleSlide s{"slide_04", SlideImage(kW, kH, Rgb{255, 255, 255}), {}};
    for (std::size_t y = 0; y < 300; ++y) {
      for (std::size_t x = 0; x < kW; ++x) {
        const double t = static_cast<double>(y) / 300.0;
        const int n = static_cast<int>(rng() % 25) - 12;
        auto ch = [&](double v) { return static_cast<std::uint8_t>(std::clamp(v + n, 0.0, 255.0)); };
        const bool hill = y > 200 - 40 * std::sin(static_cast<double>(x) / 90.0);
        s.image.at(x, y) = hill ? Rgb{ch(60 + 40 * t), ch(120 + 30 * t), ch(50)}
                                : Rgb{ch(120 + 100 * t), ch(170 + 60 * t), ch(235)};
      }
    }
    s.layout.push_back(element("image", 0.9, {0, 0, 640, 300}));
    s.layout.push_back(element("text", 0.84, text_lines(s.image, 40, 318, 1, 16, 420, Rgb{30, 30, 30}, rng)));
    out.push_back(std::move(s));
  }
  {  // two columns of colored panels
    SampleSlide s{"slide_05", SlideImage(kW, kH, Rgb{244, 241, 234}), {}};
    s.layout.push_back(element("doc_title", 0.92, text_lines(s.image, 40, 20, 1, 22, 380, Rgb{90, 30, 30}, rng)));
    fill(s.image, 40, 80, 310, 330, Rgb{196, 78, 82});
    fill(s.image, 330, 80, 600, 330, Rgb{72, 120, 170});
    s.layout.push_back(element("text", 0.9, text_lines(s.image, 60, 110, 5, 12, 220, Rgb{255, 255, 255}, rng)));
    s.layout.push_back(element("text", 0.89, text_lines(s.image, 350, 110, 5, 12, 220, Rgb{255, 255, 255}, rng)));
    out.push_back(std::move(s));
  }
  {  // closing slide, no sidecar
    SampleSlide s{"slide_06", SlideImage(kW, kH, Rgb{128, 128, 128}), {}, false};
    text_lines(s.image, 200, 160, 1, 26, 240, Rgb{250, 250, 250}, rng);
    out.push_back(std::move(s));
  }
  return out;
}

std::string layout_json(const std::vector<layout::LayoutElement>& elements) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : elements) {
    const auto& b = e.coordinate;
    arr.push_back({{"label", e.raw_label}, {"score", e.score},
                   {"coordinate", {b.x_min, b.y_min, b.x_max, b.y_max}}});
  }
  return nlohmann::json{{"elements", arr}}.dump(2) + "\n";
}

void write_sample_deck(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& s : sample_slides()) {
    image_io::write_png(s.image, dir / (s.stem + ".png"));
    if (!s.write_layout) continue;
    std::ofstream out(dir / (s.stem + ".layout.json"));
    if (!out) throw std::runtime_error("cannot write " + (dir / (s.stem + ".layout.json")).string());
    out << layout_json(s.layout);
  }
}

}  // namespace slidebench::sample
