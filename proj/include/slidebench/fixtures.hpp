#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slidebench/package.hpp"

namespace slidebench::pei {

enum class WorkbookLink { Embedded, Missing, None };

/// Writes small but well-formed presentation packages: one master, one
/// layout, a theme, and whatever slide content is added through the calls.
class PackageBuilder {
 public:
  explicit PackageBuilder(double width = kDefaultSlideWidth, double height = kDefaultSlideHeight);

  std::size_t add_slide();

  void text_box(std::size_t slide, const Rect& r, const std::vector<std::string>& paragraphs);
  void shape(std::size_t slide, const Rect& r, const std::string& geometry = "rect",
             const std::string& color = "4472C4");
  void freeform(std::size_t slide, const Rect& r);
  void connector(std::size_t slide, const Rect& r);
  void picture(std::size_t slide, const Rect& r, const std::string& media_name = "");
  void svg_picture(std::size_t slide, const Rect& r);
  void group(std::size_t slide, const Rect& r, int members);
  void chart(std::size_t slide, const Rect& r, WorkbookLink link = WorkbookLink::Embedded);
  void external_video(std::size_t slide, const Rect& r, const std::string& path);
  void transition(std::size_t slide);
  void animation(std::size_t slide);
  void master_background(const std::string& color);

  std::size_t slide_count() const { return slides_.size(); }
  std::vector<std::uint8_t> build() const;

 private:
  struct Rel {
    std::string id;
    std::string type;
    std::string target;
    bool external = false;
  };
  struct SlideState {
    std::vector<std::string> shapes;
    std::vector<Rel> rels;
    bool transition = false;
    bool animation = false;
    int next_id = 2;
  };

  std::string add_rel(SlideState& s, const std::string& type, const std::string& target,
                      bool external = false);
  SlideState& at(std::size_t slide);
  std::string media_part(const std::string& name);

  double width_;
  double height_;
  std::vector<SlideState> slides_;
  std::vector<std::string> media_;
  struct ChartState {
    WorkbookLink link;
  };
  std::vector<ChartState> charts_;
  std::string master_background_;
};

/// Names of the built-in fixtures: level fixtures "l0".."l5" plus one per
/// gate example, e.g. "t1_fragmented".
std::vector<std::string> fixture_names();

/// File name with the proper extension for a fixture ("l0.pdf", "l3.pptx").
std::string fixture_filename(const std::string& name);

std::vector<std::uint8_t> build_fixture(const std::string& name);

/// Repoint every chart's embedded-workbook relationship at a member that
/// does not exist.
std::vector<std::uint8_t> break_workbook_links(const std::vector<std::uint8_t>& package);

/// A tiny PDF that triage classifies as static.
std::vector<std::uint8_t> pdf_stub();

}  // namespace slidebench::pei
