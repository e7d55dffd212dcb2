#include "slidebench/pei.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "slidebench/zip.hpp"

namespace slidebench::pei {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string fmt(double v, int digits = 1) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

Rect clip(const Rect& r, double w, double h) {
  const double x0 = std::clamp(r.x, 0.0, w), y0 = std::clamp(r.y, 0.0, h);
  const double x1 = std::clamp(r.x + r.cx, 0.0, w), y1 = std::clamp(r.y + r.cy, 0.0, h);
  return {x0, y0, std::max(0.0, x1 - x0), std::max(0.0, y1 - y0)};
}

// Area of a union of rectangles by coordinate compression.
double union_area(const std::vector<Rect>& rects) {
  std::vector<double> xs, ys;
  for (const auto& r : rects) {
    if (r.area() <= 0) continue;
    xs.push_back(r.x);
    xs.push_back(r.x + r.cx);
    ys.push_back(r.y);
    ys.push_back(r.y + r.cy);
  }
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const double cx = (xs[i] + xs[i + 1]) / 2, cy = (ys[j] + ys[j + 1]) / 2;
      for (const auto& r : rects) {
        if (cx > r.x && cx < r.x + r.cx && cy > r.y && cy < r.y + r.cy) {
          area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
          break;
        }
      }
    }
  }
  return area;
}

template <typename Fn>
void for_each_shape(const std::vector<Shape>& shapes, Fn&& fn) {
  for (const auto& s : shapes) {
    fn(s);
    if (s.kind == ShapeKind::Group) for_each_shape(s.children, fn);
  }
}

std::size_t slide_text_runs(const Slide& slide) {
  std::size_t runs = 0;
  for_each_shape(slide.shapes, [&](const Shape& s) { runs += s.text_runs; });
  return runs;
}

double raster_coverage(const Slide& slide, const PresentationPackage& pkg) {
  // only top-level pictures carry slide coordinates
  std::vector<Rect> rects;
  for (const auto& s : slide.shapes) {
    if (s.kind == ShapeKind::Picture && s.raster && s.xfrm) {
      rects.push_back(clip(*s.xfrm, pkg.slide_width, pkg.slide_height));
    }
  }
  return union_area(rects) / pkg.slide_area();
}

bool is_single_line_box(const Shape& s) {
  return s.kind == ShapeKind::Shape && s.has_text() && s.paragraphs == 1 && s.xfrm &&
         s.xfrm->cy > 0;
}

// Longest run of left-aligned, tightly stacked one-paragraph text boxes
// among siblings of one container.
std::size_t longest_stack(const std::vector<Shape>& siblings, double left_tol, double gap_factor) {
  std::vector<Rect> boxes;
  for (const auto& s : siblings) {
    if (is_single_line_box(s)) boxes.push_back(*s.xfrm);
  }
  std::size_t best = 0;
  for (const auto& anchor : boxes) {
    std::vector<Rect> col;
    for (const auto& b : boxes) {
      if (std::fabs(b.x - anchor.x) <= left_tol) col.push_back(b);
    }
    std::sort(col.begin(), col.end(), [](const Rect& a, const Rect& b) { return a.y < b.y; });
    std::size_t run = col.empty() ? 0 : 1;
    best = std::max(best, run);
    for (std::size_t i = 1; i < col.size(); ++i) {
      const double gap = col[i].y - (col[i - 1].y + col[i - 1].cy);
      const double h = std::max(col[i - 1].cy, col[i].cy);
      run = gap < gap_factor * h ? run + 1 : 1;
      best = std::max(best, run);
    }
  }
  for (const auto& s : siblings) {
    if (s.kind == ShapeKind::Group) {
      best = std::max(best, longest_stack(s.children, left_tol, gap_factor));
    }
  }
  return best;
}

bool is_full_bleed(const Shape& s, const PresentationPackage& pkg, double threshold) {
  if (!s.xfrm) return false;
  return clip(*s.xfrm, pkg.slide_width, pkg.slide_height).area() / pkg.slide_area() >= threshold;
}

bool is_vector(const Shape& s) {
  switch (s.kind) {
    case ShapeKind::Connector: return true;
    case ShapeKind::Picture: return s.svg;
    case ShapeKind::GraphicFrame: return s.chart;
    case ShapeKind::Shape: return s.geometry == "custom" || (!s.has_text() && !s.placeholder);
    default: return false;
  }
}

struct Signature {
  std::string key;
  double x, y, cx, cy;  // fractions of slide size
};

std::vector<Signature> decorative_signatures(const Slide& slide, const PresentationPackage& pkg) {
  std::vector<Signature> out;
  for (const auto& s : slide.shapes) {
    if (s.placeholder || s.has_text() || !s.xfrm) continue;
    if (s.kind != ShapeKind::Shape && s.kind != ShapeKind::Picture &&
        s.kind != ShapeKind::Connector) {
      continue;
    }
    const std::string key = s.element + "|" + s.geometry + "|" + s.fill;
    out.push_back({key, s.xfrm->x / pkg.slide_width, s.xfrm->y / pkg.slide_height,
                   s.xfrm->cx / pkg.slide_width, s.xfrm->cy / pkg.slide_height});
  }
  return out;
}

bool same_signature(const Signature& a, const Signature& b, double tol) {
  return a.key == b.key && std::fabs(a.x - b.x) <= tol && std::fabs(a.y - b.y) <= tol &&
         std::fabs(a.cx - b.cx) <= tol && std::fabs(a.cy - b.cy) <= tol;
}

GateResult make(int gate) {
  GateResult g;
  g.gate = gate;
  return g;
}

void finish(GateResult& g, bool failed) {
  g.status = failed ? GateStatus::Failed : GateStatus::Passed;
}

}  // namespace

std::string_view to_string(Route route) {
  switch (route) {
    case Route::Static: return "static";
    case Route::Web: return "web";
    case Route::Native: return "native";
  }
  return "static";
}

std::string_view to_string(GateStatus status) {
  switch (status) {
    case GateStatus::Passed: return "passed";
    case GateStatus::Failed: return "failed";
    case GateStatus::Unevaluated: return "unevaluated";
  }
  return "unevaluated";
}

UnsupportedFormatError::UnsupportedFormatError(const std::string& input)
    : std::invalid_argument("unsupported input format for '" + input +
                            "'; supported: .pdf, .png, .jpg, .jpeg (static), .pptx, .potx "
                            "(native), http(s):// URLs (web)") {}

void PeiConfig::validate() const {
  auto frac = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must be in [0,1]");
  };
  frac(raster_coverage, "pei.raster_coverage");
  frac(raster_slide_fraction, "pei.raster_slide_fraction");
  frac(fragment_left_tolerance, "pei.fragment_left_tolerance");
  frac(background_coverage, "pei.background_coverage");
  frac(duplicate_position_tolerance, "pei.duplicate_position_tolerance");
  frac(duplicate_slide_fraction, "pei.duplicate_slide_fraction");
  if (fragment_min_boxes < 2) throw std::invalid_argument("pei.fragment_min_boxes must be >= 2");
  if (!(fragment_gap_factor > 0)) throw std::invalid_argument("pei.fragment_gap_factor must be > 0");
  if (duplicate_min_slides < 1) throw std::invalid_argument("pei.duplicate_min_slides must be >= 1");
  if (group_shape_limit < 0) throw std::invalid_argument("pei.group_shape_limit must be >= 0");
}

TriageRoute triage(const std::string& input, const std::vector<std::uint8_t>* head) {
  const std::string l = lower(input);
  if (l.rfind("http://", 0) == 0 || l.rfind("https://", 0) == 0) return {Route::Web, 2, false};

  const auto dot = l.rfind('.');
  const auto slash = l.find_last_of("/\\");
  std::string ext;
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) ext = l.substr(dot + 1);
  if (ext == "pdf" || ext == "png" || ext == "jpg" || ext == "jpeg") return {Route::Static, 0, true};
  if (ext == "pptx" || ext == "potx") return {Route::Native, 5, true};

  if (head && head->size() >= 4) {
    const auto& b = *head;
    if (b[0] == '%' && b[1] == 'P' && b[2] == 'D' && b[3] == 'F') return {Route::Static, 0, true};
    if (b[0] == 0x89 && b[1] == 'P' && b[2] == 'N' && b[3] == 'G') return {Route::Static, 0, true};
    if (b[0] == 0xFF && b[1] == 0xD8) return {Route::Static, 0, true};
    if (looks_like_zip(b)) {
      try {
        if (ZipArchive(b).contains("ppt/presentation.xml")) return {Route::Native, 5, true};
      } catch (const CorruptPackageError&) {
      }
    }
  }
  throw UnsupportedFormatError(input);
}

GateResult gate_t1_text_integrity(const PresentationPackage& pkg, const PeiConfig& cfg) {
  GateResult g = make(1);
  const double left_tol = cfg.fragment_left_tolerance * pkg.slide_width;

  std::size_t total_runs = 0, raster_slides = 0;
  bool fragmented = false;
  for (const auto& slide : pkg.slides) {
    const std::size_t runs = slide_text_runs(slide);
    total_runs += runs;
    const double cover = raster_coverage(slide, pkg);
    if (cover >= cfg.raster_coverage) ++raster_slides;
    const std::size_t stack = longest_stack(slide.shapes, left_tol, cfg.fragment_gap_factor);
    if (stack >= static_cast<std::size_t>(cfg.fragment_min_boxes)) {
      fragmented = true;
      g.evidence.push_back({slide.index, "fragmented text: " + std::to_string(stack) +
                                             " stacked single-line text boxes share a left edge"});
    }
  }
  const bool rasterized =
      !pkg.slides.empty() && total_runs == 0 &&
      static_cast<double>(raster_slides) >=
          cfg.raster_slide_fraction * static_cast<double>(pkg.slides.size());
  if (rasterized) {
    g.evidence.insert(g.evidence.begin(),
                      {0, "rasterized text: no text runs while raster pictures cover >= " +
                              fmt(cfg.raster_coverage * 100, 0) + "% of " +
                              std::to_string(raster_slides) + "/" +
                              std::to_string(pkg.slides.size()) + " slides"});
  }
  if (!rasterized && !fragmented) {
    for (const auto& slide : pkg.slides) {
      g.evidence.push_back({slide.index, std::to_string(slide_text_runs(slide)) + " text runs, " +
                                             fmt(raster_coverage(slide, pkg) * 100) +
                                             "% raster coverage"});
    }
  }
  finish(g, rasterized || fragmented);
  return g;
}

GateResult gate_t2_vector(const PresentationPackage& pkg, const PeiConfig& cfg) {
  GateResult g = make(2);
  std::size_t raster = 0, vector = 0, exempt = 0;
  for (const auto& slide : pkg.slides) {
    const bool has_other_content = std::count_if(slide.shapes.begin(), slide.shapes.end(),
                                                 [&](const Shape& s) {
                                                   return !is_full_bleed(s, pkg, cfg.background_coverage) ||
                                                          s.kind != ShapeKind::Picture;
                                                 }) > 0;
    for_each_shape(slide.shapes, [&](const Shape& s) {
      if (s.kind == ShapeKind::Picture && s.raster) {
        if (has_other_content && is_full_bleed(s, pkg, cfg.background_coverage)) {
          ++exempt;
        } else {
          ++raster;
        }
      } else if (is_vector(s)) {
        ++vector;
      }
    });
  }
  const bool failed = vector == 0 && raster > 0 && 2 * raster > raster + vector;
  g.evidence.push_back({0, std::to_string(raster) + " raster pictures, " + std::to_string(vector) +
                               " vector elements, " + std::to_string(exempt) +
                               " background pictures exempt"});
  if (failed) g.evidence.push_back({0, "graphics are raster-only: no vector shapes, freeforms or connectors"});
  finish(g, failed);
  return g;
}

GateResult gate_t3_structure(const PresentationPackage& pkg, const PeiConfig& cfg) {
  GateResult g = make(3);
  bool failed = false;

  for (const auto& slide : pkg.slides) {
    bool resolved = false;
    if (slide.layout) {
      auto it = pkg.layouts.find(*slide.layout);
      resolved = it != pkg.layouts.end() && it->second.master.has_value();
    }
    if (!resolved) {
      failed = true;
      g.evidence.push_back({slide.index, "no master inheritance: slide does not resolve to a master"});
    }
  }

  const std::size_t n = pkg.slides.size();
  if (n >= static_cast<std::size_t>(cfg.duplicate_min_slides)) {
    std::vector<std::vector<Signature>> sigs;
    for (const auto& slide : pkg.slides) sigs.push_back(decorative_signatures(slide, pkg));
    const auto needed = static_cast<std::size_t>(
        std::ceil(cfg.duplicate_slide_fraction * static_cast<double>(n) - 1e-9));
    std::vector<Signature> reported;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& sig : sigs[i]) {
        if (std::any_of(reported.begin(), reported.end(), [&](const Signature& r) {
              return same_signature(r, sig, cfg.duplicate_position_tolerance);
            })) {
          continue;
        }
        std::size_t hits = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (std::any_of(sigs[j].begin(), sigs[j].end(), [&](const Signature& o) {
                return same_signature(o, sig, cfg.duplicate_position_tolerance);
              })) {
            ++hits;
          }
        }
        if (hits >= needed) {
          failed = true;
          reported.push_back(sig);
          g.evidence.push_back({0, "hardcoded background: shape " + sig.key + " repeated on " +
                                       std::to_string(hits) + "/" + std::to_string(n) +
                                       " slides instead of living in a master or layout"});
        }
      }
    }
  }

  for (const auto& slide : pkg.slides) {
    const bool has_group = std::any_of(slide.shapes.begin(), slide.shapes.end(),
                                       [](const Shape& s) { return s.kind == ShapeKind::Group; });
    if (slide.shapes.size() > static_cast<std::size_t>(cfg.group_shape_limit) && !has_group) {
      failed = true;
      g.evidence.push_back({slide.index, "atomic isolation: " + std::to_string(slide.shapes.size()) +
                                             " loose shapes and no group"});
    }
  }
  if (!failed) {
    g.evidence.push_back({0, std::to_string(pkg.layouts.size()) + " layouts, " +
                                 std::to_string(pkg.masters.size()) +
                                 " masters; every slide inherits from a master"});
  }
  finish(g, failed);
  return g;
}

GateResult gate_t4_parametric(const PresentationPackage& pkg, const PeiConfig&) {
  GateResult g = make(4);
  bool failed = false;
  if (pkg.charts.empty()) {
    failed = true;
    g.evidence.push_back({0, "no native chart parts"});
  }
  for (const auto& c : pkg.charts) {
    if (!c.workbook) {
      failed = true;
      g.evidence.push_back({c.slide_index, "broken data link: " + c.part + " has no embedded workbook"});
    } else if (c.workbook_external) {
      failed = true;
      g.evidence.push_back({c.slide_index, "broken data link: " + c.part +
                                               " links an external workbook " + *c.workbook});
    } else if (!c.workbook_present) {
      failed = true;
      g.evidence.push_back({c.slide_index, "broken data link: " + c.part + " workbook " +
                                               *c.workbook + " is missing or empty"});
    } else {
      g.evidence.push_back({c.slide_index, c.part + " -> " + *c.workbook});
    }
  }
  finish(g, failed);
  return g;
}

GateResult gate_t5_cinematic(const PresentationPackage& pkg, const PeiConfig&) {
  GateResult g = make(5);
  std::size_t transitions = 0, animated = 0;
  for (const auto& s : pkg.slides) {
    transitions += s.has_transition;
    animated += s.has_animation;
  }
  bool failed = false;
  if (transitions == 0 && animated == 0) {
    failed = true;
    g.evidence.push_back({0, "static state: no transitions or animation timing on any slide"});
  } else {
    g.evidence.push_back({0, std::to_string(transitions) + " slides with transitions, " +
                                 std::to_string(animated) + " with animation"});
  }
  for (const auto& m : pkg.media) {
    if (m.external) {
      failed = true;
      g.evidence.push_back({m.slide_index, "external dependency: " + m.type + " linked to " + m.target});
    }
  }
  finish(g, failed);
  return g;
}

bool PeiReport::operator==(const PeiReport& o) const {
  if (defects.size() != o.defects.size()) return false;
  for (std::size_t i = 0; i < defects.size(); ++i) {
    if (defects[i].part != o.defects[i].part || defects[i].message != o.defects[i].message) {
      return false;
    }
  }
  return input == o.input && route == o.route && max_level == o.max_level && level == o.level &&
         note == o.note && gates == o.gates;
}

PeiReport evaluate_package(const PresentationPackage& pkg, const PeiConfig& cfg) {
  cfg.validate();
  PeiReport r;
  r.route = Route::Native;
  r.max_level = 5;
  r.defects = pkg.defects;
  for (int i = 0; i < 5; ++i) r.gates[i].gate = i + 1;

  using GateFn = GateResult (*)(const PresentationPackage&, const PeiConfig&);
  const GateFn gates[5] = {gate_t1_text_integrity, gate_t2_vector, gate_t3_structure,
                           gate_t4_parametric, gate_t5_cinematic};
  int level = 0;
  for (int i = 0; i < 5; ++i) {
    r.gates[i] = gates[i](pkg, cfg);
    if (!r.gates[i].passed()) break;
    ++level;
  }
  r.level = std::min(level, r.max_level);
  return r;
}

namespace {

PeiReport static_report(const std::string& input, const TriageRoute& t) {
  PeiReport r;
  r.input = input;
  r.route = t.route;
  r.max_level = t.max_level;
  for (int i = 0; i < 5; ++i) r.gates[i].gate = i + 1;
  if (t.route == Route::Static) {
    r.level = 0;
    r.note = "static format: immediate termination at L0";
  } else {
    r.note = "not evaluable: requires interactive inspection (maximum attainable L2)";
  }
  return r;
}

}  // namespace

PeiReport evaluate_pei(const std::string& name, const std::vector<std::uint8_t>& bytes,
                       const PeiConfig& cfg) {
  const TriageRoute t = triage(name, &bytes);
  if (t.route != Route::Native) return static_report(name, t);
  PeiReport r = evaluate_package(open_package(bytes), cfg);
  r.input = name;
  return r;
}

PeiReport evaluate_pei_file(const std::string& input, const PeiConfig& cfg) {
  try {
    const TriageRoute t = triage(input);
    if (t.route != Route::Native) return static_report(input, t);
  } catch (const UnsupportedFormatError&) {
    // unknown extension: sniff the bytes below
  }
  std::ifstream in(input, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input: " + input);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return evaluate_pei(input, bytes, cfg);
}

std::string level_label(const std::optional<int>& level) {
  return level ? "L" + std::to_string(*level) : "N/A";
}

}  // namespace slidebench::pei
