#include "slidebench/deck.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "slidebench/engagement.hpp"
#include "slidebench/harmony.hpp"
#include "slidebench/image_io.hpp"
#include "slidebench/layout.hpp"
#include "slidebench/pei.hpp"
#include "slidebench/rhythm.hpp"
#include "slidebench/usability.hpp"

namespace slidebench::deck {

namespace fs = std::filesystem;

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      // strip leading zeros, then compare by length and digits
      std::size_t is = i, js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      const std::size_t la = ie - is, lb = je - js;
      if (la != lb) return la < lb;
      const int c = a.compare(is, la, b, js, lb);
      if (c != 0) return c < 0;
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      const auto ca = static_cast<unsigned char>(std::tolower(static_cast<unsigned char>(a[i])));
      const auto cb = static_cast<unsigned char>(std::tolower(static_cast<unsigned char>(b[j])));
      if (ca != cb) return ca < cb;
      ++i;
      ++j;
    }
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

namespace {

bool is_image_name(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

void check_image_magic(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DeckError("cannot read slide image: " + p.string());
  std::array<unsigned char, 8> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  const auto n = in.gcount();
  const bool png = n >= 8 && head[0] == 0x89 && head[1] == 'P' && head[2] == 'N' && head[3] == 'G';
  const bool jpeg = n >= 3 && head[0] == 0xFF && head[1] == 0xD8 && head[2] == 0xFF;
  if (!png && !jpeg) throw DeckError("not a PNG or JPEG image: " + p.string());
}

std::optional<fs::path> find_sidecar(const fs::path& dir, const fs::path& image) {
  const std::string stem = image.stem().string();
  for (const auto& name : {stem + ".layout.json", stem + ".json"}) {
    const fs::path candidate = dir / name;
    if (fs::is_regular_file(candidate)) return candidate;
  }
  return std::nullopt;
}

DeckSequence load_manifest(const fs::path& path, const std::optional<fs::path>& layout_dir) {
  std::ifstream in(path);
  if (!in) throw DeckError("cannot read deck manifest: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DeckError("malformed deck manifest " + path.string() + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& s) {
    const fs::path p(s);
    return p.is_absolute() ? p : base / p;
  };
  DeckSequence deck;
  try {
    deck.topic = j.value("topic", base.filename().string());
    deck.system = j.value("system", std::string());
    if (j.contains("package") && !j["package"].is_null()) deck.package = resolve(j["package"].get<std::string>());
    for (const auto& s : j.at("slides")) {
      SlideEntry e;
      e.image = resolve(s.at("image").get<std::string>());
      if (s.contains("layout") && !s["layout"].is_null()) {
        e.layout = resolve(s["layout"].get<std::string>());
      } else if (layout_dir) {
        e.layout = find_sidecar(*layout_dir, e.image);
      }
      deck.slides.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DeckError("malformed deck manifest " + path.string() + ": " + e.what());
  }
  if (deck.slides.empty()) throw DeckError("deck manifest lists no slides: " + path.string());
  return deck;
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

struct SlideWork {
  report::SlideRecord record;
  std::string error;  // fatal for the deck (decode failure)
};

report::SlideRecord process_slide(std::size_t index, const SlideEntry& entry, const config::Config& cfg) {
  report::SlideRecord rec;
  rec.index = index + 1;
  rec.file = entry.image.filename().string();
  const imaging::SlideImage img = image_io::read_image(entry.image);
  rec.width = img.width();
  rec.height = img.height();

  const auto fit = harmony::best_fit(img, cfg.harmony);
  rec.harmony_template = std::string(1, fit.template_name);
  rec.harmony_alpha = fit.alpha;
  rec.harmony_distance = fit.mean_distance;
  rec.harmony_score = fit.slide_score;
  rec.achromatic = fit.achromatic;

  rec.colorfulness = engagement::colorfulness(img);

  if (!entry.layout) {
    rec.layout_status = "missing";
  } else {
    try {
      const auto doc = layout::parse_layout_file(
          *entry.layout, rec.index,
          layout::ImageExtent{static_cast<double>(img.width()), static_cast<double>(img.height())});
      rec.text_regions = layout::text_regions(doc, cfg.usability.min_confidence).size();
      rec.usability = usability::slide_usability(img, doc, cfg.usability);
      rec.layout_status = rec.usability ? "ok" : "no_text_regions";
    } catch (const std::exception& e) {
      rec.layout_status = std::string("error: ") + e.what();
    }
  }

  try {
    const auto se = rhythm::subband_entropy(img, cfg.pyramid, cfg.entropy);
    rec.subband_entropy = se.value;
    rec.entropy_blank = se.blank;
    rec.entropy_score = rhythm::entropy_to_score(se.value, cfg.entropy);
    rec.entropy_status = "ok";
  } catch (const std::exception& e) {
    rec.entropy_status = std::string("error: ") + e.what();
  }
  return rec;
}

}  // namespace

DeckSequence load_deck(const fs::path& input, const std::optional<fs::path>& layout_dir,
                       const std::optional<fs::path>& package) {
  if (!fs::exists(input)) throw DeckError("deck input does not exist: " + input.string());
  if (layout_dir && !fs::is_directory(*layout_dir)) {
    throw DeckError("layout directory does not exist: " + layout_dir->string());
  }

  DeckSequence deck;
  if (fs::is_directory(input)) {
    std::vector<fs::path> images;
    for (const auto& e : fs::directory_iterator(input)) {
      if (e.is_regular_file() && is_image_name(e.path())) images.push_back(e.path());
    }
    if (images.empty()) throw DeckError("no PNG or JPEG slides in directory: " + input.string());
    std::sort(images.begin(), images.end(), [](const fs::path& a, const fs::path& b) {
      return natural_less(a.filename().string(), b.filename().string());
    });
    const fs::path sidecar_dir = layout_dir.value_or(input);
    fs::path name = fs::absolute(input).lexically_normal();
    if (name.filename().empty()) name = name.parent_path();
    deck.topic = name.filename().string();
    for (const auto& img : images) deck.slides.push_back({img, find_sidecar(sidecar_dir, img)});
  } else {
    deck = load_manifest(input, layout_dir);
  }

  for (const auto& s : deck.slides) {
    check_image_magic(s.image);
    if (!s.layout) deck.missing_sidecars.push_back(s.image.filename().string());
  }
  if (package) deck.package = *package;
  return deck;
}

report::DeckReport evaluate_deck(const DeckSequence& deck, const config::Config& cfg) {
  cfg.validate();
  if (deck.slides.empty()) throw DeckError("deck has no slides");

  const std::size_t n = deck.slides.size();
  std::vector<SlideWork> work(n);
  std::size_t threads = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        work[i].record = process_slide(i, deck.slides[i], cfg);
      } catch (const image_io::DecodeError& e) {
        work[i].error = e.what();
      } catch (const std::exception& e) {
        work[i].error = "slide " + deck.slides[i].image.string() + ": " + e.what();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& w : work) {
    if (!w.error.empty()) throw DeckError(w.error);
  }

  report::DeckReport r;
  r.tool_version = SLIDEBENCH_VERSION;
  r.profile = cfg.profile.name;
  r.profile_version = cfg.profile.version;
  r.topic = deck.topic;
  r.system = deck.system;
  for (auto& w : work) r.slides.push_back(std::move(w.record));

  std::vector<double> harmony_scores, m_values;
  std::vector<std::optional<double>> usab;
  std::size_t achromatic = 0, blank = 0;
  for (const auto& s : r.slides) {
    harmony_scores.push_back(s.harmony_score);
    m_values.push_back(s.colorfulness);
    usab.push_back(s.usability);
    achromatic += s.achromatic ? 1 : 0;
    blank += s.entropy_blank ? 1 : 0;
    if (s.layout_status.rfind("error", 0) == 0) {
      r.flags.push_back("usability: slide " + std::to_string(s.index) + " layout " + s.layout_status);
    }
  }

  report::Components raw;
  raw.harmony = harmony::deck_harmony_score(harmony_scores, cfg.harmony.deck_mean_weight,
                                            cfg.harmony.deck_std_weight);
  r.harmony_mean = mean(harmony_scores);
  r.harmony_std = engagement::population_stddev(harmony_scores);
  if (achromatic > 0) r.flags.push_back("harmony: " + std::to_string(achromatic) + " achromatic slide(s) scored 1.0");

  raw.engagement = engagement::engagement_component(m_values, cfg.engagement);
  r.colorfulness_mean = mean(m_values);
  r.colorfulness_std = engagement::population_stddev(m_values);
  r.pacing = engagement::pacing_score(m_values, cfg.engagement.pacing_target, cfg.engagement.pacing_width);

  raw.usability = usability::deck_usability(usab, cfg.usability.deck_scale);
  if (!deck.missing_sidecars.empty()) {
    r.flags.push_back("usability: layout sidecar missing for " + std::to_string(deck.missing_sidecars.size()) +
                      " slide(s)");
  }
  if (!raw.usability) r.flags.push_back("usability: unavailable, no slide has scorable text regions; contributes 0");

  std::vector<double> entropy_scores;
  std::string entropy_failure;
  for (const auto& s : r.slides) {
    if (s.entropy_score) {
      entropy_scores.push_back(*s.entropy_score);
    } else if (entropy_failure.empty()) {
      entropy_failure = "slide " + std::to_string(s.index) + " " + s.entropy_status;
    }
  }
  if (blank > 0) r.flags.push_back("rhythm: " + std::to_string(blank) + " blank slide(s) with E_SE = 0");
  if (entropy_failure.empty()) {
    const auto hrv = rhythm::visual_hrv_score(entropy_scores, cfg.hrv);
    raw.rhythm = hrv.score * cfg.profile.rhythm_scale;
    r.rhythm = report::RhythmDetails{hrv.score, hrv.rmssd, hrv.overloads, hrv.mean_entropy_score,
                                     std::string(rhythm::to_string(hrv.band)), hrv.degenerate};
    if (hrv.degenerate) r.flags.push_back("rhythm: single-slide deck, RMSSD taken as 0");
  } else {
    r.flags.push_back("rhythm: unavailable (" + entropy_failure + "); contributes 0");
  }

  report::set_components(r, raw);

  if (deck.package) {
    try {
      r.pei = pei::evaluate_pei_file(deck.package->string(), cfg.pei);
    } catch (const std::exception& e) {
      r.pei_error = e.what();
      r.flags.push_back(std::string("pei: ") + e.what());
    }
  }

  r.config = config::config_echo(cfg);
  return r;
}

}  // namespace slidebench::deck
