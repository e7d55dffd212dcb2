#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slidebench/alignment.hpp"
#include "slidebench/engagement.hpp"
#include "slidebench/harmony.hpp"
#include "slidebench/imaging.hpp"
#include "slidebench/layout.hpp"
#include "slidebench/pyramid.hpp"
#include "slidebench/quizbank.hpp"
#include "slidebench/rhythm.hpp"
#include "slidebench/usability.hpp"
#include "support.hpp"

using namespace slidebench;
using imaging::Rgb;
using imaging::SlideImage;
using testing::Gen;

namespace {

constexpr int kTrials = 60;

template <class T>
void shuffle(std::vector<T>& v, Gen& g) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(g.range(0, static_cast<long long>(i) - 1))]);
}

double circ(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

// distance from hue h (turns) to the nearest sector edge, 0 inside
double oracle_distance(double h, const harmony::HueTemplate& t, double alpha) {
  double best = 0.5;
  for (const auto& s : t.sectors) best = std::min(best, std::max(0.0, circ(h, s.center + alpha) - s.width / 2));
  return best;
}

double oracle_colorfulness(const SlideImage& img) {
  std::vector<double> rg, yb;
  for (const auto& p : img.pixels()) {
    rg.push_back(double(p.r) - double(p.g));
    yb.push_back(0.5 * (double(p.r) + double(p.g)) - double(p.b));
  }
  auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size()); };
  auto var = [&](const std::vector<double>& v) {
    const double m = mean(v);
    double a = 0;
    for (double x : v) a += (x - m) * (x - m);
    return a / double(v.size());
  };
  return std::sqrt(var(rg) + var(yb)) + 0.3 * std::hypot(mean(rg), mean(yb));
}

SlideImage rotate_hues(const SlideImage& img, double degrees) {
  std::vector<Rgb> out(img.pixels().begin(), img.pixels().end());
  for (auto& p : out) {
    auto hsv = imaging::rgb_to_hsv(p);
    hsv.hue = std::fmod(hsv.hue + degrees, 360.0);
    p = imaging::hsv_to_rgb(hsv);
  }
  return SlideImage(img.width(), img.height(), std::move(out));
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("harmony best_fit matches a brute force search on 8 bins") {
    Gen g(101);
    harmony::HarmonyConfig cfg;
    cfg.angular_resolution = 8;
    for (int t = 0; t < kTrials; ++t) {
      harmony::HueHistogram h;
      h.weights.resize(8);
      for (auto& w : h.weights) w = g.range(0, 3) == 0 ? 0.0 : g.unit();
      if (h.total() == 0.0) h.weights[0] = 1.0;
      double best = 1e9;
      for (const auto& tmpl : harmony::canonical_templates())
        for (int k = 0; k < 8; ++k) {
          double acc = 0;
          for (int b = 0; b < 8; ++b) acc += h.weights[b] * oracle_distance(b / 8.0, tmpl, k / 8.0);
          best = std::min(best, acc / h.total());
        }
      const auto fit = harmony::best_fit(h, cfg);
      CHECK(fit.mean_distance == doctest::Approx(best).epsilon(1e-12));
      CHECK(fit.slide_score == doctest::Approx(std::exp(-best * best / (2 * 0.01 * 0.01))));
    }
  }

  TEST_CASE("harmony ignores pixel order and whole-degree hue rotation") {
    Gen g(102);
    harmony::HarmonyConfig cfg;
    for (int t = 0; t < 12; ++t) {
      std::vector<Rgb> px;
      // few saturated primaries keep hsv round trips exact
      const Rgb palette[] = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {255, 255, 0}, {0, 255, 255}, {255, 0, 255}};
      for (int i = 0; i < 48; ++i) px.push_back(palette[g.range(0, 5)]);
      SlideImage img(8, 6, px);
      shuffle(px, g);
      SlideImage perm(8, 6, px);
      const auto a = harmony::best_fit(img, cfg);
      CHECK(harmony::best_fit(perm, cfg).mean_distance == a.mean_distance);
      const auto r = harmony::best_fit(rotate_hues(img, 120.0), cfg);
      CHECK(r.mean_distance == doctest::Approx(a.mean_distance).epsilon(1e-9));
    }
  }

  TEST_CASE("colorfulness equals the direct formula on small images") {
    Gen g(103);
    for (int t = 0; t < kTrials; ++t) {
      const auto w = static_cast<std::size_t>(g.range(1, 4)), h = static_cast<std::size_t>(g.range(1, 4));
      const auto img = g.image(w, h);
      CHECK(engagement::colorfulness(img) == doctest::Approx(oracle_colorfulness(img)).epsilon(1e-10));

      std::vector<Rgb> swapped, flipped;
      for (const auto& p : img.pixels()) swapped.push_back({p.g, p.r, p.b});
      for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) flipped.push_back(img.at(w - 1 - x, y));
      // swapping R and G negates rg and keeps yb
      CHECK(engagement::colorfulness(SlideImage(w, h, swapped)) ==
            doctest::Approx(engagement::colorfulness(img)).epsilon(1e-10));
      CHECK(engagement::colorfulness(SlideImage(w, h, flipped)) ==
            doctest::Approx(engagement::colorfulness(img)).epsilon(1e-10));
    }
  }

  TEST_CASE("luminance is monotone in each channel") {
    Gen g(104);
    for (int t = 0; t < 200; ++t) {
      Rgb p = g.pixel();
      const double base = imaging::relative_luminance(p);
      Rgb q = p;
      switch (g.range(0, 2)) {
        case 0: q.r = static_cast<std::uint8_t>(std::min(255, p.r + int(g.range(1, 40)))); break;
        case 1: q.g = static_cast<std::uint8_t>(std::min(255, p.g + int(g.range(1, 40)))); break;
        default: q.b = static_cast<std::uint8_t>(std::min(255, p.b + int(g.range(1, 40)))); break;
      }
      CHECK(imaging::relative_luminance(q) >= base);
      CHECK(base >= 0.0);
      CHECK(base <= 1.0);
    }
  }

  TEST_CASE("cycling rgb channels shifts hue by 120 degrees") {
    Gen g(105);
    for (int t = 0; t < 200; ++t) {
      const Rgb p = g.pixel();
      const auto a = imaging::rgb_to_hsv(p);
      const auto b = imaging::rgb_to_hsv(Rgb{p.b, p.r, p.g});
      CHECK(b.saturation == doctest::Approx(a.saturation));
      CHECK(b.value == doctest::Approx(a.value));
      if (a.saturation > 0.0) CHECK(circ(b.hue / 360.0, (a.hue + 120.0) / 360.0) < 1e-9);
    }
  }

  TEST_CASE("rmssd and overloads match brute force") {
    Gen g(106);
    for (int t = 0; t < kTrials; ++t) {
      const auto n = static_cast<std::size_t>(g.range(2, 12));
      auto s = g.sequence(n);
      double acc = 0;
      for (std::size_t i = 1; i < n; ++i) acc += (s[i] - s[i - 1]) * (s[i] - s[i - 1]);
      const auto r = rhythm::rmssd(s);
      CHECK(r.value == doctest::Approx(std::sqrt(acc / double(n - 1))));
      CHECK_FALSE(r.degenerate);

      auto rev = s;
      std::reverse(rev.begin(), rev.end());
      CHECK(rhythm::rmssd(rev).value == doctest::Approx(r.value));
      auto shifted = s;
      for (auto& x : shifted) x += 3.25;
      CHECK(rhythm::rmssd(shifted).value == doctest::Approx(r.value));

      const int w = static_cast<int>(g.range(1, 4));
      const double theta = g.unit();
      std::size_t events = 0;
      for (std::size_t j = 0; j + std::size_t(w) <= n; ++j) {
        double m = 0;
        for (int k = 0; k < w; ++k) m += s[j + std::size_t(k)];
        if (m / w > theta) ++events;
      }
      CHECK(rhythm::overload_events(s, w, theta) == events);
      CHECK(rhythm::overload_events(s, w, theta + 0.1) <= events);
    }
  }

  TEST_CASE("spearman agrees with the rank-difference formula without ties") {
    Gen g(107);
    for (int t = 0; t < kTrials; ++t) {
      const auto n = static_cast<std::size_t>(g.range(3, 10));
      std::vector<double> a(n), b(n);
      std::iota(a.begin(), a.end(), 1.0);
      std::iota(b.begin(), b.end(), 1.0);
      shuffle(a, g);
      shuffle(b, g);
      double d2 = 0;
      for (std::size_t i = 0; i < n; ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
      const double nn = double(n);
      const double rho = alignment::spearman(a, b);
      CHECK(rho == doctest::Approx(1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0))));
      CHECK(alignment::spearman(b, a) == doctest::Approx(rho));
      CHECK(rho <= 1.0 + 1e-12);
      CHECK(rho >= -1.0 - 1e-12);

      // ranks of scores are unchanged by a strictly increasing relabel
      auto scores = g.sequence(n, -5, 5);
      std::vector<double> relabeled;
      for (double x : scores) relabeled.push_back(std::exp(x) + 2.0);
      CHECK(alignment::descending_ranks(scores) == alignment::descending_ranks(relabeled));
    }
  }

  TEST_CASE("text_regions filtering is a monotone subset") {
    Gen g(108);
    const layout::Label labels[] = {layout::Label::Text, layout::Label::DocTitle, layout::Label::Image,
                                    layout::Label::Footer, layout::Label::Other};
    for (int t = 0; t < kTrials; ++t) {
      layout::LayoutDocument doc;
      const auto n = g.range(0, 10);
      for (long long i = 0; i < n; ++i) {
        layout::LayoutElement e;
        e.label = labels[g.range(0, 4)];
        e.score = g.unit();
        const double x = g.uniform(0, 100), y = g.uniform(0, 100);
        e.coordinate = {x, y, x + g.uniform(1, 50), y + g.uniform(1, 50)};
        doc.elements.push_back(e);
      }
      const double lo = g.unit(), hi = std::min(1.0, lo + g.unit() * 0.5);
      const auto a = layout::text_regions(doc, lo);
      const auto b = layout::text_regions(doc, hi);
      CHECK(b.size() <= a.size());
      for (const auto& box : b) CHECK(std::find(a.begin(), a.end(), box) != a.end());
      for (const auto& box : a) {
        CHECK(std::any_of(doc.elements.begin(), doc.elements.end(), [&](const layout::LayoutElement& e) {
          return e.coordinate == box && e.label != layout::Label::Image && e.label != layout::Label::Other;
        }));
      }
      layout::LayoutDocument again;
      for (const auto& box : a) again.elements.push_back({layout::Label::Text, "text", 1.0, box, false});
      CHECK(layout::text_regions(again, lo) == a);
    }
  }

  TEST_CASE("region contrast ignores pixel order and grows with added extremes") {
    Gen g(109);
    for (int t = 0; t < kTrials; ++t) {
      const auto img = g.image(6, 5);
      const layout::Box box{0, 0, 6, 5};
      const auto base = usability::region_contrast(img, box);
      CHECK(base.ratio >= 1.0);
      CHECK(base.ratio <= 21.0 + 1e-9);
      std::vector<Rgb> px(img.pixels().begin(), img.pixels().end());
      shuffle(px, g);
      CHECK(usability::region_contrast(SlideImage(6, 5, px), box).ratio == doctest::Approx(base.ratio));
      std::vector<Rgb> wider(img.pixels().begin(), img.pixels().end());
      wider.resize(36, g.range(0, 1) ? Rgb{255, 255, 255} : Rgb{0, 0, 0});
      CHECK(usability::region_contrast(SlideImage(6, 6, wider), layout::Box{0, 0, 6, 6}).score >= base.score - 1e-12);
    }
  }

  TEST_CASE("quiz accuracy ignores answer order and aggregation matches brute force") {
    Gen g(110);
    for (int t = 0; t < 20; ++t) {
      quiz::QuizBankDoc key;
      quiz::QuizAnswerSet answers;
      for (int i = 0; i < 10; ++i) {
        quiz::QuizQuestion q;
        q.id = "q" + std::to_string(i + 1);
        q.correct_answer = std::string(1, char('A' + g.range(0, 3))) + ") x";
        key.questions.push_back(q);
        quiz::QuizAnswer a;
        a.question_id = q.id;
        const auto pick = g.range(0, 5);
        if (pick == 5) {
          a.raw = "insufficient information";
          a.insufficient = true;
        } else if (pick < 4) {
          a.letter = char('A' + pick);
          a.raw = std::string(1, *a.letter);
        }
        answers.answers.push_back(a);
      }
      const auto s = quiz::score_quiz(answers, key);
      shuffle(answers.answers, g);
      CHECK(quiz::score_quiz(answers, key).accuracy == s.accuracy);
      CHECK(s.accuracy == doctest::Approx(10.0 * double(s.correct)));
    }

    std::vector<quiz::QuizResult> rs;
    const char* systems[] = {"a", "b", "c"};
    const char* purposes[] = {"Business", "Education"};
    const char* levels[] = {"High", "Low"};
    for (int i = 0; i < 30; ++i)
      rs.push_back({systems[g.range(0, 2)], "t" + std::to_string(i), purposes[g.range(0, 1)], levels[g.range(0, 1)],
                    double(g.range(0, 10)) * 10.0});
    const auto table = quiz::aggregate_accuracy(rs);
    double overall = 0;
    std::size_t present = 0;
    for (const char* sys : systems) {
      double acc = 0;
      std::size_t n = 0;
      for (const auto& r : rs)
        if (r.system == sys) acc += r.accuracy, ++n;
      if (n == 0) continue;
      CHECK(table.system_average.at(sys) == doctest::Approx(acc / double(n)));
      overall += acc / double(n);
      ++present;
    }
    CHECK(table.overall_average == doctest::Approx(overall / double(present)));
  }

  TEST_CASE("richness grows with text and images") {
    Gen g(111);
    const quiz::RichnessExtrema ex{0, 1000, 0, 20};
    for (int t = 0; t < 200; ++t) {
      const double len = g.uniform(0, 900), imgs = g.uniform(0, 19);
      const double s = quiz::richness_value(len, imgs, ex);
      CHECK(quiz::richness_value(len + g.uniform(0, 100), imgs, ex) >= s);
      CHECK(quiz::richness_value(len, imgs + g.uniform(0, 1), ex) >= s);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("pyramid keeps most of the energy of zero-mean noise") {
    Gen g(112);
    for (int t = 0; t < 3; ++t) {
      rhythm::Plane p(64 + 32 * t, 64);
      for (auto& v : p.data) v = g.uniform(-1, 1);
      const double mean = std::accumulate(p.data.begin(), p.data.end(), 0.0) / double(p.size());
      double total = 0;
      for (auto& v : p.data) {
        v -= mean;
        total += v * v;
      }
      const auto pyr = rhythm::steerable_pyramid(p, rhythm::PyramidConfig{}, true);
      double kept = rhythm::band_energy(pyr.highpass, p.size()) + rhythm::band_energy(pyr.lowpass, p.size());
      for (const auto& b : pyr.bands) kept += rhythm::band_energy(b.coeffs, p.size());
      CHECK(kept >= 0.9 * total);
      CHECK(kept <= 1.1 * total);
    }
  }
}
