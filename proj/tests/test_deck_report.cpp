#include <doctest.h>

#include <cmath>
#include <fstream>

#include "slidebench/deck.hpp"
#include "slidebench/fixtures.hpp"
#include "slidebench/image_io.hpp"
#include "slidebench/report.hpp"
#include "slidebench/sample_deck.hpp"
#include "support.hpp"

using namespace slidebench;
using imaging::Rgb;
using imaging::SlideImage;
namespace fs = std::filesystem;

namespace {

void write_slide(const fs::path& p, Rgb c) { image_io::write_png(SlideImage(64, 48, c), p); }

const char* kTextLayout = R"({"elements":[{"label":"text","score":0.9,"coordinate":[0,0,32,24]}]})";

}  // namespace

TEST_SUITE("deck_report") {
  TEST_CASE("natural sort") {
    CHECK(deck::natural_less("slide_2.png", "slide_10.png"));
    CHECK_FALSE(deck::natural_less("slide_10.png", "slide_2.png"));
    CHECK(deck::natural_less("slide_0001.png", "slide_0002.png"));
    CHECK(deck::natural_less("a.png", "B.png"));
  }

  TEST_CASE("load_deck orders slides and matches sidecars") {
    const auto dir = testing::scratch_dir("deck_order");
    for (int i : {10, 2, 1, 6, 4, 3, 5}) write_slide(dir / ("slide_" + std::to_string(i) + ".png"), Rgb{10, 20, 30});
    for (int i : {1, 3, 5}) std::ofstream(dir / ("slide_" + std::to_string(i) + ".layout.json")) << kTextLayout;
    std::ofstream(dir / "notes.txt") << "ignored";
    auto deck = deck::load_deck(dir);
    REQUIRE(deck.slides.size() == 7);
    CHECK(deck.slides[0].image.filename() == "slide_1.png");
    CHECK(deck.slides[6].image.filename() == "slide_10.png");
    CHECK(deck.slides[0].layout.has_value());
    CHECK_FALSE(deck.slides[1].layout.has_value());
    CHECK(deck.missing_sidecars.size() == 4);
    CHECK(deck.topic == "deck_order");
  }

  TEST_CASE("layout dir and mixed sidecars") {
    const auto dir = testing::scratch_dir("deck_mixed");
    const auto layouts = testing::scratch_dir("deck_mixed_layouts");
    for (int i = 1; i <= 6; ++i) {
      SlideImage img(64, 48, Rgb{255, 255, 255});
      for (std::size_t x = 0; x < 8; ++x) img.at(x, 2) = Rgb{0, 0, 0};
      image_io::write_png(img, dir / ("slide_000" + std::to_string(i) + ".png"));
    }
    for (int i : {1, 2, 3}) std::ofstream(layouts / ("slide_000" + std::to_string(i) + ".json")) << kTextLayout;
    auto deck = deck::load_deck(dir, layouts);
    auto r = deck::evaluate_deck(deck, config::profile_config("default"));
    int capable = 0;
    for (const auto& s : r.slides) capable += s.usability.has_value();
    CHECK(capable == 3);
    REQUIRE(r.raw.usability.has_value());
    CHECK(*r.raw.usability == doctest::Approx(10.0));
  }

  TEST_CASE("input errors name the file") {
    const auto empty = testing::scratch_dir("deck_empty");
    CHECK_THROWS_AS(deck::load_deck(empty), deck::DeckError);
    const auto bad = testing::scratch_dir("deck_bad");
    std::ofstream(bad / "slide_1.png") << "garbage";
    try {
      deck::load_deck(bad);
      FAIL("expected DeckError");
    } catch (const deck::DeckError& e) {
      CHECK(std::string(e.what()).find("slide_1.png") != std::string::npos);
    }
    CHECK_THROWS_AS(deck::load_deck(empty / "nope"), deck::DeckError);
  }

  TEST_CASE("manifest input") {
    const auto dir = testing::scratch_dir("deck_manifest");
    write_slide(dir / "b.png", Rgb{200, 10, 10});
    write_slide(dir / "a.png", Rgb{10, 200, 10});
    std::ofstream(dir / "a.layout.json") << kTextLayout;
    std::ofstream(dir / "deck.json")
        << R"({"topic":"t","system":"s","slides":[{"image":"b.png"},{"image":"a.png","layout":"a.layout.json"}]})";
    auto deck = deck::load_deck(dir / "deck.json");
    CHECK(deck.topic == "t");
    CHECK(deck.system == "s");
    REQUIRE(deck.slides.size() == 2);
    CHECK(deck.slides[0].image.filename() == "b.png");
    CHECK(deck.slides[1].layout.has_value());
    std::ofstream(dir / "broken.json") << R"({"slides": 3})";
    CHECK_THROWS_AS(deck::load_deck(dir / "broken.json"), deck::DeckError);
  }

  TEST_CASE("single all-gray slide deck") {
    const auto dir = testing::scratch_dir("deck_gray");
    write_slide(dir / "only.png", Rgb{128, 128, 128});
    auto r = deck::evaluate_deck(deck::load_deck(dir), config::profile_config("default"));
    CHECK(r.raw.harmony == 5.0);
    CHECK(r.slides[0].achromatic);
    CHECK(r.slides[0].colorfulness == 0.0);
    CHECK(r.raw.engagement == doctest::Approx(5.0 * std::exp(-11.28 * 11.28 / (2 * 72.89))).epsilon(1e-12));
    CHECK_FALSE(r.raw.usability.has_value());
    CHECK(r.slides[0].entropy_blank);
    REQUIRE(r.rhythm.has_value());
    CHECK(r.rhythm->degenerate);
    CHECK(r.rhythm->rmssd == 0.0);
    CHECK(r.rhythm->band == "Flatline");
    CHECK(*r.raw.rhythm == doctest::Approx(8.5));
    CHECK(r.rounded.harmony == 5.0);
    CHECK(r.rounded.engagement == 2.09);
    CHECK(r.aesthetics == doctest::Approx(5.0 + 2.09 + 8.5));
    CHECK(r.flags.size() >= 3);
  }

  TEST_CASE("deck plus package gets a PEI level") {
    const auto dir = testing::scratch_dir("deck_pei");
    write_slide(dir / "s1.png", Rgb{50, 60, 200});
    const auto bytes = pei::build_fixture("l4");
    std::ofstream(dir / "deck.pptx", std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()),
                                                             static_cast<std::streamsize>(bytes.size()));
    auto deck = deck::load_deck(dir, std::nullopt, dir / "deck.pptx");
    auto r = deck::evaluate_deck(deck, config::profile_config("default"));
    REQUIRE(r.pei.has_value());
    CHECK(r.pei->level == 4);
    CHECK(report::to_table(std::vector<report::DeckReport>{r}).find(",L4\n") != std::string::npos);

    auto broken = deck;
    broken.package = dir / "missing.pptx";
    auto rb = deck::evaluate_deck(broken, config::profile_config("default"));
    CHECK_FALSE(rb.pei.has_value());
    CHECK_FALSE(rb.pei_error.empty());
  }

  TEST_CASE("aesthetics is the sum of rounded components") {
    report::Components c{5.62, 8.30, -0.47, 13.84};
    report::DeckReport r;
    report::set_components(r, c);
    CHECK(r.aesthetics == doctest::Approx(27.29));
    report::Components missing{std::nullopt, 7.0, -1.0, 2.5};
    CHECK(report::aesthetics_total(report::round_components(missing)) == doctest::Approx(8.5));
    CHECK(report::round2(-0.004) == 0.0);
    CHECK_FALSE(std::signbit(report::round2(-0.004)));
  }

  TEST_CASE("emit formats and round trip") {
    const auto dir = testing::scratch_dir("deck_emit");
    sample::write_sample_deck(dir);
    auto r = deck::evaluate_deck(deck::load_deck(dir, std::nullopt, std::nullopt), config::profile_config("default"));
    r.pei = pei::evaluate_pei("x.pptx", pei::build_fixture("l2"));
    const auto json = report::emit_report(r, report::Format::Struct);
    CHECK(json == report::emit_report(r, report::Format::Struct));
    CHECK(report::from_json(json) == r);
    const auto table = report::emit_report(r, report::Format::Table);
    CHECK(table.rfind("Usability,Engagement,Harmony,Rhythm,Aesthetics,PEI\n", 0) == 0);
    CHECK(table.find(",L2\n") != std::string::npos);
    CHECK_THROWS_AS(report::format_from_string("xml"), std::invalid_argument);
    CHECK(report::format_from_string("table") == report::Format::Table);
  }

  TEST_CASE("slide order changes deck statistics but not per-slide values") {
    const auto dir = testing::scratch_dir("deck_perm");
    sample::write_sample_deck(dir);
    auto deck = deck::load_deck(dir);
    const auto cfg = config::profile_config("default");
    auto forward = deck::evaluate_deck(deck, cfg);
    auto reversed_deck = deck;
    std::reverse(reversed_deck.slides.begin(), reversed_deck.slides.end());
    std::swap(reversed_deck.slides[0], reversed_deck.slides[2]);
    auto shuffled = deck::evaluate_deck(reversed_deck, cfg);
    for (const auto& a : forward.slides) {
      auto it = std::find_if(shuffled.slides.begin(), shuffled.slides.end(),
                             [&](const report::SlideRecord& b) { return b.file == a.file; });
      REQUIRE(it != shuffled.slides.end());
      CHECK(it->harmony_score == a.harmony_score);
      CHECK(it->colorfulness == a.colorfulness);
      CHECK(it->subband_entropy == a.subband_entropy);
      CHECK(it->usability == a.usability);
    }
    // order-free reductions agree
    CHECK(shuffled.raw.harmony == doctest::Approx(forward.raw.harmony).epsilon(1e-12));
    CHECK(shuffled.raw.engagement == doctest::Approx(forward.raw.engagement).epsilon(1e-12));
    // the temporal reduction sees the new order
    CHECK(shuffled.rhythm->rmssd != doctest::Approx(forward.rhythm->rmssd));
  }

  TEST_CASE("thread count does not change the report") {
    const auto dir = testing::scratch_dir("deck_threads");
    sample::write_sample_deck(dir);
    auto deck = deck::load_deck(dir);
    auto one = config::profile_config("default");
    one.threads = 1;
    auto many = one;
    many.threads = 4;
    CHECK(report::to_json(deck::evaluate_deck(deck, one)) == report::to_json(deck::evaluate_deck(deck, many)));
  }
}
