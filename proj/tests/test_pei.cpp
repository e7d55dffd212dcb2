#include <doctest.h>

#include <algorithm>

#include "slidebench/fixtures.hpp"
#include "slidebench/package.hpp"
#include "slidebench/pei.hpp"
#include "slidebench/xml.hpp"
#include "slidebench/zip.hpp"

using namespace slidebench::pei;

namespace {

PeiReport eval_fixture(const std::string& name) {
  return evaluate_pei(fixture_filename(name), build_fixture(name));
}

GateStatus status(const PeiReport& r, int gate) { return r.gates[gate - 1].status; }

Rect box(double x, double y, double w, double h) {
  return {x * kDefaultSlideWidth, y * kDefaultSlideHeight, w * kDefaultSlideWidth, h * kDefaultSlideHeight};
}

}  // namespace

TEST_SUITE("pei") {
  TEST_CASE("zip round trip and corruption") {
    ZipWriter w;
    w.add("a.txt", "hello");
    w.add("dir/b.xml", "<x/>");
    auto bytes = w.finish();
    CHECK(looks_like_zip(bytes));
    ZipArchive z(bytes);
    CHECK(z.read("a.txt") == "hello");
    CHECK(z.read("dir/b.xml") == "<x/>");
    CHECK(z.names().size() == 2);
    CHECK_THROWS_AS(z.read("nope"), std::out_of_range);
    CHECK(ZipWriter(w).finish() == bytes);

    std::vector<std::uint8_t> truncated(bytes.begin(), bytes.begin() + static_cast<long>(bytes.size() / 2));
    CHECK_THROWS_AS(ZipArchive{truncated}, CorruptPackageError);
    CHECK_THROWS_AS(open_package(truncated), CorruptPackageError);
    CHECK_THROWS_AS(open_package(std::vector<std::uint8_t>{'n', 'o'}), CorruptPackageError);
  }

  TEST_CASE("zip without a presentation part is corrupt") {
    ZipWriter w;
    w.add("hello.txt", "x");
    CHECK_THROWS_AS(open_package(w.finish()), CorruptPackageError);
  }

  TEST_CASE("xml namespaces map to fixed prefixes") {
    auto root = parse_xml(
        R"(<q:sld xmlns:q="http://schemas.openxmlformats.org/presentationml/2006/main"><q:cSld name="x"/></q:sld>)");
    CHECK(root->name == "p:sld");
    REQUIRE(root->child("p:cSld") != nullptr);
    CHECK(root->child("p:cSld")->attr("name") == std::optional<std::string>("x"));
    CHECK_THROWS_AS(parse_xml("<a><b></a>"), XmlError);
  }

  TEST_CASE("triage routes") {
    CHECK(triage("deck.pdf").route == Route::Static);
    CHECK(triage("deck.PDF").max_level == 0);
    CHECK(triage("slide.png").route == Route::Static);
    auto native = triage("deck.pptx");
    CHECK(native.route == Route::Native);
    CHECK(native.max_level == 5);
    CHECK(triage("template.potx").route == Route::Native);
    auto web = triage("https://example.com/deck");
    CHECK(web.route == Route::Web);
    CHECK(web.max_level == 2);
    CHECK_FALSE(web.evaluable);
    CHECK_THROWS_AS(triage("deck.key"), UnsupportedFormatError);
    const auto head = pdf_stub();
    CHECK(triage("blob.bin", &head).route == Route::Static);
    const auto zip = build_fixture("l3");
    CHECK(triage("blob.bin", &zip).route == Route::Native);
  }

  TEST_CASE("static and web reports") {
    auto pdf = evaluate_pei("deck.pdf", pdf_stub());
    CHECK(pdf.level == 0);
    for (const auto& g : pdf.gates) CHECK(g.status == GateStatus::Unevaluated);

    auto web = evaluate_pei_file("https://example.com/deck");
    CHECK_FALSE(web.level.has_value());
    CHECK(level_label(web.level) == "N/A");
    CHECK(web.note.find("not evaluable") != std::string::npos);
    // static inputs with a known extension are never opened
    CHECK(evaluate_pei_file("/nonexistent/deck.pdf").level == 0);
  }

  TEST_CASE("minimal package structure") {
    auto pkg = open_package(build_fixture("l1"));
    CHECK(pkg.slides.size() >= 1);
    CHECK(pkg.layouts.size() == 1);
    CHECK(pkg.masters.size() == 1);
    for (const auto& s : pkg.slides) CHECK(s.layout.has_value());

    auto charted = open_package(build_fixture("t4_chart"));
    REQUIRE(charted.charts.size() == 1);
    CHECK(charted.charts[0].workbook.has_value());
    CHECK(charted.charts[0].workbook_present);
  }

  TEST_CASE("level fixtures") {
    CHECK(eval_fixture("l0").level == 0);
    CHECK(eval_fixture("l1").level == 1);
    CHECK(eval_fixture("l2").level == 2);
    CHECK(eval_fixture("l3").level == 3);
    CHECK(eval_fixture("l4").level == 4);
    CHECK(eval_fixture("l5").level == 5);
    CHECK(eval_fixture("l5_broken_workbook").level == 3);
  }

  TEST_CASE("T1 examples") {
    auto pkg = open_package(build_fixture("t1_multi_paragraph"));
    CHECK(gate_t1_text_integrity(pkg).passed());
    auto frag = gate_t1_text_integrity(open_package(build_fixture("t1_fragmented")));
    CHECK(frag.status == GateStatus::Failed);
    CHECK_FALSE(frag.evidence.empty());
    auto raster = gate_t1_text_integrity(open_package(build_fixture("t1_rasterized")));
    CHECK(raster.status == GateStatus::Failed);
  }

  TEST_CASE("T2 examples") {
    CHECK(gate_t2_vector(open_package(build_fixture("t2_shapes"))).passed());
    CHECK(gate_t2_vector(open_package(build_fixture("t2_raster_only"))).status == GateStatus::Failed);
    CHECK(gate_t2_vector(open_package(build_fixture("t2_icons_and_photo"))).passed());
  }

  TEST_CASE("T3 examples") {
    CHECK(gate_t3_structure(open_package(build_fixture("t3_master_grouped"))).passed());
    auto logo = gate_t3_structure(open_package(build_fixture("t3_logo_copied")));
    CHECK(logo.status == GateStatus::Failed);
    auto loose = gate_t3_structure(open_package(build_fixture("t3_loose_shapes")));
    CHECK(loose.status == GateStatus::Failed);
  }

  TEST_CASE("T4 examples") {
    CHECK(gate_t4_parametric(open_package(build_fixture("t4_chart"))).passed());
    CHECK(gate_t4_parametric(open_package(build_fixture("t4_mimicry"))).status == GateStatus::Failed);
    CHECK(gate_t4_parametric(open_package(build_fixture("t4_missing_workbook"))).status == GateStatus::Failed);
  }

  TEST_CASE("T5 examples") {
    CHECK(gate_t5_cinematic(open_package(build_fixture("t5_fade"))).passed());
    CHECK(gate_t5_cinematic(open_package(build_fixture("t5_static"))).status == GateStatus::Failed);
    CHECK(gate_t5_cinematic(open_package(build_fixture("t5_external_video"))).status == GateStatus::Failed);
  }

  TEST_CASE("knockout: failing T2 gives L1 even with charts and groups") {
    PackageBuilder b;
    for (int i = 0; i < 3; ++i) {
      const auto s = b.add_slide();
      b.text_box(s, box(0.1, 0.05, 0.8, 0.1), {"Title", "Body"});
      b.picture(s, box(0.1, 0.2, 0.3, 0.3));
      b.picture(s, box(0.5, 0.2, 0.3, 0.3));
      b.transition(s);
    }
    auto r = evaluate_pei("x.pptx", b.build());
    CHECK(r.level == 1);
    CHECK(status(r, 2) == GateStatus::Failed);
    CHECK(status(r, 3) == GateStatus::Unevaluated);
    CHECK(status(r, 5) == GateStatus::Unevaluated);
  }

  TEST_CASE("adding a chart raises L3 to L4 and removing it lowers back") {
    auto make = [](bool with_chart) {
      PackageBuilder b;
      for (int i = 0; i < 2; ++i) {
        const auto s = b.add_slide();
        b.text_box(s, box(0.1, 0.05, 0.8, 0.1), {"Heading"});
        b.shape(s, box(0.1, 0.3, 0.2, 0.2), "ellipse", i ? "C00000" : "4472C4");
        if (with_chart && i == 1) b.chart(s, box(0.4, 0.3, 0.5, 0.5));
      }
      return evaluate_pei("x.pptx", b.build());
    };
    CHECK(make(false).level == 3);
    CHECK(make(true).level >= 4);
  }

  TEST_CASE("determinism and config validation") {
    CHECK(eval_fixture("l4") == eval_fixture("l4"));
    PeiConfig bad;
    bad.raster_coverage = 1.5;
    CHECK_THROWS(bad.validate());
  }
}
