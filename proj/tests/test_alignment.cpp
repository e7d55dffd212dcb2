#include <doctest.h>

#include "slidebench/alignment.hpp"

using namespace slidebench::alignment;

TEST_SUITE("alignment") {
  TEST_CASE("spearman examples") {
    const std::vector<double> a{1, 2, 3}, r{3, 2, 1};
    CHECK(spearman(a, a) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(spearman(a, r) == doctest::Approx(-1.0).epsilon(1e-15));
    const std::vector<double> x{1, 2, 3, 4}, y{1, 3, 2, 4};
    CHECK(spearman(x, y) == doctest::Approx(0.8).epsilon(1e-15));
  }

  TEST_CASE("spearman undefined cases") {
    const std::vector<double> one{1};
    CHECK_THROWS_AS(spearman(one, one), UndefinedCorrelation);
    const std::vector<double> flat{2, 2, 2}, a{1, 2, 3};
    CHECK_THROWS_AS(spearman(flat, a), UndefinedCorrelation);
    const std::vector<double> b{1, 2};
    CHECK_THROWS(spearman(a, b));
  }

  TEST_CASE("descending ranks with ties") {
    const std::vector<double> s{0.9, 0.5, 0.9, 0.1};
    auto r = descending_ranks(s);
    CHECK(r == std::vector<double>{1.5, 3, 1.5, 4});
  }

  TEST_CASE("identical ratio") {
    using P = std::pair<std::vector<double>, std::vector<double>>;
    const std::vector<double> a{1, 2, 3}, b{2, 1, 3};
    CHECK(identical_ratio({P{a, a}, P{b, b}}) == 1.0);
    CHECK(identical_ratio({P{a, a}, P{a, b}, P{b, a}, P{a, b}}) == 0.25);
    CHECK(identical_ratio({P{a, b}}) == 0.0);
  }

  TEST_CASE("alignment report") {
    const auto human = parse_rankings_text("# comment\nt1: A > B > C\nt2: A > B > C\n");
    std::map<std::string, TopicScores> s;
    s["t1"] = {{"A", 3}, {"B", 2}, {"C", 1}};
    s["t2"] = {{"A", 1}, {"B", 2}, {"C", 3}};
    auto rep = alignment_report(s, human);
    CHECK(rep.mean_rho == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rep.std_rho == doctest::Approx(1.0));
    CHECK(rep.identical_pct == 50.0);

    s["t2"] = s["t1"];
    rep = alignment_report(s, human);
    CHECK(rep.mean_rho == doctest::Approx(1.0));
    CHECK(rep.std_rho == doctest::Approx(0.0));
    CHECK(rep.identical_pct == 100.0);

    std::map<std::string, TopicScores> none{{"other", {{"A", 1}, {"B", 2}}}};
    CHECK_THROWS_AS(alignment_report(none, human), std::invalid_argument);
  }

  TEST_CASE("ties in human rankings") {
    const auto human = parse_rankings_text("t: A > B = C > D");
    auto ranks = human[0].ranks();
    CHECK(ranks["B"] == 2.5);
    CHECK(ranks["C"] == 2.5);
    std::map<std::string, TopicScores> s{{"t", {{"A", 4}, {"B", 2}, {"C", 2}, {"D", 1}}}};
    auto rep = alignment_report(s, human);
    CHECK(rep.identical_pct == 100.0);
    std::map<std::string, TopicScores> strict{{"t", {{"A", 4}, {"B", 3}, {"C", 2}, {"D", 1}}}};
    CHECK(alignment_report(strict, human).identical_pct == 0.0);
  }

  TEST_CASE("file formats agree") {
    auto text = parse_rankings_text("t1: A > B = C");
    auto json = parse_rankings_json(R"({"rankings":[{"topic":"t1","order":["A",["B","C"]]}]})");
    CHECK(text[0].ranks() == json[0].ranks());
    auto st = parse_scores_text("t1 A 0.5\nt1,B,0.25\n");
    auto sj = parse_scores_json(R"({"scores":[{"topic":"t1","system":"A","score":0.5},{"topic":"t1","system":"B","score":0.25}]})");
    CHECK(st == sj);
    CHECK_THROWS(parse_rankings_text("no colon here"));
    CHECK_THROWS(parse_scores_text("t1 A notanumber"));
  }
}
