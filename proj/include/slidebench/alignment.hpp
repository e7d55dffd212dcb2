#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace slidebench::alignment {

class UndefinedCorrelation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Tie-averaged ranks, 1 = highest value.
std::vector<double> descending_ranks(std::span<const double> scores);

/// Pearson correlation of two rank vectors. Throws UndefinedCorrelation when
/// n < 2 or either side has zero variance.
double spearman(std::span<const double> ranks_a, std::span<const double> ranks_b);

/// Fraction of pairs whose rank vectors match element-wise.
double identical_ratio(const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs);

/// One topic: human preference order, best first. Systems sharing a group
/// are tied.
struct HumanRanking {
  std::string topic;
  std::vector<std::vector<std::string>> groups;

  std::map<std::string, double> ranks() const;
};

/// Metric scores for one topic, keyed by system.
using TopicScores = std::map<std::string, double>;

struct TopicAlignment {
  std::string topic;
  std::optional<double> rho;
  bool identical = false;
  std::string note;
};

struct AlignmentReport {
  double mean_rho = 0.0;
  double std_rho = 0.0;        // population
  double identical_pct = 0.0;  // over every topic present in both inputs
  std::size_t topics_used = 0;
  std::size_t topics_undefined = 0;
  std::vector<TopicAlignment> topics;
};

/// Throws std::invalid_argument when no topic yields a defined correlation.
AlignmentReport alignment_report(const std::map<std::string, TopicScores>& scores,
                                 const std::vector<HumanRanking>& human);

/// Line format, one topic per line:  "topic: A > B = C > D"  ('#' comments).
std::vector<HumanRanking> parse_rankings_text(const std::string& text);
/// JSON: {"rankings": [{"topic": "...", "order": ["A", ["B", "C"], "D"]}]}
std::vector<HumanRanking> parse_rankings_json(const std::string& text);

/// Line format: "topic system score" separated by whitespace or commas.
std::map<std::string, TopicScores> parse_scores_text(const std::string& text);
/// JSON: {"scores": [{"topic": "...", "system": "...", "score": 1.5}]}
std::map<std::string, TopicScores> parse_scores_json(const std::string& text);

}  // namespace slidebench::alignment
