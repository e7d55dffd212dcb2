#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slidebench::quiz {

class QuizParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuizQuestion {
  std::string id;
  std::string type;  // "Concept" or "Data"
  std::string question;
  std::vector<std::string> options;
  std::string correct_answer;
  std::string explanation;
  std::string source_quote;
  std::string location;
};

struct QuizBankDoc {
  std::string topic;
  std::vector<QuizQuestion> questions;
};

/// {"topic": "...", "quiz_bank": [ {...}, ... ]}; "id" may be a number or a string.
QuizBankDoc parse_quizbank(const std::string& text);

struct ValidationFinding {
  std::string question_id;  // empty for document-level findings
  std::string code;         // count, type_split, type, options, option_prefix, answer_format,
                            // duplicate_id, missing_field, quote_not_found
  std::string message;
};

struct ValidationOptions {
  std::size_t expected_count = 10;
  std::size_t expected_concept = 5;
  std::size_t expected_data = 5;
};

std::vector<ValidationFinding> validate_quizbank(const QuizBankDoc& doc,
                                                 const std::optional<std::string>& source = std::nullopt,
                                                 const ValidationOptions& opts = {});

struct QuizAnswer {
  std::string question_id;
  std::string raw;                  // selected_answer as given
  std::optional<char> letter;       // parsed A-D, if any
  bool insufficient = false;        // "insufficient information"
  std::string reasoning;
};

struct QuizAnswerSet {
  std::vector<QuizAnswer> answers;
};

/// {"answers": [{"question_id": 1, "selected_answer": "B", "reasoning": "..."}]}
/// Text around the JSON object (code fences, prose) is ignored.
QuizAnswerSet parse_answer_set(const std::string& text);

/// "B", "B.", "B. full option text" -> 'B'; anything else -> nullopt.
std::optional<char> answer_letter(std::string_view s);

struct QuestionOutcome {
  std::string question_id;
  bool correct = false;
  std::string selected;
  char expected = '?';
};

struct QuizScore {
  std::vector<QuestionOutcome> outcomes;  // in key order
  std::size_t correct = 0;
  double accuracy = 0.0;  // percent
};

/// Throws std::invalid_argument when an answer for a key question is missing.
QuizScore score_quiz(const QuizAnswerSet& answers, const QuizBankDoc& key);

struct QuizResult {
  std::string system;
  std::string topic;
  std::string purpose;
  std::string level;  // richness level of the instruction, e.g. High/Low/Med
  double accuracy = 0.0;
};

struct AccuracyTable {
  std::vector<std::string> systems;
  std::vector<std::string> purposes;
  std::vector<std::string> levels;
  // [system][column] -> mean accuracy, nullopt = N/A
  std::map<std::string, std::map<std::string, std::optional<double>>> by_purpose;
  std::map<std::string, std::map<std::string, std::optional<double>>> by_level;
  std::map<std::string, double> system_average;     // over all of the system's records
  std::map<std::string, double> purpose_average;    // mean of available cells in the column
  std::map<std::string, double> level_average;
  double overall_average = 0.0;                     // mean of the system averages
};

AccuracyTable aggregate_accuracy(std::span<const QuizResult> results);

/// CSV with N/A for empty cells and an Average row.
std::string format_accuracy_table(const AccuracyTable& table);

enum class ErrorType { MissingContent, VlmFailure, ValueMismatch, VlmMisinterp, ImplicitInfo, Other };

inline constexpr std::array<ErrorType, 6> kErrorTypes = {
    ErrorType::MissingContent, ErrorType::VlmFailure,   ErrorType::ValueMismatch,
    ErrorType::VlmMisinterp,   ErrorType::ImplicitInfo, ErrorType::Other};

std::string_view to_string(ErrorType t);
/// Accepts the canonical names, spaced names ("Missing Content") and "Type N".
ErrorType error_type_from_string(std::string_view s);

struct ErrorRecord {
  std::string question_id;
  std::string system;
  ErrorType type = ErrorType::Other;
};

struct ErrorRollup {
  std::size_t total = 0;
  std::array<std::size_t, 6> counts{};
  std::array<double, 6> percent{};
  std::map<std::string, std::array<std::size_t, 6>> per_system;
  std::map<std::string, std::size_t> per_system_total;
};

ErrorRollup error_taxonomy_rollup(std::span<const ErrorRecord> records);

/// JSON {"results": [{system, topic, purpose, level, accuracy}]} or CSV with
/// a header row naming those columns.
std::vector<QuizResult> parse_quiz_results(const std::string& text);
/// JSON {"errors": [{question_id, system, type}]} or CSV with that header.
std::vector<ErrorRecord> parse_error_records(const std::string& text);
/// "type,count,percent" rows followed by a Total row.
std::string format_error_rollup(const ErrorRollup& rollup);

enum class RichnessLevel { Low, Medium, High };

std::string_view to_string(RichnessLevel level);

struct RichnessExtrema {
  double t_min = 0.0;
  double t_max = 0.0;
  double i_min = 0.0;
  double i_max = 0.0;
};

struct Tertiles {
  double lower = 0.0;  // S <= lower is Low
  double upper = 0.0;  // S <= upper is Medium, above is High
};

struct RichnessScore {
  double text_length = 0.0;
  double image_count = 0.0;
  double score = 0.0;
  RichnessLevel level = RichnessLevel::Low;
};

/// Min-max weighted richness in [0,1]. Throws on degenerate extrema.
double richness_value(double text_length, double image_count, const RichnessExtrema& ex,
                      double w_t = 0.7, double w_i = 0.3);

/// Nearest-rank tertile boundaries of a set of scores.
Tertiles tertiles(std::span<const double> scores);
RichnessLevel richness_level(double score, const Tertiles& t);

/// Scores and levels for a whole corpus of (text length, image count) pairs.
std::vector<RichnessScore> score_corpus(std::span<const std::pair<double, double>> items,
                                        double w_t = 0.7, double w_i = 0.3);

}  // namespace slidebench::quiz
