#include "slidebench/quizbank.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace slidebench::quiz {

using nlohmann::json;

namespace {

std::string id_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  throw QuizParseError("question id must be a number or string");
}

std::string str_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw QuizParseError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n\"'");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n\"'");
  return std::string(s.substr(b, e - b + 1));
}

json parse_json_object(const std::string& text, const char* what) {
  const auto open = text.find('{');
  const auto close = text.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw QuizParseError(std::string(what) + ": no JSON object found");
  }
  try {
    return json::parse(text.substr(open, close - open + 1));
  } catch (const json::parse_error& e) {
    throw QuizParseError(std::string(what) + ": " + e.what());
  }
}

std::string fmt2(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void remember(std::vector<std::string>& order, const std::string& v) {
  if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
}

}  // namespace

QuizBankDoc parse_quizbank(const std::string& text) {
  const json j = parse_json_object(text, "quiz bank");
  auto bank = j.find("quiz_bank");
  if (bank == j.end() || !bank->is_array()) throw QuizParseError("quiz bank: missing 'quiz_bank' array");
  QuizBankDoc doc;
  doc.topic = str_field(j, "topic");
  for (const auto& q : *bank) {
    if (!q.is_object()) throw QuizParseError("quiz bank: every question must be an object");
    QuizQuestion out;
    if (auto id = q.find("id"); id != q.end()) out.id = id_string(*id);
    out.type = str_field(q, "type");
    out.question = str_field(q, "question");
    if (auto opts = q.find("options"); opts != q.end()) {
      if (!opts->is_array()) throw QuizParseError("quiz bank: 'options' must be an array");
      for (const auto& o : *opts) {
        if (!o.is_string()) throw QuizParseError("quiz bank: options must be strings");
        out.options.push_back(o.get<std::string>());
      }
    }
    out.correct_answer = str_field(q, "correct_answer");
    out.explanation = str_field(q, "explanation");
    out.source_quote = str_field(q, "source_quote");
    out.location = str_field(q, "location");
    doc.questions.push_back(std::move(out));
  }
  return doc;
}

std::vector<ValidationFinding> validate_quizbank(const QuizBankDoc& doc,
                                                 const std::optional<std::string>& source,
                                                 const ValidationOptions& opts) {
  std::vector<ValidationFinding> out;
  const std::size_t n = doc.questions.size();
  if (n != opts.expected_count) {
    out.push_back({"", "count",
                   "expected " + std::to_string(opts.expected_count) + " questions, found " +
                       std::to_string(n)});
  } else {
    const auto concept_count = std::count_if(doc.questions.begin(), doc.questions.end(),
                                             [](const QuizQuestion& q) { return q.type == "Concept"; });
    const auto data = std::count_if(doc.questions.begin(), doc.questions.end(),
                                    [](const QuizQuestion& q) { return q.type == "Data"; });
    if (static_cast<std::size_t>(concept_count) != opts.expected_concept ||
        static_cast<std::size_t>(data) != opts.expected_data) {
      out.push_back({"", "type_split",
                     "expected " + std::to_string(opts.expected_concept) + " Concept + " +
                         std::to_string(opts.expected_data) + " Data, found " +
                         std::to_string(concept_count) + " + " + std::to_string(data)});
    }
  }

  std::set<std::string> seen;
  for (const auto& q : doc.questions) {
    const std::string& id = q.id;
    if (id.empty()) {
      out.push_back({id, "missing_field", "question has no id"});
    } else if (!seen.insert(id).second) {
      out.push_back({id, "duplicate_id", "question id " + id + " appears more than once"});
    }
    if (q.question.empty()) out.push_back({id, "missing_field", "question text is empty"});
    if (q.type != "Concept" && q.type != "Data") {
      out.push_back({id, "type", "type must be Concept or Data, got '" + q.type + "'"});
    }
    if (q.options.size() != 4) {
      out.push_back({id, "options", "expected 4 options, found " + std::to_string(q.options.size())});
    } else {
      for (std::size_t i = 0; i < 4; ++i) {
        const std::string prefix = std::string(1, static_cast<char>('A' + i)) + ". ";
        if (q.options[i].rfind(prefix, 0) != 0) {
          out.push_back({id, "option_prefix", "option " + std::to_string(i + 1) +
                                                  " must start with \"" + prefix + "\""});
        }
      }
    }
    const auto& a = q.correct_answer;
    if (!(a.size() == 1 && a[0] >= 'A' && a[0] <= 'D')) {
      out.push_back({id, "answer_format", "correct_answer must be a single letter A-D, got '" + a + "'"});
    }
    if (source) {
      if (q.source_quote.empty()) {
        out.push_back({id, "quote_not_found", "source_quote is empty"});
      } else if (source->find(q.source_quote) == std::string::npos) {
        out.push_back({id, "quote_not_found", "source_quote does not occur verbatim in the source"});
      }
    }
  }
  return out;
}

std::optional<char> answer_letter(std::string_view s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
  if (c < 'A' || c > 'D') return std::nullopt;
  if (t.size() == 1 || t[1] == '.' || t[1] == ')' || t[1] == ':') return c;
  return std::nullopt;
}

QuizAnswerSet parse_answer_set(const std::string& text) {
  const json j = parse_json_object(text, "answer set");
  auto arr = j.find("answers");
  if (arr == j.end() || !arr->is_array()) throw QuizParseError("answer set: missing 'answers' array");
  QuizAnswerSet set;
  for (const auto& a : *arr) {
    if (!a.is_object()) throw QuizParseError("answer set: every answer must be an object");
    QuizAnswer out;
    auto id = a.find("question_id");
    if (id == a.end()) throw QuizParseError("answer set: answer without question_id");
    out.question_id = id_string(*id);
    out.raw = str_field(a, "selected_answer");
    out.reasoning = str_field(a, "reasoning");
    out.insufficient = lower(trim(out.raw)) == "insufficient information";
    if (!out.insufficient) out.letter = answer_letter(out.raw);
    set.answers.push_back(std::move(out));
  }
  return set;
}

QuizScore score_quiz(const QuizAnswerSet& answers, const QuizBankDoc& key) {
  if (key.questions.empty()) throw std::invalid_argument("answer key has no questions");
  std::map<std::string, const QuizAnswer*> by_id;
  for (const auto& a : answers.answers) by_id[a.question_id] = &a;
  QuizScore score;
  for (const auto& q : key.questions) {
    auto it = by_id.find(q.id);
    if (it == by_id.end()) throw std::invalid_argument("no answer for question " + q.id);
    QuestionOutcome o;
    o.question_id = q.id;
    o.selected = it->second->raw;
    o.expected = q.correct_answer.size() == 1 ? q.correct_answer[0] : '?';
    o.correct = it->second->letter && *it->second->letter == o.expected;
    score.correct += o.correct;
    score.outcomes.push_back(std::move(o));
  }
  score.accuracy = 100.0 * static_cast<double>(score.correct) / static_cast<double>(key.questions.size());
  return score;
}

AccuracyTable aggregate_accuracy(std::span<const QuizResult> results) {
  AccuracyTable t;
  std::map<std::string, std::map<std::string, std::vector<double>>> purpose, level;
  std::map<std::string, std::vector<double>> all;
  for (const auto& r : results) {
    remember(t.systems, r.system);
    remember(t.purposes, r.purpose);
    remember(t.levels, r.level);
    purpose[r.system][r.purpose].push_back(r.accuracy);
    level[r.system][r.level].push_back(r.accuracy);
    all[r.system].push_back(r.accuracy);
  }
  std::map<std::string, std::vector<double>> purpose_cells, level_cells;
  for (const auto& s : t.systems) {
    for (const auto& p : t.purposes) {
      auto& v = purpose[s][p];
      std::optional<double> cell;
      if (!v.empty()) {
        cell = mean(v);
        purpose_cells[p].push_back(*cell);
      }
      t.by_purpose[s][p] = cell;
    }
    for (const auto& l : t.levels) {
      auto& v = level[s][l];
      std::optional<double> cell;
      if (!v.empty()) {
        cell = mean(v);
        level_cells[l].push_back(*cell);
      }
      t.by_level[s][l] = cell;
    }
    t.system_average[s] = mean(all[s]);
  }
  for (const auto& [p, v] : purpose_cells) t.purpose_average[p] = mean(v);
  for (const auto& [l, v] : level_cells) t.level_average[l] = mean(v);
  if (!t.systems.empty()) {
    double acc = 0.0;
    for (const auto& [s, v] : t.system_average) acc += v;
    t.overall_average = acc / static_cast<double>(t.system_average.size());
  }
  return t;
}

std::string format_accuracy_table(const AccuracyTable& t) {
  std::ostringstream os;
  os << "System";
  for (const auto& p : t.purposes) os << ',' << p;
  for (const auto& l : t.levels) os << ',' << l;
  os << ",Avg\n";
  auto cell = [&](const std::optional<double>& v) { os << ',' << (v ? fmt2(*v) : "N/A"); };
  for (const auto& s : t.systems) {
    os << s;
    for (const auto& p : t.purposes) cell(t.by_purpose.at(s).at(p));
    for (const auto& l : t.levels) cell(t.by_level.at(s).at(l));
    os << ',' << fmt2(t.system_average.at(s)) << '\n';
  }
  os << "Average";
  for (const auto& p : t.purposes) os << ',' << fmt2(t.purpose_average.at(p));
  for (const auto& l : t.levels) os << ',' << fmt2(t.level_average.at(l));
  os << ',' << fmt2(t.overall_average) << '\n';
  return os.str();
}

std::string_view to_string(ErrorType t) {
  switch (t) {
    case ErrorType::MissingContent: return "MissingContent";
    case ErrorType::VlmFailure: return "VlmFailure";
    case ErrorType::ValueMismatch: return "ValueMismatch";
    case ErrorType::VlmMisinterp: return "VlmMisinterp";
    case ErrorType::ImplicitInfo: return "ImplicitInfo";
    case ErrorType::Other: return "Other";
  }
  return "Other";
}

ErrorType error_type_from_string(std::string_view s) {
  std::string key;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) key.push_back(static_cast<char>(std::tolower(c)));
  }
  static const std::map<std::string, ErrorType> names = {
      {"missingcontent", ErrorType::MissingContent}, {"type1", ErrorType::MissingContent},
      {"vlmfailure", ErrorType::VlmFailure},         {"type2", ErrorType::VlmFailure},
      {"valuemismatch", ErrorType::ValueMismatch},   {"type3", ErrorType::ValueMismatch},
      {"vlmmisinterp", ErrorType::VlmMisinterp},     {"vlmmisinterpretation", ErrorType::VlmMisinterp},
      {"type4", ErrorType::VlmMisinterp},            {"implicitinfo", ErrorType::ImplicitInfo},
      {"type5", ErrorType::ImplicitInfo},            {"other", ErrorType::Other},
      {"type6", ErrorType::Other}};
  auto it = names.find(key);
  if (it == names.end()) throw std::invalid_argument("unknown error type: " + std::string(s));
  return it->second;
}

ErrorRollup error_taxonomy_rollup(std::span<const ErrorRecord> records) {
  ErrorRollup r;
  for (const auto& rec : records) {
    const auto idx = static_cast<std::size_t>(rec.type);
    ++r.counts[idx];
    auto& sys = r.per_system[rec.system];
    ++sys[idx];
    ++r.per_system_total[rec.system];
  }
  r.total = records.size();
  if (r.total > 0) {
    for (std::size_t i = 0; i < 6; ++i) {
      r.percent[i] = 100.0 * static_cast<double>(r.counts[i]) / static_cast<double>(r.total);
    }
  }
  return r;
}

std::string_view to_string(RichnessLevel level) {
  switch (level) {
    case RichnessLevel::Low: return "Low";
    case RichnessLevel::Medium: return "Medium";
    case RichnessLevel::High: return "High";
  }
  return "Low";
}

double richness_value(double text_length, double image_count, const RichnessExtrema& ex, double w_t,
                      double w_i) {
  if (!(ex.t_max > ex.t_min) || !(ex.i_max > ex.i_min)) {
    throw std::invalid_argument("richness extrema are degenerate (max must exceed min)");
  }
  const double t = (text_length - ex.t_min) / (ex.t_max - ex.t_min);
  const double i = (image_count - ex.i_min) / (ex.i_max - ex.i_min);
  return std::clamp(w_t * t + w_i * i, 0.0, 1.0);
}

Tertiles tertiles(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("tertiles of an empty corpus");
  std::vector<double> s(scores.begin(), scores.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  auto at_rank = [&](double q) {
    auto r = static_cast<long>(std::ceil(q * n)) - 1;
    r = std::clamp(r, 0L, static_cast<long>(s.size()) - 1);
    return s[static_cast<std::size_t>(r)];
  };
  return {at_rank(1.0 / 3.0), at_rank(2.0 / 3.0)};
}

RichnessLevel richness_level(double score, const Tertiles& t) {
  if (score <= t.lower) return RichnessLevel::Low;
  if (score <= t.upper) return RichnessLevel::Medium;
  return RichnessLevel::High;
}

std::vector<RichnessScore> score_corpus(std::span<const std::pair<double, double>> items, double w_t,
                                        double w_i) {
  if (items.empty()) throw std::invalid_argument("richness corpus is empty");
  RichnessExtrema ex{items[0].first, items[0].first, items[0].second, items[0].second};
  for (const auto& [t, i] : items) {
    ex.t_min = std::min(ex.t_min, t);
    ex.t_max = std::max(ex.t_max, t);
    ex.i_min = std::min(ex.i_min, i);
    ex.i_max = std::max(ex.i_max, i);
  }
  std::vector<RichnessScore> out;
  std::vector<double> values;
  for (const auto& [t, i] : items) {
    RichnessScore r{t, i, richness_value(t, i, ex, w_t, w_i), RichnessLevel::Low};
    values.push_back(r.score);
    out.push_back(r);
  }
  const Tertiles cut = tertiles(values);
  for (auto& r : out) r.level = richness_level(r.score, cut);
  return out;
}

namespace {

std::string trim_copy(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Minimal CSV: comma separated, optional double quotes around a field.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim_copy(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim_copy(cur));
  return out;
}

// Rows keyed by header name; blank lines and '#' lines skipped.
std::vector<std::map<std::string, std::string>> read_csv(const std::string& text,
                                                         const std::vector<std::string>& required) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim_copy(line);
    if (t.empty() || t[0] == '#') continue;
    auto cells = split_csv_line(t);
    if (header.empty()) {
      header = cells;
      for (const auto& r : required) {
        if (std::find(header.begin(), header.end(), r) == header.end()) {
          throw QuizParseError("CSV header lacks column '" + r + "'");
        }
      }
      continue;
    }
    if (cells.size() != header.size()) {
      throw QuizParseError("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                           " fields, expected " + std::to_string(header.size()));
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(std::move(row));
  }
  if (header.empty()) throw QuizParseError("empty input");
  return rows;
}

bool looks_like_json(const std::string& text) {
  const auto b = text.find_first_not_of(" \t\r\n");
  return b != std::string::npos && (text[b] == '{' || text[b] == '[');
}

double parse_accuracy(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw QuizParseError("bad accuracy value '" + s + "'");
  }
}

}  // namespace

std::vector<QuizResult> parse_quiz_results(const std::string& text) {
  std::vector<QuizResult> out;
  if (looks_like_json(text)) {
    try {
      const json j = json::parse(text);
      const json& arr = j.is_array() ? j : j.at("results");
      for (const auto& r : arr) {
        out.push_back({r.at("system").get<std::string>(), r.value("topic", std::string()),
                       r.at("purpose").get<std::string>(), r.at("level").get<std::string>(),
                       r.at("accuracy").get<double>()});
      }
    } catch (const json::exception& e) {
      throw QuizParseError(std::string("malformed results JSON: ") + e.what());
    }
    return out;
  }
  for (auto& row : read_csv(text, {"system", "purpose", "level", "accuracy"})) {
    out.push_back({row["system"], row["topic"], row["purpose"], row["level"], parse_accuracy(row["accuracy"])});
  }
  return out;
}

std::vector<ErrorRecord> parse_error_records(const std::string& text) {
  std::vector<ErrorRecord> out;
  if (looks_like_json(text)) {
    try {
      const json j = json::parse(text);
      const json& arr = j.is_array() ? j : j.at("errors");
      for (const auto& r : arr) {
        out.push_back({r.contains("question_id") ? id_string(r["question_id"]) : std::string(),
                       r.value("system", std::string()),
                       error_type_from_string(r.at("type").get<std::string>())});
      }
    } catch (const json::exception& e) {
      throw QuizParseError(std::string("malformed error-records JSON: ") + e.what());
    }
    return out;
  }
  for (auto& row : read_csv(text, {"type"})) {
    out.push_back({row["question_id"], row["system"], error_type_from_string(row["type"])});
  }
  return out;
}

std::string format_error_rollup(const ErrorRollup& rollup) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os << "type,count,percent\n";
  for (std::size_t i = 0; i < kErrorTypes.size(); ++i) {
    os.precision(1);
    os << to_string(kErrorTypes[i]) << ',' << rollup.counts[i] << ',' << rollup.percent[i] << '\n';
  }
  os << "Total," << rollup.total << ',' << (rollup.total ? 100.0 : 0.0) << '\n';
  return os.str();
}

}  // namespace slidebench::quiz
