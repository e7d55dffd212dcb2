#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slidebench/alignment.hpp"
#include "slidebench/config.hpp"
#include "slidebench/deck.hpp"
#include "slidebench/fixtures.hpp"
#include "slidebench/image_io.hpp"
#include "slidebench/layout.hpp"
#include "slidebench/llm_client.hpp"
#include "slidebench/package.hpp"
#include "slidebench/pei.hpp"
#include "slidebench/quizbank.hpp"
#include "slidebench/report.hpp"
#include "slidebench/sample_deck.hpp"
#include "slidebench/zip.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slidebench;

namespace {

// Bad user input; exits with status 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + p.string());
  out << bytes;
}

struct Common {
  std::string config_path;
  std::string profile;
  std::string format = "struct";
  std::string output;

  config::Config load() const {
    if (!config_path.empty()) return config::load_config(config_path, profile);
    return config::profile_config(profile.empty() ? "default" : profile);
  }
  report::Format fmt() const { return report::format_from_string(format); }
  void emit(const std::string& text) const {
    if (output.empty()) {
      std::cout << text;
    } else {
      write_bytes(output, text);
    }
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_config = true) {
  if (with_config) {
    cmd->add_option("--config", c.config_path, "key = value config file");
    cmd->add_option("--profile", c.profile, "reporting profile (default, unscaled)");
  }
  cmd->add_option("--format", c.format, "output format: struct or table");
  cmd->add_option("-o,--output", c.output, "write to file instead of stdout");
}

std::string fixed(double v, int precision) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

// eval

struct EvalArgs {
  Common common;
  std::vector<std::string> decks;
  std::string layout_dir;
  std::string pptx;
  std::string topic;
  std::string system;
};

int run_eval(const EvalArgs& a) {
  const auto cfg = a.common.load();
  const auto fmt = a.common.fmt();
  if (a.decks.size() > 1 && (!a.pptx.empty() || !a.layout_dir.empty())) {
    throw InputError("--pptx and --layout-dir apply to a single deck; use a manifest per deck instead");
  }
  std::vector<report::DeckReport> reports;
  for (const auto& d : a.decks) {
    auto deck = deck::load_deck(d, a.layout_dir.empty() ? std::nullopt : std::optional<fs::path>(a.layout_dir),
                                a.pptx.empty() ? std::nullopt : std::optional<fs::path>(a.pptx));
    if (!a.topic.empty()) deck.topic = a.topic;
    if (!a.system.empty()) deck.system = a.system;
    reports.push_back(deck::evaluate_deck(deck, cfg));
  }
  if (fmt == report::Format::Table) {
    a.common.emit(report::to_table(reports));
  } else if (reports.size() == 1) {
    a.common.emit(report::to_json(reports.front()));
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(json::parse(report::to_json(r)));
    a.common.emit(arr.dump(2) + "\n");
  }
  return 0;
}

// pei

struct PeiArgs {
  Common common;
  std::vector<std::string> inputs;
};

int run_pei(const PeiArgs& a) {
  const auto cfg = a.common.load();
  const auto fmt = a.common.fmt();
  std::vector<pei::PeiReport> reports;
  for (const auto& in : a.inputs) reports.push_back(pei::evaluate_pei_file(in, cfg.pei));
  if (fmt == report::Format::Table) {
    a.common.emit(report::pei_table(reports));
  } else if (reports.size() == 1) {
    a.common.emit(report::pei_to_json(reports.front()));
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(json::parse(report::pei_to_json(r)));
    a.common.emit(arr.dump(2) + "\n");
  }
  return 0;
}

// align

struct AlignArgs {
  Common common;
  std::string rankings;
  std::string scores;
  std::vector<std::string> reports;
  std::string metric = "aesthetics";
};

bool starts_with_brace(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  return b != std::string::npos && (s[b] == '{' || s[b] == '[');
}

double metric_of(const report::DeckReport& r, const std::string& metric) {
  if (metric == "aesthetics") return r.aesthetics;
  if (metric == "engagement") return r.rounded.engagement;
  if (metric == "harmony") return r.rounded.harmony;
  if (metric == "usability") return r.rounded.usability.value_or(0.0);
  if (metric == "rhythm") return r.rounded.rhythm.value_or(0.0);
  throw InputError("unknown metric '" + metric + "'");
}

int run_align(const AlignArgs& a) {
  const auto fmt = a.common.fmt();
  const std::string rank_text = read_file(a.rankings);
  const auto human = starts_with_brace(rank_text) ? alignment::parse_rankings_json(rank_text)
                                                  : alignment::parse_rankings_text(rank_text);
  std::map<std::string, alignment::TopicScores> scores;
  if (!a.scores.empty()) {
    const std::string t = read_file(a.scores);
    scores = starts_with_brace(t) ? alignment::parse_scores_json(t) : alignment::parse_scores_text(t);
  }
  for (const auto& path : a.reports) {
    const json j = json::parse(read_file(path));
    std::vector<std::string> docs;
    if (j.is_array()) {
      for (const auto& e : j) docs.push_back(e.dump());
    } else {
      docs.push_back(j.dump());
    }
    for (const auto& d : docs) {
      const auto r = report::from_json(d);
      if (r.system.empty()) throw InputError(path + ": report has no system name (use eval --system)");
      scores[r.topic][r.system] = metric_of(r, a.metric);
    }
  }
  if (scores.empty()) throw InputError("align needs --scores or --reports");
  const auto rep = alignment::alignment_report(scores, human);

  if (fmt == report::Format::Table) {
    std::string out = "topic,rho,identical,note\n";
    for (const auto& t : rep.topics) {
      out += t.topic + "," + (t.rho ? fixed(*t.rho, 4) : "N/A") + "," + (t.identical ? "yes" : "no") + "," +
             t.note + "\n";
    }
    out += "mean_rho," + fixed(rep.mean_rho, 4) + "\nstd_rho," + fixed(rep.std_rho, 4) + "\nidentical_pct," +
           fixed(rep.identical_pct, 2) + "\n";
    a.common.emit(out);
    return 0;
  }
  json topics = json::array();
  for (const auto& t : rep.topics) {
    topics.push_back({{"topic", t.topic},
                      {"rho", t.rho ? json(*t.rho) : json(nullptr)},
                      {"identical", t.identical},
                      {"note", t.note}});
  }
  const json out = {{"mean_rho", rep.mean_rho},       {"std_rho", rep.std_rho},
                    {"identical_pct", rep.identical_pct}, {"topics_used", rep.topics_used},
                    {"topics_undefined", rep.topics_undefined}, {"topics", topics}};
  a.common.emit(out.dump(2) + "\n");
  return 0;
}

// quiz

struct QuizArgs {
  Common common;
  std::string bank;
  std::string source;
  std::string answers;
  std::string results;
  std::string errors;
  std::string slides;
  std::string topic;
};

int run_quiz_validate(const QuizArgs& a) {
  const auto fmt = a.common.fmt();
  const auto doc = quiz::parse_quizbank(read_file(a.bank));
  std::optional<std::string> source;
  if (!a.source.empty()) source = read_file(a.source);
  const auto findings = quiz::validate_quizbank(doc, source);
  if (fmt == report::Format::Table) {
    std::string out = "question_id,code,message\n";
    for (const auto& f : findings) out += f.question_id + "," + f.code + ",\"" + f.message + "\"\n";
    a.common.emit(out);
  } else {
    json arr = json::array();
    for (const auto& f : findings) {
      arr.push_back({{"question_id", f.question_id}, {"code", f.code}, {"message", f.message}});
    }
    a.common.emit(json{{"valid", findings.empty()}, {"findings", arr}}.dump(2) + "\n");
  }
  // findings are a result, not a tool failure
  return 0;
}

int run_quiz_score(const QuizArgs& a) {
  const auto fmt = a.common.fmt();
  const auto key = quiz::parse_quizbank(read_file(a.bank));
  const auto ans = quiz::parse_answer_set(read_file(a.answers));
  const auto score = quiz::score_quiz(ans, key);
  if (fmt == report::Format::Table) {
    std::string out = "question_id,expected,selected,correct\n";
    for (const auto& o : score.outcomes) {
      out += o.question_id + "," + std::string(1, o.expected) + ",\"" + o.selected + "\"," +
             (o.correct ? "yes" : "no") + "\n";
    }
    out += "accuracy," + fixed(score.accuracy, 2) + "\n";
    a.common.emit(out);
  } else {
    json arr = json::array();
    for (const auto& o : score.outcomes) {
      arr.push_back({{"question_id", o.question_id},
                     {"expected", std::string(1, o.expected)},
                     {"selected", o.selected},
                     {"correct", o.correct}});
    }
    a.common.emit(json{{"correct", score.correct}, {"accuracy", score.accuracy}, {"outcomes", arr}}.dump(2) +
                  "\n");
  }
  return 0;
}

json opt_map(const std::map<std::string, std::optional<double>>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v ? json(*v) : json(nullptr);
  return j;
}

int run_quiz_aggregate(const QuizArgs& a) {
  const auto fmt = a.common.fmt();
  if (a.results.empty() && a.errors.empty()) throw InputError("quiz aggregate needs RESULTS and/or --errors");
  std::optional<quiz::AccuracyTable> table;
  if (!a.results.empty()) {
    const auto results = quiz::parse_quiz_results(read_file(a.results));
    table = quiz::aggregate_accuracy(results);
  }
  std::optional<quiz::ErrorRollup> rollup;
  if (!a.errors.empty()) {
    const auto records = quiz::parse_error_records(read_file(a.errors));
    rollup = quiz::error_taxonomy_rollup(records);
  }
  if (fmt == report::Format::Table) {
    std::string out;
    if (table) out += quiz::format_accuracy_table(*table);
    if (table && rollup) out += "\n";
    if (rollup) out += quiz::format_error_rollup(*rollup);
    a.common.emit(out);
    return 0;
  }
  json out = json::object();
  if (table) {
    json sys = json::object();
    for (const auto& s : table->systems) {
      sys[s] = {{"by_purpose", opt_map(table->by_purpose.at(s))},
                {"by_level", opt_map(table->by_level.at(s))},
                {"average", table->system_average.at(s)}};
    }
    out["accuracy"] = {{"systems", sys},
                       {"purpose_average", table->purpose_average},
                       {"level_average", table->level_average},
                       {"overall_average", table->overall_average}};
  }
  if (rollup) {
    json counts = json::object(), pct = json::object();
    for (std::size_t i = 0; i < quiz::kErrorTypes.size(); ++i) {
      const std::string name(quiz::to_string(quiz::kErrorTypes[i]));
      counts[name] = rollup->counts[i];
      pct[name] = rollup->percent[i];
    }
    out["errors"] = {{"total", rollup->total}, {"counts", counts}, {"percent", pct}};
  }
  a.common.emit(out.dump(2) + "\n");
  return 0;
}

int run_quiz_exam(const QuizArgs& a) {
  const auto cfg = a.common.load();
  if (cfg.llm.url.empty()) throw InputError("quiz exam needs llm.url in the config file");
  const auto bank = quiz::parse_quizbank(read_file(a.bank));
  quiz::HttpLlmClient client(cfg.llm);
  const auto answers = quiz::run_quiz_exam(client, bank, a.topic, read_file(a.slides));
  const auto score = quiz::score_quiz(answers, bank);
  json arr = json::array();
  for (const auto& ans : answers.answers) {
    arr.push_back({{"question_id", ans.question_id}, {"selected_answer", ans.raw}, {"reasoning", ans.reasoning}});
  }
  a.common.emit(json{{"answers", arr}, {"accuracy", score.accuracy}}.dump(2) + "\n");
  return 0;
}

// fixtures / sample

int run_fixtures(const std::string& dir, const std::vector<std::string>& names) {
  fs::create_directories(dir);
  const auto all = pei::fixture_names();
  const auto& chosen = names.empty() ? all : names;
  for (const auto& n : chosen) {
    if (std::find(all.begin(), all.end(), n) == all.end()) throw InputError("unknown fixture '" + n + "'");
    const auto bytes = pei::build_fixture(n);
    const fs::path p = fs::path(dir) / pei::fixture_filename(n);
    write_bytes(p, std::string(bytes.begin(), bytes.end()));
    std::cout << p.string() << "\n";
  }
  return 0;
}

int run_config(const Common& c) {
  const auto cfg = c.load();
  std::string out = "# profile " + cfg.profile.name + "\n";
  for (const auto& [k, v] : config::config_echo(cfg)) out += k + " = " + v + "\n";
  c.emit(out);
  return 0;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    // config, deck, format and validation errors all derive from invalid_argument
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const image_io::DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const layout::LayoutParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const pei::CorruptPackageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const quiz::QuizParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return 1;
  } catch (const quiz::TransportError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (...) {
    std::cerr << "internal error: unknown exception\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slide deck evaluation: aesthetics metrics, PEI editability, QuizBank, alignment"};
  app.set_version_flag("--version", std::string(SLIDEBENCH_VERSION));
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate slide decks (directories or JSON manifests)");
  eval_cmd->add_option("deck", eval.decks, "deck directory or manifest")->required();
  add_common(eval_cmd, eval.common);
  eval_cmd->add_option("--layout-dir", eval.layout_dir, "directory holding <stem>.layout.json sidecars");
  eval_cmd->add_option("--pptx", eval.pptx, "native package for PEI");
  eval_cmd->add_option("--topic", eval.topic, "topic name (default: directory name)");
  eval_cmd->add_option("--system", eval.system, "generating system name");

  PeiArgs pei_args;
  auto* pei_cmd = app.add_subcommand("pei", "PEI editability level of packages, PDFs or URLs");
  pei_cmd->add_option("input", pei_args.inputs, "input path or URL")->required();
  add_common(pei_cmd, pei_args.common);

  AlignArgs align;
  auto* align_cmd = app.add_subcommand("align", "Spearman alignment of metric rankings with human rankings");
  align_cmd->add_option("--rankings", align.rankings, "human rankings (text or JSON)")->required();
  align_cmd->add_option("--scores", align.scores, "metric scores (text or JSON)");
  align_cmd->add_option("--reports", align.reports, "deck reports from `eval`");
  align_cmd->add_option("--metric", align.metric, "component used from reports")
      ->check(CLI::IsMember({"aesthetics", "usability", "engagement", "harmony", "rhythm"}));
  add_common(align_cmd, align.common, false);

  QuizArgs qv, qs, qa, qe;
  auto* quiz_cmd = app.add_subcommand("quiz", "QuizBank tools");
  quiz_cmd->require_subcommand(1);
  auto* qv_cmd = quiz_cmd->add_subcommand("validate", "check a QuizBank document");
  qv_cmd->add_option("bank", qv.bank, "QuizBank JSON")->required();
  qv_cmd->add_option("--source", qv.source, "source document text for quote checks");
  add_common(qv_cmd, qv.common, false);
  auto* qs_cmd = quiz_cmd->add_subcommand("score", "score an answer set against a QuizBank");
  qs_cmd->add_option("bank", qs.bank, "QuizBank JSON")->required();
  qs_cmd->add_option("answers", qs.answers, "answer JSON")->required();
  add_common(qs_cmd, qs.common, false);
  auto* qa_cmd = quiz_cmd->add_subcommand("aggregate", "accuracy table and error-type rollup");
  qa_cmd->add_option("results", qa.results, "per-deck accuracy records (CSV or JSON)");
  qa_cmd->add_option("--errors", qa.errors, "error-type records (CSV or JSON)");
  add_common(qa_cmd, qa.common, false);
  auto* qe_cmd = quiz_cmd->add_subcommand("exam", "run the open-book exam against an LLM endpoint");
  qe_cmd->add_option("bank", qe.bank, "QuizBank JSON")->required();
  qe_cmd->add_option("--slides", qe.slides, "extracted slide contents")->required();
  qe_cmd->add_option("--topic", qe.topic, "deck topic")->required();
  add_common(qe_cmd, qe.common);

  std::string fixture_dir;
  std::vector<std::string> fixture_names;
  auto* fix_cmd = app.add_subcommand("fixtures", "write PEI test packages");
  fix_cmd->add_option("dir", fixture_dir, "output directory")->required();
  fix_cmd->add_option("--name", fixture_names, "fixture name (repeatable; default all)");

  std::string sample_dir;
  auto* sample_cmd = app.add_subcommand("sample", "write the 6-slide sample deck");
  sample_cmd->add_option("dir", sample_dir, "output directory")->required();

  Common config_args;
  auto* config_cmd = app.add_subcommand("config", "print every config key with its effective value");
  add_common(config_cmd, config_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*eval_cmd) return guarded([&] { return run_eval(eval); });
  if (*pei_cmd) return guarded([&] { return run_pei(pei_args); });
  if (*align_cmd) return guarded([&] { return run_align(align); });
  if (*qv_cmd) return guarded([&] { return run_quiz_validate(qv); });
  if (*qs_cmd) return guarded([&] { return run_quiz_score(qs); });
  if (*qa_cmd) return guarded([&] { return run_quiz_aggregate(qa); });
  if (*qe_cmd) return guarded([&] { return run_quiz_exam(qe); });
  if (*fix_cmd) return guarded([&] { return run_fixtures(fixture_dir, fixture_names); });
  if (*sample_cmd) return guarded([&] {
    sample::write_sample_deck(sample_dir);
    return 0;
  });
  if (*config_cmd) return guarded([&] { return run_config(config_args); });
  return 2;
}
