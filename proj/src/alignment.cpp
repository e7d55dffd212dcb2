#include "slidebench/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace slidebench::alignment {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

// Human ranks restricted to `systems`, ties averaged.
std::vector<double> human_ranks(const HumanRanking& h, const std::vector<std::string>& systems) {
  std::map<std::string, double> rank;
  double next = 1.0;
  for (const auto& group : h.groups) {
    std::vector<std::string> present;
    for (const auto& s : group) {
      if (std::find(systems.begin(), systems.end(), s) != systems.end()) present.push_back(s);
    }
    if (present.empty()) continue;
    const double avg = next + (static_cast<double>(present.size()) - 1.0) / 2.0;
    for (const auto& s : present) rank[s] = avg;
    next += static_cast<double>(present.size());
  }
  std::vector<double> out;
  for (const auto& s : systems) out.push_back(rank.at(s));
  return out;
}

}  // namespace

std::vector<double> descending_ranks(std::span<const double> scores) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("rank vectors differ in length");
  const std::size_t n = a.size();
  if (n < 2) throw UndefinedCorrelation("correlation needs at least 2 systems");
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw UndefinedCorrelation("zero rank variance");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double identical_ratio(const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("identical ratio needs at least one pair");
  std::size_t same = 0;
  for (const auto& [a, b] : pairs) same += (a == b);
  return static_cast<double>(same) / static_cast<double>(pairs.size());
}

std::map<std::string, double> HumanRanking::ranks() const {
  std::vector<std::string> systems;
  for (const auto& g : groups) systems.insert(systems.end(), g.begin(), g.end());
  const auto r = human_ranks(*this, systems);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < systems.size(); ++i) out[systems[i]] = r[i];
  return out;
}

AlignmentReport alignment_report(const std::map<std::string, TopicScores>& scores,
                                 const std::vector<HumanRanking>& human) {
  AlignmentReport rep;
  std::vector<double> rhos;
  std::size_t compared = 0, identical = 0;
  for (const auto& h : human) {
    TopicAlignment t;
    t.topic = h.topic;
    auto it = scores.find(h.topic);
    if (it == scores.end()) {
      t.note = "no metric scores for topic";
      rep.topics.push_back(t);
      continue;
    }
    std::vector<std::string> systems;
    std::vector<double> metric;
    for (const auto& g : h.groups) {
      for (const auto& s : g) {
        auto sc = it->second.find(s);
        if (sc == it->second.end()) continue;
        systems.push_back(s);
        metric.push_back(sc->second);
      }
    }
    if (systems.size() < 2) {
      t.note = "fewer than 2 systems scored";
      ++rep.topics_undefined;
      rep.topics.push_back(t);
      continue;
    }
    const auto mr = descending_ranks(metric);
    const auto hr = human_ranks(h, systems);
    ++compared;
    t.identical = mr == hr;
    identical += t.identical;
    try {
      t.rho = spearman(mr, hr);
      rhos.push_back(*t.rho);
    } catch (const UndefinedCorrelation& e) {
      t.note = e.what();
      ++rep.topics_undefined;
    }
    rep.topics.push_back(t);
  }
  if (rhos.empty()) throw std::invalid_argument("no topic has a defined correlation");
  const double n = static_cast<double>(rhos.size());
  rep.mean_rho = std::accumulate(rhos.begin(), rhos.end(), 0.0) / n;
  double acc = 0.0;
  for (double r : rhos) acc += (r - rep.mean_rho) * (r - rep.mean_rho);
  rep.std_rho = std::sqrt(acc / n);
  rep.topics_used = rhos.size();
  rep.identical_pct = 100.0 * static_cast<double>(identical) / static_cast<double>(compared);
  return rep;
}

std::vector<HumanRanking> parse_rankings_text(const std::string& text) {
  std::vector<HumanRanking> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("rankings line " + std::to_string(lineno) + ": expected 'topic: A > B'");
    }
    HumanRanking h;
    h.topic = trim(line.substr(0, colon));
    for (const auto& group : split(line.substr(colon + 1), '>')) {
      std::vector<std::string> members;
      for (const auto& m : split(group, '=')) {
        if (m.empty()) {
          throw std::invalid_argument("rankings line " + std::to_string(lineno) + ": empty system name");
        }
        members.push_back(m);
      }
      h.groups.push_back(members);
    }
    if (h.topic.empty() || h.groups.empty()) {
      throw std::invalid_argument("rankings line " + std::to_string(lineno) + ": missing topic or systems");
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<HumanRanking> parse_rankings_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<HumanRanking> out;
  for (const auto& rec : j.at("rankings")) {
    HumanRanking h;
    h.topic = rec.at("topic").get<std::string>();
    for (const auto& item : rec.at("order")) {
      if (item.is_array()) {
        h.groups.push_back(item.get<std::vector<std::string>>());
      } else {
        h.groups.push_back({item.get<std::string>()});
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::map<std::string, TopicScores> parse_scores_text(const std::string& text) {
  std::map<std::string, TopicScores> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string topic, system;
    double score = 0.0;
    if (!(fields >> topic)) continue;
    if (!(fields >> system >> score)) {
      throw std::invalid_argument("scores line " + std::to_string(lineno) + ": expected 'topic system score'");
    }
    out[topic][system] = score;
  }
  return out;
}

std::map<std::string, TopicScores> parse_scores_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::map<std::string, TopicScores> out;
  for (const auto& rec : j.at("scores")) {
    out[rec.at("topic").get<std::string>()][rec.at("system").get<std::string>()] =
        rec.at("score").get<double>();
  }
  return out;
}

}  // namespace slidebench::alignment
