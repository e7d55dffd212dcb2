#include "slidebench/report.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace slidebench::report {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> get_opt(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

std::string fixed2(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  // avoid printing "-0.00"
  os << (std::fabs(v) < 0.005 ? 0.0 : v);
  return os.str();
}

json components_json(const Components& c) {
  return {{"usability", opt(c.usability)},
          {"engagement", c.engagement},
          {"harmony", c.harmony},
          {"rhythm", opt(c.rhythm)}};
}

Components components_from(const json& j) {
  Components c;
  c.usability = get_opt(j, "usability");
  c.engagement = j.at("engagement").get<double>();
  c.harmony = j.at("harmony").get<double>();
  c.rhythm = get_opt(j, "rhythm");
  return c;
}

json pei_json(const pei::PeiReport& r) {
  json gates = json::array();
  for (const auto& g : r.gates) {
    json ev = json::array();
    for (const auto& f : g.evidence) ev.push_back({{"slide", f.slide}, {"text", f.text}});
    gates.push_back({{"gate", g.gate}, {"status", std::string(pei::to_string(g.status))}, {"evidence", ev}});
  }
  json defects = json::array();
  for (const auto& d : r.defects) defects.push_back({{"part", d.part}, {"message", d.message}});
  return {{"input", r.input},
          {"route", std::string(pei::to_string(r.route))},
          {"max_level", r.max_level},
          {"level", r.level ? json(*r.level) : json(nullptr)},
          {"level_label", pei::level_label(r.level)},
          {"note", r.note},
          {"gates", gates},
          {"defects", defects}};
}

pei::Route route_from(const std::string& s) {
  if (s == "static") return pei::Route::Static;
  if (s == "web") return pei::Route::Web;
  if (s == "native") return pei::Route::Native;
  throw std::invalid_argument("unknown PEI route: " + s);
}

pei::GateStatus status_from(const std::string& s) {
  if (s == "passed") return pei::GateStatus::Passed;
  if (s == "failed") return pei::GateStatus::Failed;
  if (s == "unevaluated") return pei::GateStatus::Unevaluated;
  throw std::invalid_argument("unknown gate status: " + s);
}

pei::PeiReport pei_from(const json& j) {
  pei::PeiReport r;
  r.input = j.at("input").get<std::string>();
  r.route = route_from(j.at("route").get<std::string>());
  r.max_level = j.at("max_level").get<int>();
  if (!j.at("level").is_null()) r.level = j.at("level").get<int>();
  r.note = j.at("note").get<std::string>();
  const auto& gates = j.at("gates");
  if (gates.size() != 5) throw std::invalid_argument("PEI report needs exactly 5 gates");
  for (std::size_t i = 0; i < 5; ++i) {
    auto& g = r.gates[i];
    g.gate = gates[i].at("gate").get<int>();
    g.status = status_from(gates[i].at("status").get<std::string>());
    for (const auto& f : gates[i].at("evidence")) {
      g.evidence.push_back({f.at("slide").get<std::size_t>(), f.at("text").get<std::string>()});
    }
  }
  for (const auto& d : j.at("defects")) {
    r.defects.push_back({d.at("part").get<std::string>(), d.at("message").get<std::string>()});
  }
  return r;
}

}  // namespace

double round2(double v) {
  const double r = std::round(v * 100.0) / 100.0;
  return r == 0.0 ? 0.0 : r;
}

Components round_components(const Components& raw) {
  Components c;
  if (raw.usability) c.usability = round2(*raw.usability);
  c.engagement = round2(raw.engagement);
  c.harmony = round2(raw.harmony);
  if (raw.rhythm) c.rhythm = round2(*raw.rhythm);
  return c;
}

double aesthetics_total(const Components& rounded) {
  return round2(rounded.usability.value_or(0.0) + rounded.engagement + rounded.harmony +
                rounded.rhythm.value_or(0.0));
}

void set_components(DeckReport& report, const Components& raw) {
  report.raw = raw;
  report.rounded = round_components(raw);
  report.aesthetics = aesthetics_total(report.rounded);
}

Format format_from_string(std::string_view name) {
  if (name == "struct") return Format::Struct;
  if (name == "table") return Format::Table;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "' (use struct or table)");
}

std::string to_json(const DeckReport& r) {
  json slides = json::array();
  for (const auto& s : r.slides) {
    slides.push_back({{"index", s.index},
                      {"file", s.file},
                      {"width", s.width},
                      {"height", s.height},
                      {"harmony",
                       {{"template", s.harmony_template},
                        {"alpha", s.harmony_alpha},
                        {"distance", s.harmony_distance},
                        {"score", s.harmony_score},
                        {"achromatic", s.achromatic}}},
                      {"colorfulness", s.colorfulness},
                      {"usability",
                       {{"score", opt(s.usability)}, {"text_regions", s.text_regions}, {"status", s.layout_status}}},
                      {"entropy",
                       {{"subband_entropy", opt(s.subband_entropy)},
                        {"blank", s.entropy_blank},
                        {"score", opt(s.entropy_score)},
                        {"status", s.entropy_status}}}});
  }
  json config = json::object();
  for (const auto& [k, v] : r.config) config[k] = v;

  json j = {{"tool_version", r.tool_version},
            {"profile", {{"name", r.profile}, {"version", r.profile_version}}},
            {"topic", r.topic},
            {"system", r.system},
            {"slides", slides},
            {"components", components_json(r.rounded)},
            {"aesthetics", r.aesthetics},
            {"raw",
             {{"components", components_json(r.raw)},
              {"harmony_mean", r.harmony_mean},
              {"harmony_std", r.harmony_std},
              {"colorfulness_mean", r.colorfulness_mean},
              {"colorfulness_std", r.colorfulness_std},
              {"pacing", r.pacing}}},
            {"flags", r.flags},
            {"config", config}};
  if (r.rhythm) {
    j["rhythm"] = {{"hrv_score", r.rhythm->hrv_score},
                   {"rmssd", r.rhythm->rmssd},
                   {"overloads", r.rhythm->overloads},
                   {"mean_entropy_score", r.rhythm->mean_entropy_score},
                   {"band", r.rhythm->band},
                   {"degenerate", r.rhythm->degenerate}};
  } else {
    j["rhythm"] = nullptr;
  }
  j["pei"] = r.pei ? pei_json(*r.pei) : json(nullptr);
  j["pei_error"] = r.pei_error;
  return j.dump(2) + "\n";
}

DeckReport from_json(const std::string& text) {
  const json j = json::parse(text);
  DeckReport r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.profile = j.at("profile").at("name").get<std::string>();
  r.profile_version = j.at("profile").at("version").get<int>();
  r.topic = j.at("topic").get<std::string>();
  r.system = j.at("system").get<std::string>();
  for (const auto& s : j.at("slides")) {
    SlideRecord rec;
    rec.index = s.at("index").get<std::size_t>();
    rec.file = s.at("file").get<std::string>();
    rec.width = s.at("width").get<std::size_t>();
    rec.height = s.at("height").get<std::size_t>();
    const auto& h = s.at("harmony");
    rec.harmony_template = h.at("template").get<std::string>();
    rec.harmony_alpha = h.at("alpha").get<double>();
    rec.harmony_distance = h.at("distance").get<double>();
    rec.harmony_score = h.at("score").get<double>();
    rec.achromatic = h.at("achromatic").get<bool>();
    rec.colorfulness = s.at("colorfulness").get<double>();
    const auto& u = s.at("usability");
    rec.usability = get_opt(u, "score");
    rec.text_regions = u.at("text_regions").get<std::size_t>();
    rec.layout_status = u.at("status").get<std::string>();
    const auto& e = s.at("entropy");
    rec.subband_entropy = get_opt(e, "subband_entropy");
    rec.entropy_blank = e.at("blank").get<bool>();
    rec.entropy_score = get_opt(e, "score");
    rec.entropy_status = e.at("status").get<std::string>();
    r.slides.push_back(std::move(rec));
  }
  r.rounded = components_from(j.at("components"));
  r.aesthetics = j.at("aesthetics").get<double>();
  const auto& raw = j.at("raw");
  r.raw = components_from(raw.at("components"));
  r.harmony_mean = raw.at("harmony_mean").get<double>();
  r.harmony_std = raw.at("harmony_std").get<double>();
  r.colorfulness_mean = raw.at("colorfulness_mean").get<double>();
  r.colorfulness_std = raw.at("colorfulness_std").get<double>();
  r.pacing = raw.at("pacing").get<double>();
  if (!j.at("rhythm").is_null()) {
    const auto& h = j.at("rhythm");
    r.rhythm = RhythmDetails{h.at("hrv_score").get<double>(),         h.at("rmssd").get<double>(),
                             h.at("overloads").get<std::size_t>(),    h.at("mean_entropy_score").get<double>(),
                             h.at("band").get<std::string>(),         h.at("degenerate").get<bool>()};
  }
  r.flags = j.at("flags").get<std::vector<std::string>>();
  if (!j.at("pei").is_null()) r.pei = pei_from(j.at("pei"));
  r.pei_error = j.at("pei_error").get<std::string>();
  for (const auto& [k, v] : j.at("config").items()) r.config.emplace_back(k, v.get<std::string>());
  return r;
}

const char* const kTableHeader = "Usability,Engagement,Harmony,Rhythm,Aesthetics,PEI";

std::string to_table(std::span<const DeckReport> reports) {
  std::string out = std::string(kTableHeader) + "\n";
  for (const auto& r : reports) {
    const auto& c = r.rounded;
    out += (c.usability ? fixed2(*c.usability) : "N/A") + "," + fixed2(c.engagement) + "," +
           fixed2(c.harmony) + "," + (c.rhythm ? fixed2(*c.rhythm) : "N/A") + "," +
           fixed2(r.aesthetics) + "," + (r.pei ? pei::level_label(r.pei->level) : "N/A") + "\n";
  }
  return out;
}

std::string emit_report(const DeckReport& report, Format format) {
  if (format == Format::Struct) return to_json(report);
  return to_table(std::span<const DeckReport>(&report, 1));
}

std::string pei_to_json(const pei::PeiReport& report) { return pei_json(report).dump(2) + "\n"; }

pei::PeiReport pei_from_json(const std::string& text) { return pei_from(json::parse(text)); }

std::string pei_table(std::span<const pei::PeiReport> reports) {
  std::string out = "input,route,max_level,level,T1,T2,T3,T4,T5\n";
  for (const auto& r : reports) {
    out += r.input + "," + std::string(pei::to_string(r.route)) + "," + std::to_string(r.max_level) + "," +
           pei::level_label(r.level);
    for (const auto& g : r.gates) out += "," + std::string(pei::to_string(g.status));
    out += "\n";
  }
  return out;
}

}  // namespace slidebench::report
