#include "slidebench/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace slidebench::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

struct Key {
  std::function<std::string(const Config&)> get;
  std::function<void(Config&, const std::string&)> set;
  bool echo = true;
};

const std::map<std::string, Key>& registry() {
  static const std::map<std::string, Key> keys = [] {
    std::map<std::string, Key> k;
    auto add_double = [&](const std::string& name, std::function<double&(Config&)> f, bool echo = true) {
      k[name] = {[f](const Config& c) { return num(f(const_cast<Config&>(c))); },
                 [f, name](Config& c, const std::string& v) { f(c) = parse_double(name, v); }, echo};
    };
    auto add_int = [&](const std::string& name, std::function<int&(Config&)> f, bool echo = true) {
      k[name] = {[f](const Config& c) { return std::to_string(f(const_cast<Config&>(c))); },
                 [f, name](Config& c, const std::string& v) { f(c) = parse_int(name, v); }, echo};
    };
    auto add_bool = [&](const std::string& name, std::function<bool&(Config&)> f) {
      k[name] = {[f](const Config& c) { return std::string(f(const_cast<Config&>(c)) ? "true" : "false"); },
                 [f, name](Config& c, const std::string& v) { f(c) = parse_bool(name, v); }};
    };
    auto add_string = [&](const std::string& name, std::function<std::string&(Config&)> f, bool echo) {
      k[name] = {[f](const Config& c) { return f(const_cast<Config&>(c)); },
                 [f](Config& c, const std::string& v) { f(c) = v; }, echo};
    };

    add_int("profile.version", [](Config& c) -> int& { return c.profile.version; });
    add_double("report.rhythm_scale", [](Config& c) -> double& { return c.profile.rhythm_scale; });

    add_double("harmony.sigma", [](Config& c) -> double& { return c.harmony.sigma; });
    add_int("harmony.angular_resolution", [](Config& c) -> int& { return c.harmony.angular_resolution; });
    add_double("harmony.sat_threshold", [](Config& c) -> double& { return c.harmony.sat_threshold; });
    add_double("harmony.deck_mean_weight", [](Config& c) -> double& { return c.harmony.deck_mean_weight; });
    add_double("harmony.deck_std_weight", [](Config& c) -> double& { return c.harmony.deck_std_weight; });

    add_double("engagement.pacing_target", [](Config& c) -> double& { return c.engagement.pacing_target; });
    add_double("engagement.pacing_width", [](Config& c) -> double& { return c.engagement.pacing_width; });
    add_double("engagement.mean_weight", [](Config& c) -> double& { return c.engagement.mean_weight; });
    add_double("engagement.pacing_weight", [](Config& c) -> double& { return c.engagement.pacing_weight; });
    add_double("engagement.mean_scale", [](Config& c) -> double& { return c.engagement.mean_scale; });
    add_double("engagement.pacing_scale", [](Config& c) -> double& { return c.engagement.pacing_scale; });

    k["usability.mode"] = {
        [](const Config& c) { return std::string(usability::to_string(c.usability.mode)); },
        [](Config& c, const std::string& v) {
          try {
            c.usability.mode = usability::luminance_mode_from_string(v);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("usability.mode: ") + e.what());
          }
        }};
    add_double("usability.upper_percentile", [](Config& c) -> double& { return c.usability.upper_percentile; });
    add_double("usability.lower_percentile", [](Config& c) -> double& { return c.usability.lower_percentile; });
    add_double("usability.min_confidence", [](Config& c) -> double& { return c.usability.min_confidence; });
    add_double("usability.deck_scale", [](Config& c) -> double& { return c.usability.deck_scale; });

    add_int("pyramid.levels", [](Config& c) -> int& { return c.pyramid.levels; });
    add_int("pyramid.orientations", [](Config& c) -> int& { return c.pyramid.orientations; });

    add_double("entropy.luminance_weight", [](Config& c) -> double& { return c.entropy.luminance_weight; });
    add_double("entropy.chroma_weight", [](Config& c) -> double& { return c.entropy.chroma_weight; });
    add_double("entropy.zero_threshold", [](Config& c) -> double& { return c.entropy.zero_threshold; });
    add_double("entropy.optimal_mean", [](Config& c) -> double& { return c.entropy.optimal_mean; });
    add_double("entropy.optimal_sigma", [](Config& c) -> double& { return c.entropy.optimal_sigma; });
    add_bool("entropy.include_residuals", [](Config& c) -> bool& { return c.entropy.include_residuals; });

    k["hrv.mode"] = {[](const Config& c) { return std::string(rhythm::to_string(c.hrv.mode)); },
                     [](Config& c, const std::string& v) {
                       try {
                         c.hrv.mode = rhythm::hrv_mode_from_string(v);
                       } catch (const std::invalid_argument& e) {
                         throw ConfigError(std::string("hrv.mode: ") + e.what());
                       }
                     }};
    add_double("hrv.lambda_mean", [](Config& c) -> double& { return c.hrv.lambda_mean; });
    add_double("hrv.lambda_rmssd", [](Config& c) -> double& { return c.hrv.lambda_rmssd; });
    add_double("hrv.target", [](Config& c) -> double& { return c.hrv.target; });
    add_double("hrv.half_width", [](Config& c) -> double& { return c.hrv.half_width; });
    add_int("hrv.overload_window", [](Config& c) -> int& { return c.hrv.overload_window; });
    add_double("hrv.overload_threshold", [](Config& c) -> double& { return c.hrv.overload_threshold; });
    add_double("hrv.overload_penalty", [](Config& c) -> double& { return c.hrv.overload_penalty; });

    add_double("pei.raster_coverage", [](Config& c) -> double& { return c.pei.raster_coverage; });
    add_double("pei.raster_slide_fraction", [](Config& c) -> double& { return c.pei.raster_slide_fraction; });
    add_int("pei.fragment_min_boxes", [](Config& c) -> int& { return c.pei.fragment_min_boxes; });
    add_double("pei.fragment_left_tolerance", [](Config& c) -> double& { return c.pei.fragment_left_tolerance; });
    add_double("pei.fragment_gap_factor", [](Config& c) -> double& { return c.pei.fragment_gap_factor; });
    add_double("pei.background_coverage", [](Config& c) -> double& { return c.pei.background_coverage; });
    add_double("pei.duplicate_position_tolerance",
               [](Config& c) -> double& { return c.pei.duplicate_position_tolerance; });
    add_double("pei.duplicate_slide_fraction", [](Config& c) -> double& { return c.pei.duplicate_slide_fraction; });
    add_int("pei.duplicate_min_slides", [](Config& c) -> int& { return c.pei.duplicate_min_slides; });
    add_int("pei.group_shape_limit", [](Config& c) -> int& { return c.pei.group_shape_limit; });

    add_string("llm.url", [](Config& c) -> std::string& { return c.llm.url; }, false);
    add_string("llm.model", [](Config& c) -> std::string& { return c.llm.model; }, false);
    add_string("llm.api_key", [](Config& c) -> std::string& { return c.llm.api_key; }, false);
    add_double("llm.timeout_seconds", [](Config& c) -> double& { return c.llm.timeout_seconds; }, false);
    add_int("llm.retries", [](Config& c) -> int& { return c.llm.retries; }, false);
    add_int("llm.retry_backoff_ms", [](Config& c) -> int& { return c.llm.retry_backoff_ms; }, false);
    add_int("llm.max_parallel", [](Config& c) -> int& { return c.llm.max_parallel; }, false);
    add_double("llm.temperature", [](Config& c) -> double& { return c.llm.temperature; }, false);

    add_int("run.threads", [](Config& c) -> int& { return c.threads; }, false);
    return k;
  }();
  return keys;
}

struct Line {
  std::size_t number;
  std::string key;
  std::string value;
};

std::vector<Line> parse_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(n) + ": expected 'key = value'");
    }
    out.push_back({n, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return out;
}

}  // namespace

void Config::validate() const {
  harmony.validate();
  engagement.validate();
  usability.validate();
  pyramid.validate();
  entropy.validate();
  hrv.validate();
  pei.validate();
  if (threads < 0) throw ConfigError("run.threads must be >= 0");
}

std::vector<std::string> profile_names() { return {"default", "unscaled"}; }

Config profile_config(const std::string& name) {
  Config c;
  if (name == "default") return c;
  if (name == "unscaled") {
    c.profile.name = "unscaled";
    c.profile.rhythm_scale = 1.0;
    c.usability.deck_scale = 1.0;
    c.engagement.mean_scale = 1.0;
    c.engagement.pacing_scale = 1.0;
    return c;
  }
  throw ConfigError("unknown profile '" + name + "' (known: default, unscaled)");
}

void apply_config_text(Config& cfg, const std::string& text) {
  const auto& keys = registry();
  for (const auto& line : parse_lines(text)) {
    const std::string where = "config line " + std::to_string(line.number) + ": ";
    if (line.key == "profile") {
      if (line.value != cfg.profile.name) {
        throw ConfigError(where + "profile '" + line.value + "' differs from the active profile '" +
                          cfg.profile.name + "'");
      }
      continue;
    }
    auto it = keys.find(line.key);
    if (it == keys.end()) throw ConfigError(where + "unknown key '" + line.key + "'");
    try {
      it->second.set(cfg, line.value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Config load_config(const std::filesystem::path& path, const std::string& profile) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  std::string chosen = profile;
  std::string rest;
  std::istringstream lines(text);
  std::string raw;
  while (std::getline(lines, raw)) {
    std::string stripped = raw.substr(0, raw.find('#'));
    const auto eq = stripped.find('=');
    if (eq != std::string::npos && trim(stripped.substr(0, eq)) == "profile") {
      if (chosen.empty()) chosen = trim(stripped.substr(eq + 1));
      rest += "\n";
      continue;
    }
    rest += raw + "\n";
  }
  Config cfg = profile_config(chosen.empty() ? "default" : chosen);
  apply_config_text(cfg, rest);
  return cfg;
}

std::vector<std::pair<std::string, std::string>> config_echo(const Config& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("profile", cfg.profile.name);
  for (const auto& [name, key] : registry()) {
    if (key.echo) out.emplace_back(name, key.get(cfg));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out = {"profile"};
  for (const auto& [name, key] : registry()) out.push_back(name);
  return out;
}

}  // namespace slidebench::config
