#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slidebench/engagement.hpp"
#include "slidebench/harmony.hpp"
#include "slidebench/llm_client.hpp"
#include "slidebench/pei.hpp"
#include "slidebench/pyramid.hpp"
#include "slidebench/rhythm.hpp"
#include "slidebench/usability.hpp"

namespace slidebench::config {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scaling constants that map raw deck values into report components.
struct ReportingProfile {
  std::string name = "default";
  int version = 1;
  double rhythm_scale = 0.1;  // banded VisualHRV score -> Rhythm component
};

struct Config {
  ReportingProfile profile;
  harmony::HarmonyConfig harmony;
  engagement::EngagementConfig engagement;
  usability::UsabilityConfig usability;
  rhythm::PyramidConfig pyramid;
  rhythm::EntropyConfig entropy;
  rhythm::HrvConfig hrv;
  pei::PeiConfig pei;
  quiz::HttpClientConfig llm;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

/// Named profiles: "default" and "unscaled" (all component scalings set to 1).
Config profile_config(const std::string& name);
std::vector<std::string> profile_names();

/// Applies "key = value" lines ('#' starts a comment). Unknown keys and
/// malformed values throw ConfigError naming the line.
void apply_config_text(Config& cfg, const std::string& text);

/// Profile defaults, then the file. A "profile" key inside the file is honoured
/// only when `profile` is empty.
Config load_config(const std::filesystem::path& path, const std::string& profile = "");

/// Every key with its current value, sorted by key. Secrets are omitted.
std::vector<std::pair<std::string, std::string>> config_echo(const Config& cfg);

/// All recognised keys.
std::vector<std::string> config_keys();

}  // namespace slidebench::config
