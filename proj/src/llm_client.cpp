#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "slidebench/llm_client.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace slidebench::quiz {

using nlohmann::json;

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Walks the template; calls on_text for literal runs and on_name for placeholders.
template <typename Text, typename Name>
void scan(const std::string& t, Text&& on_text, Name&& on_name) {
  std::size_t i = 0;
  while (i < t.size()) {
    const char c = t[i];
    if ((c == '{' || c == '}') && i + 1 < t.size() && t[i + 1] == c) {
      on_text(std::string(1, c));
      i += 2;
      continue;
    }
    if (c == '{') {
      std::size_t j = i + 1;
      while (j < t.size() && is_name_char(t[j])) ++j;
      if (j < t.size() && t[j] == '}' && j > i + 1) {
        on_name(t.substr(i + 1, j - i - 1));
        i = j + 1;
        continue;
      }
    }
    on_text(std::string(1, c));
    ++i;
  }
}

}  // namespace

PromptTemplate::PromptTemplate(std::string id, std::string text)
    : id_(std::move(id)), text_(std::move(text)) {}

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> out;
  scan(text_, [](const std::string&) {}, [&](const std::string& n) {
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  });
  return out;
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& values) const {
  std::string out;
  std::vector<std::string> missing;
  scan(text_, [&](const std::string& s) { out += s; }, [&](const std::string& n) {
    auto it = values.find(n);
    if (it == values.end()) {
      if (std::find(missing.begin(), missing.end(), n) == missing.end()) missing.push_back(n);
      return;
    }
    out += it->second;
  });
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw TemplateError("template " + id_ + " is missing substitutions for: " + list);
  }
  return out;
}

std::string default_prompt_dir() { return std::string(SLIDEBENCH_RESOURCE_DIR) + "/prompts"; }

PromptTemplate load_prompt(const std::string& id, int version, const std::string& dir) {
  const std::string base = dir.empty() ? default_prompt_dir() : dir;
  const std::string path = base + "/" + id + ".v" + std::to_string(version) + ".txt";
  std::ifstream in(path);
  if (!in) throw TemplateError("prompt template not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return PromptTemplate(id, ss.str());
}

std::string llm_exchange(LlmClient& client, const PromptTemplate& tmpl,
                         const std::map<std::string, std::string>& values) {
  return client.complete(tmpl.render(values));
}

MockLlmClient::MockLlmClient(std::vector<std::string> replies)
    : replies_(replies.begin(), replies.end()) {}

MockLlmClient::MockLlmClient(std::function<std::string(const std::string&)> handler)
    : handler_(std::move(handler)) {}

std::string MockLlmClient::complete(const std::string& prompt) {
  prompts_.push_back(prompt);
  if (handler_) return handler_(prompt);
  if (replies_.empty()) throw TransportError("mock client has no canned reply left");
  std::string r = std::move(replies_.front());
  replies_.pop_front();
  return r;
}

void HttpClientConfig::validate() const {
  if (url.rfind("http://", 0) != 0 && url.rfind("https://", 0) != 0) {
    throw std::invalid_argument("llm.url must start with http:// or https://");
  }
  if (!(timeout_seconds > 0)) throw std::invalid_argument("llm.timeout_seconds must be > 0");
  if (retries < 0) throw std::invalid_argument("llm.retries must be >= 0");
  if (max_parallel < 1) throw std::invalid_argument("llm.max_parallel must be >= 1");
}

HttpLlmClient::HttpLlmClient(HttpClientConfig config) : config_(std::move(config)) {
  config_.validate();
  const auto scheme_end = config_.url.find("://") + 3;
  const auto slash = config_.url.find('/', scheme_end);
  scheme_host_ = config_.url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : config_.url.substr(slash);
}

std::string HttpLlmClient::attempt(const std::string& body) {
  httplib::Client cli(scheme_host_);
  const auto secs = static_cast<time_t>(config_.timeout_seconds);
  const auto usecs = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(secs)) * 1e6);
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  cli.set_write_timeout(secs, usecs);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
  auto res = cli.Post(path_, headers, body, "application/json");
  if (!res) throw TransportError("request to " + config_.url + " failed: " + httplib::to_string(res.error()));
  if (res->status >= 500 || res->status == 429) {
    throw TransportError("endpoint returned HTTP " + std::to_string(res->status));
  }
  if (res->status >= 400) {
    // client errors do not get better on retry
    throw std::runtime_error("endpoint rejected the request with HTTP " + std::to_string(res->status));
  }
  return res->body;
}

std::string HttpLlmClient::complete(const std::string& prompt) {
  {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < config_.max_parallel; });
    ++in_flight_;
  }
  struct Release {
    HttpLlmClient* self;
    ~Release() {
      std::lock_guard<std::mutex> lock(self->mu_);
      --self->in_flight_;
      self->cv_.notify_one();
    }
  } release{this};

  json req = {{"model", config_.model},
              {"temperature", config_.temperature},
              {"messages", json::array({{{"role", "user"}, {"content", prompt}}})}};
  const std::string body = req.dump();

  std::string reply;
  int backoff = config_.retry_backoff_ms;
  for (int i = 0;; ++i) {
    try {
      reply = attempt(body);
      break;
    } catch (const TransportError& e) {
      if (i >= config_.retries) {
        throw TransportError(std::string(e.what()) + " (after " + std::to_string(i + 1) + " attempts)");
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    } catch (const std::runtime_error& e) {
      throw TransportError(e.what());
    }
  }

  try {
    const json j = json::parse(reply);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw ResponseParseError(std::string("malformed completion reply: ") + e.what());
  }
}

std::string questions_for_prompt(const QuizBankDoc& bank) {
  json arr = json::array();
  for (const auto& q : bank.questions) {
    arr.push_back({{"id", q.id}, {"question", q.question}, {"options", q.options}});
  }
  return arr.dump(2);
}

QuizAnswerSet run_quiz_exam(LlmClient& client, const QuizBankDoc& bank, const std::string& topic,
                            const std::string& slide_contents, const std::string& prompt_dir) {
  const PromptTemplate tmpl = load_prompt("quiz_evaluation", 1, prompt_dir);
  const std::string reply = llm_exchange(
      client, tmpl,
      {{"topic", topic}, {"slide_contents", slide_contents}, {"quiz_questions", questions_for_prompt(bank)}});
  try {
    return parse_answer_set(reply);
  } catch (const QuizParseError& e) {
    throw ResponseParseError(e.what());
  }
}

}  // namespace slidebench::quiz
