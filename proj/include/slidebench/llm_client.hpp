#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "slidebench/quizbank.hpp"

namespace slidebench::quiz {

/// Endpoint unreachable, timed out, or answered with an HTTP error.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Endpoint answered but the reply could not be interpreted.
class ResponseParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TemplateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Prompt text with {name} placeholders; "{{" and "}}" stand for literal braces.
class PromptTemplate {
 public:
  PromptTemplate(std::string id, std::string text);

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }
  std::vector<std::string> placeholders() const;

  /// Throws TemplateError when a placeholder has no substitution.
  std::string render(const std::map<std::string, std::string>& values) const;

 private:
  std::string id_;
  std::string text_;
};

/// Loads "<dir>/<id>.v<version>.txt". The default directory is the installed
/// resource directory.
PromptTemplate load_prompt(const std::string& id, int version = 1, const std::string& dir = "");

std::string default_prompt_dir();

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  /// Send a fully rendered prompt and return the raw reply text.
  virtual std::string complete(const std::string& prompt) = 0;
};

/// Fill the template and send it.
std::string llm_exchange(LlmClient& client, const PromptTemplate& tmpl,
                         const std::map<std::string, std::string>& values);

/// Replays canned replies in order, or delegates to a handler.
class MockLlmClient : public LlmClient {
 public:
  MockLlmClient() = default;
  explicit MockLlmClient(std::vector<std::string> replies);
  explicit MockLlmClient(std::function<std::string(const std::string&)> handler);

  std::string complete(const std::string& prompt) override;
  const std::vector<std::string>& prompts() const { return prompts_; }

 private:
  std::deque<std::string> replies_;
  std::function<std::string(const std::string&)> handler_;
  std::vector<std::string> prompts_;
};

struct HttpClientConfig {
  std::string url;  // e.g. http://localhost:8000/v1/chat/completions
  std::string model;
  std::string api_key;
  double timeout_seconds = 60.0;
  int retries = 2;             // extra attempts after the first
  int retry_backoff_ms = 500;  // doubled after each failed attempt
  int max_parallel = 1;        // concurrent requests per client
  double temperature = 0.0;

  void validate() const;
};

/// Chat-completions style endpoint: posts {"model", "messages": [{"role": "user",
/// "content": prompt}]} and reads choices[0].message.content.
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(HttpClientConfig config);
  std::string complete(const std::string& prompt) override;

 private:
  std::string attempt(const std::string& body);

  HttpClientConfig config_;
  std::string scheme_host_;
  std::string path_;
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
};

/// Run the open-book exam for one deck through the client.
QuizAnswerSet run_quiz_exam(LlmClient& client, const QuizBankDoc& bank, const std::string& topic,
                            const std::string& slide_contents, const std::string& prompt_dir = "");

/// Questions rendered for the exam prompt (id, question, options; no answers).
std::string questions_for_prompt(const QuizBankDoc& bank);

}  // namespace slidebench::quiz
