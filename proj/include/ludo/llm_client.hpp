#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ludo {

struct CompletionRequest {
  std::string prompt;
  std::string model;
  double temperature = 0.0;
  int max_retries = 3;
  int timeout_seconds = 60;
};

/// Transport outcome: ok with the service's text, or a transport error after
/// retries are exhausted. Transport errors are recorded downstream with a
/// distinguishing tag; they never abort a run.
struct CompletionResult {
  bool ok = false;
  std::string text;
  std::string error;

  static CompletionResult success(std::string t) { return {true, std::move(t), ""}; }
  static CompletionResult failure(std::string e) { return {false, "", std::move(e)}; }
};

class CompletionTransport {
 public:
  virtual ~CompletionTransport() = default;
  virtual CompletionResult complete(const CompletionRequest& request) = 0;
};

/// Chat-completion client over HTTP. Endpoint and credentials come from the
/// environment (LUDO_LLM_BASE_URL, LUDO_LLM_API_KEY) unless set explicitly.
/// Sends one user message (the rendered prompt) at the requested temperature
/// and retries transport failures with exponential backoff.
class HttpTransport : public CompletionTransport {
 public:
  HttpTransport();  // reads environment variables
  HttpTransport(std::string base_url, std::string api_key,
                std::string path = "/v1/chat/completions");

  CompletionResult complete(const CompletionRequest& request) override;

  /// Backoff base in milliseconds (doubled per retry); tests shrink it.
  void set_backoff_ms(int ms) { backoff_ms_ = ms; }

 private:
  std::string base_url_;
  std::string api_key_;
  std::string path_;
  int backoff_ms_ = 500;
};

/// Offline transport for tests: replays scripted responses. Responses can be
/// keyed by prompt (record/replay) or served from a queue in call order.
class ReplayTransport : public CompletionTransport {
 public:
  void record(const std::string& prompt, const std::string& response) {
    by_prompt_[prompt] = response;
  }
  void push(CompletionResult result) { queue_.push_back(std::move(result)); }

  CompletionResult complete(const CompletionRequest& request) override;

  int calls() const { return calls_; }

 private:
  std::map<std::string, std::string> by_prompt_;
  std::vector<CompletionResult> queue_;
  size_t next_ = 0;
  int calls_ = 0;
};

}  // namespace ludo
