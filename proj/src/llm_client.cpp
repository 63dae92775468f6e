#include "ludo/llm_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace ludo {

using nlohmann::json;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

}  // namespace

HttpTransport::HttpTransport()
    : HttpTransport(env_or("LUDO_LLM_BASE_URL", ""),
                    env_or("LUDO_LLM_API_KEY", "")) {}

HttpTransport::HttpTransport(std::string base_url, std::string api_key,
                             std::string path)
    : base_url_(std::move(base_url)),
      api_key_(std::move(api_key)),
      path_(std::move(path)) {}

CompletionResult HttpTransport::complete(const CompletionRequest& request) {
  if (base_url_.empty()) {
    return CompletionResult::failure(
        "no completion endpoint configured (set LUDO_LLM_BASE_URL)");
  }
  json body;
  body["model"] = request.model;
  body["messages"] = json::array({json{{"role", "user"}, {"content", request.prompt}}});
  body["temperature"] = request.temperature;
  const std::string payload = body.dump();

  std::string last_error = "no attempts made";
  for (int attempt = 0; attempt <= request.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(backoff_ms_ << (attempt - 1)));
    }
    httplib::Client client(base_url_);
    client.set_connection_timeout(request.timeout_seconds, 0);
    client.set_read_timeout(request.timeout_seconds, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) {
      headers.emplace("Authorization", "Bearer " + api_key_);
    }
    auto res = client.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "retryable status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      return CompletionResult::failure("status " + std::to_string(res->status) +
                                       ": " + res->body);
    }
    try {
      const json reply = json::parse(res->body);
      return CompletionResult::success(
          reply.at("choices").at(0).at("message").at("content").get<std::string>());
    } catch (const std::exception& ex) {
      return CompletionResult::failure(std::string("malformed response: ") + ex.what());
    }
  }
  return CompletionResult::failure("retries exhausted: " + last_error);
}

CompletionResult ReplayTransport::complete(const CompletionRequest& request) {
  ++calls_;
  if (auto it = by_prompt_.find(request.prompt); it != by_prompt_.end()) {
    return CompletionResult::success(it->second);
  }
  if (next_ < queue_.size()) return queue_[next_++];
  return CompletionResult::failure("replay transport: no scripted response");
}

}  // namespace ludo
