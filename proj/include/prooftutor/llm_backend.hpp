#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

namespace prooftutor {

struct Knobs {
  double temperature = 0.0;
  std::string model_id = "gpt-4o";
  int max_output_tokens = 1024;

  bool operator==(const Knobs&) const = default;
};

struct PromptBundle {
  std::string system;
  std::string user;
  Knobs knobs;
  // Not sent to the model and not part of the replay key.
  std::map<std::string, std::string> metadata;

  /// Throws TemplateError on an empty part or a negative temperature.
  void validate() const;
  /// Key material for the replay store: system, user and knobs only.
  std::string canonical_json() const;
  std::string replay_key() const;
};

/// Substitutes `{{name}}` placeholders in one pass; braces elsewhere are
/// literal. Throws TemplateError on an unbound placeholder.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& bindings);

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  /// Raw model text. Throws BackendError on failure.
  virtual std::string complete(const PromptBundle& prompt) = 0;
};

/// Returns queued responses in order, or a function of the prompt.
class ScriptedBackend : public LlmBackend {
 public:
  using Responder = std::function<std::string(const PromptBundle&)>;

  ScriptedBackend() = default;
  explicit ScriptedBackend(Responder responder) : responder_(std::move(responder)) {}

  void push(std::string response) { queue_.push_back(std::move(response)); }
  std::string complete(const PromptBundle& prompt) override;
  int calls() const { return calls_; }

 private:
  Responder responder_;
  std::deque<std::string> queue_;
  int calls_ = 0;
};

/// Content-addressed store: `<dir>/<replay_key>.json` holding
/// {"prompt": {...}, "response": "..."}. A miss is a BackendError.
class ReplayBackend : public LlmBackend {
 public:
  explicit ReplayBackend(std::string directory) : directory_(std::move(directory)) {}
  std::string complete(const PromptBundle& prompt) override;
  std::string entry_path(const PromptBundle& prompt) const;

 private:
  std::string directory_;
};

/// Forwards to `inner` and writes each exchange into a replay directory.
class RecordingBackend : public LlmBackend {
 public:
  RecordingBackend(LlmBackend& inner, std::string directory) : inner_(inner), directory_(std::move(directory)) {}
  std::string complete(const PromptBundle& prompt) override;

 private:
  LlmBackend& inner_;
  std::string directory_;
  std::mutex mutex_;
};

void write_replay_entry(const std::string& directory, const PromptBundle& prompt, const std::string& response);

struct HttpBackendConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string api_key_env = "OPENAI_API_KEY";
  int transport_retries = 2;
  std::chrono::seconds timeout{120};
};

/// Chat-completion client. Only transport failures (no HTTP response) are
/// retried; any HTTP or payload error is final.
class HttpChatBackend : public LlmBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig config);
  std::string complete(const PromptBundle& prompt) override;

  /// Request body for a prompt; exposed for tests.
  static std::string request_body(const PromptBundle& prompt);
  /// Extracts choices[0].message.content. Throws BackendError.
  static std::string parse_response(std::string_view body);

 private:
  HttpBackendConfig config_;
  std::string api_key_;
};

}  // namespace prooftutor
