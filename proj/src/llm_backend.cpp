#include "prooftutor/llm_backend.hpp"

#include <filesystem>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "prooftutor/errors.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

using nlohmann::json;

void PromptBundle::validate() const {
  if (text::is_blank(system)) throw TemplateError("prompt has an empty system part");
  if (text::is_blank(user)) throw TemplateError("prompt has an empty user part");
  if (knobs.temperature < 0) throw TemplateError("temperature must be non-negative");
}

std::string PromptBundle::canonical_json() const {
  // nlohmann::json objects keep keys sorted, so dump() is canonical.
  json j{{"system", system},
         {"user", user},
         {"knobs",
          {{"temperature", knobs.temperature},
           {"model_id", knobs.model_id},
           {"max_output_tokens", knobs.max_output_tokens}}}};
  return j.dump();
}

std::string PromptBundle::replay_key() const { return text::sha256_hex(canonical_json()); }

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& bindings) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    auto open = tmpl.find("{{", i);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(i));
      break;
    }
    auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) throw TemplateError("unterminated placeholder in template");
    out.append(tmpl.substr(i, open - i));
    const std::string name(tmpl.substr(open + 2, close - open - 2));
    auto it = bindings.find(name);
    if (it == bindings.end()) throw TemplateError("no value bound for placeholder {{" + name + "}}");
    out += it->second;
    i = close + 2;
  }
  return out;
}

std::string ScriptedBackend::complete(const PromptBundle& prompt) {
  ++calls_;
  if (!queue_.empty()) {
    auto r = std::move(queue_.front());
    queue_.pop_front();
    return r;
  }
  if (responder_) return responder_(prompt);
  throw BackendError("scripted backend has no response left");
}

std::string ReplayBackend::entry_path(const PromptBundle& prompt) const {
  return (std::filesystem::path(directory_) / (prompt.replay_key() + ".json")).string();
}

std::string ReplayBackend::complete(const PromptBundle& prompt) {
  const auto path = entry_path(prompt);
  if (!std::filesystem::exists(path)) throw BackendError("no replay entry " + path);
  try {
    return json::parse(text::read_file(path)).at("response").get<std::string>();
  } catch (const json::exception& e) {
    throw BackendError("corrupt replay entry " + path + ": " + e.what());
  }
}

void write_replay_entry(const std::string& directory, const PromptBundle& prompt, const std::string& response) {
  std::filesystem::create_directories(directory);
  json j{{"prompt", json::parse(prompt.canonical_json())}, {"response", response}};
  text::write_file((std::filesystem::path(directory) / (prompt.replay_key() + ".json")).string(), j.dump(2) + "\n");
}

std::string RecordingBackend::complete(const PromptBundle& prompt) {
  auto response = inner_.complete(prompt);
  std::lock_guard lock(mutex_);
  write_replay_entry(directory_, prompt, response);
  return response;
}

HttpChatBackend::HttpChatBackend(HttpBackendConfig config) : config_(std::move(config)) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') throw ConfigError("environment variable " + config_.api_key_env + " is not set");
  api_key_ = key;
}

std::string HttpChatBackend::request_body(const PromptBundle& prompt) {
  json j{{"model", prompt.knobs.model_id},
         {"temperature", prompt.knobs.temperature},
         {"max_tokens", prompt.knobs.max_output_tokens},
         {"messages",
          json::array({{{"role", "system"}, {"content", prompt.system}}, {{"role", "user"}, {"content", prompt.user}}})}};
  return j.dump();
}

std::string HttpChatBackend::parse_response(std::string_view body) {
  try {
    auto j = json::parse(body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw BackendError(std::string("unexpected chat-completion payload: ") + e.what());
  }
}

std::string HttpChatBackend::complete(const PromptBundle& prompt) {
  prompt.validate();
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_bearer_token_auth(api_key_);
  const auto body = request_body(prompt);
  std::string last_error;
  for (int attempt = 0; attempt <= config_.transport_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::seconds(1 << (attempt - 1)));
    auto res = client.Post(config_.path, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200)
      throw BackendError("chat endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body);
    return parse_response(res->body);
  }
  throw BackendError("chat endpoint unreachable: " + last_error);
}

}  // namespace prooftutor
