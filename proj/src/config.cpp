#include "prooftutor/config.hpp"

#include <cstdlib>
#include <filesystem>

#include "json.hpp"
#include "prooftutor/errors.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

BackendKind backend_from_string(std::string_view s) {
  if (s == "remote") return BackendKind::remote;
  if (s == "replay") return BackendKind::replay;
  if (s == "mock") return BackendKind::mock;
  throw ConfigError("unknown backend: " + std::string(s));
}

}  // namespace

Config Config::parse(std::string_view json_text, const std::string& base_dir) {
  Config c;
  try {
    const auto j = json::parse(json_text);
    c.lean_project_root = resolve(base_dir, j.value("lean_project_root", c.lean_project_root));
    c.backend = backend_from_string(j.value("backend", "replay"));
    c.model_id = j.value("model_id", c.model_id);
    c.temperature = j.value("temperature", c.temperature);
    c.max_output_tokens = j.value("max_output_tokens", c.max_output_tokens);
    c.dataset_root = resolve(base_dir, j.value("dataset_root", std::string(".")));
    c.incorrect_root = resolve(base_dir, j.value("incorrect_root", std::string()));
    c.replay_dir = resolve(base_dir, j.value("replay_dir", std::string()));
    c.record_dir = resolve(base_dir, j.value("record_dir", std::string()));
    const auto checker = j.value("checker", std::string("fixtures"));
    if (checker == "fixtures")
      c.checker = CheckerKind::fixtures;
    else if (checker == "repl")
      c.checker = CheckerKind::repl;
    else
      throw ConfigError("unknown checker: " + checker);
    for (const auto& f : j.value("fixtures", std::vector<std::string>{})) c.fixtures.push_back(resolve(base_dir, f));
    if (j.contains("repl")) {
      const auto& r = j["repl"];
      c.repl.command = r.value("command", c.repl.command);
      c.repl.preamble = r.value("preamble", c.repl.preamble);
      c.repl.startup_timeout = std::chrono::milliseconds(r.value("startup_timeout_ms", 120'000));
      c.repl.check_timeout = std::chrono::milliseconds(r.value("check_timeout_ms", 30'000));
    }
    if (j.contains("remote")) {
      const auto& r = j["remote"];
      c.remote.base_url = r.value("base_url", c.remote.base_url);
      c.remote.path = r.value("path", c.remote.path);
      c.remote.api_key_env = r.value("api_key_env", c.remote.api_key_env);
      c.remote.transport_retries = r.value("transport_retries", c.remote.transport_retries);
    }
    if (j.contains("search")) {
      c.search.branching = j["search"].value("branching", c.search.branching);
      c.search.max_depth = j["search"].value("max_depth", c.search.max_depth);
    }
    c.journal_path = resolve(base_dir, j.value("journal", std::string()));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.repl.project_root = c.lean_project_root;
  return c;
}

Config Config::load(const std::string& path) {
  return parse(text::read_file(path), fs::absolute(path).parent_path().string());
}

void Config::apply_environment() {
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  };
  if (auto v = env("PROOFTUTOR_BACKEND")) backend = backend_from_string(*v);
  if (auto v = env("PROOFTUTOR_MODEL")) model_id = *v;
  if (auto v = env("PROOFTUTOR_BASE_URL")) remote.base_url = *v;
  if (auto v = env("PROOFTUTOR_API_KEY_ENV")) remote.api_key_env = *v;
  if (auto v = env("PROOFTUTOR_LEAN_ROOT")) {
    lean_project_root = *v;
    repl.project_root = *v;
  }
  if (auto v = env("PROOFTUTOR_REPLAY_DIR")) replay_dir = *v;
}

void Config::validate() const {
  if (temperature < 0) throw ConfigError("temperature must be non-negative");
  search.validate();
  if (backend == BackendKind::replay && (replay_dir.empty() || !fs::is_directory(replay_dir)))
    throw ConfigError("replay backend needs an existing replay_dir, got '" + replay_dir + "'");
  if (checker == CheckerKind::fixtures && fixtures.empty())
    throw ConfigError("fixture checker needs at least one fixture file");
}

Knobs Config::knobs() const { return {temperature, model_id, max_output_tokens}; }

std::string Config::manifest_path() const { return (fs::path(dataset_root) / "manifest.json").string(); }
std::string Config::descriptions_path() const { return (fs::path(dataset_root) / "descriptions.json").string(); }

std::string Config::incorrect_manifest_path() const {
  return incorrect_root.empty() ? std::string() : (fs::path(incorrect_root) / "manifest.json").string();
}

std::shared_ptr<LlmBackend> Config::make_backend() const {
  switch (backend) {
    case BackendKind::replay:
      return std::make_shared<ReplayBackend>(replay_dir);
    case BackendKind::mock:
      return std::make_shared<MockBackend>();
    case BackendKind::remote: {
      auto http = std::make_shared<HttpChatBackend>(remote);
      if (record_dir.empty()) return http;
      // The recorder borrows the client; keep both alive together.
      struct Owned : LlmBackend {
        std::shared_ptr<HttpChatBackend> inner;
        RecordingBackend recorder;
        Owned(std::shared_ptr<HttpChatBackend> h, const std::string& dir) : inner(std::move(h)), recorder(*inner, dir) {}
        std::string complete(const PromptBundle& p) override { return recorder.complete(p); }
      };
      return std::make_shared<Owned>(std::move(http), record_dir);
    }
  }
  throw ConfigError("unsupported backend");
}

std::function<std::unique_ptr<Checker>()> Config::checker_factory() const {
  if (checker == CheckerKind::repl) {
    auto cfg = repl;
    return [cfg] { return std::make_unique<ReplChecker>(cfg); };
  }
  auto table = std::make_shared<FixtureTable>();
  for (const auto& f : fixtures) table->load_into(f);
  std::shared_ptr<const FixtureTable> shared = table;
  return [shared] { return std::make_unique<FixtureChecker>(shared); };
}

std::string MockBackend::complete(const PromptBundle& prompt) {
  const auto it = prompt.metadata.find("kind");
  const std::string kind = it == prompt.metadata.end() ? "" : it->second;
  if (kind == "feedback")
    return R"({"Type": "Other", "Message": "This step does not follow from what you have shown so far.", )"
           R"("Question": "What does the goal look like right now?", "Informalization": "The next step is to look )"
           R"(again at the goal before this step."})";
  if (kind == "cold_start" || kind == "mid_proof_hint")
    return R"({"Type": "Other", "Message": "None", "Question": "Which variable could you do induction on?", )"
           R"("Informalization": "The next step is to start an induction."})";
  if (kind == "baseline")
    return R"({"Error_Message": "None", "Next_Step": "The next step is to check the goal.", "Question": "What is left to show?"})";
  return "rfl";
}

}  // namespace prooftutor
