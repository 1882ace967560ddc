#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "prooftutor/lean_bridge.hpp"
#include "prooftutor/llm_backend.hpp"
#include "prooftutor/next_step.hpp"

namespace prooftutor {

enum class BackendKind { remote, replay, mock };
enum class CheckerKind { fixtures, repl };

struct Config {
  std::string lean_project_root = ".";
  BackendKind backend = BackendKind::replay;
  std::string model_id = "gpt-4o";
  double temperature = 0.0;
  int max_output_tokens = 1024;
  std::string dataset_root;  // holds manifest.json and descriptions.json
  std::string incorrect_root;  // manifest.json of generated incorrect proofs; may be empty
  std::string replay_dir;
  std::string record_dir;  // remote only: write replay entries here
  CheckerKind checker = CheckerKind::fixtures;
  std::vector<std::string> fixtures;  // JSON-lines checker fixtures
  ReplConfig repl;
  HttpBackendConfig remote;
  SearchConfig search;
  std::string journal_path;

  /// Relative paths resolve against the file's directory.
  static Config load(const std::string& path);
  static Config parse(std::string_view json_text, const std::string& base_dir);

  /// PROOFTUTOR_BACKEND, PROOFTUTOR_MODEL, PROOFTUTOR_BASE_URL,
  /// PROOFTUTOR_API_KEY_ENV, PROOFTUTOR_LEAN_ROOT, PROOFTUTOR_REPLAY_DIR.
  void apply_environment();
  /// Throws ConfigError.
  void validate() const;

  Knobs knobs() const;
  std::string manifest_path() const;
  std::string descriptions_path() const;
  std::string incorrect_manifest_path() const;

  std::shared_ptr<LlmBackend> make_backend() const;
  /// One checker per call; fixture tables are loaded once and shared.
  std::function<std::unique_ptr<Checker>()> checker_factory() const;
};

/// Offline stand-in that answers every prompt kind with a fixed response.
class MockBackend : public LlmBackend {
 public:
  std::string complete(const PromptBundle& prompt) override;
};

}  // namespace prooftutor
