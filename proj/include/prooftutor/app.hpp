#pragma once

#include <memory>
#include <string>
#include <vector>

#include "prooftutor/config.hpp"
#include "prooftutor/dataset.hpp"
#include "prooftutor/tutor_service.hpp"

namespace prooftutor {

/// Everything a command needs that is loaded from disk once.
struct AppContext {
  Config config;
  Corpus corpus;
  std::vector<AnnotatedProof> incorrect;  // empty when no incorrect_root is configured
  std::shared_ptr<const Dictionaries> dictionaries;
};

/// Validates the config and loads the corpus, incorrect set and dictionaries.
AppContext load_app(Config config);

TutorDeps tutor_deps(const AppContext& app, std::shared_ptr<LlmBackend> llm);

}  // namespace prooftutor
