#include "prooftutor/app.hpp"

namespace prooftutor {

AppContext load_app(Config config) {
  config.validate();
  config.search.knobs = config.knobs();
  AppContext app;
  app.corpus = load_corpus(config.manifest_path());
  if (const auto path = config.incorrect_manifest_path(); !path.empty()) app.incorrect = load_corpus(path).proofs;
  app.dictionaries = std::make_shared<const Dictionaries>(
      build_dictionaries(app.corpus.proofs, DescriptionFile::load(config.descriptions_path())));
  app.config = std::move(config);
  return app;
}

TutorDeps tutor_deps(const AppContext& app, std::shared_ptr<LlmBackend> llm) {
  TutorDeps deps;
  deps.corpus = app.corpus;
  deps.dictionaries = app.dictionaries;
  deps.llm = std::move(llm);
  deps.checker_factory = app.config.checker_factory();
  deps.search = app.config.search;
  deps.search.knobs = app.config.knobs();
  deps.knobs = app.config.knobs();
  deps.journal_path = app.config.journal_path;
  return deps;
}

}  // namespace prooftutor
