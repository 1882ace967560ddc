#pragma once

// Fixed scenarios run against the shipped data. The replay recorder runs
// them with a scripted model to build data/replay and the golden file; the
// acceptance suite reruns them from the replay store and compares.

#include <memory>
#include <string>

#include "json.hpp"
#include "prooftutor/app.hpp"

namespace prooftutor::testing {

std::string data_path(const std::string& relative);

/// data/config.json with every path resolved inside the data directory.
AppContext load_data_app();

/// Autoformalization evaluation in all four mode / staff combinations.
nlohmann::json run_eval_scenarios(const AppContext& app, LlmBackend& llm);
/// Feedback pipeline and baseline feedback for every incorrect proof.
nlohmann::json run_pipeline_scenarios(const AppContext& app, LlmBackend& llm);
/// A scripted tutoring script through TutorService.
nlohmann::json run_service_scenario(const AppContext& app, std::shared_ptr<LlmBackend> llm,
                                    const std::string& journal_path = "");

/// support/golden/scenarios.json, written by record_replay.
nlohmann::json load_golden();

nlohmann::json run_all(const AppContext& app, std::shared_ptr<LlmBackend> llm);

/// Student steps for the service script, in submission order.
struct ScriptStep {
  std::string session;  // theorem name
  std::string action;   // "step" | "hint"
  std::string text;
};
std::vector<ScriptStep> service_script(const Corpus& corpus);

}  // namespace prooftutor::testing
