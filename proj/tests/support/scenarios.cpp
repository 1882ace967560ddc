#include "scenarios.hpp"

#include "prooftutor/evaluation.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor::testing {

using nlohmann::json;

std::string data_path(const std::string& relative) { return std::string(PROOFTUTOR_DATA_DIR) + "/" + relative; }

json load_golden() { return json::parse(text::read_file(std::string(PROOFTUTOR_SUPPORT_DIR) + "/golden/scenarios.json")); }

AppContext load_data_app() { return load_app(Config::load(data_path("config.json"))); }

json run_eval_scenarios(const AppContext& app, LlmBackend& llm) {
  json out = json::array();
  auto checker = app.config.checker_factory()();
  for (auto mode : {EvalMode::step, EvalMode::whole}) {
    for (bool staff : {true, false}) {
      EvalOptions options{mode, staff, app.config.knobs()};
      auto report = evaluate_autoformalization(app.corpus, app.incorrect, *app.dictionaries, options, llm, *checker);
      out.push_back(report.as_json());
    }
  }
  return out;
}

json run_pipeline_scenarios(const AppContext& app, LlmBackend& llm) {
  json out = json::array();
  auto checker = app.config.checker_factory()();
  for (const auto& proof : app.incorrect) {
    auto run = run_feedback_pipeline(proof, app.corpus, app.dictionaries, app.config.search, true, llm, *checker);
    json j{{"declaration", proof.theorem.declaration()}, {"trace", run.trace}};
    if (run.search) j["search"] = *run.search;
    if (run.feedback) {
      j["feedback"] = feedback_json(run.feedback->bundle);
      j["next_step"] = run.feedback->next_step ? json(*run.feedback->next_step) : json(nullptr);
    }
    auto baseline = parse_baseline_feedback(
        llm.complete(build_baseline_prompt(proof.theorem.statement_nl, proof.nl_steps(), app.config.knobs())));
    j["baseline"] = {{"Error_Message", baseline.error_message},
                     {"Next_Step", baseline.next_step},
                     {"Question", baseline.question}};
    out.push_back(j);
  }
  return out;
}

std::vector<ScriptStep> service_script(const Corpus& corpus) {
  std::vector<ScriptStep> script;
  for (const auto& t : corpus.theorems()) script.push_back({t.name, "hint", ""});
  const auto* just = corpus.find("add_comm_justification_based");
  const auto nl = just->nl_steps();
  for (int i = 0; i < 4; ++i) script.push_back({"add_comm", "step", nl[i]});
  script.push_back({"add_comm", "hint", ""});
  script.push_back({"add_comm", "step", nl[4]});
  script.push_back({"add_comm", "step", nl[5]});
  // skips the step that uses the hypothesis
  script.push_back({"add_comm", "step", nl[7]});
  script.push_back({"add_comm", "hint", ""});
  script.push_back({"add_comm", "step", nl[6]});
  script.push_back({"add_comm", "step", nl[7]});
  const auto* eq = corpus.find("eq_succ_of_ne_zero_equation_based");
  script.push_back({"eq_succ_of_ne_zero", "step", eq->nl_steps()[0]});
  script.push_back({"eq_succ_of_ne_zero", "step", eq->nl_steps()[2]});
  return script;
}

json run_service_scenario(const AppContext& app, std::shared_ptr<LlmBackend> llm, const std::string& journal_path) {
  auto deps = tutor_deps(app, std::move(llm));
  deps.journal_path = journal_path;
  auto counter = std::make_shared<int>(0);
  deps.session_ids = [counter] { return "session-" + std::to_string(++*counter); };
  TutorService service(std::move(deps));

  json out{{"theorems", theorem_list_json(service.theorems(), service.worlds())}, {"events", json::array()}};
  std::map<std::string, std::string> sessions;
  auto session_for = [&](const std::string& theorem) {
    auto it = sessions.find(theorem);
    if (it != sessions.end()) return it->second;
    auto id = service.create_session(theorem).session_id;
    sessions[theorem] = id;
    return id;
  };
  for (const auto& s : service_script(app.corpus)) {
    const auto id = session_for(s.session);
    json event{{"session", id}, {"action", s.action}};
    if (s.action == "hint") {
      event["response"] = hint_json(service.hint(id));
    } else {
      event["text"] = s.text;
      event["response"] = step_outcome_json(service.submit_step(id, s.text));
    }
    out["events"].push_back(event);
  }
  out["transcripts"] = json::object();
  for (const auto& [theorem, id] : sessions) out["transcripts"][theorem] = transcript_json(service.session(id), true);
  return out;
}

json run_all(const AppContext& app, std::shared_ptr<LlmBackend> llm) {
  return {{"evaluation", run_eval_scenarios(app, *llm)},
          {"pipelines", run_pipeline_scenarios(app, *llm)},
          {"service", run_service_scenario(app, llm)}};
}

}  // namespace prooftutor::testing
