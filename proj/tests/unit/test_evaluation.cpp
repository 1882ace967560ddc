#include "doctest.h"
#include "prooftutor/evaluation.hpp"
#include "scenarios.hpp"

using namespace prooftutor;

TEST_CASE("mode names") {
  CHECK(eval_mode_from_string(to_string(EvalMode::step)) == EvalMode::step);
  CHECK(eval_mode_from_string(to_string(EvalMode::whole)) == EvalMode::whole);
}

TEST_CASE("replayed evaluation matches the recorded golden") {
  auto app = testing::load_data_app();
  ReplayBackend llm(app.config.replay_dir);
  CHECK(testing::run_eval_scenarios(app, llm) == testing::load_golden().at("evaluation"));
}

TEST_CASE("replayed pipelines match the recorded golden") {
  auto app = testing::load_data_app();
  ReplayBackend llm(app.config.replay_dir);
  CHECK(testing::run_pipeline_scenarios(app, llm) == testing::load_golden().at("pipelines"));
}

TEST_CASE("report counts") {
  auto app = testing::load_data_app();
  ReplayBackend llm(app.config.replay_dir);
  auto checker = app.config.checker_factory()();
  auto report = evaluate_autoformalization(app.corpus, app.incorrect, *app.dictionaries,
                                           {EvalMode::step, true, app.config.knobs()}, llm, *checker);
  // staff solutions are context, not test items
  CHECK(report.correct_total == 3);
  CHECK(report.incorrect_total == 2);
  CHECK(report.skipped == 0);
  CHECK(report.tactic_total >= report.tactic_hits);
  CHECK(report.text().find("coverage: 5 / 5") != std::string::npos);
  auto log = report.verdict_log();
  std::size_t compared = 0;
  for (const auto& p : report.proofs) compared += p.compared;
  CHECK(static_cast<std::size_t>(std::count(log.begin(), log.end(), '\n')) == compared);
}

TEST_CASE("backend failures are skipped, not scored") {
  auto app = testing::load_data_app();
  ScriptedBackend llm;  // no responses: every call fails
  auto checker = app.config.checker_factory()();
  for (auto mode : {EvalMode::step, EvalMode::whole}) {
    auto report =
        evaluate_autoformalization(app.corpus, app.incorrect, *app.dictionaries, {mode, true, {}}, llm, *checker);
    CHECK(report.skipped == 5);
    CHECK(report.correct_exact == 0);
    CHECK(report.tactic_total == 0);
    for (const auto& p : report.proofs) {
      CHECK_FALSE(p.evaluated);
      CHECK_FALSE(p.failure.empty());
    }
  }
}

TEST_CASE("pipeline on a correct proof runs no search") {
  auto app = testing::load_data_app();
  ReplayBackend llm(app.config.replay_dir);
  auto checker = app.config.checker_factory()();
  const auto* proof = app.corpus.find("add_comm_justification_based");
  auto run = run_feedback_pipeline(*proof, app.corpus, app.dictionaries, app.config.search, true, llm, *checker);
  CHECK(run.trace.complete());
  CHECK_FALSE(run.search);
  CHECK_FALSE(run.feedback);
}
