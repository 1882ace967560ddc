#include "prooftutor/evaluation.hpp"

#include "prooftutor/errors.hpp"

namespace prooftutor {

using nlohmann::json;

std::string_view to_string(EvalMode m) { return m == EvalMode::step ? "step" : "whole"; }

EvalMode eval_mode_from_string(std::string_view s) {
  if (s == "step") return EvalMode::step;
  if (s == "whole") return EvalMode::whole;
  throw Error("unknown evaluation mode: " + std::string(s));
}

namespace {

ProofEvaluation evaluate_one(const AnnotatedProof& proof, const Corpus& corpus,
                             const std::shared_ptr<const Dictionaries>& dicts, const EvalOptions& options,
                             LlmBackend& llm, Checker& checker) {
  ProofEvaluation ev;
  ev.declaration = proof.theorem.declaration();
  ev.label = proof.label;
  ev.truth_length = proof.steps.size();

  FormalizerContext ctx{proof.theorem, dicts, std::nullopt, options.knobs};
  if (options.staff_solution) {
    if (const auto* staff = corpus.staff_solution(proof.theorem.name)) ctx.staff_solution = *staff;
  }
  try {
    if (options.mode == EvalMode::step) {
      ev.predicted = predict_steps(proof.nl_steps(), ctx, llm);
    } else {
      try {
        ev.predicted = formalize_whole_proof(proof.nl_steps(), ctx, llm);
      } catch (const FormatError& e) {
        ev.failure = std::string("unusable model output: ") + e.what();
      }
    }
    if (proof.label == ProofLabel::correct) {
      auto score = score_correct_proof(ev.predicted, proof, checker);
      ev.compared = score.verdicts.size();
      ev.tactic_hits = score.tactic_hits;
      ev.proof_exact = score.proof_exact;
      ev.verdicts = std::move(score.verdicts);
      if (options.mode == EvalMode::whole && !ev.predicted.empty())
        ev.compiles_to_complete =
            checker.check({proof.theorem.statement_fl, ev.predicted}).status == CheckStatus::complete;
    } else {
      auto score = score_incorrect_proof(ev.predicted, proof, checker);
      ev.compared = score.prefix_verdicts.size();
      ev.incorrect_success = score.success;
      ev.verdicts = std::move(score.prefix_verdicts);
      if (!score.success && ev.failure.empty()) ev.failure = score.reason;
    }
    ev.evaluated = true;
  } catch (const BackendUnavailable& e) {
    ev.failure = std::string("checker unavailable: ") + e.what();
  } catch (const BackendError& e) {
    ev.failure = std::string("model backend failed: ") + e.what();
  }
  return ev;
}

}  // namespace

EvalReport evaluate_autoformalization(const Corpus& corpus, const std::vector<AnnotatedProof>& incorrect,
                                      const Dictionaries& dicts, const EvalOptions& options, LlmBackend& llm,
                                      Checker& checker) {
  auto shared = std::make_shared<const Dictionaries>(dicts);
  EvalReport report;
  report.mode = options.mode;
  report.staff_solution = options.staff_solution;
  std::vector<const AnnotatedProof*> work;
  for (const auto& p : corpus.proofs)
    if (p.persona != Persona::staff_solution && p.label == ProofLabel::correct) work.push_back(&p);
  for (const auto& p : incorrect) work.push_back(&p);

  for (const auto* p : work) {
    auto ev = evaluate_one(*p, corpus, shared, options, llm, checker);
    if (!ev.evaluated) {
      ++report.skipped;
    } else if (ev.label == ProofLabel::correct) {
      report.tactic_hits += ev.tactic_hits;
      report.tactic_total += static_cast<int>(ev.truth_length);
      report.correct_exact += ev.proof_exact;
      ++report.correct_total;
      report.compiling_proofs += ev.compiles_to_complete;
    } else {
      report.incorrect_success += ev.incorrect_success;
      ++report.incorrect_total;
    }
    report.proofs.push_back(std::move(ev));
  }
  return report;
}

namespace {

json proportion_json(int k, int n) {
  if (n == 0) return nullptr;
  const auto p = jeffreys_interval(k, n);
  return json{{"successes", k}, {"trials", n}, {"rate", p.point}, {"lower", p.lower}, {"upper", p.upper}};
}

std::string proportion_text(int k, int n) {
  return n == 0 ? std::string("n/a (no proofs evaluated)") : format_proportion(jeffreys_interval(k, n));
}

}  // namespace

std::string EvalReport::text() const {
  std::string out;
  out += "mode: " + std::string(to_string(mode)) + ", staff solution: " + (staff_solution ? "on" : "off") + "\n";
  out += "correct tactics:  " + proportion_text(tactic_hits, tactic_total) + "\n";
  out += "correct proofs:   " + proportion_text(correct_exact, correct_total) + "\n";
  out += "incorrect proofs: " + proportion_text(incorrect_success, incorrect_total) + "\n";
  if (mode == EvalMode::whole) out += "compiling proofs: " + std::to_string(compiling_proofs) + "\n";
  const auto total = proofs.size();
  out += "coverage: " + std::to_string(total - skipped) + " / " + std::to_string(total) + " proofs evaluated\n";
  for (const auto& p : proofs)
    if (!p.evaluated) out += "  skipped " + p.declaration + ": " + p.failure + "\n";
  return out;
}

json EvalReport::as_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& p : proofs) {
    list.push_back({{"declaration", p.declaration},
                    {"label", to_string(p.label)},
                    {"evaluated", p.evaluated},
                    {"failure", p.failure},
                    {"predicted", p.predicted},
                    {"truth_length", p.truth_length},
                    {"compared", p.compared},
                    {"tactic_hits", p.tactic_hits},
                    {"proof_exact", p.proof_exact},
                    {"compiles_to_complete", p.compiles_to_complete},
                    {"incorrect_success", p.incorrect_success}});
  }
  return {{"mode", to_string(mode)},
          {"staff_solution", staff_solution},
          {"correct_tactics", proportion_json(tactic_hits, tactic_total)},
          {"correct_proofs", proportion_json(correct_exact, correct_total)},
          {"incorrect_proofs", proportion_json(incorrect_success, incorrect_total)},
          {"compiling_proofs", compiling_proofs},
          {"skipped", skipped},
          {"proofs", list}};
}

std::string EvalReport::verdict_log() const {
  std::string out;
  for (const auto& p : proofs)
    for (std::size_t i = 0; i < p.verdicts.size(); ++i) out += verdict_log_line(p.declaration, i + 1, p.verdicts[i]) + "\n";
  return out;
}

FeedbackRun run_feedback_pipeline(const AnnotatedProof& proof, const Corpus& corpus,
                                  std::shared_ptr<const Dictionaries> dicts, const SearchConfig& base,
                                  bool staff_solution, LlmBackend& llm, Checker& checker) {
  FormalizerContext ctx{proof.theorem, std::move(dicts), std::nullopt, base.knobs};
  if (staff_solution) {
    if (const auto* staff = corpus.staff_solution(proof.theorem.name)) ctx.staff_solution = *staff;
  }
  FeedbackRun run;
  run.trace = formalize_step_by_step(proof.nl_steps(), ctx, llm, checker);
  if (run.trace.halt_reason != HaltReason::checker_error) return run;

  SearchConfig config = base;
  config.forbidden = forbidden_theorems(proof.theorem, corpus.theorems());
  config.world_premises = world_premises(corpus.proofs, proof.theorem.world);
  auto prior = run.trace.tactics();
  prior.pop_back();
  run.search = search(prior, proof.theorem, config, llm, checker);
  run.feedback = generate_feedback(run.trace, *run.search, llm, base.knobs);
  return run;
}

}  // namespace prooftutor
