#pragma once

#include <string>
#include <vector>

#include "prooftutor/autoformalizer.hpp"
#include "prooftutor/dataset.hpp"
#include "prooftutor/feedback.hpp"
#include "prooftutor/next_step.hpp"
#include "prooftutor/state_match.hpp"
#include "prooftutor/stats.hpp"

namespace prooftutor {

enum class EvalMode { step, whole };
std::string_view to_string(EvalMode m);
EvalMode eval_mode_from_string(std::string_view s);

struct EvalOptions {
  EvalMode mode = EvalMode::step;
  bool staff_solution = true;
  Knobs knobs;
};

struct ProofEvaluation {
  std::string declaration;
  ProofLabel label = ProofLabel::correct;
  bool evaluated = false;  // false when a backend failed mid-proof
  std::string failure;
  TacticList predicted;
  std::size_t truth_length = 0;
  std::size_t compared = 0;
  int tactic_hits = 0;
  bool proof_exact = false;        // correct proofs
  bool compiles_to_complete = false;  // whole mode, correct proofs
  bool incorrect_success = false;  // incorrect proofs
  std::vector<MatchVerdict> verdicts;
};

struct EvalReport {
  EvalMode mode = EvalMode::step;
  bool staff_solution = true;
  std::vector<ProofEvaluation> proofs;

  int tactic_hits = 0;
  int tactic_total = 0;
  int correct_exact = 0;
  int correct_total = 0;
  int incorrect_success = 0;
  int incorrect_total = 0;
  int compiling_proofs = 0;
  int skipped = 0;

  std::string text() const;
  nlohmann::json as_json() const;
  /// One JSON line per compared tactic.
  std::string verdict_log() const;
};

/// Formalizes every non-staff correct proof and every incorrect proof and
/// scores them. Staff solutions are supplied in-context when enabled.
/// Proofs whose backend fails are recorded as skipped.
EvalReport evaluate_autoformalization(const Corpus& corpus, const std::vector<AnnotatedProof>& incorrect,
                                      const Dictionaries& dicts, const EvalOptions& options, LlmBackend& llm,
                                      Checker& checker);

struct FeedbackRun {
  FormalizationTrace trace;
  std::optional<SearchResult> search;      // present iff the trace halted on a checker error
  std::optional<FeedbackOutcome> feedback;  // likewise
};

/// Formalizes `proof` step by step and, if a step fails, searches for the
/// next step and generates feedback. `base` supplies branching, depth and
/// knobs; forbidden names and premises come from the corpus.
FeedbackRun run_feedback_pipeline(const AnnotatedProof& proof, const Corpus& corpus,
                                  std::shared_ptr<const Dictionaries> dicts, const SearchConfig& base,
                                  bool staff_solution, LlmBackend& llm, Checker& checker);

}  // namespace prooftutor
