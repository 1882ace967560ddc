#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prooftutor/dataset.hpp"
#include "prooftutor/lean_bridge.hpp"
#include "prooftutor/llm_backend.hpp"
#include "prooftutor/prompts.hpp"

namespace prooftutor {

/// Everything prompt construction needs for one theorem.
struct FormalizerContext {
  TheoremSpec theorem;
  std::shared_ptr<const Dictionaries> dictionaries;
  std::optional<AnnotatedProof> staff_solution;  // in-context when present
  Knobs knobs;
};

/// Proof source with `--` comments carrying each step's natural language.
std::string render_commented_proof(const AnnotatedProof& proof);

PromptBundle build_step_prompt(const TheoremSpec& theorem, const std::string& nl_step, const Dictionaries& dicts,
                               const std::vector<prompts::FewShotExample>& examples,
                               const AnnotatedProof* staff_solution, const Knobs& knobs = {});
PromptBundle build_step_prompt(const FormalizerContext& ctx, const std::string& nl_step);

PromptBundle build_whole_prompt(const TheoremSpec& theorem, const std::vector<std::string>& proof_nl,
                                const Dictionaries& dicts, const std::vector<prompts::FewShotExample>& examples,
                                const AnnotatedProof* staff_solution, const Knobs& knobs = {});
PromptBundle build_whole_prompt(const FormalizerContext& ctx, const std::vector<std::string>& proof_nl);

/// Reduces model output to one tactic line: drops fence lines, takes the
/// first non-blank line, trims it. Throws FormatError when nothing is left
/// or the line joins several tactics with top-level commas.
std::string sanitize_tactic(std::string_view raw);

/// Whole-proof output: one tactic per line, fence wrapper and comment lines
/// removed. Throws FormatError on a fence inside the body or an empty result.
TacticList sanitize_tactic_list(std::string_view raw);

enum class HaltReason { finished, checker_error, backend_error };
std::string_view to_string(HaltReason r);
HaltReason halt_reason_from_string(std::string_view s);

struct TraceEntry {
  ProofStep step;  // student NL and its formalization
  CheckResult result;
  std::string raw_output;  // model text before sanitization

  bool operator==(const TraceEntry&) const = default;
};

struct FormalizationTrace {
  TheoremSpec theorem;
  std::vector<TraceEntry> accepted;
  std::optional<int> halted_at;  // 1-based; that entry carries the error
  HaltReason halt_reason = HaltReason::finished;
  std::string backend_error;  // set iff halt_reason == backend_error

  TacticList tactics() const;
  bool complete() const;
  bool operator==(const FormalizationTrace&) const = default;
};

void to_json(nlohmann::json& j, const TraceEntry& e);
void from_json(const nlohmann::json& j, TraceEntry& e);
void to_json(nlohmann::json& j, const FormalizationTrace& t);
void from_json(const nlohmann::json& j, FormalizationTrace& t);

/// Formalizes and checks one step on top of `prior` tactics. Unusable model
/// output becomes an error entry. Throws BackendError and BackendUnavailable.
TraceEntry formalize_step(const FormalizerContext& ctx, const TacticList& prior, const std::string& nl_step,
                          LlmBackend& llm, Checker& checker);

/// One model call per step, stopping at the first checker error. A model
/// failure halts the trace with backend_error; checker failures propagate.
FormalizationTrace formalize_step_by_step(const std::vector<std::string>& proof_nl, const FormalizerContext& ctx,
                                          LlmBackend& llm, Checker& checker);

/// One model call for the whole proof.
TacticList formalize_whole_proof(const std::vector<std::string>& proof_nl, const FormalizerContext& ctx,
                                 LlmBackend& llm);

/// Tactic for each NL step predicted independently (no checking). An
/// unusable output yields an empty tactic, which never matches.
TacticList predict_steps(const std::vector<std::string>& proof_nl, const FormalizerContext& ctx, LlmBackend& llm);

}  // namespace prooftutor
