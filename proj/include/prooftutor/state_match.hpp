#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "prooftutor/lean_bridge.hpp"
#include "prooftutor/proof_model.hpp"

namespace prooftutor {

/// One goal case with its free variables renamed to var0, var1, ...
struct NormalizedState {
  std::string text;
  std::map<std::string, std::string> renaming;  // original -> var{i}

  bool operator==(const NormalizedState&) const = default;
};

/// Rewrites every whole-identifier occurrence of a name in `variables` to
/// "var" + its index. Everything else is copied through unchanged.
std::string normalize_text(std::string_view text, const std::vector<std::string>& variables);

NormalizedState normalize(const GoalCase& goal);
std::vector<NormalizedState> normalize(const ProofState& state);

/// Normalized cases joined by blank lines; equal keys <=> equivalent states.
std::string normalized_key(const ProofState& state);

/// Same case count and pairwise-equal normalized case texts.
bool states_equivalent(const ProofState& a, const ProofState& b);

/// The one string-level relaxation of the metric: `rw[` reads as `rw [`.
std::string canonicalize_tactic(std::string_view tactic);

enum class MatchPhase { string, state, none };
std::string_view to_string(MatchPhase p);

struct MatchVerdict {
  bool matched = false;
  MatchPhase phase = MatchPhase::none;
  std::string evidence;
};

/// Relaxed exact matching of one predicted tactic against ground truth.
/// Both sequences are checked against `theorem_header`. A predicted tactic
/// that fails to compile never matches. Propagates BackendUnavailable.
MatchVerdict tactics_match(const std::string& theorem_header, const std::string& predicted, const std::string& truth,
                           const TacticList& predicted_prefix, const TacticList& truth_prefix, Checker& checker);

struct ProofScore {
  std::vector<MatchVerdict> verdicts;  // one per compared position
  int tactic_hits = 0;
  bool proof_exact = false;
};

/// Number of positions compared when the prediction and the truth differ in
/// length: min(len(predicted), len(truth)).
std::size_t aligned_length(std::size_t predicted, std::size_t truth);

/// Position-wise metric over a correct ground-truth proof.
ProofScore score_correct_proof(const TacticList& predicted, const AnnotatedProof& truth, Checker& checker);

struct IncorrectScore {
  bool success = false;
  std::vector<MatchVerdict> prefix_verdicts;
  std::optional<CheckResult> erroneous_step_result;
  std::string reason;
};

/// Success iff every step before the first incorrect one matches and the
/// predicted formalization of the incorrect step fails to compile.
IncorrectScore score_incorrect_proof(const TacticList& predicted, const AnnotatedProof& truth, Checker& checker);

/// One line of the evaluation log.
std::string verdict_log_line(const std::string& theorem, std::size_t index, const MatchVerdict& verdict);

}  // namespace prooftutor
