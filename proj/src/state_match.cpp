#include "prooftutor/state_match.hpp"

#include <algorithm>

#include "json.hpp"
#include "prooftutor/errors.hpp"
#include "prooftutor/identifier.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

std::string normalize_text(std::string_view text_in, const std::vector<std::string>& variables) {
  std::vector<std::u32string> vars;
  vars.reserve(variables.size());
  for (const auto& v : variables) vars.push_back(text::decode_utf8(v));

  const auto cps = text::decode_utf8(text_in);
  std::u32string out;
  out.reserve(cps.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    const auto len = lexer::longest_identifier_length(cps, i);
    if (len == 0) {
      out.push_back(cps[i]);
      ++i;
      continue;
    }
    const std::u32string_view ident(cps.data() + i, len);
    auto it = std::find(vars.begin(), vars.end(), ident);
    if (it != vars.end()) {
      out += U"var";
      for (char c : std::to_string(it - vars.begin())) out.push_back(static_cast<char32_t>(c));
    } else {
      out += ident;
    }
    i += len;
  }
  return text::encode_utf8(out);
}

NormalizedState normalize(const GoalCase& goal) {
  NormalizedState n;
  n.text = normalize_text(goal.text(), goal.free_variables);
  for (std::size_t i = 0; i < goal.free_variables.size(); ++i)
    n.renaming.emplace(goal.free_variables[i], "var" + std::to_string(i));
  return n;
}

std::vector<NormalizedState> normalize(const ProofState& state) {
  std::vector<NormalizedState> out;
  out.reserve(state.cases.size());
  for (const auto& c : state.cases) out.push_back(normalize(c));
  return out;
}

std::string normalized_key(const ProofState& state) {
  std::vector<std::string> parts;
  for (const auto& n : normalize(state)) parts.push_back(n.text);
  return text::join(parts, "\n\n");
}

bool states_equivalent(const ProofState& a, const ProofState& b) {
  if (a.cases.size() != b.cases.size()) return false;
  for (std::size_t i = 0; i < a.cases.size(); ++i)
    if (normalize(a.cases[i]).text != normalize(b.cases[i]).text) return false;
  return true;
}

std::string canonicalize_tactic(std::string_view tactic) {
  const auto cps = text::decode_utf8(tactic);
  std::u32string out;
  std::size_t i = 0;
  while (i < cps.size()) {
    const auto len = lexer::longest_identifier_length(cps, i);
    if (len == 0) {
      out.push_back(cps[i++]);
      continue;
    }
    out.append(cps, i, len);
    const bool is_rw = len == 2 && cps[i] == U'r' && cps[i + 1] == U'w';
    i += len;
    if (is_rw && i < cps.size() && cps[i] == U'[') out.push_back(U' ');
  }
  return text::encode_utf8(out);
}

std::string_view to_string(MatchPhase p) {
  switch (p) {
    case MatchPhase::string:
      return "string";
    case MatchPhase::state:
      return "state";
    case MatchPhase::none:
      return "none";
  }
  return "?";
}

MatchVerdict tactics_match(const std::string& theorem_header, const std::string& predicted, const std::string& truth,
                           const TacticList& predicted_prefix, const TacticList& truth_prefix, Checker& checker) {
  if (text::is_blank(predicted)) return {false, MatchPhase::none, "no usable prediction"};
  const auto p = canonicalize_tactic(predicted);
  const auto t = canonicalize_tactic(truth);
  if (p == t) return {true, MatchPhase::string, p};

  TacticList pred_run = predicted_prefix;
  pred_run.push_back(predicted);
  TacticList truth_run = truth_prefix;
  truth_run.push_back(truth);

  const auto pred_result = checker.check({theorem_header, pred_run});
  if (!pred_result.ok())
    return {false, MatchPhase::none, "predicted tactic fails: " + pred_result.message.value_or("")};
  const auto truth_result = checker.check({theorem_header, truth_run});
  if (!truth_result.ok())
    return {false, MatchPhase::none, "ground-truth tactic fails: " + truth_result.message.value_or("")};

  const auto pk = normalized_key(pred_result.state());
  const auto tk = normalized_key(truth_result.state());
  const bool same = states_equivalent(pred_result.state(), truth_result.state());
  return {same, same ? MatchPhase::state : MatchPhase::none, "predicted:\n" + pk + "\n---\nexpected:\n" + tk};
}

std::size_t aligned_length(std::size_t predicted, std::size_t truth) { return std::min(predicted, truth); }

ProofScore score_correct_proof(const TacticList& predicted, const AnnotatedProof& truth, Checker& checker) {
  ProofScore score;
  const auto truth_tactics = truth.tactics();
  const auto n = aligned_length(predicted.size(), truth_tactics.size());
  TacticList pred_prefix;
  TacticList truth_prefix;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = tactics_match(truth.theorem.statement_fl, predicted[i], truth_tactics[i], pred_prefix, truth_prefix,
                           checker);
    if (v.matched) ++score.tactic_hits;
    score.verdicts.push_back(std::move(v));
    pred_prefix.push_back(predicted[i]);
    truth_prefix.push_back(truth_tactics[i]);
  }
  score.proof_exact = predicted.size() == truth_tactics.size() &&
                      score.tactic_hits == static_cast<int>(truth_tactics.size());
  return score;
}

IncorrectScore score_incorrect_proof(const TacticList& predicted, const AnnotatedProof& truth, Checker& checker) {
  if (truth.label != ProofLabel::incorrect || !truth.skipped_index)
    throw Error("score_incorrect_proof needs an incorrect proof with a recorded skipped step");
  IncorrectScore score;
  // After deleting step k, the step now at position k is the first one that
  // no longer follows from the proof so far.
  const auto first_bad = static_cast<std::size_t>(*truth.skipped_index);
  const auto truth_tactics = truth.tactics();
  if (first_bad > truth_tactics.size()) {
    score.reason = "the deleted step was the last one; nothing remains to fail";
    return score;
  }
  if (predicted.size() < first_bad) {
    score.reason = "prediction stops before the incorrect step";
    return score;
  }
  TacticList pred_prefix;
  TacticList truth_prefix;
  for (std::size_t i = 0; i + 1 < first_bad; ++i) {
    auto v = tactics_match(truth.theorem.statement_fl, predicted[i], truth_tactics[i], pred_prefix, truth_prefix,
                           checker);
    const bool ok = v.matched;
    score.prefix_verdicts.push_back(std::move(v));
    if (!ok) {
      score.reason = "step " + std::to_string(i + 1) + " does not match";
      return score;
    }
    pred_prefix.push_back(predicted[i]);
    truth_prefix.push_back(truth_tactics[i]);
  }
  pred_prefix.push_back(predicted[first_bad - 1]);
  auto result = checker.check({truth.theorem.statement_fl, pred_prefix});
  score.success = result.status == CheckStatus::error;
  if (!score.success) score.reason = "formalized incorrect step compiles";
  score.erroneous_step_result = std::move(result);
  return score;
}

std::string verdict_log_line(const std::string& theorem, std::size_t index, const MatchVerdict& verdict) {
  nlohmann::json j{{"theorem", theorem},
                   {"index", index},
                   {"phase", to_string(verdict.phase)},
                   {"matched", verdict.matched}};
  return j.dump();
}

}  // namespace prooftutor
