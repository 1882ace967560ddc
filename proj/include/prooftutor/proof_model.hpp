#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prooftutor {

using TacticList = std::vector<std::string>;

enum class Persona { staff_solution, equation_based, justification_based };
enum class ProofLabel { correct, incorrect };

std::string_view to_string(Persona p);
std::string_view to_string(ProofLabel l);
Persona persona_from_string(std::string_view s);
ProofLabel label_from_string(std::string_view s);

inline constexpr std::string_view kProofEntry = ":= by";

struct TheoremSpec {
  std::string name;          // curriculum name, e.g. add_comm
  std::string statement_nl;
  std::string statement_fl;  // Lean header, up to and including ":= by"
  std::string world;
  int order_index = 0;

  /// Name declared by statement_fl (`theorem <decl> ...`).
  std::string declaration() const;

  bool operator==(const TheoremSpec&) const = default;
};

/// Declaration name from a Lean header, or empty if the header has none.
std::string declaration_name(std::string_view header);

struct ProofStep {
  std::string nl;
  std::string tactic;

  bool operator==(const ProofStep&) const = default;
};

struct AnnotatedProof {
  TheoremSpec theorem;
  std::vector<ProofStep> steps;
  Persona persona = Persona::staff_solution;
  ProofLabel label = ProofLabel::correct;
  std::optional<int> skipped_index;  // 1-based, present iff label == incorrect

  TacticList tactics() const;
  std::vector<std::string> nl_steps() const;

  /// Throws Error describing the first violated invariant.
  void validate() const;

  bool operator==(const AnnotatedProof&) const = default;
};

/// One goal as rendered by the checker. Hypothesis and goal lines may carry
/// embedded "\n  ..." continuations when the checker wraps long expressions.
struct GoalCase {
  std::optional<std::string> case_tag;  // e.g. "case succ"
  std::vector<std::string> hypothesis_lines;
  std::string goal_line;
  std::vector<std::string> free_variables;

  std::vector<std::string> lines() const;
  std::string text() const;

  bool operator==(const GoalCase&) const = default;
};

struct ProofState {
  std::string raw;
  std::vector<GoalCase> cases;

  bool complete() const { return cases.empty(); }
  /// Cases joined by a blank line. Equals `raw` for checker output that
  /// already follows that convention.
  std::string render() const;

  bool operator==(const ProofState&) const = default;
};

/// Segments checker goal text into cases. "" and "no goals" denote a
/// completed proof. Throws MalformedState.
ProofState parse_proof_state(std::string_view raw);

/// Name tokens left of the first ':' on each line, deduplicated, in
/// first-appearance order. Throws MalformedState on a line with no colon.
std::vector<std::string> extract_free_variables(const std::vector<std::string>& hypothesis_lines);

}  // namespace prooftutor
