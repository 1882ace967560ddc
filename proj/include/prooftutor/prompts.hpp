#pragma once

#include <string_view>
#include <vector>

// Prompt templates. Placeholders are `{{name}}`; see render_template.
namespace prooftutor::prompts {

struct FewShotExample {
  std::string_view input;
  std::string_view output;
};

// Step-by-step autoformalization. Bindings: theorem_statement_NL,
// theorem_statement_FL, staff_block, theorem_dict, tactic_dict, examples.
extern const std::string_view kStepSystem;
// Binding: nl_statement.
extern const std::string_view kStepUser;
extern const std::string_view kWholeSystem;
extern const std::string_view kWholeUser;
// Binding: staff_solution.
extern const std::string_view kStaffBlock;
const std::vector<FewShotExample>& step_examples();
const std::vector<FewShotExample>& whole_examples();

// Feedback generation. Bindings: lean_proof, last_line, error, next_step.
extern const std::string_view kFeedbackSystem;
extern const std::string_view kFeedbackUser;

// Baseline feedback (no Lean input). Bindings: theorem, proof.
extern const std::string_view kBaselineSystem;
extern const std::string_view kBaselineUser;

// Next-step candidate proposal. Bindings: theorem_statement_FL,
// proof_so_far, goal_state, world_premises, count.
extern const std::string_view kCandidateSystem;
extern const std::string_view kCandidateUser;

}  // namespace prooftutor::prompts
