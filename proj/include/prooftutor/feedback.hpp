#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prooftutor/autoformalizer.hpp"
#include "prooftutor/dataset.hpp"
#include "prooftutor/llm_backend.hpp"
#include "prooftutor/next_step.hpp"

namespace prooftutor {

enum class ErrorCategory {
  inducting_on_incorrect_variable,
  incorrect_base_case,
  not_generalizing_inductive_step,
  failing_to_apply_inductive_hypothesis,
  incorrect_simplification_or_expansion,
  careless_calculation,
  other,
};
inline constexpr int kErrorCategoryCount = 7;

/// Slug such as "incorrect-base-case".
std::string_view to_string(ErrorCategory c);
ErrorCategory error_category_from_string(std::string_view slug);
const std::vector<ErrorCategory>& all_error_categories();

/// Maps free-form model text onto a category, ignoring case and
/// punctuation. Total: unrecognized text maps to `other`.
ErrorCategory match_category(std::string_view label);

enum class FeedbackKind { full, cold_start };

struct FeedbackBundle {
  FeedbackKind kind = FeedbackKind::full;
  ErrorCategory error_type = ErrorCategory::other;
  std::string type_label;  // the model's own wording of the type
  std::string message;     // empty for cold start
  std::string question;
  std::string informalization;  // bottom-out hint

  /// The model named a type that did not map onto a category.
  bool type_unmatched() const;
  bool operator==(const FeedbackBundle&) const = default;
};

/// Four-key object {Type, Message, Question, Informalization}; cold-start
/// bundles carry only Question and Informalization.
std::string serialize_feedback(const FeedbackBundle& bundle);
nlohmann::json feedback_json(const FeedbackBundle& bundle);

/// Strict parse of the feedback object. Code fences are stripped and the
/// missing commas of the prompt's own sample format are tolerated.
/// Throws ParseError.
FeedbackBundle parse_feedback(std::string_view raw);
FeedbackBundle parse_cold_start_feedback(std::string_view raw);

struct BaselineFeedback {
  std::string error_message;
  std::string next_step;
  std::string question;
  bool operator==(const BaselineFeedback&) const = default;
};
BaselineFeedback parse_baseline_feedback(std::string_view raw);

inline constexpr std::string_view kNoNextStepMarker =
    "No verified next step was found for this proof. Do not invent one; explain the error and ask a guiding "
    "question instead.";
inline constexpr std::string_view kNoErrorMarker = "(no error: the student has not written any step yet)";
inline constexpr std::string_view kNoLastLine = "(none)";

PromptBundle build_feedback_prompt(const std::string& lean_proof, const std::string& error,
                                   const std::optional<std::string>& next_step, const std::string& last_line,
                                   const Knobs& knobs = {});

/// Baseline prompt: the student's NL proof only.
PromptBundle build_baseline_prompt(const std::string& theorem_nl, const std::vector<std::string>& proof_nl,
                                   const Knobs& knobs = {});

/// Header plus indented tactics.
std::string render_lean_proof(const std::string& header, const TacticList& tactics);

struct FeedbackOutcome {
  FeedbackBundle bundle;
  PromptBundle prompt;
  std::optional<std::string> next_step;  // tactic handed to the model
};

/// Feedback for a trace halted by a checker error, using the search result
/// for the next step. Throws ParseError, BackendError.
FeedbackOutcome generate_feedback(const FormalizationTrace& trace, const SearchResult& search, LlmBackend& llm,
                                  const Knobs& knobs = {});

PromptBundle build_cold_start_prompt(const TheoremSpec& theorem, const AnnotatedProof& staff,
                                     const Knobs& knobs = {});

/// Hint with no student input: the next step is the staff solution's first
/// tactic. Throws Error when `staff` is null.
FeedbackOutcome cold_start_feedback(const TheoremSpec& theorem, const AnnotatedProof* staff, LlmBackend& llm,
                                    const Knobs& knobs = {});

struct LintFinding {
  std::string field;  // "message" or "question"
  std::string token;
  bool operator==(const LintFinding&) const = default;
};

/// Formal names and tactic syntax in the student-facing fields. The
/// informalization is exempt.
std::vector<LintFinding> leakage_lint(const FeedbackBundle& bundle, const Dictionaries& dicts);

/// Tab-separated blank scoring sheet: one row per (proof, feedback type, axis).
std::string scoring_sheet(const std::vector<std::pair<std::string, FeedbackBundle>>& bundles);

}  // namespace prooftutor
