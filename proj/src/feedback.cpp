#include "prooftutor/feedback.hpp"

#include <regex>

#include "prooftutor/errors.hpp"
#include "prooftutor/identifier.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

using nlohmann::json;

namespace {

struct CategoryName {
  ErrorCategory category;
  std::string_view slug;
};

constexpr CategoryName kCategories[] = {
    {ErrorCategory::inducting_on_incorrect_variable, "inducting-on-incorrect-variable"},
    {ErrorCategory::incorrect_base_case, "incorrect-base-case"},
    {ErrorCategory::not_generalizing_inductive_step, "not-generalizing-inductive-step"},
    {ErrorCategory::failing_to_apply_inductive_hypothesis, "failing-to-apply-inductive-hypothesis"},
    {ErrorCategory::incorrect_simplification_or_expansion, "incorrect-simplification-or-expansion"},
    {ErrorCategory::careless_calculation, "careless-calculation"},
    {ErrorCategory::other, "other"},
};

// Lowercase words separated by single spaces.
std::string fold(std::string_view s) {
  std::string out;
  bool space = true;
  for (char c : text::to_lower_ascii(s)) {
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (alnum) {
      out.push_back(c);
      space = false;
    } else if (!space) {
      out.push_back(' ');
      space = true;
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

bool has(const std::string& s, std::string_view needle) { return s.find(needle) != std::string::npos; }

}  // namespace

std::string_view to_string(ErrorCategory c) {
  for (const auto& n : kCategories)
    if (n.category == c) return n.slug;
  return "other";
}

ErrorCategory error_category_from_string(std::string_view slug) {
  for (const auto& n : kCategories)
    if (n.slug == slug) return n.category;
  throw Error("unknown error category: " + std::string(slug));
}

const std::vector<ErrorCategory>& all_error_categories() {
  static const std::vector<ErrorCategory> all = [] {
    std::vector<ErrorCategory> v;
    for (const auto& n : kCategories) v.push_back(n.category);
    return v;
  }();
  return all;
}

ErrorCategory match_category(std::string_view label) {
  const auto f = fold(label);
  // "5. Incorrect/Incomplete ..." or a bare list number.
  if (f.size() >= 1 && f[0] >= '1' && f[0] <= '7' && (f.size() == 1 || f[1] == ' '))
    return kCategories[f[0] - '1'].category;
  for (const auto& n : kCategories)
    if (f == fold(n.slug)) return n.category;
  if (has(f, "induct") && has(f, "variable")) return ErrorCategory::inducting_on_incorrect_variable;
  if (has(f, "base case")) return ErrorCategory::incorrect_base_case;
  if (has(f, "generaliz") || has(f, "generalis")) return ErrorCategory::not_generalizing_inductive_step;
  if (has(f, "inductive hypothesis") || has(f, "induction hypothesis")) {
    return ErrorCategory::failing_to_apply_inductive_hypothesis;
  }
  if (has(f, "simplif") || has(f, "expan")) return ErrorCategory::incorrect_simplification_or_expansion;
  if (has(f, "calculat") || has(f, "careless") || has(f, "arithmetic")) return ErrorCategory::careless_calculation;
  return ErrorCategory::other;
}

bool FeedbackBundle::type_unmatched() const {
  return kind == FeedbackKind::full && error_type == ErrorCategory::other && fold(type_label) != "other" &&
         fold(type_label) != "7 other";
}

json feedback_json(const FeedbackBundle& b) {
  if (b.kind == FeedbackKind::cold_start) return json{{"Question", b.question}, {"Informalization", b.informalization}};
  return json{{"Type", b.type_label},
              {"Message", b.message},
              {"Question", b.question},
              {"Informalization", b.informalization}};
}

std::string serialize_feedback(const FeedbackBundle& b) { return feedback_json(b).dump(); }

namespace {

std::string strip_fences(std::string_view raw) {
  std::vector<std::string> kept;
  for (const auto& line : text::split_lines(raw))
    if (!text::trim(line).starts_with("```")) kept.push_back(line);
  return std::string(text::trim(text::join(kept, "\n")));
}

json parse_object(std::string_view raw) {
  auto body = strip_fences(raw);
  auto parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded()) {
    // The prompt's sample object omits commas between lines; models copy it.
    static const std::regex missing_comma("\"[ \\t]*\\n[ \\t]*\"");
    parsed = json::parse(std::regex_replace(body, missing_comma, "\",\n\""), nullptr, false);
  }
  if (parsed.is_discarded() || !parsed.is_object()) throw ParseError("feedback is not a JSON object");
  return parsed;
}

std::string required_string(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("feedback lacks key ") + key);
  if (!j[key].is_string()) throw ParseError(std::string("feedback key ") + key + " is not a string");
  auto v = std::string(text::trim(j[key].get<std::string>()));
  if (v.empty()) throw ParseError(std::string("feedback key ") + key + " is empty");
  return v;
}

void expect_keys(const json& j, std::initializer_list<const char*> keys) {
  for (const auto& [k, _] : j.items()) {
    bool known = false;
    for (const char* want : keys) known = known || k == want;
    if (!known) throw ParseError("unexpected feedback key " + k);
  }
}

}  // namespace

FeedbackBundle parse_feedback(std::string_view raw) {
  const auto j = parse_object(raw);
  expect_keys(j, {"Type", "Message", "Question", "Informalization"});
  FeedbackBundle b;
  b.type_label = required_string(j, "Type");
  b.error_type = match_category(b.type_label);
  b.message = required_string(j, "Message");
  b.question = required_string(j, "Question");
  b.informalization = required_string(j, "Informalization");
  return b;
}

FeedbackBundle parse_cold_start_feedback(std::string_view raw) {
  const auto j = parse_object(raw);
  // The shared prompt asks for four keys; only types 2 and 3 are kept.
  expect_keys(j, {"Type", "Message", "Question", "Informalization"});
  FeedbackBundle b;
  b.kind = FeedbackKind::cold_start;
  b.error_type = ErrorCategory::other;
  b.question = required_string(j, "Question");
  b.informalization = required_string(j, "Informalization");
  return b;
}

BaselineFeedback parse_baseline_feedback(std::string_view raw) {
  const auto j = parse_object(raw);
  expect_keys(j, {"Error_Message", "Next_Step", "Question"});
  return {required_string(j, "Error_Message"), required_string(j, "Next_Step"), required_string(j, "Question")};
}

std::string render_lean_proof(const std::string& header, const TacticList& tactics) {
  std::string out = header;
  for (const auto& t : tactics) out += "\n  " + t;
  return out;
}

PromptBundle build_feedback_prompt(const std::string& lean_proof, const std::string& error,
                                   const std::optional<std::string>& next_step, const std::string& last_line,
                                   const Knobs& knobs) {
  PromptBundle p;
  p.system = std::string(prompts::kFeedbackSystem);
  p.user = render_template(prompts::kFeedbackUser, {{"lean_proof", lean_proof},
                                                    {"last_line", last_line},
                                                    {"error", error},
                                                    {"next_step", next_step ? *next_step : std::string(kNoNextStepMarker)}});
  p.knobs = knobs;
  p.metadata["kind"] = "feedback";
  p.metadata["declaration"] = declaration_name(lean_proof);
  if (!next_step) p.metadata["next_step_fallback"] = "true";
  p.validate();
  return p;
}

PromptBundle build_baseline_prompt(const std::string& theorem_nl, const std::vector<std::string>& proof_nl,
                                   const Knobs& knobs) {
  PromptBundle p;
  p.system = std::string(prompts::kBaselineSystem);
  p.user = render_template(prompts::kBaselineUser, {{"theorem", theorem_nl}, {"proof", text::join(proof_nl, "\n")}});
  p.knobs = knobs;
  p.metadata["kind"] = "baseline";
  p.validate();
  return p;
}

FeedbackOutcome generate_feedback(const FormalizationTrace& trace, const SearchResult& search, LlmBackend& llm,
                                  const Knobs& knobs) {
  if (trace.halt_reason != HaltReason::checker_error || trace.accepted.empty())
    throw Error("feedback needs a trace halted by a checker error");
  const auto& last = trace.accepted.back();
  FeedbackOutcome out;
  out.next_step = search.next_step();
  out.prompt = build_feedback_prompt(render_lean_proof(trace.theorem.statement_fl, trace.tactics()),
                                     last.result.message.value_or(""), out.next_step, last.step.tactic, knobs);
  out.bundle = parse_feedback(llm.complete(out.prompt));
  return out;
}

PromptBundle build_cold_start_prompt(const TheoremSpec& theorem, const AnnotatedProof& staff, const Knobs& knobs) {
  if (staff.steps.empty()) throw Error("staff solution has no steps");
  auto p = build_feedback_prompt(render_lean_proof(theorem.statement_fl, {}), std::string(kNoErrorMarker),
                                 staff.steps.front().tactic, std::string(kNoLastLine), knobs);
  p.metadata["kind"] = "cold_start";
  return p;
}

FeedbackOutcome cold_start_feedback(const TheoremSpec& theorem, const AnnotatedProof* staff, LlmBackend& llm,
                                    const Knobs& knobs) {
  if (staff == nullptr) throw Error("cold-start hints need a staff solution for " + theorem.name);
  FeedbackOutcome out;
  out.next_step = staff->steps.at(0).tactic;
  out.prompt = build_cold_start_prompt(theorem, *staff, knobs);
  out.bundle = parse_cold_start_feedback(llm.complete(out.prompt));
  return out;
}

namespace {

// Tactic names that are also ordinary English words.
const std::set<std::string> kEnglishTactics{
    "induction", "cases",  "use",    "exact",       "apply",      "intro",        "decide",
    "trivial",   "repeat", "have",   "show",        "left",       "right",        "exists",
    "change",    "try",    "iterate", "constructor", "assumption", "contradiction", "specialize"};

constexpr std::string_view kSyntaxMarkers[] = {"rw [", "rw[", "intro ", "apply "};

}  // namespace

std::vector<LintFinding> leakage_lint(const FeedbackBundle& bundle, const Dictionaries& dicts) {
  std::vector<LintFinding> out;
  auto scan = [&](const char* field, const std::string& s) {
    for (auto marker : kSyntaxMarkers)
      if (s.find(marker) != std::string::npos) out.push_back({field, std::string(marker)});
    for (const auto& tok : lexer::identifiers(s)) {
      if (dicts.theorems.entries.count(tok.text) ||
          (dicts.tactics.entries.count(tok.text) && !kEnglishTactics.count(tok.text)))
        out.push_back({field, tok.text});
    }
  };
  scan("message", bundle.message);
  scan("question", bundle.question);
  return out;
}

std::string scoring_sheet(const std::vector<std::pair<std::string, FeedbackBundle>>& bundles) {
  static constexpr std::string_view kAxes[] = {"accuracy", "relevance", "readability", "answer_leakage"};
  std::string out = "proof\tfeedback_type\taxis\tscore\n";
  for (const auto& [id, b] : bundles) {
    std::vector<std::string_view> types;
    if (b.kind == FeedbackKind::full) types.push_back("error_identification");
    types.push_back("question");
    types.push_back("next_step");
    for (auto t : types)
      for (auto a : kAxes) out += id + "\t" + std::string(t) + "\t" + std::string(a) + "\t\n";
  }
  return out;
}

}  // namespace prooftutor
