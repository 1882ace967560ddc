#include "prooftutor/autoformalizer.hpp"

#include "prooftutor/errors.hpp"
#include "prooftutor/identifier.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

using nlohmann::json;

std::string render_commented_proof(const AnnotatedProof& proof) {
  std::string out = proof.theorem.statement_fl;
  for (const auto& s : proof.steps) {
    out += "\n  -- " + s.nl;
    out += "\n  " + s.tactic;
  }
  return out;
}

namespace {

std::string render_examples(const std::vector<prompts::FewShotExample>& examples) {
  std::string out;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (i) out += "\n\n";
    out += "Example " + std::to_string(i + 1) + ":\n";
    out += "Input: " + std::string(examples[i].input) + "\n";
    out += "Output: " + std::string(examples[i].output);
  }
  return out;
}

std::map<std::string, std::string> system_bindings(const TheoremSpec& theorem, const Dictionaries& dicts,
                                                   const std::vector<prompts::FewShotExample>& examples,
                                                   const AnnotatedProof* staff) {
  if (examples.size() != 5) throw TemplateError("exactly 5 few-shot examples are required");
  std::string staff_block;
  if (staff != nullptr)
    staff_block = render_template(prompts::kStaffBlock, {{"staff_solution", render_commented_proof(*staff)}});
  return {{"theorem_statement_NL", theorem.statement_nl},
          {"theorem_statement_FL", theorem.statement_fl},
          {"staff_block", staff_block},
          {"theorem_dict", dicts.theorems.render()},
          {"tactic_dict", dicts.tactics.render()},
          {"examples", render_examples(examples)}};
}

const AnnotatedProof* staff_of(const FormalizerContext& ctx) {
  return ctx.staff_solution ? &*ctx.staff_solution : nullptr;
}

const Dictionaries& dicts_of(const FormalizerContext& ctx) {
  if (!ctx.dictionaries) throw TemplateError("formalizer context has no dictionaries");
  return *ctx.dictionaries;
}

bool is_fence(std::string_view line) { return text::trim(line).starts_with("```"); }

bool has_top_level_comma(std::string_view line) {
  int depth = 0;
  for (const char32_t c : text::decode_utf8(line)) {
    if (c == U'[' || c == U'(' || c == U'{' || c == U'⟨') ++depth;
    if (c == U']' || c == U')' || c == U'}' || c == U'⟩') --depth;
    if (c == U',' && depth == 0) return true;
  }
  return false;
}

}  // namespace

PromptBundle build_step_prompt(const TheoremSpec& theorem, const std::string& nl_step, const Dictionaries& dicts,
                               const std::vector<prompts::FewShotExample>& examples,
                               const AnnotatedProof* staff_solution, const Knobs& knobs) {
  PromptBundle p;
  p.system = render_template(prompts::kStepSystem, system_bindings(theorem, dicts, examples, staff_solution));
  p.user = render_template(prompts::kStepUser, {{"nl_statement", nl_step}});
  p.knobs = knobs;
  p.metadata["kind"] = "step";
  p.metadata["nl_step"] = nl_step;
  p.validate();
  return p;
}

PromptBundle build_step_prompt(const FormalizerContext& ctx, const std::string& nl_step) {
  return build_step_prompt(ctx.theorem, nl_step, dicts_of(ctx), prompts::step_examples(), staff_of(ctx), ctx.knobs);
}

PromptBundle build_whole_prompt(const TheoremSpec& theorem, const std::vector<std::string>& proof_nl,
                                const Dictionaries& dicts, const std::vector<prompts::FewShotExample>& examples,
                                const AnnotatedProof* staff_solution, const Knobs& knobs) {
  PromptBundle p;
  p.system = render_template(prompts::kWholeSystem, system_bindings(theorem, dicts, examples, staff_solution));
  p.user = render_template(prompts::kWholeUser, {{"nl_statement", text::join(proof_nl, "\n")}});
  p.knobs = knobs;
  p.metadata["kind"] = "whole";
  p.metadata["theorem"] = theorem.name;
  p.validate();
  return p;
}

PromptBundle build_whole_prompt(const FormalizerContext& ctx, const std::vector<std::string>& proof_nl) {
  return build_whole_prompt(ctx.theorem, proof_nl, dicts_of(ctx), prompts::whole_examples(), staff_of(ctx),
                            ctx.knobs);
}

std::string sanitize_tactic(std::string_view raw) {
  for (const auto& line : text::split_lines(raw)) {
    if (is_fence(line) || text::is_blank(line)) continue;
    std::string tactic(text::trim(line));
    const auto tokens = lexer::identifiers(tactic);
    const bool takes_list = !tokens.empty() && tokens[0].offset == 0 &&
                            (tokens[0].text == "use" || tokens[0].text == "exists");
    if (!takes_list && has_top_level_comma(tactic))
      throw FormatError("several comma-separated tactics on one line: " + tactic);
    return tactic;
  }
  throw FormatError("model output contains no tactic");
}

TacticList sanitize_tactic_list(std::string_view raw) {
  auto lines = text::split_lines(raw);
  while (!lines.empty() && text::is_blank(lines.front())) lines.erase(lines.begin());
  while (!lines.empty() && text::is_blank(lines.back())) lines.pop_back();
  if (!lines.empty() && is_fence(lines.front())) lines.erase(lines.begin());
  if (!lines.empty() && is_fence(lines.back())) lines.pop_back();
  TacticList out;
  for (const auto& line : lines) {
    const auto t = text::trim(line);
    if (is_fence(t)) throw FormatError("markdown fence inside the proof body");
    if (t.empty() || t.starts_with("--")) continue;
    out.emplace_back(t);
  }
  if (out.empty()) throw FormatError("model output contains no tactics");
  return out;
}

std::string_view to_string(HaltReason r) {
  switch (r) {
    case HaltReason::finished:
      return "finished";
    case HaltReason::checker_error:
      return "checker_error";
    case HaltReason::backend_error:
      return "backend_error";
  }
  return "finished";
}

HaltReason halt_reason_from_string(std::string_view s) {
  if (s == "finished") return HaltReason::finished;
  if (s == "checker_error") return HaltReason::checker_error;
  if (s == "backend_error") return HaltReason::backend_error;
  throw Error("unknown halt reason: " + std::string(s));
}

TacticList FormalizationTrace::tactics() const {
  TacticList out;
  for (const auto& e : accepted) out.push_back(e.step.tactic);
  return out;
}

bool FormalizationTrace::complete() const {
  return halt_reason == HaltReason::finished && !accepted.empty() &&
         accepted.back().result.status == CheckStatus::complete;
}

void to_json(json& j, const TraceEntry& e) {
  j = json{{"nl", e.step.nl}, {"tactic", e.step.tactic}, {"result", e.result}, {"raw_output", e.raw_output}};
}

void from_json(const json& j, TraceEntry& e) {
  e.step.nl = j.at("nl").get<std::string>();
  e.step.tactic = j.at("tactic").get<std::string>();
  e.result = j.at("result").get<CheckResult>();
  e.raw_output = j.value("raw_output", "");
}

void to_json(json& j, const FormalizationTrace& t) {
  j = json{{"theorem", t.theorem.name},
           {"declaration", t.theorem.declaration()},
           {"accepted", t.accepted},
           {"halt_reason", to_string(t.halt_reason)}};
  j["halted_at"] = t.halted_at ? json(*t.halted_at) : json(nullptr);
  if (!t.backend_error.empty()) j["backend_error"] = t.backend_error;
}

void from_json(const json& j, FormalizationTrace& t) {
  // The theorem itself is restored by the caller; only the name travels.
  t.theorem.name = j.at("theorem").get<std::string>();
  t.accepted = j.at("accepted").get<std::vector<TraceEntry>>();
  t.halt_reason = halt_reason_from_string(j.at("halt_reason").get<std::string>());
  if (!j.at("halted_at").is_null()) t.halted_at = j["halted_at"].get<int>();
  t.backend_error = j.value("backend_error", "");
}

TraceEntry formalize_step(const FormalizerContext& ctx, const TacticList& prior, const std::string& nl_step,
                          LlmBackend& llm, Checker& checker) {
  TraceEntry entry;
  entry.step.nl = nl_step;
  entry.raw_output = llm.complete(build_step_prompt(ctx, nl_step));
  try {
    entry.step.tactic = sanitize_tactic(entry.raw_output);
  } catch (const FormatError& e) {
    entry.result.status = CheckStatus::error;
    entry.result.message = std::string("unusable model output: ") + e.what();
    return entry;
  }
  TacticList run = prior;
  run.push_back(entry.step.tactic);
  entry.result = checker.check({ctx.theorem.statement_fl, run});
  return entry;
}

FormalizationTrace formalize_step_by_step(const std::vector<std::string>& proof_nl, const FormalizerContext& ctx,
                                          LlmBackend& llm, Checker& checker) {
  FormalizationTrace trace;
  trace.theorem = ctx.theorem;
  TacticList tactics;
  for (std::size_t i = 0; i < proof_nl.size(); ++i) {
    TraceEntry entry;
    try {
      entry = formalize_step(ctx, tactics, proof_nl[i], llm, checker);
    } catch (const BackendError& e) {
      trace.halted_at = static_cast<int>(i + 1);
      trace.halt_reason = HaltReason::backend_error;
      trace.backend_error = e.what();
      return trace;
    }
    const auto status = entry.result.status;
    tactics.push_back(entry.step.tactic);
    trace.accepted.push_back(std::move(entry));
    if (status == CheckStatus::error) {
      trace.halted_at = static_cast<int>(i + 1);
      trace.halt_reason = HaltReason::checker_error;
      return trace;
    }
    if (status == CheckStatus::complete) break;
  }
  trace.halt_reason = HaltReason::finished;
  return trace;
}

TacticList formalize_whole_proof(const std::vector<std::string>& proof_nl, const FormalizerContext& ctx,
                                 LlmBackend& llm) {
  return sanitize_tactic_list(llm.complete(build_whole_prompt(ctx, proof_nl)));
}

TacticList predict_steps(const std::vector<std::string>& proof_nl, const FormalizerContext& ctx, LlmBackend& llm) {
  TacticList out;
  for (const auto& nl : proof_nl) {
    try {
      out.push_back(sanitize_tactic(llm.complete(build_step_prompt(ctx, nl))));
    } catch (const FormatError&) {
      out.emplace_back();
    }
  }
  return out;
}

}  // namespace prooftutor
