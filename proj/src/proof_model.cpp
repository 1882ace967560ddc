#include "prooftutor/proof_model.hpp"

#include <algorithm>
#include <sstream>

#include "prooftutor/errors.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

std::string_view to_string(Persona p) {
  switch (p) {
    case Persona::staff_solution:
      return "staff_solution";
    case Persona::equation_based:
      return "equation_based";
    case Persona::justification_based:
      return "justification_based";
  }
  return "?";
}

std::string_view to_string(ProofLabel l) { return l == ProofLabel::correct ? "correct" : "incorrect"; }

Persona persona_from_string(std::string_view s) {
  if (s == "staff_solution") return Persona::staff_solution;
  if (s == "equation_based") return Persona::equation_based;
  if (s == "justification_based") return Persona::justification_based;
  throw Error("unknown persona '" + std::string(s) + "'");
}

ProofLabel label_from_string(std::string_view s) {
  if (s == "correct") return ProofLabel::correct;
  if (s == "incorrect") return ProofLabel::incorrect;
  throw Error("unknown label '" + std::string(s) + "'");
}

std::string declaration_name(std::string_view header) {
  std::istringstream in{std::string(header)};
  std::string word;
  while (in >> word) {
    if (word == "theorem" || word == "lemma") {
      std::string name;
      if (in >> name) return name;
      return {};
    }
    if (word == "example") return "example";
  }
  return {};
}

std::string TheoremSpec::declaration() const { return declaration_name(statement_fl); }

TacticList AnnotatedProof::tactics() const {
  TacticList out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.tactic);
  return out;
}

std::vector<std::string> AnnotatedProof::nl_steps() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.nl);
  return out;
}

void AnnotatedProof::validate() const {
  const auto header = text::trim(theorem.statement_fl);
  if (header.empty() || !header.ends_with(kProofEntry))
    throw HeaderError("theorem header must end with ':= by': " + std::string(header));
  if (steps.empty()) throw Error("proof of " + theorem.name + " has no steps");
  for (const auto& s : steps) {
    if (s.tactic.find('\n') != std::string::npos)
      throw Error("tactic spans several lines: " + s.tactic);
    if (text::trim(s.nl).starts_with("--")) throw Error("step text still carries a comment marker: " + s.nl);
  }
  if ((label == ProofLabel::incorrect) != skipped_index.has_value())
    throw Error("skipped_index must be present exactly for incorrect proofs");
}

std::vector<std::string> GoalCase::lines() const {
  std::vector<std::string> out;
  if (case_tag) out.push_back(*case_tag);
  out.insert(out.end(), hypothesis_lines.begin(), hypothesis_lines.end());
  out.push_back(goal_line);
  return out;
}

std::string GoalCase::text() const { return text::join(lines(), "\n"); }

std::string ProofState::render() const {
  std::vector<std::string> parts;
  parts.reserve(cases.size());
  for (const auto& c : cases) parts.push_back(c.text());
  return text::join(parts, "\n\n");
}

std::vector<std::string> extract_free_variables(const std::vector<std::string>& hypothesis_lines) {
  std::vector<std::string> vars;
  for (const auto& line : hypothesis_lines) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw MalformedState("hypothesis line has no colon: " + line);
    std::istringstream names(line.substr(0, colon));
    std::string name;
    while (names >> name)
      if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
  }
  return vars;
}

namespace {

constexpr std::string_view kTurnstile = "⊢";

struct CaseBuilder {
  GoalCase current;
  bool open = false;
  bool has_goal = false;

  void finish(std::vector<GoalCase>& out) {
    if (!open) return;
    if (!has_goal) throw MalformedState("goal case without a turnstile line");
    current.free_variables = extract_free_variables(current.hypothesis_lines);
    out.push_back(std::move(current));
    current = GoalCase{};
    open = false;
    has_goal = false;
  }
};

}  // namespace

ProofState parse_proof_state(std::string_view raw) {
  ProofState state;
  state.raw = std::string(raw);
  const auto body = text::trim(raw);
  if (body.empty() || body == "no goals") return state;

  CaseBuilder b;
  for (const auto& line : text::split_lines(raw)) {
    if (text::is_blank(line)) {
      if (b.has_goal) b.finish(state.cases);
      continue;
    }
    const bool continuation = line.front() == ' ' || line.front() == '\t';
    if (continuation && b.open) {
      std::string& target = b.has_goal              ? b.current.goal_line
                            : !b.current.hypothesis_lines.empty() ? b.current.hypothesis_lines.back()
                                                                  : *b.current.case_tag;
      target += "\n";
      target += line;
      continue;
    }
    if (b.has_goal) b.finish(state.cases);
    b.open = true;
    const auto content = text::trim_left(line);
    if (content.starts_with(kTurnstile)) {
      b.current.goal_line = std::string(text::trim_right(line));
      b.has_goal = true;
    } else if (content.starts_with("case ") && !b.current.case_tag && b.current.hypothesis_lines.empty()) {
      b.current.case_tag = std::string(text::trim_right(line));
    } else {
      if (line.find(':') == std::string::npos) throw MalformedState("hypothesis line has no colon: " + line);
      b.current.hypothesis_lines.emplace_back(text::trim_right(line));
    }
  }
  b.finish(state.cases);
  return state;
}

}  // namespace prooftutor
