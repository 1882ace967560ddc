#include "prooftutor/tutor_service.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "prooftutor/identifier.hpp"
#include "prooftutor/state_match.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

using nlohmann::json;

std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::in_progress:
      return "in_progress";
    case SessionStatus::complete:
      return "complete";
    case SessionStatus::halted:
      return "halted";
  }
  return "in_progress";
}

std::string_view to_string(StepVerdict v) {
  switch (v) {
    case StepVerdict::ok:
      return "ok";
    case StepVerdict::complete:
      return "complete";
    case StepVerdict::error:
      return "error";
  }
  return "ok";
}

// ---------------------------------------------------------------------------
// Goal summaries

namespace {

std::string rename_identifiers(const std::string& s, const std::map<std::string, std::string>& names) {
  const auto cps = text::decode_utf8(s);
  std::string out;
  std::size_t i = 0;
  while (i < cps.size()) {
    const auto len = lexer::longest_identifier_length(cps, i);
    if (len == 0) {
      text::append_utf8(out, cps[i++]);
      continue;
    }
    const auto ident = text::encode_utf8(std::u32string_view(cps.data() + i, len));
    auto it = names.find(ident);
    out += it == names.end() ? ident : it->second;
    i += len;
  }
  return out;
}

std::string case_label(const std::optional<std::string>& tag) {
  if (!tag) return "";
  auto name = std::string(text::trim(std::string_view(*tag).substr(std::string_view("case").size())));
  if (name == "zero") return "base case";
  if (name == "succ") return "inductive step";
  return "case " + name;
}

std::string list_words(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

std::string describe_case(const GoalCase& original) {
  const auto normalized = normalize(original);
  std::map<std::string, std::string> back;
  for (const auto& [orig, var] : normalized.renaming) back[var] = orig;
  const auto restored = parse_proof_state(rename_identifiers(normalized.text, back));
  const auto& g = restored.cases.at(0);

  std::vector<std::string> naturals;
  std::vector<std::string> facts;
  for (const auto& h : g.hypothesis_lines) {
    const auto colon = h.find(':');
    const auto type = std::string(text::trim(std::string_view(h).substr(colon + 1)));
    std::vector<std::string> names;
    for (const auto& t : lexer::identifiers(h.substr(0, colon))) names.push_back(t.text);
    if (type == "ℕ")
      naturals.insert(naturals.end(), names.begin(), names.end());
    else
      facts.push_back(type);
  }
  auto goal = std::string(text::trim(g.goal_line));
  if (goal.starts_with("⊢")) goal = std::string(text::trim(std::string_view(goal).substr(std::string_view("⊢").size())));

  std::string out;
  if (!naturals.empty()) out += "for natural numbers " + list_words(naturals) + ", ";
  if (!facts.empty()) out += "knowing that " + list_words(facts) + ", ";
  out += "show that " + goal + ".";
  return out;
}

}  // namespace

std::string goal_summary(const ProofState& state) {
  if (state.complete()) return "No goals remain: the proof is complete.";
  std::string out = state.cases.size() == 1 ? "One goal remains.\n"
                                            : std::to_string(state.cases.size()) + " goals remain.\n";
  for (std::size_t i = 0; i < state.cases.size(); ++i) {
    const auto label = case_label(state.cases[i].case_tag);
    out += "Goal " + std::to_string(i + 1) + (label.empty() ? "" : " (" + label + ")") + ": " +
           describe_case(state.cases[i]) + "\n";
  }
  out.pop_back();
  return out;
}

// ---------------------------------------------------------------------------
// JSON shapes

json feedback_record_json(const FeedbackBundle& b) {
  return json{{"kind", b.kind == FeedbackKind::full ? "full" : "cold_start"},
              {"error_type", to_string(b.error_type)},
              {"feedback", feedback_json(b)}};
}

FeedbackBundle feedback_from_record_json(const json& j) {
  FeedbackBundle b;
  b.kind = j.at("kind").get<std::string>() == "full" ? FeedbackKind::full : FeedbackKind::cold_start;
  b.error_type = error_category_from_string(j.at("error_type").get<std::string>());
  const auto& f = j.at("feedback");
  b.type_label = f.value("Type", "");
  b.message = f.value("Message", "");
  b.question = f.at("Question").get<std::string>();
  b.informalization = f.at("Informalization").get<std::string>();
  return b;
}

namespace {

// Student-facing bundle: the four keys plus the resolved category.
json student_feedback_json(const FeedbackBundle& b) {
  auto j = feedback_json(b);
  j["category"] = to_string(b.error_type);
  return j;
}

json theorem_json(const TheoremSpec& t) {
  return json{{"name", t.name}, {"world", t.world}, {"order_index", t.order_index}, {"statement", t.statement_nl}};
}

}  // namespace

json theorem_list_json(const std::vector<TheoremSpec>& theorems, const std::vector<std::string>& worlds) {
  json list = json::array();
  for (const auto& t : theorems) list.push_back(theorem_json(t));
  return json{{"theorems", list}, {"worlds", worlds}};
}

json session_created_json(const SessionRecord& r) {
  return json{{"session_id", r.session_id}, {"theorem", theorem_json(r.theorem)}, {"status", to_string(r.status)}};
}

json step_outcome_json(const StepOutcome& o) {
  json j{{"verdict", to_string(o.verdict)}, {"status", to_string(o.status)}, {"step_index", o.step_index}};
  if (o.verdict == StepVerdict::error) {
    j["feedback"] = o.feedback ? student_feedback_json(*o.feedback) : json(nullptr);
  } else {
    j["goal_summary"] = o.goal_summary;
  }
  return j;
}

json hint_json(const HintRecord& h) { return json{{"kind", h.kind}, {"feedback", student_feedback_json(h.feedback)}}; }

json transcript_json(const SessionRecord& r, bool instructor) {
  json steps = json::array();
  for (const auto& s : r.submissions) {
    json step{{"text", s.entry.step.nl},
              {"verdict", s.entry.result.status == CheckStatus::error      ? "error"
                          : s.entry.result.status == CheckStatus::complete ? "complete"
                                                                           : "ok"}};
    if (s.feedback) step["feedback"] = student_feedback_json(*s.feedback);
    steps.push_back(std::move(step));
  }
  json accepted = json::array();
  for (const auto& e : r.trace.accepted)
    if (e.result.ok()) accepted.push_back(e.step.nl);
  json hints = json::array();
  for (const auto& h : r.hints) hints.push_back(hint_json(h));
  json feedback = json::array();
  for (const auto& b : r.feedback_history) feedback.push_back(student_feedback_json(b));

  json j{{"session_id", r.session_id},
         {"theorem", theorem_json(r.theorem)},
         {"status", to_string(r.status)},
         {"accepted_steps", accepted},
         {"submissions", steps},
         {"feedback_history", feedback},
         {"hints", hints}};
  if (instructor) {
    j["statement_fl"] = r.theorem.statement_fl;
    j["trace"] = r.trace;
    json searches = json::array();
    for (const auto& s : r.submissions)
      if (s.search) searches.push_back(json{{"step", s.entry.step.nl}, {"search", *s.search}, {"log", s.search->log_text()}});
    j["search_logs"] = searches;
    json next_steps = json::array();
    for (const auto& h : r.hints) next_steps.push_back(h.next_step ? json(*h.next_step) : json(nullptr));
    j["hint_next_steps"] = next_steps;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Service

namespace {

std::string random_session_id() {
  static std::mutex m;
  static std::random_device rd;
  std::lock_guard lock(m);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 8; ++i) {
    auto v = rd();
    for (int k = 0; k < 4; ++k) {
      id.push_back(kHex[v & 0xF]);
      v >>= 4;
    }
  }
  return id;
}

void record_step(SessionRecord& r, StepRecord step) {
  if (r.status == SessionStatus::halted && !r.trace.accepted.empty()) {
    r.trace.accepted.pop_back();
    r.trace.halted_at.reset();
    r.trace.halt_reason = HaltReason::finished;
  }
  r.trace.accepted.push_back(step.entry);
  switch (step.entry.result.status) {
    case CheckStatus::error:
      r.status = SessionStatus::halted;
      r.trace.halted_at = static_cast<int>(r.trace.accepted.size());
      r.trace.halt_reason = HaltReason::checker_error;
      if (step.feedback) r.feedback_history.push_back(*step.feedback);
      break;
    case CheckStatus::complete:
      r.status = SessionStatus::complete;
      r.trace.halt_reason = HaltReason::finished;
      break;
    case CheckStatus::incomplete:
      r.status = SessionStatus::in_progress;
      r.trace.halt_reason = HaltReason::finished;
      break;
  }
  r.submissions.push_back(std::move(step));
}

TacticList accepted_tactics(const SessionRecord& r) {
  auto t = r.trace.tactics();
  if (r.status == SessionStatus::halted && !t.empty()) t.pop_back();
  return t;
}

}  // namespace

TutorService::TutorService(TutorDeps deps) : deps_(std::move(deps)) {
  if (!deps_.session_ids) deps_.session_ids = random_session_id;
  if (!deps_.journal_path.empty()) replay_journal();
}

std::vector<TheoremSpec> TutorService::theorems() const { return deps_.corpus.theorems(); }

std::vector<std::string> TutorService::worlds() const {
  std::vector<std::string> out;
  for (const auto& t : theorems())
    if (std::find(out.begin(), out.end(), t.world) == out.end()) out.push_back(t.world);
  return out;
}

std::shared_ptr<TutorService::Session> TutorService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session " + id);
  return it->second;
}

FormalizerContext TutorService::context_for(const TheoremSpec& theorem) const {
  FormalizerContext ctx{theorem, deps_.dictionaries, std::nullopt, deps_.knobs};
  if (deps_.staff_in_prompt)
    if (const auto* staff = deps_.corpus.staff_solution(theorem.name)) ctx.staff_solution = *staff;
  return ctx;
}

SearchConfig TutorService::search_config_for(const TheoremSpec& theorem) const {
  auto cfg = deps_.search;
  cfg.forbidden = forbidden_theorems(theorem, theorems());
  cfg.world_premises = world_premises(deps_.corpus.proofs, theorem.world);
  cfg.knobs = deps_.knobs;
  return cfg;
}

Checker& TutorService::checker_of(Session& s) {
  if (!s.checker) s.checker = deps_.checker_factory();
  return *s.checker;
}

void TutorService::append(const json& event) {
  if (deps_.journal_path.empty()) return;
  std::lock_guard lock(journal_mutex_);
  std::ofstream out(deps_.journal_path, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot append to journal " + deps_.journal_path);
  out << event.dump() << "\n";
  out.flush();
}

void TutorService::replay_journal() {
  if (!std::filesystem::exists(deps_.journal_path)) return;
  const auto lines = text::split_lines(text::read_file(deps_.journal_path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::is_blank(lines[i])) continue;
    auto event = json::parse(lines[i], nullptr, false);
    if (event.is_discarded()) {
      // A crash can leave a partial final record; anything earlier is corrupt.
      if (i + 1 == lines.size()) break;
      throw Error("corrupt journal record on line " + std::to_string(i + 1));
    }
    apply(event);
  }
}

void TutorService::apply(const json& event) {
  const auto kind = event.at("event").get<std::string>();
  const auto id = event.at("session").get<std::string>();
  if (kind == "created") {
    const auto name = event.at("theorem").get<std::string>();
    auto s = std::make_shared<Session>();
    s->record.session_id = id;
    for (const auto& t : theorems())
      if (t.name == name) s->record.theorem = t;
    if (s->record.theorem.name.empty()) throw Error("journal names unknown theorem " + name);
    s->record.trace.theorem = s->record.theorem;
    std::unique_lock lock(sessions_mutex_);
    sessions_[id] = std::move(s);
    return;
  }
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (kind == "step") {
    StepRecord step;
    step.entry = event.at("entry").get<TraceEntry>();
    if (!event.at("search").is_null()) step.search = event["search"].get<SearchResult>();
    if (!event.at("feedback").is_null()) step.feedback = feedback_from_record_json(event["feedback"]);
    record_step(s->record, std::move(step));
  } else if (kind == "hint") {
    HintRecord h{event.at("kind").get<std::string>(), feedback_from_record_json(event.at("feedback")), std::nullopt};
    if (!event.at("next_step").is_null()) h.next_step = event["next_step"].get<std::string>();
    s->record.hints.push_back(std::move(h));
  } else {
    throw Error("unknown journal event " + kind);
  }
}

SessionRecord TutorService::create_session(const std::string& theorem) {
  const auto all = theorems();
  auto it = std::find_if(all.begin(), all.end(), [&](const TheoremSpec& t) { return t.name == theorem; });
  if (it == all.end()) throw NotFound("unknown theorem " + theorem);
  std::string id;
  {
    std::shared_lock lock(sessions_mutex_);
    do id = deps_.session_ids();
    while (sessions_.count(id));
  }
  json event{{"event", "created"}, {"session", id}, {"theorem", theorem}};
  append(event);
  apply(event);
  return session(id);
}

StepOutcome TutorService::submit_step(const std::string& session_id, const std::string& nl_step) {
  auto s = find(session_id);
  std::lock_guard lock(s->mutex);
  auto& r = s->record;
  if (r.status == SessionStatus::complete) throw Conflict("session " + session_id + " is already complete");
  if (text::is_blank(nl_step)) throw Error("empty proof step");

  const auto prior = accepted_tactics(r);
  const auto ctx = context_for(r.theorem);
  auto& checker = checker_of(*s);
  StepRecord step;
  step.entry = formalize_step(ctx, prior, nl_step, *deps_.llm, checker);

  if (step.entry.result.status == CheckStatus::error) {
    FormalizationTrace attempt;
    attempt.theorem = r.theorem;
    for (const auto& t : prior) attempt.accepted.push_back({{"", t}, {CheckStatus::incomplete, {}, {}, {}}, ""});
    attempt.accepted.push_back(step.entry);
    attempt.halted_at = static_cast<int>(attempt.accepted.size());
    attempt.halt_reason = HaltReason::checker_error;
    step.search = search(prior, r.theorem, search_config_for(r.theorem), *deps_.llm, checker);
    step.feedback = generate_feedback(attempt, *step.search, *deps_.llm, deps_.knobs).bundle;
  }

  json event{{"event", "step"},
             {"session", session_id},
             {"entry", step.entry},
             {"search", step.search ? json(*step.search) : json(nullptr)},
             {"feedback", step.feedback ? feedback_record_json(*step.feedback) : json(nullptr)}};
  append(event);
  const auto result = step.entry.result;
  const auto feedback = step.feedback;
  record_step(r, std::move(step));

  StepOutcome out;
  out.status = r.status;
  out.step_index = static_cast<int>(r.trace.accepted.size());
  if (result.status == CheckStatus::error) {
    out.verdict = StepVerdict::error;
    out.feedback = feedback;
  } else {
    out.verdict = result.status == CheckStatus::complete ? StepVerdict::complete : StepVerdict::ok;
    out.goal_summary = goal_summary(result.state());
  }
  return out;
}

HintRecord TutorService::hint(const std::string& session_id) {
  auto s = find(session_id);
  std::lock_guard lock(s->mutex);
  auto& r = s->record;
  if (r.status == SessionStatus::complete) throw Conflict("session " + session_id + " is already complete");
  if (r.status == SessionStatus::halted && !r.feedback_history.empty())
    return HintRecord{"error", r.feedback_history.back(), r.submissions.back().search->next_step()};

  HintRecord h;
  const auto prior = accepted_tactics(r);
  if (prior.empty()) {
    const auto* staff = deps_.corpus.staff_solution(r.theorem.name);
    if (staff == nullptr) throw NotFound("no staff solution for " + r.theorem.name);
    auto outcome = cold_start_feedback(r.theorem, staff, *deps_.llm, deps_.knobs);
    h = {"cold_start", outcome.bundle, outcome.next_step};
  } else {
    auto& checker = checker_of(*s);
    const auto found = search(prior, r.theorem, search_config_for(r.theorem), *deps_.llm, checker);
    auto prompt = build_feedback_prompt(render_lean_proof(r.theorem.statement_fl, prior), std::string(kNoErrorMarker),
                                        found.next_step(), prior.back(), deps_.knobs);
    prompt.metadata["kind"] = "mid_proof_hint";
    h = {"mid_proof", parse_cold_start_feedback(deps_.llm->complete(prompt)), found.next_step()};
  }
  append(json{{"event", "hint"},
              {"session", session_id},
              {"kind", h.kind},
              {"feedback", feedback_record_json(h.feedback)},
              {"next_step", h.next_step ? json(*h.next_step) : json(nullptr)}});
  r.hints.push_back(h);
  return h;
}

SessionRecord TutorService::session(const std::string& session_id) const {
  auto s = find(session_id);
  std::lock_guard lock(s->mutex);
  return s->record;
}

}  // namespace prooftutor
