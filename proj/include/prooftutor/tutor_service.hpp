#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "prooftutor/autoformalizer.hpp"
#include "prooftutor/dataset.hpp"
#include "prooftutor/errors.hpp"
#include "prooftutor/feedback.hpp"
#include "prooftutor/next_step.hpp"

namespace prooftutor {

class NotFound : public Error {
 public:
  using Error::Error;
};
class Conflict : public Error {
 public:
  using Error::Error;
};

enum class SessionStatus { in_progress, complete, halted };
std::string_view to_string(SessionStatus s);

/// One student submission, including ones later superseded.
struct StepRecord {
  TraceEntry entry;
  std::optional<SearchResult> search;  // present iff the step erred
  std::optional<FeedbackBundle> feedback;
};

struct HintRecord {
  std::string kind;  // cold_start | mid_proof | error
  FeedbackBundle feedback;
  std::optional<std::string> next_step;
};

struct SessionRecord {
  std::string session_id;
  TheoremSpec theorem;
  FormalizationTrace trace;  // the erring entry, if any, is last
  std::vector<FeedbackBundle> feedback_history;
  SessionStatus status = SessionStatus::in_progress;
  std::vector<StepRecord> submissions;
  std::vector<HintRecord> hints;
};

enum class StepVerdict { ok, complete, error };
std::string_view to_string(StepVerdict v);

struct StepOutcome {
  StepVerdict verdict = StepVerdict::ok;
  SessionStatus status = SessionStatus::in_progress;
  int step_index = 0;  // 1-based position in the trace
  std::string goal_summary;
  std::optional<FeedbackBundle> feedback;
};

struct TutorDeps {
  Corpus corpus;
  std::shared_ptr<const Dictionaries> dictionaries;
  std::shared_ptr<LlmBackend> llm;
  std::function<std::unique_ptr<Checker>()> checker_factory;
  SearchConfig search;  // forbidden and world_premises are filled per theorem
  Knobs knobs;
  bool staff_in_prompt = true;
  std::string journal_path;  // empty: no persistence
  std::function<std::string()> session_ids;  // default: random hex
};

/// Student-facing description of a proof state. Built from the normalized
/// state with names mapped back, so it never includes tactic text.
std::string goal_summary(const ProofState& state);

/// Sessions with per-session serial processing and an append-only journal
/// of computed results; replaying the journal never calls a backend.
class TutorService {
 public:
  explicit TutorService(TutorDeps deps);

  std::vector<TheoremSpec> theorems() const;
  std::vector<std::string> worlds() const;

  /// Throws NotFound for an unknown theorem.
  SessionRecord create_session(const std::string& theorem);
  /// Throws NotFound, Conflict (completed session), BackendError,
  /// BackendUnavailable, ParseError. A failed call leaves the session as it was.
  StepOutcome submit_step(const std::string& session_id, const std::string& nl_step);
  HintRecord hint(const std::string& session_id);
  SessionRecord session(const std::string& session_id) const;

 private:
  struct Session {
    mutable std::mutex mutex;
    SessionRecord record;
    std::unique_ptr<Checker> checker;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  FormalizerContext context_for(const TheoremSpec& theorem) const;
  SearchConfig search_config_for(const TheoremSpec& theorem) const;
  Checker& checker_of(Session& s);
  void append(const nlohmann::json& event);
  void replay_journal();
  void apply(const nlohmann::json& event);

  TutorDeps deps_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex journal_mutex_;
};

// Response bodies shared by the HTTP layer and direct library callers.
nlohmann::json feedback_record_json(const FeedbackBundle& b);
FeedbackBundle feedback_from_record_json(const nlohmann::json& j);
nlohmann::json theorem_list_json(const std::vector<TheoremSpec>& theorems, const std::vector<std::string>& worlds);
nlohmann::json session_created_json(const SessionRecord& record);
nlohmann::json step_outcome_json(const StepOutcome& outcome);
nlohmann::json hint_json(const HintRecord& hint);
/// Student view by default; `instructor` adds the formal trace and search logs.
nlohmann::json transcript_json(const SessionRecord& record, bool instructor);

}  // namespace prooftutor
