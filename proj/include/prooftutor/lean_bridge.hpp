#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "prooftutor/proof_model.hpp"

namespace prooftutor {

class Subprocess;

struct SourcePosition {
  int line = 0;
  int column = 0;
  bool operator==(const SourcePosition&) const = default;
};

/// One message from a checker run, in the REPL's vocabulary.
struct Diagnostic {
  std::string severity;  // "error" | "warning" | "info"
  SourcePosition pos;
  std::optional<SourcePosition> end_pos;
  std::string text;
  bool operator==(const Diagnostic&) const = default;
};

enum class CheckStatus { complete, incomplete, error };
std::string_view to_string(CheckStatus s);
CheckStatus check_status_from_string(std::string_view s);

struct CheckRequest {
  std::string theorem_header;  // TheoremSpec::statement_fl
  TacticList tactics;

  std::string declaration() const { return declaration_name(theorem_header); }
  /// The full Lean command sent to the checker.
  std::string command_text() const;
};

struct CheckResult {
  CheckStatus status = CheckStatus::error;
  std::optional<ProofState> goal_state;  // present iff incomplete
  std::optional<std::string> message;    // present iff error
  std::optional<SourcePosition> error_position;

  bool ok() const { return status != CheckStatus::error; }
  /// Goal state, with the completed-proof sentinel for `complete`.
  ProofState state() const;
  bool operator==(const CheckResult&) const = default;
};

inline constexpr std::string_view kUnsolvedGoals = "unsolved goals";

/// Pure classification of one run's diagnostics. Warnings and infos are
/// ignored; an error counts as the incomplete marker only when its text
/// begins with "unsolved goals".
CheckStatus classify(const std::vector<Diagnostic>& diagnostics);

/// classify() plus extraction of the goal state or error message.
CheckResult result_from_diagnostics(const std::vector<Diagnostic>& diagnostics);

void to_json(nlohmann::json& j, const SourcePosition& p);
void from_json(const nlohmann::json& j, SourcePosition& p);
void to_json(nlohmann::json& j, const Diagnostic& d);
void from_json(const nlohmann::json& j, Diagnostic& d);
void to_json(nlohmann::json& j, const CheckResult& r);
void from_json(const nlohmann::json& j, CheckResult& r);

/// A proof checker session. Implementations are used serially.
class Checker {
 public:
  virtual ~Checker() = default;
  /// Throws BackendUnavailable when the backend cannot answer.
  virtual CheckResult check(const CheckRequest& request) = 0;
};

/// Recorded checker responses keyed by (declaration, hash of tactic list).
class FixtureTable {
 public:
  /// Reads a JSON-lines manifest of {theorem, tactics, messages} records.
  static FixtureTable load(const std::string& path);
  void load_into(const std::string& path);

  void add(const std::string& declaration, const TacticList& tactics, std::vector<Diagnostic> messages);
  const std::vector<Diagnostic>* find(const std::string& declaration, const TacticList& tactics) const;
  std::size_t size() const { return records_.size(); }

  static std::string key(const std::string& declaration, const TacticList& tactics);

  struct Record {
    std::string declaration;
    TacticList tactics;
    std::vector<Diagnostic> messages;
  };
  const std::map<std::string, Record>& records() const { return records_; }

 private:
  std::map<std::string, Record> records_;
};

/// Replays recorded responses. Unlisted requests raise BackendUnavailable.
class FixtureChecker : public Checker {
 public:
  explicit FixtureChecker(std::shared_ptr<const FixtureTable> table) : table_(std::move(table)) {}
  CheckResult check(const CheckRequest& request) override;

 private:
  std::shared_ptr<const FixtureTable> table_;
};

struct ReplConfig {
  std::vector<std::string> command{"lake", "exe", "repl"};
  std::string project_root = ".";
  std::string preamble = "import Game";
  std::chrono::milliseconds startup_timeout{120'000};
  std::chrono::milliseconds check_timeout{30'000};
};

/// Client for a persistent REPL subprocess speaking JSON messages
/// ({"cmd", "env"} in, {"messages", "env"} out). Every check starts from
/// the environment produced by the preamble.
class ReplChecker : public Checker {
 public:
  explicit ReplChecker(ReplConfig config);
  ~ReplChecker() override;
  ReplChecker(const ReplChecker&) = delete;
  ReplChecker& operator=(const ReplChecker&) = delete;

  CheckResult check(const CheckRequest& request) override;

 private:
  nlohmann::json roundtrip(const nlohmann::json& request, std::chrono::milliseconds timeout);
  void ensure_started();
  void shutdown();

  ReplConfig config_;
  std::unique_ptr<Subprocess> process_;
  std::optional<int> base_env_;
};

}  // namespace prooftutor
