#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prooftutor/dataset.hpp"
#include "prooftutor/lean_bridge.hpp"
#include "prooftutor/llm_backend.hpp"

namespace prooftutor {

struct SearchConfig {
  int branching = 12;
  int max_depth = 8;
  std::set<std::string> forbidden;
  std::vector<std::string> world_premises;
  Knobs knobs;

  /// Throws ConfigError unless branching >= 1 and max_depth >= 1.
  void validate() const;
};

struct SearchNode {
  TacticList tactics_so_far;  // relative to the search root
  ProofState state;
  int depth = 0;
  const SearchNode* parent = nullptr;
};

/// The theorem itself plus every theorem that comes later in the ordering.
std::set<std::string> forbidden_theorems(const TheoremSpec& theorem, const std::vector<TheoremSpec>& ordering);

/// Tactic and premise names used by any proof in `world`, sorted.
std::vector<std::string> world_premises(const std::vector<AnnotatedProof>& proofs, const std::string& world);

/// True if a forbidden name occurs in the tactic as a whole identifier or as
/// the last component of a dotted name (`MyNat.add_comm`).
bool mentions_forbidden(const std::string& tactic, const std::set<std::string>& forbidden);

PromptBundle build_candidate_prompt(const TheoremSpec& theorem, const TacticList& root_tactics,
                                    const SearchNode& node, const SearchConfig& config);

/// At most `limit` distinct sanitized lines in their original order. List
/// markers ("1.", "2)", "-") are dropped; unusable lines are skipped.
TacticList parse_candidates(std::string_view raw, int limit);

/// Throws BackendError.
TacticList propose_candidates(const SearchNode& node, const TheoremSpec& theorem, const TacticList& root_tactics,
                              const SearchConfig& config, LlmBackend& llm);

/// Candidate must already compile from `node`. `path_keys` holds normalized
/// state keys from the root to `node`.
bool progress_check(const std::string& candidate, const ProofState& child_state,
                    const std::set<std::string>& path_keys, const SearchConfig& config);

enum class SearchVerdict { compile_fail, forbidden, cyclic, expanded, complete };
std::string_view to_string(SearchVerdict v);

struct SearchLogEntry {
  int depth = 0;  // depth of the candidate's child node
  std::string tactic;
  SearchVerdict verdict = SearchVerdict::expanded;

  bool operator==(const SearchLogEntry&) const = default;
};

struct SearchStats {
  int llm_calls = 0;
  int checker_calls = 0;
  int nodes_expanded = 0;
  int compile_failures = 0;
  int forbidden = 0;
  int cyclic = 0;
  int distinct_states = 0;

  bool operator==(const SearchStats&) const = default;
};

struct SearchResult {
  std::optional<TacticList> completion;  // tactics after root_tactics
  std::vector<SearchLogEntry> log;
  SearchStats stats;
  std::string failure;  // why no completion was found

  /// The first tactic of the completion, if any.
  std::optional<std::string> next_step() const;
  /// One "depth<TAB>tactic<TAB>verdict" line per log entry.
  std::string log_text() const;
  bool operator==(const SearchResult&) const = default;
};

void to_json(nlohmann::json& j, const SearchResult& r);
void from_json(const nlohmann::json& j, SearchResult& r);

/// Depth-first search over rank-ordered candidates, compiled lazily. A
/// returned completion has been re-checked to close the proof. Backend and
/// checker failures propagate as exceptions; search failure does not.
SearchResult search(const TacticList& root_tactics, const TheoremSpec& theorem, const SearchConfig& config,
                    LlmBackend& llm, Checker& checker);

}  // namespace prooftutor
