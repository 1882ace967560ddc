#include "prooftutor/next_step.hpp"

#include <algorithm>

#include "prooftutor/autoformalizer.hpp"
#include "prooftutor/errors.hpp"
#include "prooftutor/identifier.hpp"
#include "prooftutor/state_match.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

using nlohmann::json;

void SearchConfig::validate() const {
  if (branching < 1) throw ConfigError("search branching must be at least 1");
  if (max_depth < 1) throw ConfigError("search depth bound must be at least 1");
}

std::set<std::string> forbidden_theorems(const TheoremSpec& theorem, const std::vector<TheoremSpec>& ordering) {
  std::set<std::string> out{theorem.name};
  for (const auto& t : ordering)
    if (t.order_index > theorem.order_index) out.insert(t.name);
  return out;
}

std::vector<std::string> world_premises(const std::vector<AnnotatedProof>& proofs, const std::string& world) {
  std::set<std::string> names;
  for (const auto& p : proofs) {
    if (p.theorem.world != world || p.label != ProofLabel::correct) continue;
    auto n = scan_premises(p);
    names.insert(n.tactics.begin(), n.tactics.end());
    names.insert(n.theorems.begin(), n.theorems.end());
  }
  return {names.begin(), names.end()};
}

bool mentions_forbidden(const std::string& tactic, const std::set<std::string>& forbidden) {
  for (const auto& tok : lexer::identifiers(tactic)) {
    if (forbidden.count(tok.text)) return true;
    auto dot = tok.text.rfind('.');
    if (dot != std::string::npos && forbidden.count(tok.text.substr(dot + 1))) return true;
  }
  return false;
}

PromptBundle build_candidate_prompt(const TheoremSpec& theorem, const TacticList& root_tactics,
                                    const SearchNode& node, const SearchConfig& config) {
  TacticList so_far = root_tactics;
  so_far.insert(so_far.end(), node.tactics_so_far.begin(), node.tactics_so_far.end());
  std::string proof;
  for (const auto& t : so_far) proof += (proof.empty() ? "" : "\n") + t;
  PromptBundle p;
  p.system = std::string(prompts::kCandidateSystem);
  p.user = render_template(prompts::kCandidateUser,
                           {{"theorem_statement_FL", theorem.statement_fl},
                            {"proof_so_far", proof.empty() ? "(no tactics yet)" : proof},
                            {"goal_state", node.state.render()},
                            {"world_premises", text::join(config.world_premises, ", ")},
                            {"count", std::to_string(config.branching)}});
  p.knobs = config.knobs;
  p.metadata["kind"] = "candidates";
  p.metadata["goal_state"] = node.state.render();
  p.validate();
  return p;
}

namespace {

std::string_view strip_list_marker(std::string_view line) {
  line = text::trim(line);
  if (line.starts_with("- ") || line.starts_with("* ")) return text::trim(line.substr(2));
  std::size_t i = 0;
  while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
  if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')') && i + 1 < line.size() && line[i + 1] == ' ')
    return text::trim(line.substr(i + 2));
  return line;
}

}  // namespace

TacticList parse_candidates(std::string_view raw, int limit) {
  TacticList out;
  for (const auto& line : text::split_lines(raw)) {
    if (static_cast<int>(out.size()) >= limit) break;
    const auto body = strip_list_marker(line);
    if (body.empty() || body.starts_with("```") || body.starts_with("--")) continue;
    std::string tactic;
    try {
      tactic = sanitize_tactic(body);
    } catch (const FormatError&) {
      continue;
    }
    if (std::find(out.begin(), out.end(), tactic) == out.end()) out.push_back(std::move(tactic));
  }
  return out;
}

TacticList propose_candidates(const SearchNode& node, const TheoremSpec& theorem, const TacticList& root_tactics,
                              const SearchConfig& config, LlmBackend& llm) {
  return parse_candidates(llm.complete(build_candidate_prompt(theorem, root_tactics, node, config)),
                          config.branching);
}

bool progress_check(const std::string& candidate, const ProofState& child_state,
                    const std::set<std::string>& path_keys, const SearchConfig& config) {
  if (mentions_forbidden(candidate, config.forbidden)) return false;
  return !path_keys.count(normalized_key(child_state));
}

std::string_view to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::compile_fail:
      return "compile-fail";
    case SearchVerdict::forbidden:
      return "forbidden";
    case SearchVerdict::cyclic:
      return "cyclic";
    case SearchVerdict::expanded:
      return "expanded";
    case SearchVerdict::complete:
      return "complete";
  }
  return "expanded";
}

namespace {

SearchVerdict verdict_from_string(std::string_view s) {
  for (auto v : {SearchVerdict::compile_fail, SearchVerdict::forbidden, SearchVerdict::cyclic,
                 SearchVerdict::expanded, SearchVerdict::complete})
    if (to_string(v) == s) return v;
  throw Error("unknown search verdict: " + std::string(s));
}

class Dfs {
 public:
  Dfs(const TacticList& root, const TheoremSpec& theorem, const SearchConfig& config, LlmBackend& llm,
      Checker& checker, SearchResult& out)
      : root_(root), theorem_(theorem), config_(config), llm_(llm), checker_(checker), out_(out) {}

  CheckResult run(const TacticList& relative) {
    TacticList all = root_;
    all.insert(all.end(), relative.begin(), relative.end());
    ++out_.stats.checker_calls;
    return checker_.check({theorem_.statement_fl, all});
  }

  std::optional<TacticList> expand(const SearchNode& node) {
    if (node.depth >= config_.max_depth) return std::nullopt;
    ++out_.stats.llm_calls;
    ++out_.stats.nodes_expanded;
    const auto candidates = propose_candidates(node, theorem_, root_, config_, llm_);
    for (const auto& c : candidates) {
      SearchNode child{node.tactics_so_far, {}, node.depth + 1, &node};
      child.tactics_so_far.push_back(c);
      const auto result = run(child.tactics_so_far);
      if (!result.ok()) {
        log(child.depth, c, SearchVerdict::compile_fail);
        ++out_.stats.compile_failures;
        continue;
      }
      if (mentions_forbidden(c, config_.forbidden)) {
        log(child.depth, c, SearchVerdict::forbidden);
        ++out_.stats.forbidden;
        continue;
      }
      if (result.status == CheckStatus::complete) {
        log(child.depth, c, SearchVerdict::complete);
        return child.tactics_so_far;
      }
      child.state = result.state();
      const auto key = normalized_key(child.state);
      if (path_.count(key)) {
        log(child.depth, c, SearchVerdict::cyclic);
        ++out_.stats.cyclic;
        continue;
      }
      seen_.insert(key);
      log(child.depth, c, SearchVerdict::expanded);
      path_.insert(key);
      auto found = expand(child);
      path_.erase(key);
      if (found) return found;
    }
    return std::nullopt;
  }

  void enter_root(const ProofState& state) {
    const auto key = normalized_key(state);
    path_.insert(key);
    seen_.insert(key);
  }
  int distinct_states() const { return static_cast<int>(seen_.size()); }

 private:
  void log(int depth, const std::string& tactic, SearchVerdict v) { out_.log.push_back({depth, tactic, v}); }

  const TacticList& root_;
  const TheoremSpec& theorem_;
  const SearchConfig& config_;
  LlmBackend& llm_;
  Checker& checker_;
  SearchResult& out_;
  std::set<std::string> path_;
  std::set<std::string> seen_;
};

}  // namespace

std::optional<std::string> SearchResult::next_step() const {
  if (!completion || completion->empty()) return std::nullopt;
  return completion->front();
}

std::string SearchResult::log_text() const {
  std::string out;
  for (const auto& e : log)
    out += std::to_string(e.depth) + "\t" + e.tactic + "\t" + std::string(to_string(e.verdict)) + "\n";
  return out;
}

void to_json(json& j, const SearchResult& r) {
  json log = json::array();
  for (const auto& e : r.log) log.push_back({{"depth", e.depth}, {"tactic", e.tactic}, {"verdict", to_string(e.verdict)}});
  j = json{{"completion", r.completion ? json(*r.completion) : json(nullptr)},
           {"log", log},
           {"failure", r.failure},
           {"stats",
            {{"llm_calls", r.stats.llm_calls},
             {"checker_calls", r.stats.checker_calls},
             {"nodes_expanded", r.stats.nodes_expanded},
             {"compile_failures", r.stats.compile_failures},
             {"forbidden", r.stats.forbidden},
             {"cyclic", r.stats.cyclic},
             {"distinct_states", r.stats.distinct_states}}}};
}

void from_json(const json& j, SearchResult& r) {
  r = SearchResult{};
  if (!j.at("completion").is_null()) r.completion = j["completion"].get<TacticList>();
  for (const auto& e : j.at("log"))
    r.log.push_back({e.at("depth").get<int>(), e.at("tactic").get<std::string>(),
                     verdict_from_string(e.at("verdict").get<std::string>())});
  r.failure = j.value("failure", "");
  const auto& s = j.at("stats");
  r.stats = {s.at("llm_calls").get<int>(),      s.at("checker_calls").get<int>(), s.at("nodes_expanded").get<int>(),
             s.at("compile_failures").get<int>(), s.at("forbidden").get<int>(),     s.at("cyclic").get<int>(),
             s.at("distinct_states").get<int>()};
}

SearchResult search(const TacticList& root_tactics, const TheoremSpec& theorem, const SearchConfig& config,
                    LlmBackend& llm, Checker& checker) {
  config.validate();
  SearchResult out;
  Dfs dfs(root_tactics, theorem, config, llm, checker, out);
  const auto root = dfs.run({});
  if (!root.ok()) {
    out.failure = "the proof before the erroneous step does not compile";
    return out;
  }
  if (root.status == CheckStatus::complete) {
    out.completion = TacticList{};
    return out;
  }
  SearchNode node{{}, root.state(), 0, nullptr};
  dfs.enter_root(node.state);
  auto found = dfs.expand(node);
  out.stats.distinct_states = dfs.distinct_states();
  if (!found) {
    out.failure = "no completion within depth " + std::to_string(config.max_depth);
    return out;
  }
  if (dfs.run(*found).status != CheckStatus::complete) {
    out.failure = "candidate completion did not re-check as complete";
    return out;
  }
  out.completion = std::move(*found);
  return out;
}

}  // namespace prooftutor
