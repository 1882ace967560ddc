#include "prooftutor/lean_bridge.hpp"

#include <fstream>

#include "json.hpp"
#include "prooftutor/errors.hpp"
#include "prooftutor/subprocess.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

using nlohmann::json;

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::complete:
      return "complete";
    case CheckStatus::incomplete:
      return "incomplete";
    case CheckStatus::error:
      return "error";
  }
  return "?";
}

CheckStatus check_status_from_string(std::string_view s) {
  if (s == "complete") return CheckStatus::complete;
  if (s == "incomplete") return CheckStatus::incomplete;
  if (s == "error") return CheckStatus::error;
  throw Error("unknown check status '" + std::string(s) + "'");
}

std::string CheckRequest::command_text() const {
  std::string cmd(text::trim(theorem_header));
  cmd += "\n";
  // An empty tactic block does not parse; `skip` leaves the goal untouched.
  if (tactics.empty()) cmd += "  skip\n";
  for (const auto& t : tactics) {
    cmd += "  ";
    cmd += t;
    cmd += "\n";
  }
  return cmd;
}

ProofState CheckResult::state() const {
  if (goal_state) return *goal_state;
  return ProofState{};
}

namespace {

bool is_error(const Diagnostic& d) { return d.severity == "error"; }
bool is_unsolved_goals(const Diagnostic& d) { return is_error(d) && d.text.starts_with(kUnsolvedGoals); }

}  // namespace

CheckStatus classify(const std::vector<Diagnostic>& diagnostics) {
  bool unsolved = false;
  for (const auto& d : diagnostics) {
    if (!is_error(d)) continue;
    if (!is_unsolved_goals(d)) return CheckStatus::error;
    unsolved = true;
  }
  return unsolved ? CheckStatus::incomplete : CheckStatus::complete;
}

CheckResult result_from_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  CheckResult r;
  r.status = classify(diagnostics);
  switch (r.status) {
    case CheckStatus::complete:
      break;
    case CheckStatus::incomplete: {
      std::vector<std::string> blocks;
      for (const auto& d : diagnostics) {
        if (!is_unsolved_goals(d)) continue;
        auto nl = d.text.find('\n');
        if (nl != std::string::npos) blocks.emplace_back(text::trim(std::string_view(d.text).substr(nl + 1)));
      }
      r.goal_state = parse_proof_state(text::join(blocks, "\n\n"));
      break;
    }
    case CheckStatus::error:
      for (const auto& d : diagnostics) {
        if (is_error(d) && !is_unsolved_goals(d)) {
          r.message = d.text;
          r.error_position = d.pos;
          break;
        }
      }
      break;
  }
  return r;
}

void to_json(json& j, const SourcePosition& p) { j = json{{"line", p.line}, {"column", p.column}}; }
void from_json(const json& j, SourcePosition& p) {
  p.line = j.at("line").get<int>();
  p.column = j.at("column").get<int>();
}

void to_json(json& j, const Diagnostic& d) {
  j = json{{"severity", d.severity}, {"pos", d.pos}, {"data", d.text}};
  if (d.end_pos) j["endPos"] = *d.end_pos;
}

void from_json(const json& j, Diagnostic& d) {
  d.severity = j.at("severity").get<std::string>();
  d.pos = j.value("pos", SourcePosition{});
  if (j.contains("endPos") && !j["endPos"].is_null()) d.end_pos = j["endPos"].get<SourcePosition>();
  d.text = j.at("data").get<std::string>();
}

void to_json(json& j, const CheckResult& r) {
  j = json{{"status", to_string(r.status)}};
  if (r.goal_state) j["goals"] = r.goal_state->raw;
  if (r.message) j["message"] = *r.message;
  if (r.error_position) j["position"] = *r.error_position;
}

void from_json(const json& j, CheckResult& r) {
  r = CheckResult{};
  r.status = check_status_from_string(j.at("status").get<std::string>());
  if (j.contains("goals")) r.goal_state = parse_proof_state(j["goals"].get<std::string>());
  if (j.contains("message")) r.message = j["message"].get<std::string>();
  if (j.contains("position")) r.error_position = j["position"].get<SourcePosition>();
}

// ---------------------------------------------------------------------------
// Fixtures

std::string FixtureTable::key(const std::string& declaration, const TacticList& tactics) {
  json list = tactics;
  return declaration + "#" + text::sha256_hex(list.dump());
}

void FixtureTable::add(const std::string& declaration, const TacticList& tactics, std::vector<Diagnostic> messages) {
  records_[key(declaration, tactics)] = Record{declaration, tactics, std::move(messages)};
}

const std::vector<Diagnostic>* FixtureTable::find(const std::string& declaration, const TacticList& tactics) const {
  auto it = records_.find(key(declaration, tactics));
  return it == records_.end() ? nullptr : &it->second.messages;
}

void FixtureTable::load_into(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BackendUnavailable("cannot open checker fixtures " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_blank(line) || text::trim(line).starts_with("//")) continue;
    try {
      auto j = json::parse(line);
      add(j.at("theorem").get<std::string>(), j.at("tactics").get<TacticList>(),
          j.at("messages").get<std::vector<Diagnostic>>());
    } catch (const json::exception& e) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

FixtureTable FixtureTable::load(const std::string& path) {
  FixtureTable t;
  t.load_into(path);
  return t;
}

CheckResult FixtureChecker::check(const CheckRequest& request) {
  const auto decl = request.declaration();
  const auto* messages = table_->find(decl, request.tactics);
  if (!messages) {
    std::string listing = text::join(request.tactics, " ; ");
    throw BackendUnavailable("no fixture for " + decl + " [" + listing + "]");
  }
  return result_from_diagnostics(*messages);
}

// ---------------------------------------------------------------------------
// REPL

ReplChecker::ReplChecker(ReplConfig config) : config_(std::move(config)) {}

ReplChecker::~ReplChecker() { shutdown(); }

void ReplChecker::shutdown() {
  process_.reset();
  base_env_.reset();
}

json ReplChecker::roundtrip(const json& request, std::chrono::milliseconds timeout) {
  if (!process_->write(request.dump() + "\n\n")) {
    shutdown();
    throw BackendUnavailable("checker process is not accepting input");
  }
  std::string buffer;
  for (;;) {
    auto line = process_->read_line(timeout);
    if (!line) {
      shutdown();
      throw BackendUnavailable("checker did not answer within " + std::to_string(timeout.count()) + " ms");
    }
    if (text::is_blank(*line)) {
      if (buffer.empty()) continue;
    } else {
      buffer += *line;
      buffer += "\n";
    }
    if (json::accept(buffer)) return json::parse(buffer);
    if (text::is_blank(*line)) {
      shutdown();
      throw BackendUnavailable("checker sent a malformed response: " + buffer);
    }
  }
}

void ReplChecker::ensure_started() {
  if (process_ && process_->alive() && base_env_) return;
  shutdown();
  process_ = std::make_unique<Subprocess>(config_.command, config_.project_root);
  auto response = roundtrip(json{{"cmd", config_.preamble}}, config_.startup_timeout);
  if (!response.contains("env")) throw BackendUnavailable("checker preamble failed: " + response.dump());
  for (const auto& m : response.value("messages", json::array()))
    if (m.value("severity", "") == "error")
      throw BackendUnavailable("checker preamble failed: " + m.value("data", std::string{}));
  base_env_ = response["env"].get<int>();
}

CheckResult ReplChecker::check(const CheckRequest& request) {
  ensure_started();
  auto response = roundtrip(json{{"cmd", request.command_text()}, {"env", *base_env_}}, config_.check_timeout);
  if (response.contains("message") && !response.contains("messages") && !response.contains("env"))
    throw BackendUnavailable("checker rejected request: " + response["message"].dump());
  auto diagnostics = response.value("messages", json::array()).get<std::vector<Diagnostic>>();
  return result_from_diagnostics(diagnostics);
}

}  // namespace prooftutor
