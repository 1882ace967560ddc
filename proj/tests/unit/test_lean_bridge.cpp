#include <memory>

#include "doctest.h"
#include "prooftutor/dataset.hpp"
#include "prooftutor/errors.hpp"
#include "prooftutor/lean_bridge.hpp"
#include "scenarios.hpp"

using namespace prooftutor;

namespace {

Diagnostic error(std::string text) { return Diagnostic{"error", {1, 0}, std::nullopt, std::move(text)}; }
Diagnostic warning(std::string text) { return Diagnostic{"warning", {1, 0}, std::nullopt, std::move(text)}; }

std::shared_ptr<const FixtureTable> shipped_fixtures() {
  static auto table = std::make_shared<const FixtureTable>(
      FixtureTable::load(testing::data_path("fixtures/checker.jsonl")));
  return table;
}

}  // namespace

TEST_CASE("classification of diagnostics") {
  CHECK(classify({}) == CheckStatus::complete);
  CHECK(classify({warning("declaration uses 'sorry'")}) == CheckStatus::complete);
  CHECK(classify({error("unsolved goals\n⊢ True")}) == CheckStatus::incomplete);
  CHECK(classify({error("unknown identifier 'd'")}) == CheckStatus::error);
  // any non-goal error wins over unsolved goals
  CHECK(classify({error("unsolved goals\n⊢ True"), error("type mismatch")}) == CheckStatus::error);
  // the marker must lead the message
  CHECK(classify({error("tactic failed: unsolved goals")}) == CheckStatus::error);
}

TEST_CASE("result extraction") {
  auto r = result_from_diagnostics({error("unsolved goals\ncase zero\n⊢ 0 = 0\n\ncase succ\nd : ℕ\n⊢ d = d")});
  CHECK(r.status == CheckStatus::incomplete);
  REQUIRE(r.goal_state);
  CHECK(r.goal_state->cases.size() == 2);
  CHECK_FALSE(r.message);

  auto e = result_from_diagnostics({Diagnostic{"error", {3, 2}, std::nullopt, "unknown identifier 'd'"}});
  CHECK(e.status == CheckStatus::error);
  CHECK(e.message == "unknown identifier 'd'");
  CHECK(e.error_position == SourcePosition{3, 2});
  CHECK_FALSE(e.goal_state);

  auto c = result_from_diagnostics({});
  CHECK(c.ok());
  CHECK(c.state().complete());
}

TEST_CASE("check results round trip through JSON") {
  auto r = result_from_diagnostics({error("unsolved goals\na : ℕ\n⊢ a = a")});
  nlohmann::json j = r;
  CHECK(j.get<CheckResult>() == r);
}

TEST_CASE("command text") {
  CheckRequest req{"theorem t (a : ℕ) : a = a := by", {"rfl"}};
  CHECK(req.command_text() == "theorem t (a : ℕ) : a = a := by\n  rfl\n");
  CHECK(req.declaration() == "t");
  CheckRequest empty{"theorem t (a : ℕ) : a = a := by", {}};
  CHECK(empty.command_text() == "theorem t (a : ℕ) : a = a := by\n  skip\n");
}

TEST_CASE("fixture checker classifies the shipped fixtures") {
  FixtureChecker checker(shipped_fixtures());
  const std::string add_comm = "theorem add_comm_staff_solution (a b : ℕ) : a + b = b + a := by";
  auto incomplete = checker.check({add_comm, {"induction b with d hd"}});
  CHECK(incomplete.status == CheckStatus::incomplete);
  CHECK(incomplete.state().cases.size() == 2);

  const std::string eq = "theorem eq_succ_of_ne_zero_equation_based_incorrect (a : ℕ) (ha : a ≠ 0) : ∃ n, a = succ n := by";
  auto err = checker.check({eq, {"induction a with d _", "use d"}});
  CHECK(err.status == CheckStatus::error);
  CHECK(err.message->starts_with("unknown identifier"));

  auto done = checker.check({add_comm, {"induction b with d hd", "rw [add_zero]", "rw [zero_add]", "rfl",
                                        "rw [add_succ]", "rw [succ_add]", "rw [hd]", "rfl"}});
  CHECK(done.status == CheckStatus::complete);

  CHECK_THROWS_AS(checker.check({add_comm, {"simp"}}), BackendUnavailable);
}

TEST_CASE("every prefix of a known-correct proof is valid") {
  FixtureChecker checker(shipped_fixtures());
  auto corpus = load_corpus(testing::data_path("corpus/manifest.json"));
  for (const auto& proof : corpus.proofs) {
    const auto tactics = proof.tactics();
    for (std::size_t k = 0; k <= tactics.size(); ++k) {
      TacticList prefix(tactics.begin(), tactics.begin() + static_cast<long>(k));
      auto r = checker.check({proof.theorem.statement_fl, prefix});
      INFO(proof.theorem.declaration() << " prefix " << k);
      CHECK(r.ok());
      CHECK((r.status == CheckStatus::complete) == (k == tactics.size()));
    }
  }
}

#ifdef PROOFTUTOR_PYTHON
namespace {

ReplConfig fake_repl(std::vector<std::string> extra = {}) {
  ReplConfig cfg;
  cfg.command = {PROOFTUTOR_PYTHON, std::string(PROOFTUTOR_SUPPORT_DIR) + "/fake_repl.py",
                 testing::data_path("fixtures/checker.jsonl")};
  cfg.command.insert(cfg.command.end(), extra.begin(), extra.end());
  cfg.startup_timeout = std::chrono::milliseconds(10'000);
  cfg.check_timeout = std::chrono::milliseconds(1'500);
  return cfg;
}

const std::string kZeroAdd = "theorem zero_add_staff_solution (n : ℕ) : 0 + n = n := by";

}  // namespace

TEST_CASE("REPL client agrees with the fixture checker") {
  ReplChecker repl(fake_repl());
  FixtureChecker fixtures(shipped_fixtures());
  for (const TacticList& t : {TacticList{}, TacticList{"induction n with d hd"},
                              TacticList{"induction n with d hd", "rw [add_zero]", "rfl", "rw [add_succ]", "rw [hd]",
                                         "rfl"}}) {
    CheckRequest req{kZeroAdd, t};
    CHECK(repl.check(req) == fixtures.check(req));
  }
}

TEST_CASE("REPL rejection is a backend failure, not a verdict") {
  ReplChecker repl(fake_repl());
  CHECK_THROWS_AS(repl.check({kZeroAdd, {"no such tactic"}}), BackendUnavailable);
  // the session survives a rejected command
  CHECK(repl.check({kZeroAdd, {}}).status == CheckStatus::incomplete);
}

TEST_CASE("REPL timeout and crash surface as BackendUnavailable and recover") {
  ReplChecker hang(fake_repl({"--hang-on", "rw [hd]"}));
  CHECK_THROWS_AS(hang.check({kZeroAdd, {"induction n with d hd", "rw [add_zero]", "rfl", "rw [add_succ]", "rw [hd]"}}),
                  BackendUnavailable);
  // a fresh process is started for the next request
  CHECK(hang.check({kZeroAdd, {}}).status == CheckStatus::incomplete);

  ReplChecker crash(fake_repl({"--exit-on", "rw [add_zero]"}));
  CHECK_THROWS_AS(crash.check({kZeroAdd, {"induction n with d hd", "rw [add_zero]"}}), BackendUnavailable);
}

TEST_CASE("REPL preamble failure") {
  ReplChecker repl(fake_repl({"--bad-preamble"}));
  CHECK_THROWS_AS(repl.check({kZeroAdd, {}}), BackendUnavailable);
}

TEST_CASE("missing REPL executable") {
  ReplConfig cfg;
  cfg.command = {"/nonexistent/repl"};
  cfg.startup_timeout = std::chrono::milliseconds(2'000);
  ReplChecker repl(cfg);
  CHECK_THROWS_AS(repl.check({kZeroAdd, {}}), BackendUnavailable);
}
#endif
