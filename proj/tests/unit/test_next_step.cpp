#include "doctest.h"
#include "prooftutor/errors.hpp"
#include "prooftutor/next_step.hpp"
#include "scenarios.hpp"
#include "synthetic_world.hpp"

using namespace prooftutor;
using testing::CountingChecker;

namespace {

ScriptedBackend constant_candidates(std::string lines) {
  return ScriptedBackend([lines](const PromptBundle&) { return lines; });
}

SearchConfig config(int depth = 8, int branching = 12) {
  SearchConfig c;
  c.max_depth = depth;
  c.branching = branching;
  c.forbidden = {"countdown", "later_thm"};
  return c;
}

}  // namespace

TEST_CASE("forbidden set follows curriculum order") {
  auto app = testing::load_data_app();
  const auto theorems = app.corpus.theorems();
  CHECK(forbidden_theorems(theorems[2], theorems) ==
        std::set<std::string>{"add_comm", "add_assoc", "eq_succ_of_ne_zero"});
  CHECK(forbidden_theorems(theorems[4], theorems) == std::set<std::string>{"eq_succ_of_ne_zero"});
}

TEST_CASE("forbidden mentions") {
  const std::set<std::string> f{"add_comm"};
  CHECK(mentions_forbidden("rw [add_comm]", f));
  CHECK(mentions_forbidden("rw [MyNat.add_comm a b]", f));
  CHECK(mentions_forbidden("exact (add_comm _ _).symm", f));
  CHECK_FALSE(mentions_forbidden("rw [add_comm_left]", f));
}

TEST_CASE("world premises") {
  auto app = testing::load_data_app();
  auto names = world_premises(app.corpus.proofs, "Addition");
  for (auto n : {"add_zero", "zero_add", "add_succ", "succ_add", "rw", "rfl", "induction"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK(std::find(names.begin(), names.end(), "tauto") == names.end());
}

TEST_CASE("candidate parsing") {
  CHECK(parse_candidates("1. rw [hd]\n2) rfl\n- simp\n* exact h\n```\nrfl\n-- note\nrw [a], rfl\n", 12) ==
        TacticList{"rw [hd]", "rfl", "simp", "exact h"});
  CHECK(parse_candidates("a\nb\nc\nd", 2) == TacticList{"a", "b"});
  CHECK(parse_candidates("", 12).empty());
}

TEST_CASE("search config validation") {
  CHECK_THROWS_AS(config(0).validate(), ConfigError);
  CHECK_THROWS_AS(config(8, 0).validate(), ConfigError);
}

TEST_CASE("search prunes and finds a completion") {
  CountingChecker checker(3);
  auto llm = constant_candidates("fail\nrw [later_thm]\nnoop\nstep");
  auto r = search({}, testing::synthetic_theorem(), config(), llm, checker);
  REQUIRE(r.completion);
  CHECK(*r.completion == TacticList{"step", "step", "step"});
  CHECK(r.next_step() == "step");
  CHECK(r.log.front().verdict == SearchVerdict::compile_fail);
  CHECK(r.log[1].verdict == SearchVerdict::forbidden);
  CHECK(r.log[2].verdict == SearchVerdict::cyclic);
  CHECK(r.log[3].verdict == SearchVerdict::expanded);
  CHECK(r.log.back().verdict == SearchVerdict::complete);
  CHECK(r.stats.llm_calls == 3);
  CHECK(r.stats.distinct_states == 3);
  nlohmann::json j = r;
  CHECK(j.get<SearchResult>() == r);
}

TEST_CASE("moving back to an ancestor state is cyclic") {
  CountingChecker checker(1);
  auto llm = constant_candidates("back\nstep");
  auto r = search({}, testing::synthetic_theorem(), config(3), llm, checker);
  REQUIRE(r.completion);
  CHECK(*r.completion == TacticList{"step"});
  int cycles = 0;
  for (const auto& e : r.log) cycles += e.verdict == SearchVerdict::cyclic;
  // "step" is cyclic at depths 2 and 3 (back under a "back") before the root tries it
  CHECK(cycles == 2);
  CHECK(r.stats.cyclic == 2);
}

TEST_CASE("an already complete root has an empty completion") {
  CountingChecker checker(1);
  ScriptedBackend llm;
  auto r = search({"step"}, testing::synthetic_theorem(), config(), llm, checker);
  REQUIRE(r.completion);
  CHECK(r.completion->empty());
  CHECK_FALSE(r.next_step());
  CHECK(llm.calls() == 0);
}

TEST_CASE("a failing root is a search failure") {
  CountingChecker checker(1);
  ScriptedBackend llm;
  auto r = search({"fail"}, testing::synthetic_theorem(), config(), llm, checker);
  CHECK_FALSE(r.completion);
  CHECK_FALSE(r.failure.empty());
}

TEST_CASE("depth bound") {
  CountingChecker at_bound(8);
  auto llm = constant_candidates("step");
  CHECK(search({}, testing::synthetic_theorem(), config(8), llm, at_bound).completion);
  CountingChecker beyond(9);
  auto r = search({}, testing::synthetic_theorem(), config(8), llm, beyond);
  CHECK_FALSE(r.completion);
  CHECK(r.failure.find("depth 8") != std::string::npos);
}

TEST_CASE("candidate prompt carries the proof, state and premises") {
  auto app = testing::load_data_app();
  const auto theorem = app.corpus.theorems()[2];
  SearchConfig c = config();
  c.world_premises = {"add_zero", "rw"};
  SearchNode node{{"rw [hd]"}, parse_proof_state("a : ℕ\n⊢ a = a"), 1, nullptr};
  auto p = build_candidate_prompt(theorem, {"induction b with d hd"}, node, c);
  CHECK(p.user.find("induction b with d hd\nrw [hd]") != std::string::npos);
  CHECK(p.user.find("⊢ a = a") != std::string::npos);
  CHECK(p.user.find("add_zero, rw") != std::string::npos);
  CHECK(p.user.find("12") != std::string::npos);
  CHECK(p.metadata.at("kind") == "candidates");
}
