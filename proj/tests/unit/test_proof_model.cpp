#include "doctest.h"
#include "prooftutor/errors.hpp"
#include "prooftutor/proof_model.hpp"

using namespace prooftutor;

TEST_CASE("completed proofs parse to no cases") {
  CHECK(parse_proof_state("").complete());
  CHECK(parse_proof_state("no goals").complete());
  CHECK(parse_proof_state("  \n").complete());
}

TEST_CASE("single goal with grouped variables") {
  auto s = parse_proof_state("a b : ℕ\nh : a = b\n⊢ a + 0 = b");
  REQUIRE(s.cases.size() == 1);
  const auto& c = s.cases[0];
  CHECK_FALSE(c.case_tag.has_value());
  CHECK(c.hypothesis_lines == std::vector<std::string>{"a b : ℕ", "h : a = b"});
  CHECK(c.goal_line == "⊢ a + 0 = b");
  CHECK(c.free_variables == std::vector<std::string>{"a", "b", "h"});
  CHECK(s.render() == s.raw);
}

TEST_CASE("case tags and blank-line separated cases") {
  const std::string raw =
      "case zero\na : ℕ\n⊢ a + 0 = 0 + a\n\ncase succ\na d : ℕ\nhd : a + d = d + a\n⊢ a + succ d = succ d + a";
  auto s = parse_proof_state(raw);
  REQUIRE(s.cases.size() == 2);
  CHECK(s.cases[0].case_tag == "case zero");
  CHECK(s.cases[1].case_tag == "case succ");
  CHECK(s.cases[1].free_variables == std::vector<std::string>{"a", "d", "hd"});
  CHECK(s.render() == raw);
}

TEST_CASE("a case with no hypotheses") {
  auto s = parse_proof_state("case zero\n⊢ 0 + 0 = 0");
  REQUIRE(s.cases.size() == 1);
  CHECK(s.cases[0].hypothesis_lines.empty());
  CHECK(s.cases[0].free_variables.empty());
}

TEST_CASE("inaccessible names are variables") {
  auto s = parse_proof_state("d : ℕ\na✝ : d ≠ 0 → ∃ n, d = succ n\nha : succ d ≠ 0\n⊢ ∃ n, succ d = succ n");
  CHECK(s.cases[0].free_variables == std::vector<std::string>{"d", "a✝", "ha"});
}

TEST_CASE("wrapped continuation lines stay with their hypothesis") {
  auto s = parse_proof_state("h : a + b + c + d =\n    d + c + b + a\n⊢ True");
  REQUIRE(s.cases[0].hypothesis_lines.size() == 1);
  CHECK(s.cases[0].free_variables == std::vector<std::string>{"h"});
}

TEST_CASE("malformed states are rejected") {
  CHECK_THROWS_AS(parse_proof_state("a : ℕ\nthis line has no colon\n⊢ a = a"), MalformedState);
  CHECK_THROWS_AS(parse_proof_state("a : ℕ"), MalformedState);
}

TEST_CASE("extract_free_variables keeps first appearance order") {
  CHECK(extract_free_variables({"x y : ℕ", "y : ℕ", "h : x = y"}) == std::vector<std::string>{"x", "y", "h"});
  CHECK_THROWS_AS(extract_free_variables({"nonsense"}), MalformedState);
}

TEST_CASE("declaration names") {
  CHECK(declaration_name("theorem add_comm (a b : ℕ) : a + b = b + a := by") == "add_comm");
  CHECK(declaration_name("lemma foo.bar : True := by") == "foo.bar");
  CHECK(declaration_name("example : True := by") == "example");
  CHECK(declaration_name("(a : ℕ) : a = a").empty());
}

TEST_CASE("annotated proof invariants") {
  AnnotatedProof p;
  p.theorem.name = "t";
  p.theorem.statement_fl = "theorem t : True := by";
  p.steps = {{"trivially", "trivial"}};
  CHECK_NOTHROW(p.validate());
  p.label = ProofLabel::incorrect;
  CHECK_THROWS_AS(p.validate(), Error);
  p.skipped_index = 2;
  CHECK_NOTHROW(p.validate());
  p.steps.clear();
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("enum round trips") {
  for (auto p : {Persona::staff_solution, Persona::equation_based, Persona::justification_based})
    CHECK(persona_from_string(to_string(p)) == p);
  CHECK(label_from_string("incorrect") == ProofLabel::incorrect);
  CHECK_THROWS_AS(persona_from_string("robot"), Error);
}
