#include "prooftutor/prompts.hpp"

namespace prooftutor::prompts {

const std::string_view kStepSystem =
    R"(An undergraduate student is proving the following Peano Arithmetic theorem:
Theorem statement in natural language: {{theorem_statement_NL}}
Theorem statement in formal language: {{theorem_statement_FL}}
Convert the student’s natural language mathematical proof step to Lean4 syntax.
{{staff_block}}These are the formal theorems you have access to:
{{theorem_dict}}

These are the Lean tactics you have access to:
{{tactic_dict}}

Your response must be written as a single line of Lean tactic code, as used in the body of a by block of a Lean theorem.It should match the structure of Lean DSL tactic proofs, such as:
intro h
rw [← is_zero_succ a]
apply succ_inj at h
exact h
contrapose! h

Note: Only 1 lean tactic, do not write multiple lean tactics that are comma seperated.
DO *NOT* wrap your answer in markdown syntax, e.g. '''lean '''. It must be simply a Lean tactic script that can be inserted into a proof.

Here are some examples. NOTE: These are just examples. The correct Lean4 code may not necessarily use the propositions shown in these proofs.

{{examples}})";

const std::string_view kStepUser = R"(The natural-language statement to formalize is:
{{nl_statement}})";

const std::string_view kWholeSystem =
    R"(An undergraduate student is proving the following Peano Arithmetic theorem:
Theorem statement in natural language: {{theorem_statement_NL}}
Theorem statement in formal language: {{theorem_statement_FL}}

Convert the student’s natural language mathematical proof to Lean4 syntax.

{{staff_block}}These are the formal theorems you have access to:
{{theorem_dict}}

These are the Lean tactics you have access to:
{{tactic_dict}}

Your response must be written as a proof in Lean, in a list of tactics on each new line. SUch as:
intro h
rw [← is_zero_succ a]
apply succ_inj at h
exact h
contrapose! h

Each tactic must be formatted consistently with Lean4's syntax and DO NOT include any comments in the list.
DO *NOT* wrap your answer in markdown syntax, e.g. '''lean '''. It must be simply a list of Lean tactics separated by \n.

Here are some examples. NOTE: These are just examples. The correct Lean4 code may not necessarily use the propositions shown in these proofs.

{{examples}})";

const std::string_view kWholeUser = R"(The natural language proof that we want to formalize:
{{nl_statement}})";

const std::string_view kStaffBlock =
    R"(This is one example of the completed proof in Lean4, with in-line comments of the natural language proof corresponding to the Lean4 syntax:
{{staff_solution}}

)";

const std::vector<FewShotExample>& step_examples() {
  static const std::vector<FewShotExample> examples{
      {"Rewrite the LHS pred (succ a) with the given statement that succ a = succ b, LHS is now pred (succ b)",
       "rw [h]"},
      {"Rewrite LHS using the commutative property of addition, changing a + (b + c) to a + b + c",
       "rw [← add_assoc]"},
      {"Assume that the hypothesis 'h' is true, that is, a + succ d = 0. The goal now is to prove that a = 0.",
       "rw [add_zero] at h"},
      {"Split the natural number 'b' into two cases: 'b' is zero, and 'b' is the successor of another natural "
       "number 'd'.",
       "cases b with d"},
      {"Use the case of a + b to simplify the goal to equal z = x + (a + b).", "use a + b"},
  };
  return examples;
}

const std::vector<FewShotExample>& whole_examples() {
  static const std::vector<FewShotExample> examples{
      {R"(Induct on b, with d = 0 as the base case and the inductive hypothesis a * d = d * a. There are now two proof goals, prove base case: a * 0 = 0 * a, and inductive step: a * succ d = succ d * a.
First we prove base case.
Simplify RHS 0 * a to 0.
Simplify LHS a * 0 to 0.
Prove LHS and RHS are equal, 0 = 0, completing base case.
Next prove inductive step. Rewrite RHS succ d * a to d * a + a.
Rewrite the RHS from d * a + a to a * d + a using the inductive hypothesis.
Rewrite the LHS, changing a * succ d to a * d + a.
Prove LHS and RHS are equal, a * d + a = a * d + a, completing the proof.)",
       R"(induction b with d hd
rw [zero_mul]
rw [mul_zero]
rfl
rw [succ_mul]
rw [← hd]
rw [mul_succ]
rfl)"},
      {R"(We must assume succ (succ 0) + succ (succ 0) = succ (succ (succ (succ (succ 0)))) and derive a contradiction or falsehood.
Using our previous theorems, we can change succ (succ 0) + succ (succ 0) into succ (succ (succ (succ 0))).
By the injectivity of succ, we know that 0 = succ 0. 0 is not equal to the successor of any natural number, so we have a contradiction.
Thus, we have a falsehood/contradiction, which is what we wanted to show.)",
       R"(intro h
rw [add_succ, add_succ, add_zero] at h
repeat apply succ_inj at h
apply zero_ne_succ at h
exact h)"},
      {R"(We consider the case where the successor of x is less than or equal to the successor of y. This implies that the successor of y is equal to the successor of x plus some natural number d.
We assume d as the difference such that when added to x results in y. The goal now is to prove that y is equal to x plus d.
We rewrite the right-hand side of succ y = succ x + d using the theorem that states the the successor of a sum of two natural numbers is the same as the successor of the first number added to the second number.
We apply the property that if two natural numbers with successors are equal, then the original numbers are also equal.
We have shown that x = y + d, so we can use this to prove the goal.)",
       R"(cases hx with d hd
use d
rw [succ_add] at hd
apply succ_inj at hd
exact hd)"},
      {R"(We use proof by contraposition. So, we assume succ m = succ n and show m = n.
By the injectivity of succ, we have m = n.
So, m = n, which is exactly what we wanted to show.)",
       R"(contrapose! h
apply succ_inj at h
exact h)"},
      {R"(Rewrite the expression for the square of (a + b), a^ 2, and b^2 to be (a + b) * (a + b), a * a, and b * b respectively.
Rearrange the terms on the right hand side of the equation, swapping the order of b * b and 2 * a * b. This is based on the commutative property of addition, which states that the order of the terms does not change the result of the addition.
Rewrite the left-hand side of the equation using the distributive property of multiplication over addition. This expands (a + b) * (a + b) to a * a + b * a + a * b + b * b.
Rewrite the term 2 * a * b in the goal as (a * b + a * b) using the theorem that 2 times a number is the same as the number added to itself. Also, rewrite the term a * b + b * b as (a * b + a * b) + b * b using the theorem that the product of a sum is the sum of the products.
We rewrite the expression a * b as b * a in the goal. This is based on the commutative property of multiplication, which states that the order of the factors does not change the product. This results in the new goal: a * a + a * b + (a * b + b * b) = a * a + (a * b + a * b) + b * b.
We use the theorem that states the associativity of addition twice to rearrange the left-hand side of the equation. This changes the goal to proving that a * a + a * b + a * b + b * b equals a * a + a * b + a * b + b * b.
The goal is now to prove that a * a + a * b + a * b + b * b = a * a + a * b + a * b + b * b, which is true by reflexivity)",
       R"(rw [pow_two, pow_two, pow_two]
rw [add_right_comm]
rw [mul_add, add_mul, add_mul]
rw [two_mul, add_mul]
rw [mul_comm b a]
rw [← add_assoc, ← add_assoc]
rfl)"},
  };
  return examples;
}

const std::string_view kFeedbackSystem =
    "You are a  math professor, identifying the error in student proofs, with the help of the Lean4 verifier.";

const std::string_view kFeedbackUser =
    R"(A first-year math student's incomplete Peano Arithmetic proof has been formalized in Lean4, but it has an error.
This is the incorrect student proof in Lean4:

{{lean_proof}}

This is the current Lean4 state, throwing an error due to the last step {{last_line}}:

{{error}}

The actual correct step in Lean4 is:

{{next_step}}

Error Categories include:
1. Inducting on the incorrect variable
2. Selecting the incorrect base case
3. Not generalizing the inductive step to all cases
4. Failing to apply the inductive hypothesis
5. Incorrect/Incomplete simplification or expansion
6. Incorrect calculation or careless mistake
7. Other

Explain the student error, ask a guiding question to reach correct next step, and give a hint that explicitly reveals the answer in 1-2 sentences. Be specific and use equations from goal states.

DO NOT USE any "Lean" or any Lean tactics or syntax such as "tactic" or "reflexivity" or theorems such as "add_comm". You are speaking directly to the student, use "You" language.

Example:

Type: Incorrect simplification
Message: The RHS of your equation, a + (b + succ d), cannot be simplified with your applied strategy.
Question/Hint: Do you know of a theorem that can perform this simplification?
Informalization: The next step is to rewrite a + (b + succ d) as (a + b) + succ d.

IMPORTANT: Respond with ONLY a raw JSON object in the following format, without any code block formatting or additional text:
{
"Type": "Students' error type",
"Message": "Brief description of error in this problem"
"Question": "Do you....?"
"Informalization": "The next step is to..."
})";

const std::string_view kBaselineSystem =
    "You are a math professor helping a student debug their Peano Arithmetic proof.";

const std::string_view kBaselineUser =
    R"(A first-year math student is working on the following Peano Arithmetic theorem:
{{theorem}}

Below are the steps of the proof the student has completed thus far. There may be errors and/or the work may be incomplete:
{{proof}}

Identify and explain the student error, if it exists. Then, identify the correct next step. Ask a guiding question or give a hint that can help the student reach the correct next step in 1-2 sentences. Be specific.

Speak directly to the student using "You" language. Avoid using Lean tactics or syntax like "apply", "intro", or "rw".

Example:
Error Message: The RHS of your equation, a + (b + succ d), cannot be simplified with your applied strategy.
Next Step: The next step is to rewrite a + (b + succ d) as (a + b) + succ d.
Question/Hint: Do you know of a theorem that can perform this simplification?

IMPORTANT: Respond with ONLY a raw JSON object in the following format, without any code block formatting or additional text:
{
"Error_Message": "Brief description of error in this problem",
"Next_Step": "The next step is to...",
"Question": "Do you....?"
})";

const std::string_view kCandidateSystem =
    "You are an expert Lean4 user working in the Natural Number Game. You propose the next tactic of an "
    "unfinished proof.";

const std::string_view kCandidateUser = R"(Theorem:
{{theorem_statement_FL}}

Proof so far:
{{proof_so_far}}

Current proof state:
{{goal_state}}

Tactics and premises available in this world:
{{world_premises}}

List {{count}} candidate next tactics, most likely first, one per line. Write only the tactics: no numbering, no comments, no markdown.)";

}  // namespace prooftutor::prompts
