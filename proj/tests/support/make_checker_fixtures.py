#!/usr/bin/env python3
"""Writes data/fixtures/checker.jsonl.

Goal states are written by hand in the checker's rendering (NNG4 prints
`0` and `succ d`, and its `rw` never closes goals with rfl). Each family
shares one statement; its runs are emitted under every declaration that
proves that statement, since renaming the declaration changes nothing.

Run from the repository root:  python3 tests/support/make_checker_fixtures.py
"""

import json
import sys
from pathlib import Path

RFL_FAILED = (
    "The rfl tactic failed. Possible reasons:\n"
    "- The goal is not a reflexive relation (neither `=` nor a relation with a @[refl] lemma).\n"
    "- The arguments of the relation are not equal.\n"
    "Try using the reflexivity lemma for your relation explicitly, e.g. `exact Eq.refl _` or\n"
    "`exact HEq.rfl` etc.\n"
)

COMPLETE = None


def err(text):
    return ("error", text)


def chain(table, prefix, steps):
    """steps: [(tactic, result)]; records every cumulative prefix."""
    tactics = list(prefix)
    for tactic, result in steps:
        tactics.append(tactic)
        table[tuple(tactics)] = result


# -- zero_add ---------------------------------------------------------------

ZA = {}
ZA[()] = "n : ℕ\n⊢ 0 + n = n"
ZA_SUCC = "case succ\nd : ℕ\nhd : 0 + d = d\n"
chain(ZA, [], [
    ("induction n with d hd", "case zero\n⊢ 0 + 0 = 0\n\n" + ZA_SUCC + "⊢ 0 + succ d = succ d"),
    ("rw [add_zero]", "case zero\n⊢ 0 = 0\n\n" + ZA_SUCC + "⊢ 0 + succ d = succ d"),
    ("rfl", ZA_SUCC + "⊢ 0 + succ d = succ d"),
    ("rw [add_succ]", ZA_SUCC + "⊢ succ (0 + d) = succ d"),
    ("rw [hd]", ZA_SUCC + "⊢ succ d = succ d"),
    ("rfl", COMPLETE),
])

# -- succ_add ---------------------------------------------------------------

SA = {}
SA[()] = "a b : ℕ\n⊢ succ a + b = succ (a + b)"
SA_SUCC = "case succ\na d : ℕ\nhd : succ a + d = succ (a + d)\n"
chain(SA, [], [
    ("induction b with d hd",
     "case zero\na : ℕ\n⊢ succ a + 0 = succ (a + 0)\n\n" + SA_SUCC + "⊢ succ a + succ d = succ (a + succ d)"),
    ("rw [add_zero]",
     "case zero\na : ℕ\n⊢ succ a = succ (a + 0)\n\n" + SA_SUCC + "⊢ succ a + succ d = succ (a + succ d)"),
    ("rw [add_zero]",
     "case zero\na : ℕ\n⊢ succ a = succ a\n\n" + SA_SUCC + "⊢ succ a + succ d = succ (a + succ d)"),
    ("rfl", SA_SUCC + "⊢ succ a + succ d = succ (a + succ d)"),
    ("rw [add_succ]", SA_SUCC + "⊢ succ (succ a + d) = succ (a + succ d)"),
    ("rw [hd]", SA_SUCC + "⊢ succ (succ (a + d)) = succ (a + succ d)"),
    ("rw [add_succ]", SA_SUCC + "⊢ succ (succ (a + d)) = succ (succ (a + d))"),
    ("rfl", COMPLETE),
])

# -- add_comm ---------------------------------------------------------------

AC = {}
AC[()] = "a b : ℕ\n⊢ a + b = b + a"
AC_SUCC = "case succ\na d : ℕ\nhd : a + d = d + a\n"
AC_STEP = AC_SUCC + "⊢ a + succ d = succ d + a"
IND = "induction b with d hd"
chain(AC, [], [
    (IND, "case zero\na : ℕ\n⊢ a + 0 = 0 + a\n\n" + AC_STEP),
    ("rw [add_zero]", "case zero\na : ℕ\n⊢ a = 0 + a\n\n" + AC_STEP),
    ("rw [zero_add]", "case zero\na : ℕ\n⊢ a = a\n\n" + AC_STEP),
    ("rfl", AC_STEP),
])
BASE = [IND, "rw [add_zero]", "rw [zero_add]", "rfl"]
# staff order: add_succ before succ_add
chain(AC, BASE, [
    ("rw [add_succ]", AC_SUCC + "⊢ succ (a + d) = succ d + a"),
    ("rw [succ_add]", AC_SUCC + "⊢ succ (a + d) = succ (d + a)"),
    ("rw [hd]", AC_SUCC + "⊢ succ (d + a) = succ (d + a)"),
    ("rfl", COMPLETE),
])
# justification order: succ_add first
chain(AC, BASE, [
    ("rw [succ_add]", AC_SUCC + "⊢ a + succ d = succ (d + a)"),
    ("rw [add_succ]", AC_SUCC + "⊢ succ (a + d) = succ (d + a)"),
    ("rw [hd]", AC_SUCC + "⊢ succ (d + a) = succ (d + a)"),
    ("rfl", COMPLETE),
])
# equation order in the base case
chain(AC, [IND], [
    ("rw [zero_add]", "case zero\na : ℕ\n⊢ a + 0 = a\n\n" + AC_STEP),
    ("rw [add_zero]", "case zero\na : ℕ\n⊢ a = a\n\n" + AC_STEP),
    ("rfl", AC_STEP),
])
EQ_BASE = [IND, "rw [zero_add]", "rw [add_zero]", "rfl"]
chain(AC, EQ_BASE, [
    ("rw [add_succ]", AC_SUCC + "⊢ succ (a + d) = succ d + a"),
    ("rw [succ_add]", AC_SUCC + "⊢ succ (a + d) = succ (d + a)"),
    ("rw [hd]", AC_SUCC + "⊢ succ (d + a) = succ (d + a)"),
    ("rfl", COMPLETE),
])
# a prediction that spells two steps differently but closes the same goals
AC[tuple([IND, "rw [zero_add]", "rw[add_zero]", "rfl", "rw [add_succ]", "rw [succ_add]", "rw [hd]",
          "exact rfl"])] = COMPLETE
AC[tuple(EQ_BASE + ["rw [add_succ]", "rw [succ_add]", "rw [hd]", "exact rfl"])] = COMPLETE
AC[tuple(BASE + ["rw [add_succ]", "rw [succ_add]", "rw [hd]", "exact rfl"])] = COMPLETE
# Both orders reach succ (a + d) = succ (d + a); candidates searched from there.
for ROOT in (BASE + ["rw [succ_add]", "rw [add_succ]"], BASE + ["rw [add_succ]", "rw [succ_add]"]):
    AC[tuple(ROOT + ["rfl"])] = err(RFL_FAILED + AC_SUCC + "⊢ succ (a + d) = succ (d + a)")
    AC[tuple(ROOT + ["rw [add_comm]"])] = AC_SUCC + "⊢ succ (d + a) = succ (d + a)"
    AC[tuple(ROOT + ["rw [add_comm]", "rfl"])] = COMPLETE
# a hint from the start of the inductive step follows the staff order
AC[tuple(BASE + ["rfl"])] = err(RFL_FAILED + AC_STEP)

# -- add_assoc --------------------------------------------------------------

AA = {}
AA[()] = "a b c : ℕ\n⊢ a + b + c = a + (b + c)"
AA_SUCC = "case succ\na b d : ℕ\nhd : a + b + d = a + (b + d)\n"
AA_STEP = AA_SUCC + "⊢ a + b + succ d = a + (b + succ d)"
chain(AA, [], [
    ("induction c with d hd", "case zero\na b : ℕ\n⊢ a + b + 0 = a + (b + 0)\n\n" + AA_STEP),
    ("rw [add_zero]", "case zero\na b : ℕ\n⊢ a + b = a + (b + 0)\n\n" + AA_STEP),
    ("rw [add_zero]", "case zero\na b : ℕ\n⊢ a + b = a + b\n\n" + AA_STEP),
    ("rfl", AA_STEP),
    ("rw [add_succ]", AA_SUCC + "⊢ succ (a + b + d) = a + (b + succ d)"),
    ("rw [add_succ]", AA_SUCC + "⊢ succ (a + b + d) = a + succ (b + d)"),
    ("rw [add_succ]", AA_SUCC + "⊢ succ (a + b + d) = succ (a + (b + d))"),
    ("rw [hd]", AA_SUCC + "⊢ succ (a + (b + d)) = succ (a + (b + d))"),
    ("rfl", COMPLETE),
])

# -- eq_succ_of_ne_zero -----------------------------------------------------

ES = {}
ES[()] = "a : ℕ\nha : a ≠ 0\n⊢ ∃ n, a = succ n"
ES_SUCC = "case succ\nd : ℕ\na✝ : d ≠ 0 → ∃ n, d = succ n\nha : succ d ≠ 0\n"
ES_IND = "induction a with d _"
ES_ZERO = "case zero\nha : 0 ≠ 0\n⊢ ∃ n, 0 = succ n\n\n"
chain(ES, [], [
    (ES_IND, ES_ZERO + ES_SUCC + "⊢ ∃ n, succ d = succ n"),
    ("tauto", ES_SUCC + "⊢ ∃ n, succ d = succ n"),
    ("use d", ES_SUCC + "⊢ succ d = succ d"),
    ("rfl", COMPLETE),
])
# step 2 skipped: `use d` lands in the zero case, where d is not bound
ES[(ES_IND, "use d")] = err("unknown identifier 'd'")
ES[(ES_IND, "use d", "rfl")] = err("unknown identifier 'd'")
ES[(ES_IND, "rfl")] = err(RFL_FAILED + ES_ZERO.rstrip("\n"))
# rfl in place of tauto: the existential is not a reflexive relation
ES[(ES_IND, "rfl", "use d", "rfl")] = err(RFL_FAILED + ES_ZERO.rstrip("\n"))

FAMILIES = [
    (ZA, "(n : ℕ) : 0 + n = n := by", ["zero_add_staff_solution"]),
    (SA, "(a b : ℕ) : succ a + b = succ (a + b) := by", ["succ_add_staff_solution"]),
    (AC, "(a b : ℕ) : a + b = b + a := by",
     ["add_comm_staff_solution", "add_comm_equation_based", "add_comm_justification_based",
      "add_comm_justification_based_incorrect"]),
    (AA, "(a b c : ℕ) : a + b + c = a + (b + c) := by", ["add_assoc_staff_solution"]),
    (ES, "(a : ℕ) (ha : a ≠ 0) : ∃ n, a = succ n := by",
     ["eq_succ_of_ne_zero_staff_solution", "eq_succ_of_ne_zero_equation_based",
      "eq_succ_of_ne_zero_equation_based_incorrect"]),
]


def messages(header, tactics, result):
    if result is COMPLETE:
        return []
    # Lean columns count code points, which is what len() gives.
    by_col = len(header) - 2
    if isinstance(result, tuple):
        line = 1 + len(tactics)
        return [{"severity": "error", "pos": {"line": line, "column": 2},
                 "endPos": {"line": line, "column": 2 + len(tactics[-1])}, "data": result[1]}]
    return [{"severity": "error", "pos": {"line": 1, "column": by_col},
             "endPos": {"line": 1, "column": by_col + 2}, "data": "unsolved goals\n" + result}]


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures/checker.jsonl")
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    for table, signature, decls in FAMILIES:
        for decl in decls:
            header = f"theorem {decl} {signature}"
            for tactics, result in sorted(table.items(), key=lambda kv: (len(kv[0]), kv[0])):
                record = {"theorem": decl, "tactics": list(tactics),
                          "messages": messages(header, list(tactics), result)}
                lines.append(json.dumps(record, ensure_ascii=False))
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} records to {out}")


if __name__ == "__main__":
    main()
