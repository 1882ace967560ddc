#pragma once

// A toy proof world for search tests. The goal counts down from `target`:
//   step   -> one closer          back -> one further
//   noop   -> unchanged           fail* -> checker error
//   rw [X] -> one closer, for any X (so forbidden names compile)
// Reaching zero completes the proof.

#include <string>

#include "prooftutor/lean_bridge.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor::testing {

inline constexpr const char* kSyntheticHeader = "theorem countdown (n : ℕ) : n = n := by";

inline TheoremSpec synthetic_theorem() {
  TheoremSpec t;
  t.name = "countdown";
  t.statement_nl = "Count down to zero.";
  t.statement_fl = kSyntheticHeader;
  t.world = "Toy";
  t.order_index = 1;
  return t;
}

inline std::string synthetic_goal(int remaining) {
  return "n : ℕ\n⊢ countdown n " + std::to_string(remaining) + " = n";
}

class CountingChecker : public Checker {
 public:
  explicit CountingChecker(int target) : target_(target) {}

  CheckResult check(const CheckRequest& request) override {
    ++calls;
    int remaining = target_;
    for (std::size_t i = 0; i < request.tactics.size(); ++i) {
      const auto& t = request.tactics[i];
      if (t == "step" || t.starts_with("rw [")) {
        --remaining;
      } else if (t == "back") {
        ++remaining;
      } else if (t == "noop") {
      } else {
        return result_from_diagnostics(
            {Diagnostic{"error", {static_cast<int>(i) + 2, 2}, std::nullopt, "unknown tactic '" + t + "'"}});
      }
      if (remaining == 0 && i + 1 < request.tactics.size())
        return result_from_diagnostics({Diagnostic{"error", {static_cast<int>(i) + 3, 2}, std::nullopt, "no goals"}});
    }
    if (remaining == 0) return result_from_diagnostics({});
    return result_from_diagnostics(
        {Diagnostic{"error", {1, 36}, std::nullopt, "unsolved goals\n" + synthetic_goal(remaining)}});
  }

  int calls = 0;

 private:
  int target_;
};

}  // namespace prooftutor::testing
