#pragma once

#include <array>
#include <variant>
#include <vector>

#include "provel/semiring.hpp"
#include "provel/syntax.hpp"

namespace provel {

/// Padding state keeping every transition at arity 5.
struct Pad {
  auto operator<=>(const Pad&) const = default;
};

using WtaState = std::variant<Axiom, Pad>;

inline bool is_pad(const WtaState& q) {
  return std::holds_alternative<Pad>(q);
}

struct WtaTransition {
  WtaState head;
  std::array<WtaState, 5> children;
  auto operator<=>(const WtaTransition&) const = default;
};

std::string to_string(const WtaState& q);
std::string to_string(const WtaTransition& t);  // "head <- c1,c2,c3,c4,c5"

/// The weight a state contributes as a leaf: its annotation if the axiom is
/// in the TBox ({epsilon} for the unit label), {epsilon} for trivially valid
/// inclusions X <= X and X <= top and for the padding state, empty otherwise.
FiniteLanguage exit_weight(const WtaState& q, const AnnotatedTBox& tbox);

/// True for the four axiom shapes that occur as transition heads.
bool is_head_shape(const WtaState& q);

/// Every instantiation of the deduction schemas with the given head, with
/// quantified concept names ranging over the TBox signature plus top and
/// roles over the TBox roles. Children that can only carry the empty weight
/// are still generated; pruning is the caller's business.
std::vector<WtaTransition> transitions_for_head(const WtaState& q,
                                                const AnnotatedTBox& tbox);

/// Ground-truth oracle: the set of weights of all runs of height <= depth
/// rooted at `goal`, by recursive expansion. Exponential by design; `depth`
/// must stay within `depth_cap`.
FiniteLanguage enumerate_runs(const WtaState& goal, int depth,
                              const AnnotatedTBox& tbox, int depth_cap = 6);

}  // namespace provel
