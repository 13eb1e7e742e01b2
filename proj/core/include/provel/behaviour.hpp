#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "provel/ara.hpp"
#include "provel/semiring.hpp"
#include "provel/syntax.hpp"
#include "provel/wta.hpp"

namespace provel {

struct TruncatedError : Error {
  using Error::Error;
};

enum class EngineKind { saturation, ara };

struct EngineConfig {
  SemiringMode mode = SemiringMode::trio_commutative;
  EngineKind engine = EngineKind::ara;
  std::optional<int> max_iterations;        // default: run to stabilization
  std::size_t monomial_budget = 4u << 20;   // abort rather than degrade
};

class BehaviourTable;

/// Iterates the weight recurrence with every concatenation canonicalized
/// immediately (concatenation order is kept, which matters in the
/// left-absorbing mode). Stops once a full iteration changes nothing, or at
/// the cap, in which case the table is flagged truncated.
BehaviourTable saturate(const AnnotatedTBox& tbox, SemiringMode mode,
                        std::optional<int> max_iterations = {},
                        std::size_t monomial_budget = 4u << 20);

/// The saturation engine's view of the iterated weight functions: canonical
/// monomial sets per state and iteration. Sets grow monotonically with the
/// iteration index; in a stabilized table the final two iterations are equal.
class BehaviourTable {
 public:
  BehaviourTable() = default;

  int iterations() const;     // largest stored iteration index
  int stabilized_at() const;  // first iteration whose delta was empty
  bool truncated() const;
  SemiringMode mode() const;

  MonomialSet at(int iteration, const WtaState& q) const;
  MonomialSet fixpoint(const WtaState& q) const;
  std::vector<WtaState> tracked_states() const;  // ever-nonempty states

  /// States as columns, iterations as rows, canonical sets as cells.
  std::string to_tsv() const;

 private:
  friend struct BehaviourTableAccess;
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// The stacked automaton mirroring the iterated weights: level-0 components
/// encode exit weights; a level-i+1 component unions a bypass call to its
/// level-i self with one call chain per transition of its state. Only states
/// reachable backwards from the goal are instantiated.
Ara build_ara_stack(const AnnotatedTBox& tbox, const WtaState& goal,
                    int iterations);

/// Stack rooted at the goal's component at the stabilization height reported
/// by saturate, or at config.max_iterations when set. When the capped
/// saturation did not stabilize, `truncated` (if given) is set.
Ara behaviour_ara(const AnnotatedTBox& tbox, const WtaState& goal,
                  const EngineConfig& config = {}, bool* truncated = nullptr);

struct EntailResult {
  bool entailed = false;
  std::optional<Word> witness_word;
  std::optional<std::vector<Variable>> witness_ordering;
  std::size_t intersection_checks = 0;
  int iterations = 0;
};

/// Caches the saturation tables and component stacks of one TBox so that
/// repeated queries share them. All queries go through immutable state; a
/// Reasoner itself is not synchronized.
class Reasoner {
 public:
  explicit Reasoner(AnnotatedTBox tbox);
  ~Reasoner();
  Reasoner(Reasoner&&) noexcept;
  Reasoner& operator=(Reasoner&&) noexcept;

  const AnnotatedTBox& tbox() const;
  const BehaviourTable& table(SemiringMode mode);
  const Ara& goal_ara(const WtaState& goal, SemiringMode mode);
  Ara behaviour_ara(const WtaState& goal, const EngineConfig& config = {},
                    bool* truncated = nullptr);
  EntailResult entails(const Axiom& goal, const Word& monomial,
                       const EngineConfig& config = {});
  MonomialSet monomials(const Axiom& goal, SemiringMode mode);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

EntailResult entails(const AnnotatedTBox& tbox, const Axiom& goal,
                     const Word& monomial, const EngineConfig& config = {});
MonomialSet monomials(const AnnotatedTBox& tbox, const Axiom& goal,
                      SemiringMode mode);

/// Uncanonicalized iterated weights up to the given depth, extensionally.
/// Exponential by design; a desk-scale oracle for tests.
std::map<WtaState, FiniteLanguage> language_table(const AnnotatedTBox& tbox,
                                                  int depth);

}  // namespace provel
