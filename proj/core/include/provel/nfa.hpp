#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "provel/semiring.hpp"
#include "provel/syntax.hpp"  // Error

namespace provel {

using State = std::uint32_t;

/// A transition label: either a base symbol (a provenance variable) or a
/// call trigger addressing another automaton of an Ara by index. Triggers
/// are structural, never lexical, so base alphabets may contain any name.
class Symbol {
 public:
  static Symbol base(std::string name) { return Symbol{std::move(name)}; }
  static Symbol call(std::size_t target) { return Symbol{target}; }

  bool is_call() const { return repr_.index() == 1; }
  const std::string& base_name() const { return std::get<0>(repr_); }
  std::size_t call_target() const { return std::get<1>(repr_); }

  std::string to_string() const {
    return is_call() ? "call:" + std::to_string(call_target()) : base_name();
  }

  auto operator<=>(const Symbol&) const = default;

 private:
  explicit Symbol(std::string name) : repr_(std::move(name)) {}
  explicit Symbol(std::size_t target) : repr_(target) {}
  std::variant<std::string, std::size_t> repr_;
};

struct NfaTransition {
  State from;
  Symbol sym;
  State to;
  auto operator<=>(const NfaTransition&) const = default;
};

/// Plain nondeterministic finite automaton without epsilon transitions.
/// State ids are explicit so that the automata of an Ara can keep pairwise
/// disjoint state sets; builders allocate them densely.
struct Nfa {
  std::vector<State> states;  // sorted, unique
  std::vector<NfaTransition> transitions;
  std::vector<State> initial;       // subset of states
  std::vector<State> accepting;     // subset of states

  std::size_t num_states() const { return states.size(); }
  bool valid() const;  // transitions/initial/accepting reference declared states
};

/// Convenience builder: n dense states first..first+n-1.
Nfa make_nfa(State first, std::size_t n, std::vector<NfaTransition> transitions,
             std::vector<State> initial, std::vector<State> accepting);

/// Standard NFA acceptance over base symbols. Symbols outside the
/// automaton's alphabet simply fail to match.
bool accepts(const Nfa& nfa, const Word& w);

/// The automaton of words whose symbols all come from `ordering` and whose
/// first occurrences respect it: sigma1+ sigma2 (sigma1|sigma2)* ... For an
/// empty ordering it accepts exactly the empty word.
Nfa ordered_language_nfa(const std::vector<Variable>& ordering);

std::set<Symbol> symbols(const Nfa& nfa);

std::string to_dot(const Nfa& nfa);

}  // namespace provel
