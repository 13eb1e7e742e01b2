#pragma once

#include <optional>
#include <string>
#include <vector>

#include "provel/nfa.hpp"

namespace provel {

struct SizeLimitError : Error {
  using Error::Error;
};

struct AraComponent {
  Nfa nfa;
  std::string name;  // label used by the DOT/JSON exports, may be empty
};

/// An acyclic recursive automaton: a list of NFAs whose list position is a
/// topological linearization of the call order (component i may only carry
/// triggers targeting j < i), with one designated root whose accepting runs
/// define the language. Component state sets must be pairwise disjoint.
/// Component alphabets are implicit: every base symbol must belong to the
/// shared base alphabet and every trigger must address a lower component.
class Ara {
 public:
  Ara() = default;
  Ara(std::vector<AraComponent> components, std::size_t root,
      std::set<std::string> base_alphabet);

  const std::vector<AraComponent>& components() const { return components_; }
  std::size_t root() const { return root_; }
  const std::set<std::string>& base_alphabet() const { return base_alphabet_; }

  std::size_t total_states() const;
  bool is_well_formed() const { return well_formed_; }

 private:
  std::vector<AraComponent> components_;
  std::size_t root_ = 0;
  std::set<std::string> base_alphabet_;
  bool well_formed_ = false;
};

bool well_formed(const Ara& a);

/// Wraps a single trigger-free NFA as a one-component Ara.
Ara ara_from_nfa(Nfa nfa, std::string name = "");

struct MembershipStats {
  std::size_t memo_cells = 0;  // (component, start position) pairs computed
  std::size_t node_visits = 0;
};

/// Word membership in polynomial time, via a span table indexed by
/// (component, start position) filled on demand in call order.
bool membership(const Ara& a, const Word& w, MembershipStats* stats = nullptr);

/// Flattens to an equivalent NFA by splicing a fresh copy of the callee
/// between the endpoints of every trigger transition, bottom-up. Throws
/// SizeLimitError once the state count would exceed `size_cap`.
Nfa inline_expand(const Ara& a, std::size_t size_cap);

/// New root with n+1 states calling each part once, in order.
Ara ara_concat(const std::vector<Ara>& parts);
/// New root with 2 states nondeterministically calling one of the parts.
Ara ara_union(const std::vector<Ara>& parts);

/// Emptiness of L(a) over the base alphabet intersected with L(nfa).
/// Returns std::nullopt when empty, otherwise a shortest witness word.
/// The nfa must be trigger-free.
std::optional<Word> intersect_empty(const Ara& a, const Nfa& nfa);
/// Decision-only variant of intersect_empty.
bool intersects(const Ara& a, const Nfa& nfa);

/// The n-component family accepting exactly a^(2^n) with 3n states:
/// component 1 reads "aa", component i calls component i-1 twice.
Ara power_family(int n);

std::string to_dot(const Ara& a);
std::string to_json(const Ara& a);
Ara ara_from_json(std::string_view text);

}  // namespace provel
