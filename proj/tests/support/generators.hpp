#pragma once

// Deterministic random instances shared by the test suites.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "provel/ara.hpp"
#include "provel/syntax.hpp"

namespace provel::testing {

inline Concept random_concept(std::mt19937& rng, int n_concepts,
                              bool allow_top = true) {
  std::uniform_int_distribution<int> dist(allow_top ? -1 : 0, n_concepts - 1);
  int pick = dist(rng);
  if (pick < 0) return Concept::top();
  return Concept::named(std::string(1, static_cast<char>('A' + pick)));
}

inline Role random_role(std::mt19937& rng, int n_roles) {
  std::uniform_int_distribution<int> dist(0, n_roles - 1);
  return Role{std::string(1, static_cast<char>('R' + dist(rng)))};
}

/// Random normal-form annotated TBox over at most `n_concepts` concept names
/// and `n_roles` roles, with distinct annotation variables v0, v1, ...
inline AnnotatedTBox random_tbox(std::mt19937& rng, int max_axioms = 8,
                                 int n_concepts = 4, int n_roles = 2) {
  std::uniform_int_distribution<int> count_dist(1, max_axioms);
  std::uniform_int_distribution<int> shape_dist(0, 9);
  const int n = count_dist(rng);
  std::set<Axiom> seen;
  std::vector<TBoxEntry> entries;
  int var = 0;
  for (int guard = 0; static_cast<int>(entries.size()) < n && guard < 20 * n;
       ++guard) {
    Axiom axiom;
    switch (shape_dist(rng)) {
      case 0:
      case 1:
      case 2:
      case 3:
        axiom = AtomicGci{random_concept(rng, n_concepts),
                          random_concept(rng, n_concepts)};
        break;
      case 4:
        axiom = ExistGci{random_concept(rng, n_concepts),
                         random_role(rng, n_roles)};
        break;
      case 5:
      case 6:
        axiom = ConjGci{random_concept(rng, n_concepts),
                        random_concept(rng, n_concepts),
                        random_concept(rng, n_concepts)};
        break;
      case 7:
        axiom = QualExistGci{random_role(rng, n_roles),
                             random_concept(rng, n_concepts),
                             random_concept(rng, n_concepts)};
        break;
      case 8:
        axiom = RangeGci{random_role(rng, n_roles),
                         random_concept(rng, n_concepts)};
        break;
      default:
        axiom = RoleIncl{random_role(rng, n_roles), random_role(rng, n_roles)};
        break;
    }
    if (!seen.insert(axiom).second) continue;
    std::optional<Variable> ann;
    if (std::uniform_int_distribution<int>(0, 9)(rng) != 0)
      ann = "v" + std::to_string(var++);
    entries.push_back({std::move(axiom), std::move(ann)});
  }
  return AnnotatedTBox(std::move(entries));
}

/// Random well-formed Ara over base alphabet {a, b} whose flat expansion
/// stays within 200 states.
inline Ara random_ara(std::mt19937& rng) {
  for (;;) {
    std::uniform_int_distribution<int> comp_dist(1, 4);
    const int n_comps = comp_dist(rng);
    std::vector<AraComponent> comps;
    State next = 0;
    for (int c = 0; c < n_comps; ++c) {
      std::uniform_int_distribution<int> state_dist(1, 4);
      const int n_states = state_dist(rng);
      std::vector<NfaTransition> trans;
      std::uniform_int_distribution<int> edge_dist(0, 5);
      const int n_edges = edge_dist(rng);
      std::uniform_int_distribution<State> st(next, next + n_states - 1);
      for (int e = 0; e < n_edges; ++e) {
        Symbol sym = Symbol::base(std::uniform_int_distribution<int>(0, 1)(rng)
                                      ? "a"
                                      : "b");
        if (c > 0 && std::uniform_int_distribution<int>(0, 2)(rng) == 0)
          sym = Symbol::call(static_cast<std::size_t>(
              std::uniform_int_distribution<int>(0, c - 1)(rng)));
        trans.push_back({st(rng), std::move(sym), st(rng)});
      }
      std::vector<State> initial{st(rng)};
      std::vector<State> accepting{st(rng)};
      if (std::uniform_int_distribution<int>(0, 1)(rng))
        accepting.push_back(st(rng));
      Nfa nfa = make_nfa(next, n_states, std::move(trans), std::move(initial),
                         std::move(accepting));
      next += n_states;
      comps.push_back({std::move(nfa), "G" + std::to_string(c)});
    }
    Ara ara(std::move(comps), static_cast<std::size_t>(n_comps - 1),
            {"a", "b"});
    if (!ara.is_well_formed()) continue;
    try {
      (void)inline_expand(ara, 200);
    } catch (const SizeLimitError&) {
      continue;
    }
    return ara;
  }
}

/// All words of length <= max_len over the given symbols.
inline std::vector<Word> all_words(const std::vector<Variable>& symbols,
                                   int max_len) {
  std::vector<Word> out{Word{}};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& s : symbols) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace provel::testing
