#include "provel/nfa.hpp"

#include <algorithm>
#include <sstream>

namespace provel {

namespace {

bool contains(const std::vector<State>& v, State s) {
  return std::binary_search(v.begin(), v.end(), s);
}

}  // namespace

bool Nfa::valid() const {
  if (!std::is_sorted(states.begin(), states.end()) ||
      std::adjacent_find(states.begin(), states.end()) != states.end())
    return false;
  for (const auto& t : transitions)
    if (!contains(states, t.from) || !contains(states, t.to)) return false;
  for (State s : initial)
    if (!contains(states, s)) return false;
  for (State s : accepting)
    if (!contains(states, s)) return false;
  return true;
}

Nfa make_nfa(State first, std::size_t n, std::vector<NfaTransition> transitions,
             std::vector<State> initial, std::vector<State> accepting) {
  Nfa nfa;
  nfa.states.resize(n);
  for (std::size_t i = 0; i < n; ++i) nfa.states[i] = first + static_cast<State>(i);
  nfa.transitions = std::move(transitions);
  nfa.initial = std::move(initial);
  nfa.accepting = std::move(accepting);
  std::sort(nfa.initial.begin(), nfa.initial.end());
  std::sort(nfa.accepting.begin(), nfa.accepting.end());
  return nfa;
}

bool accepts(const Nfa& nfa, const Word& w) {
  std::set<State> frontier(nfa.initial.begin(), nfa.initial.end());
  for (const auto& v : w) {
    if (frontier.empty()) return false;
    std::set<State> next;
    for (const auto& t : nfa.transitions) {
      if (!t.sym.is_call() && t.sym.base_name() == v && frontier.count(t.from))
        next.insert(t.to);
    }
    frontier = std::move(next);
  }
  for (State s : frontier)
    if (contains(nfa.accepting, s)) return true;
  return false;
}

Nfa ordered_language_nfa(const std::vector<Variable>& ordering) {
  std::set<Variable> distinct(ordering.begin(), ordering.end());
  if (distinct.size() != ordering.size())
    throw Error("ordered language requires distinct symbols");

  const auto k = static_cast<State>(ordering.size());
  std::vector<NfaTransition> trans;
  for (State j = 0; j < k; ++j) {
    // advance on the next fresh symbol, self-loops on everything seen so far
    trans.push_back({j, Symbol::base(ordering[j]), j + 1});
    for (State i = 0; i <= j; ++i)
      trans.push_back({j + 1, Symbol::base(ordering[i]), j + 1});
  }
  return make_nfa(0, k + 1, std::move(trans), {0}, {k});
}

std::set<Symbol> symbols(const Nfa& nfa) {
  std::set<Symbol> out;
  for (const auto& t : nfa.transitions) out.insert(t.sym);
  return out;
}

std::string to_dot(const Nfa& nfa) {
  std::ostringstream os;
  os << "digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (State s : nfa.accepting) os << "  " << s << " [shape=doublecircle];\n";
  for (std::size_t i = 0; i < nfa.initial.size(); ++i) {
    os << "  start" << i << " [shape=point];\n";
    os << "  start" << i << " -> " << nfa.initial[i] << ";\n";
  }
  for (State s : nfa.states) os << "  " << s << ";\n";
  for (const auto& t : nfa.transitions) {
    os << "  " << t.from << " -> " << t.to << " [label=\"" << t.sym.to_string()
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace provel
