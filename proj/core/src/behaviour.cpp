#include "provel/behaviour.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <unordered_set>
#include <sstream>

#include "ara_internal.hpp"

namespace provel {

namespace {

using SymId = std::uint32_t;
using IWord = std::vector<SymId>;  // canonical, symbols interned in lex order

struct IWordHash {
  std::size_t operator()(const IWord& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (SymId s : w) h = (h ^ s) * 1099511628211ull;
    return h;
  }
};
using IWordSet = std::unordered_set<IWord, IWordHash>;

Axiom mk_at(Concept a, Concept b) { return AtomicGci{std::move(a), std::move(b)}; }
Axiom mk_ex(Concept a, Role r) { return ExistGci{std::move(a), std::move(r)}; }
Axiom mk_rr(Role r, Concept a) { return RangeGci{std::move(r), std::move(a)}; }
Axiom mk_ri(Role r, Role s) { return RoleIncl{std::move(r), std::move(s)}; }

void concat_canonical_into(const IWord& a, const IWord& b, SemiringMode mode,
                           IWord& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  if (mode == SemiringMode::trio_commutative) {
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
  } else {
    out.assign(a.begin(), a.end());
    for (SymId s : b)
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
}

// ---------------------------------------------------------------------------
// Derivability closure: the boolean shadow of the weight fixpoint. A state is
// productive iff its limit language is non-empty.

struct Facts {
  std::map<Concept, std::set<Concept>> at_by_lhs;
  std::map<Concept, std::set<Role>> ex_by_lhs;
  std::map<Role, std::set<Concept>> ex_by_role;
  std::map<Role, std::set<Concept>> ran_by_role;
  std::map<Role, std::set<Role>> ri_by_sub;

  bool has_at(const Concept& a, const Concept& b) const {
    auto it = at_by_lhs.find(a);
    return it != at_by_lhs.end() && it->second.count(b);
  }
  bool has_ex(const Concept& a, const Role& r) const {
    auto it = ex_by_lhs.find(a);
    return it != ex_by_lhs.end() && it->second.count(r);
  }
  bool has_ran(const Role& r, const Concept& a) const {
    auto it = ran_by_role.find(r);
    return it != ran_by_role.end() && it->second.count(a);
  }
  bool has_ri(const Role& r, const Role& s) const {
    auto it = ri_by_sub.find(r);
    return it != ri_by_sub.end() && it->second.count(s);
  }
  bool add_at(const Concept& a, const Concept& b) {
    return at_by_lhs[a].insert(b).second;
  }
  bool add_ex(const Concept& a, const Role& r) {
    bool fresh = ex_by_lhs[a].insert(r).second;
    if (fresh) ex_by_role[r].insert(a);
    return fresh;
  }
  bool add_ran(const Role& r, const Concept& a) {
    return ran_by_role[r].insert(a).second;
  }
  bool add_ri(const Role& r, const Role& s) {
    return ri_by_sub[r].insert(s).second;
  }
};

struct TBoxLeaves {
  std::vector<ConjGci> conj;
  std::vector<QualExistGci> qexist;
};

Facts productive_closure(const AnnotatedTBox& tbox, const TBoxLeaves& leaves) {
  Facts f;
  std::vector<Concept> concepts{Concept::top()};
  for (const auto& name : tbox.signature().concepts)
    concepts.push_back(Concept::named(name));

  for (const auto& c : concepts) {
    f.add_at(c, c);
    f.add_at(c, Concept::top());
  }
  for (const auto& e : tbox.entries()) {
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, AtomicGci>) f.add_at(a.lhs, a.rhs);
          if constexpr (std::is_same_v<T, ExistGci>) f.add_ex(a.lhs, a.role);
          if constexpr (std::is_same_v<T, RangeGci>) f.add_ran(a.role, a.rhs);
          if constexpr (std::is_same_v<T, RoleIncl>) f.add_ri(a.sub, a.sup);
        },
        e.axiom);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    // role-inclusion transitivity
    for (const auto& [r1, sups] : f.ri_by_sub) {
      std::vector<Role> add;
      for (const auto& r2 : sups) {
        auto it = f.ri_by_sub.find(r2);
        if (it == f.ri_by_sub.end()) continue;
        for (const auto& r3 : it->second)
          if (!f.has_ri(r1, r3)) add.push_back(r3);
      }
      for (const auto& r3 : add) changed |= f.add_ri(r1, r3);
    }
    // range along a role inclusion
    for (const auto& [r, sups] : f.ri_by_sub) {
      std::vector<Concept> add;
      for (const auto& s : sups) {
        auto it = f.ran_by_role.find(s);
        if (it == f.ran_by_role.end()) continue;
        for (const auto& a : it->second)
          if (!f.has_ran(r, a)) add.push_back(a);
      }
      for (const auto& a : add) changed |= f.add_ran(r, a);
    }
    // existential along a role inclusion; existential along a subsumption
    for (const auto& c : concepts) {
      std::vector<Role> add;
      auto eit = f.ex_by_lhs.find(c);
      if (eit != f.ex_by_lhs.end()) {
        for (const auto& r : eit->second) {
          auto rit = f.ri_by_sub.find(r);
          if (rit == f.ri_by_sub.end()) continue;
          for (const auto& s : rit->second)
            if (!f.has_ex(c, s)) add.push_back(s);
        }
      }
      auto ait = f.at_by_lhs.find(c);
      if (ait != f.at_by_lhs.end()) {
        for (const auto& b : ait->second) {
          auto bit = f.ex_by_lhs.find(b);
          if (bit == f.ex_by_lhs.end()) continue;
          for (const auto& r : bit->second)
            if (!f.has_ex(c, r)) add.push_back(r);
        }
      }
      for (const auto& r : add) changed |= f.add_ex(c, r);
    }
    // subsumption transitivity
    for (const auto& a : concepts) {
      std::vector<Concept> add;
      auto ait = f.at_by_lhs.find(a);
      if (ait != f.at_by_lhs.end()) {
        for (const auto& b : ait->second) {
          auto bit = f.at_by_lhs.find(b);
          if (bit == f.at_by_lhs.end()) continue;
          for (const auto& c : bit->second)
            if (!f.has_at(a, c)) add.push_back(c);
        }
      }
      for (const auto& c : add) changed |= f.add_at(a, c);
    }
    // conjunctive premises
    for (const auto& cj : leaves.conj) {
      for (const auto& a : concepts)
        if (f.has_at(a, cj.left) && f.has_at(a, cj.right) &&
            !f.has_at(a, cj.rhs))
          changed |= f.add_at(a, cj.rhs);
      if (f.has_at(Concept::top(), cj.right) && !f.has_at(cj.left, cj.rhs))
        changed |= f.add_at(cj.left, cj.rhs);
      if (f.has_at(Concept::top(), cj.left) && !f.has_at(cj.right, cj.rhs))
        changed |= f.add_at(cj.right, cj.rhs);
      for (const auto& [r, rans] : f.ran_by_role) {
        bool left_ok = false, right_ok = false;
        for (const auto& b : rans) {
          left_ok |= f.has_at(b, cj.left);
          right_ok |= f.has_at(b, cj.right);
        }
        if (left_ok && right_ok && !f.has_ran(r, cj.rhs))
          changed |= f.add_ran(r, cj.rhs);
      }
    }
    // qualified existential premises
    for (const auto& qe : leaves.qexist) {
      // via the range of a subrole
      for (const auto& [s, lhss] : f.ex_by_role) {
        if (!f.has_ri(s, qe.role)) continue;
        auto rit = f.ran_by_role.find(s);
        if (rit == f.ran_by_role.end()) continue;
        bool filler_ok = false;
        for (const auto& b : rit->second)
          if (f.has_at(b, qe.filler)) filler_ok = true;
        if (!filler_ok) continue;
        for (const auto& a : lhss)
          if (!f.has_at(a, qe.rhs)) changed |= f.add_at(a, qe.rhs);
      }
      // via a top-subsumed filler
      if (f.has_at(Concept::top(), qe.filler)) {
        auto it = f.ex_by_role.find(qe.role);
        if (it != f.ex_by_role.end())
          for (const auto& a : it->second)
            if (!f.has_at(a, qe.rhs)) changed |= f.add_at(a, qe.rhs);
      }
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Core: productive state space, exit weights, and per-head call chains (the
// non-padding children of each productive transition, in child order).

struct Core {
  AnnotatedTBox tbox;
  TBoxLeaves leaves;
  Facts facts;

  std::vector<Axiom> axioms;  // productive states, sorted
  std::map<Axiom, std::uint32_t> ids;

  enum class ExitKind : std::uint8_t { empty, eps, var };
  std::vector<ExitKind> exit_kind;
  std::vector<SymId> exit_sym;

  std::vector<std::string> sym_names;  // lexicographic id order
  std::map<std::string, SymId> sym_ids;

  std::vector<std::vector<std::vector<std::uint32_t>>> chains;  // by head id

  explicit Core(AnnotatedTBox t) : tbox(std::move(t)) {
    for (const auto& e : tbox.entries()) {
      if (const auto* c = std::get_if<ConjGci>(&e.axiom))
        leaves.conj.push_back(*c);
      if (const auto* q = std::get_if<QualExistGci>(&e.axiom))
        leaves.qexist.push_back(*q);
    }
    facts = productive_closure(tbox, leaves);

    std::set<Axiom> all;
    for (const auto& [a, bs] : facts.at_by_lhs)
      for (const auto& b : bs) all.insert(mk_at(a, b));
    for (const auto& [a, rs] : facts.ex_by_lhs)
      for (const auto& r : rs) all.insert(mk_ex(a, r));
    for (const auto& [r, as] : facts.ran_by_role)
      for (const auto& a : as) all.insert(mk_rr(r, a));
    for (const auto& [r, ss] : facts.ri_by_sub)
      for (const auto& s : ss) all.insert(mk_ri(r, s));
    for (const auto& c : leaves.conj) all.insert(Axiom{c});
    for (const auto& q : leaves.qexist) all.insert(Axiom{q});

    axioms.assign(all.begin(), all.end());
    for (std::uint32_t i = 0; i < axioms.size(); ++i) ids.emplace(axioms[i], i);

    for (const auto& v : tbox.signature().variables) {
      sym_ids.emplace(v, static_cast<SymId>(sym_names.size()));
      sym_names.push_back(v);
    }

    exit_kind.assign(axioms.size(), ExitKind::empty);
    exit_sym.assign(axioms.size(), 0);
    for (std::uint32_t i = 0; i < axioms.size(); ++i) {
      const Axiom& ax = axioms[i];
      if (const auto* ann = tbox.find_annotation(ax)) {
        if (*ann) {
          exit_kind[i] = ExitKind::var;
          exit_sym[i] = sym_ids.at(**ann);
        } else {
          exit_kind[i] = ExitKind::eps;
        }
        continue;
      }
      if (const auto* a = std::get_if<AtomicGci>(&ax))
        if (a->lhs == a->rhs || a->rhs.is_top()) exit_kind[i] = ExitKind::eps;
    }

    build_chains();
  }

  std::optional<std::uint32_t> id_of(const Axiom& a) const {
    auto it = ids.find(a);
    if (it == ids.end()) return std::nullopt;
    return it->second;
  }

 private:
  void build_chains() {
    chains.resize(axioms.size());
    for (std::uint32_t h = 0; h < axioms.size(); ++h) {
      std::set<std::vector<std::uint32_t>> cs;
      auto cid = [&](const Axiom& a) { return ids.at(a); };
      const Axiom& head = axioms[h];

      if (const auto* a = std::get_if<AtomicGci>(&head)) {
        if (auto it = facts.at_by_lhs.find(a->lhs); it != facts.at_by_lhs.end())
          for (const auto& b : it->second)
            if (facts.has_at(b, a->rhs))
              cs.insert({cid(mk_at(a->lhs, b)), cid(mk_at(b, a->rhs))});
        for (const auto& cj : leaves.conj) {
          if (!(cj.rhs == a->rhs)) continue;
          if (facts.has_at(a->lhs, cj.left) && facts.has_at(a->lhs, cj.right))
            cs.insert({cid(mk_at(a->lhs, cj.left)), cid(mk_at(a->lhs, cj.right)),
                       cid(Axiom{cj})});
          if (cj.left == a->lhs && facts.has_at(Concept::top(), cj.right))
            cs.insert({cid(Axiom{cj}), cid(mk_at(Concept::top(), cj.right))});
          if (cj.right == a->lhs && facts.has_at(Concept::top(), cj.left))
            cs.insert({cid(Axiom{cj}), cid(mk_at(Concept::top(), cj.left))});
        }
        for (const auto& qe : leaves.qexist) {
          if (!(qe.rhs == a->rhs)) continue;
          if (facts.has_ex(a->lhs, qe.role) &&
              facts.has_at(Concept::top(), qe.filler))
            cs.insert({cid(mk_ex(a->lhs, qe.role)),
                       cid(mk_at(Concept::top(), qe.filler)), cid(Axiom{qe})});
          for (const auto& [s, sups] : facts.ri_by_sub) {
            if (!sups.count(qe.role) || !facts.has_ex(a->lhs, s)) continue;
            auto rit = facts.ran_by_role.find(s);
            if (rit == facts.ran_by_role.end()) continue;
            for (const auto& b : rit->second)
              if (facts.has_at(b, qe.filler))
                cs.insert({cid(mk_ex(a->lhs, s)), cid(mk_rr(s, b)),
                           cid(mk_at(b, qe.filler)), cid(mk_ri(s, qe.role)),
                           cid(Axiom{qe})});
          }
        }
      } else if (const auto* e = std::get_if<ExistGci>(&head)) {
        if (auto it = facts.ex_by_lhs.find(e->lhs); it != facts.ex_by_lhs.end())
          for (const auto& r : it->second)
            if (facts.has_ri(r, e->role))
              cs.insert({cid(mk_ex(e->lhs, r)), cid(mk_ri(r, e->role))});
        if (auto it = facts.at_by_lhs.find(e->lhs); it != facts.at_by_lhs.end())
          for (const auto& b : it->second)
            if (facts.has_ex(b, e->role))
              cs.insert({cid(mk_at(e->lhs, b)), cid(mk_ex(b, e->role))});
      } else if (const auto* r = std::get_if<RangeGci>(&head)) {
        if (auto it = facts.ri_by_sub.find(r->role); it != facts.ri_by_sub.end())
          for (const auto& s : it->second)
            if (facts.has_ran(s, r->rhs))
              cs.insert({cid(mk_ri(r->role, s)), cid(mk_rr(s, r->rhs))});
        for (const auto& cj : leaves.conj) {
          if (!(cj.rhs == r->rhs)) continue;
          auto rit = facts.ran_by_role.find(r->role);
          if (rit == facts.ran_by_role.end()) continue;
          for (const auto& b1 : rit->second) {
            if (!facts.has_at(b1, cj.left)) continue;
            for (const auto& b2 : rit->second)
              if (facts.has_at(b2, cj.right))
                cs.insert({cid(mk_rr(r->role, b1)), cid(mk_rr(r->role, b2)),
                           cid(mk_at(b1, cj.left)), cid(mk_at(b2, cj.right)),
                           cid(Axiom{cj})});
          }
        }
      } else if (const auto* ri = std::get_if<RoleIncl>(&head)) {
        if (auto it = facts.ri_by_sub.find(ri->sub); it != facts.ri_by_sub.end())
          for (const auto& r2 : it->second)
            if (facts.has_ri(r2, ri->sup))
              cs.insert({cid(mk_ri(ri->sub, r2)), cid(mk_ri(r2, ri->sup))});
      }
      chains[h].assign(cs.begin(), cs.end());
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Saturation

struct BehaviourTable::Impl {
  SemiringMode mode = SemiringMode::trio_commutative;
  std::vector<std::string> sym_names;
  std::vector<Axiom> axioms;
  std::map<Axiom, std::uint32_t> ids;
  std::vector<Axiom> tbox_order;  // entry order, for the TSV layout
  // per iteration: (state, additions), states ascending
  std::vector<std::vector<std::pair<std::uint32_t, std::vector<IWord>>>> deltas;
  int stabilized = -1;
  bool truncated = false;

  MonomialSet set_at(int iteration, std::uint32_t state) const {
    MonomialSet out;
    int last = std::min<int>(iteration, static_cast<int>(deltas.size()) - 1);
    for (int i = 0; i <= last; ++i) {
      auto it = std::lower_bound(
          deltas[i].begin(), deltas[i].end(), state,
          [](const auto& p, std::uint32_t s) { return p.first < s; });
      if (it == deltas[i].end() || it->first != state) continue;
      for (const IWord& w : it->second) {
        Monomial m;
        m.mode = mode;
        for (SymId s : w) m.canonical.push_back(sym_names[s]);
        out.insert(std::move(m));
      }
    }
    return out;
  }
};

struct BehaviourTableAccess {
  static std::shared_ptr<BehaviourTable::Impl> run_saturation(
      const Core& core, SemiringMode mode, std::optional<int> cap,
      std::size_t budget);
  static BehaviourTable wrap(std::shared_ptr<const BehaviourTable::Impl> impl) {
    BehaviourTable t;
    t.impl_ = std::move(impl);
    return t;
  }
  template <typename Ops>
  static void saturation_loop(const Core& core, SemiringMode mode,
                              std::optional<int> cap, std::size_t budget,
                              Ops ops, BehaviourTable::Impl* impl);
};

// Word representation policies for the saturation loop. With at most 64
// provenance variables a commutative canonical monomial is a plain bitmask,
// which keeps the product enumeration cheap; everything else falls back to
// interned vectors.
struct MaskOps {
  using W = std::uint64_t;
  using Set = std::unordered_set<std::uint64_t>;

  explicit MaskOps(const Core& core) : n_syms(core.sym_names.size()) {}

  W exit_eps() const { return 0; }
  W exit_var(SymId s) const { return std::uint64_t{1} << s; }
  W fold(const std::vector<const W*>& pick, SemiringMode) const {
    W acc = 0;
    for (const W* w : pick) acc |= *w;
    return acc;
  }
  IWord to_iword(W m) const {
    IWord out;
    for (SymId s = 0; s < n_syms; ++s)
      if ((m >> s) & 1u) out.push_back(s);
    return out;
  }
  std::size_t n_syms;
};

struct VecOps {
  using W = IWord;
  using Set = IWordSet;

  explicit VecOps(const Core&) {}

  W exit_eps() const { return {}; }
  W exit_var(SymId s) const { return {s}; }
  const W& fold(const std::vector<const W*>& pick, SemiringMode mode) {
    const W* acc = pick[0];
    if (scratch.size() < pick.size()) scratch.resize(pick.size());
    for (std::size_t i = 1; i < pick.size(); ++i) {
      concat_canonical_into(*acc, *pick[i], mode, scratch[i]);
      acc = &scratch[i];
    }
    return *acc;
  }
  IWord to_iword(W w) const { return w; }
  std::vector<IWord> scratch;
};

template <typename Ops>
void BehaviourTableAccess::saturation_loop(const Core& core, SemiringMode mode,
                                           std::optional<int> cap,
                                           std::size_t budget, Ops ops,
                                           BehaviourTable::Impl* impl) {
  using W = typename Ops::W;
  const std::size_t n = core.axioms.size();
  std::vector<typename Ops::Set> current(n);
  std::vector<std::vector<W>> last_delta(n);
  std::size_t total = 0;

  auto record = [&](std::vector<typename Ops::Set>& added) {
    std::vector<std::pair<std::uint32_t, std::vector<IWord>>> d;
    for (std::uint32_t s = 0; s < n; ++s) {
      last_delta[s].assign(added[s].begin(), added[s].end());
      if (added[s].empty()) continue;
      total += added[s].size();
      std::vector<IWord> words;
      words.reserve(added[s].size());
      for (const auto& w : added[s]) {
        current[s].insert(w);
        words.push_back(ops.to_iword(w));
      }
      std::sort(words.begin(), words.end());
      d.emplace_back(s, std::move(words));
    }
    if (total > budget)
      throw SizeLimitError(
          "saturation exceeded the monomial budget of " + std::to_string(budget) +
          "; the canonical sets are growing exponentially");
    impl->deltas.push_back(std::move(d));
  };

  {
    std::vector<typename Ops::Set> seed(n);
    for (std::uint32_t s = 0; s < n; ++s) {
      if (core.exit_kind[s] == Core::ExitKind::eps)
        seed[s].insert(ops.exit_eps());
      if (core.exit_kind[s] == Core::ExitKind::var)
        seed[s].insert(ops.exit_var(core.exit_sym[s]));
    }
    record(seed);
  }

  std::vector<const W*> pick;
  for (int iter = 1; !cap || iter <= *cap; ++iter) {
    std::vector<typename Ops::Set> added(n);
    // combine children sets left to right; at least one factor must come
    // from the previous delta, everything older was already combined
    for (std::uint32_t h = 0; h < n; ++h) {
      for (const auto& chain : core.chains[h]) {
        const std::size_t k = chain.size();
        bool all_nonempty = true;
        for (auto c : chain) all_nonempty &= !current[c].empty();
        if (!all_nonempty) continue;
        for (std::size_t dj = 0; dj < k; ++dj) {
          if (last_delta[chain[dj]].empty()) continue;
          pick.assign(k, nullptr);
          auto descend = [&](auto&& self, std::size_t pos) -> void {
            if (pos == k) {
              const auto& w = ops.fold(pick, mode);
              if (!current[h].count(w)) added[h].insert(w);
              return;
            }
            if (pos == dj) {
              for (const W& w : last_delta[chain[pos]]) {
                pick[pos] = &w;
                self(self, pos + 1);
              }
            } else {
              for (const W& w : current[chain[pos]]) {
                pick[pos] = &w;
                self(self, pos + 1);
              }
            }
          };
          descend(descend, 0);
        }
      }
    }
    bool empty = true;
    for (const auto& s : added) empty &= s.empty();
    record(added);
    if (empty) {
      impl->stabilized = iter;
      break;
    }
  }
  if (impl->stabilized < 0) impl->truncated = true;
}

std::shared_ptr<BehaviourTable::Impl> BehaviourTableAccess::run_saturation(
    const Core& core, SemiringMode mode, std::optional<int> cap,
    std::size_t budget) {
  auto impl = std::make_shared<BehaviourTable::Impl>();
  impl->mode = mode;
  impl->sym_names = core.sym_names;
  impl->axioms = core.axioms;
  impl->ids = core.ids;
  for (const auto& e : core.tbox.entries()) impl->tbox_order.push_back(e.axiom);

  if (mode == SemiringMode::trio_commutative && core.sym_names.size() <= 64) {
    saturation_loop(core, mode, cap, budget, MaskOps(core), impl.get());
  } else {
    saturation_loop(core, mode, cap, budget, VecOps(core), impl.get());
  }
  return impl;
}

BehaviourTable saturate(const AnnotatedTBox& tbox, SemiringMode mode,
                        std::optional<int> max_iterations,
                        std::size_t monomial_budget) {
  Core core(tbox);
  return BehaviourTableAccess::wrap(BehaviourTableAccess::run_saturation(
      core, mode, max_iterations, monomial_budget));
}

int BehaviourTable::iterations() const {
  return impl_ ? static_cast<int>(impl_->deltas.size()) - 1 : -1;
}
int BehaviourTable::stabilized_at() const { return impl_ ? impl_->stabilized : -1; }
bool BehaviourTable::truncated() const { return impl_ && impl_->truncated; }
SemiringMode BehaviourTable::mode() const {
  return impl_ ? impl_->mode : SemiringMode::trio_commutative;
}

MonomialSet BehaviourTable::at(int iteration, const WtaState& q) const {
  if (!impl_) return {};
  if (iteration < 0) throw Error("behaviour table: negative iteration");
  if (is_pad(q)) return {Monomial{{}, impl_->mode}};
  auto it = impl_->ids.find(std::get<Axiom>(q));
  if (it == impl_->ids.end()) return {};
  return impl_->set_at(iteration, it->second);
}

MonomialSet BehaviourTable::fixpoint(const WtaState& q) const {
  return at(std::max(iterations(), 0), q);
}

std::vector<WtaState> BehaviourTable::tracked_states() const {
  if (!impl_) return {};
  std::set<std::uint32_t> nonempty;
  for (const auto& d : impl_->deltas)
    for (const auto& [s, ws] : d)
      if (!ws.empty()) nonempty.insert(s);
  std::vector<WtaState> out;
  out.emplace_back(Pad{});
  std::set<Axiom> emitted;
  for (const auto& ax : impl_->tbox_order) {
    auto it = impl_->ids.find(ax);
    if (it != impl_->ids.end() && nonempty.count(it->second) &&
        emitted.insert(ax).second)
      out.emplace_back(ax);
  }
  for (auto s : nonempty)
    if (emitted.insert(impl_->axioms[s]).second)
      out.emplace_back(impl_->axioms[s]);
  return out;
}

std::string BehaviourTable::to_tsv() const {
  std::ostringstream os;
  auto states = tracked_states();
  os << "iteration";
  for (const auto& q : states) os << '\t' << to_string(q);
  os << '\n';
  for (int i = 0; i <= iterations(); ++i) {
    os << "wt_" << i;
    for (const auto& q : states) {
      os << '\t' << '{';
      bool first = true;
      for (const auto& m : at(i, q)) {
        if (!first) os << ", ";
        first = false;
        os << render_monomial(m);
      }
      os << '}';
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Stack construction

namespace {

Ara trim_to_root(std::vector<AraComponent> comps, std::size_t root,
                 std::set<std::string> base) {
  std::vector<char> keep(comps.size(), 0);
  std::deque<std::size_t> queue{root};
  keep[root] = 1;
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& t : comps[i].nfa.transitions) {
      if (!t.sym.is_call()) continue;
      std::size_t j = t.sym.call_target();
      if (!keep[j]) {
        keep[j] = 1;
        queue.push_back(j);
      }
    }
  }
  std::vector<std::size_t> remap(comps.size());
  std::vector<AraComponent> kept;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!keep[i]) continue;
    remap[i] = kept.size();
    kept.push_back(std::move(comps[i]));
  }
  for (auto& c : kept)
    for (auto& t : c.nfa.transitions)
      if (t.sym.is_call()) t.sym = Symbol::call(remap[t.sym.call_target()]);
  return Ara(std::move(kept), remap[root], std::move(base));
}

Ara build_stack(const Core& core, const WtaState& goal, int iterations) {
  if (iterations < 0) throw Error("ara stack: negative iteration count");
  if (is_pad(goal)) throw Error("ara stack: the padding state is not a goal");
  std::set<std::string> base = core.tbox.signature().variables;
  const Axiom& goal_axiom = std::get<Axiom>(goal);
  auto goal_id = core.id_of(goal_axiom);
  std::string goal_label =
      "A" + std::to_string(iterations) + "[" + to_string(goal_axiom) + "]";
  if (!goal_id) {
    // nothing is derivable for this state; a two-state empty component
    Nfa nfa = make_nfa(0, 2, {}, {0}, {1});
    return Ara({{std::move(nfa), std::move(goal_label)}}, 0, std::move(base));
  }

  // states reachable backwards from the goal through productive transitions
  std::set<std::uint32_t> reach{*goal_id};
  std::deque<std::uint32_t> queue{*goal_id};
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (const auto& chain : core.chains[s])
      for (auto c : chain)
        if (reach.insert(c).second) queue.push_back(c);
  }
  std::vector<std::uint32_t> rstates(reach.begin(), reach.end());
  std::map<std::uint32_t, std::size_t> pos;
  for (std::size_t i = 0; i < rstates.size(); ++i) pos.emplace(rstates[i], i);
  auto comp_index = [&](int level, std::uint32_t state) {
    return static_cast<std::size_t>(level) * rstates.size() + pos.at(state);
  };

  std::vector<AraComponent> comps;
  comps.reserve(static_cast<std::size_t>(iterations + 1) * rstates.size());
  State next_state = 0;
  for (int level = 0; level <= iterations; ++level) {
    for (auto sid : rstates) {
      std::string name =
          "A" + std::to_string(level) + "[" + to_string(core.axioms[sid]) + "]";
      if (level == 0) {
        Nfa nfa;
        switch (core.exit_kind[sid]) {
          case Core::ExitKind::var:
            nfa = make_nfa(next_state, 2,
                           {{next_state,
                             Symbol::base(core.sym_names[core.exit_sym[sid]]),
                             next_state + 1}},
                           {next_state}, {next_state + 1});
            next_state += 2;
            break;
          case Core::ExitKind::eps:
            nfa = make_nfa(next_state, 1, {}, {next_state}, {next_state});
            next_state += 1;
            break;
          case Core::ExitKind::empty:
            nfa = make_nfa(next_state, 2, {}, {next_state}, {next_state + 1});
            next_state += 2;
            break;
        }
        comps.push_back({std::move(nfa), std::move(name)});
        continue;
      }
      const State s = next_state;
      const State t = next_state + 1;
      State fresh = next_state + 2;
      std::vector<NfaTransition> trans;
      trans.push_back(
          {s, Symbol::call(comp_index(level - 1, sid)), t});  // bypass
      for (const auto& chain : core.chains[sid]) {
        State from = s;
        for (std::size_t i = 0; i < chain.size(); ++i) {
          State to = i + 1 == chain.size() ? t : fresh++;
          trans.push_back(
              {from, Symbol::call(comp_index(level - 1, chain[i])), to});
          from = to;
        }
      }
      Nfa nfa = make_nfa(s, fresh - s, std::move(trans), {s}, {t});
      next_state = fresh;
      comps.push_back({std::move(nfa), std::move(name)});
    }
  }
  return trim_to_root(std::move(comps), comp_index(iterations, *goal_id),
                      std::move(base));
}

}  // namespace

Ara build_ara_stack(const AnnotatedTBox& tbox, const WtaState& goal,
                    int iterations) {
  Core core(tbox);
  return build_stack(core, goal, iterations);
}

Ara behaviour_ara(const AnnotatedTBox& tbox, const WtaState& goal,
                  const EngineConfig& config, bool* truncated) {
  BehaviourTable tab = saturate(tbox, config.mode, config.max_iterations,
                                config.monomial_budget);
  if (truncated) *truncated = tab.truncated();
  int n = config.max_iterations ? *config.max_iterations : tab.stabilized_at();
  return build_ara_stack(tbox, goal, n);
}

// ---------------------------------------------------------------------------
// Entailment

namespace {

// Words over `alphabet` whose first occurrences start with `prefix`: the
// ordered-language shape for the prefix followed by a free tail.
Nfa prefix_feasibility_nfa(const std::vector<Variable>& prefix,
                           const std::vector<Variable>& alphabet) {
  const auto j = static_cast<State>(prefix.size());
  std::vector<NfaTransition> trans;
  for (State i = 0; i < j; ++i) {
    trans.push_back({i, Symbol::base(prefix[i]), i + 1});
    for (State l = 0; l <= i; ++l)
      trans.push_back({i + 1, Symbol::base(prefix[l]), i + 1});
  }
  const State free_state = j + 1;
  for (const auto& v : alphabet) {
    if (std::find(prefix.begin(), prefix.end(), v) == prefix.end())
      trans.push_back({j, Symbol::base(v), free_state});
    trans.push_back({free_state, Symbol::base(v), free_state});
  }
  return make_nfa(0, j + 2u, std::move(trans), {0}, {j, free_state});
}

struct GoalAutomaton {
  Ara ara;
  detail::DenseAra dense;
};

struct OrderingSearch {
  OrderingSearch(const detail::DenseAra& d, const std::vector<Variable>& s)
      : dense(d), syms(s) {}

  const detail::DenseAra& dense;
  const std::vector<Variable>& syms;  // lexicographically sorted
  std::size_t checks = 0;
  std::optional<Word> witness;
  std::optional<std::vector<Variable>> ordering;

  std::vector<char> used;
  std::vector<Variable> prefix;

  bool exact() {
    ++checks;
    detail::IntersectScratch sc;
    Nfa nfa = ordered_language_nfa(prefix);
    if (!detail::intersect_summaries(dense, nfa, sc)) return false;
    witness = detail::intersect_witness(dense, nfa, sc);
    ordering = prefix;
    return true;
  }

  bool feasible() {
    ++checks;
    detail::IntersectScratch sc;
    Nfa nfa = prefix_feasibility_nfa(prefix, syms);
    return detail::intersect_summaries(dense, nfa, sc);
  }

  // lexicographic depth-first enumeration of orderings, pruned by prefix
  // feasibility; finds the lexicographically first accepted ordering
  bool dfs() {
    if (prefix.size() == syms.size()) return exact();
    for (std::size_t i = 0; i < syms.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      prefix.push_back(syms[i]);
      bool found = prefix.size() == syms.size() ? exact() : (feasible() && dfs());
      if (found) return true;
      prefix.pop_back();
      used[i] = 0;
    }
    return false;
  }

  bool run() {
    used.assign(syms.size(), 0);
    prefix.clear();
    return dfs();
  }
};

bool goal_in_signature(const Axiom& goal, const Signature& sig) {
  bool ok = true;
  auto check_concept = [&](const Concept& c) {
    if (!c.is_top() && !sig.concepts.count(c.name())) ok = false;
  };
  if (const auto* a = std::get_if<AtomicGci>(&goal)) {
    check_concept(a->lhs);
    check_concept(a->rhs);
  } else if (const auto* e = std::get_if<ExistGci>(&goal)) {
    check_concept(e->lhs);
    if (!sig.roles.count(e->role.name)) ok = false;
  }
  return ok;
}

bool is_valid_inclusion(const Axiom& goal) {
  const auto* a = std::get_if<AtomicGci>(&goal);
  return a && (a->lhs == a->rhs || a->rhs.is_top());
}

}  // namespace

struct Reasoner::Impl {
  AnnotatedTBox tbox;
  Core core;
  std::map<SemiringMode, BehaviourTable> tables;
  std::map<std::pair<int, Axiom>, std::shared_ptr<GoalAutomaton>> goal_aras;

  explicit Impl(AnnotatedTBox t) : tbox(t), core(std::move(t)) {}

  const BehaviourTable& table_for(SemiringMode mode, std::size_t budget) {
    auto it = tables.find(mode);
    if (it == tables.end()) {
      it = tables
               .emplace(mode, BehaviourTableAccess::wrap(
                                  BehaviourTableAccess::run_saturation(
                                      core, mode, std::nullopt, budget)))
               .first;
    }
    return it->second;
  }

  const GoalAutomaton& goal_automaton(const Axiom& goal, int iterations) {
    auto key = std::make_pair(iterations, goal);
    auto it = goal_aras.find(key);
    if (it == goal_aras.end()) {
      auto ga = std::make_shared<GoalAutomaton>();
      ga->ara = build_stack(core, WtaState{goal}, iterations);
      ga->dense = detail::densify(ga->ara);
      it = goal_aras.emplace(std::move(key), std::move(ga)).first;
    }
    return *it->second;
  }
};

Reasoner::Reasoner(AnnotatedTBox tbox)
    : impl_(std::make_unique<Impl>(std::move(tbox))) {}
Reasoner::~Reasoner() = default;
Reasoner::Reasoner(Reasoner&&) noexcept = default;
Reasoner& Reasoner::operator=(Reasoner&&) noexcept = default;

const AnnotatedTBox& Reasoner::tbox() const { return impl_->tbox; }

const BehaviourTable& Reasoner::table(SemiringMode mode) {
  return impl_->table_for(mode, EngineConfig{}.monomial_budget);
}

const Ara& Reasoner::goal_ara(const WtaState& goal, SemiringMode mode) {
  if (is_pad(goal)) throw Error("goal_ara: padding state is not a goal");
  int n = table(mode).stabilized_at();
  return impl_->goal_automaton(std::get<Axiom>(goal), n).ara;
}

Ara Reasoner::behaviour_ara(const WtaState& goal, const EngineConfig& config,
                            bool* truncated) {
  if (config.max_iterations) {
    BehaviourTable t = BehaviourTableAccess::wrap(
        BehaviourTableAccess::run_saturation(impl_->core, config.mode,
                                             config.max_iterations,
                                             config.monomial_budget));
    if (truncated) *truncated = t.truncated();
    return build_stack(impl_->core, goal, *config.max_iterations);
  }
  const BehaviourTable& tab = impl_->table_for(config.mode, config.monomial_budget);
  if (truncated) *truncated = false;
  return build_stack(impl_->core, goal, tab.stabilized_at());
}

EntailResult Reasoner::entails(const Axiom& goal, const Word& monomial,
                               const EngineConfig& config) {
  if (!queryable(goal))
    throw Error("entailment goal must be an atomic or existential inclusion");
  const SemiringMode mode = config.mode;
  Monomial m_hat = canonicalize(monomial, mode);

  EntailResult res;
  const auto& vars = impl_->tbox.signature().variables;
  for (const auto& v : m_hat.canonical)
    if (!vars.count(v)) return res;  // unknown variable: nothing to derive

  if (!goal_in_signature(goal, impl_->tbox.signature())) {
    // outside the automaton's state space; only trivial inclusions hold
    res.entailed = is_valid_inclusion(goal) && m_hat.is_unit();
    if (res.entailed && config.engine == EngineKind::ara) {
      res.witness_word = Word{};
      res.witness_ordering = std::vector<Variable>{};
    }
    return res;
  }

  BehaviourTable capped;
  const BehaviourTable* tab;
  if (config.max_iterations) {
    capped = BehaviourTableAccess::wrap(BehaviourTableAccess::run_saturation(
        impl_->core, mode, config.max_iterations, config.monomial_budget));
    if (capped.truncated())
      throw TruncatedError(
          "behaviour not stabilized within " +
          std::to_string(*config.max_iterations) +
          " iterations; raise the iteration cap");
    tab = &capped;
  } else {
    tab = &impl_->table_for(mode, config.monomial_budget);
  }
  const int n =
      config.max_iterations ? *config.max_iterations : tab->stabilized_at();
  res.iterations = n;

  if (config.engine == EngineKind::saturation) {
    res.entailed = tab->fixpoint(WtaState{goal}).count(m_hat) > 0;
    return res;
  }

  const GoalAutomaton& ga = impl_->goal_automaton(goal, n);
  if (m_hat.is_unit()) {
    res.entailed = detail::dense_membership(ga.dense, Word{}, nullptr);
    if (res.entailed) {
      res.witness_word = Word{};
      res.witness_ordering = std::vector<Variable>{};
    }
    return res;
  }

  if (mode == SemiringMode::left_absorbing) {
    // the queried monomial fixes the only admissible ordering
    OrderingSearch search{ga.dense, m_hat.canonical};
    search.used.assign(m_hat.canonical.size(), 1);
    search.prefix = m_hat.canonical;
    res.entailed = search.exact();
    res.intersection_checks = search.checks;
    if (res.entailed) {
      res.witness_word = std::move(search.witness);
      res.witness_ordering = std::move(search.ordering);
    }
    return res;
  }

  OrderingSearch search{ga.dense, m_hat.canonical};
  res.entailed = search.run();
  res.intersection_checks = search.checks;
  if (res.entailed) {
    res.witness_word = std::move(search.witness);
    res.witness_ordering = std::move(search.ordering);
  }
  return res;
}

MonomialSet Reasoner::monomials(const Axiom& goal, SemiringMode mode) {
  if (!queryable(goal))
    throw Error("goal must be an atomic or existential inclusion");
  if (!goal_in_signature(goal, impl_->tbox.signature())) {
    if (is_valid_inclusion(goal)) return {Monomial{{}, mode}};
    return {};
  }
  return table(mode).fixpoint(WtaState{goal});
}

EntailResult entails(const AnnotatedTBox& tbox, const Axiom& goal,
                     const Word& monomial, const EngineConfig& config) {
  Reasoner r(tbox);
  return r.entails(goal, monomial, config);
}

MonomialSet monomials(const AnnotatedTBox& tbox, const Axiom& goal,
                      SemiringMode mode) {
  Reasoner r(tbox);
  return r.monomials(goal, mode);
}

// ---------------------------------------------------------------------------
// Extensional iterated weights (test oracle)

std::map<WtaState, FiniteLanguage> language_table(const AnnotatedTBox& tbox,
                                                  int depth) {
  std::vector<WtaState> heads;
  std::vector<Concept> concepts{Concept::top()};
  for (const auto& name : tbox.signature().concepts)
    concepts.push_back(Concept::named(name));
  std::vector<Role> roles;
  for (const auto& name : tbox.signature().roles) roles.push_back(Role{name});

  for (const auto& a : concepts) {
    for (const auto& b : concepts) heads.emplace_back(mk_at(a, b));
    for (const auto& r : roles) heads.emplace_back(mk_ex(a, r));
  }
  for (const auto& r : roles) {
    for (const auto& a : concepts) heads.emplace_back(mk_rr(r, a));
    for (const auto& s : roles) heads.emplace_back(mk_ri(r, s));
  }

  std::map<WtaState, FiniteLanguage> cur;
  auto seed = [&](const WtaState& q) {
    FiniteLanguage w = exit_weight(q, tbox);
    if (!w.empty()) cur.emplace(q, std::move(w));
  };
  seed(WtaState{Pad{}});
  for (const auto& q : heads) seed(q);
  for (const auto& e : tbox.entries()) seed(WtaState{e.axiom});

  std::map<WtaState, std::vector<WtaTransition>> trans;
  for (const auto& q : heads) trans.emplace(q, transitions_for_head(q, tbox));

  for (int i = 1; i <= depth; ++i) {
    auto next = cur;
    for (const auto& q : heads) {
      FiniteLanguage growth;
      for (const auto& t : trans.at(q)) {
        FiniteLanguage acc{Word{}};
        for (const auto& child : t.children) {
          if (is_pad(child)) continue;
          auto it = cur.find(child);
          if (it == cur.end()) {
            acc.clear();
            break;
          }
          acc = lang_concat(acc, it->second);
        }
        growth = lang_union(growth, acc);
      }
      if (growth.empty()) continue;
      auto& slot = next[q];
      slot = lang_union(slot, growth);
    }
    cur = std::move(next);
  }
  for (auto it = cur.begin(); it != cur.end();)
    it = it->second.empty() ? cur.erase(it) : std::next(it);
  return cur;
}

}  // namespace provel
