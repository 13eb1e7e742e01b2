#include "provel/ara.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <queue>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "ara_internal.hpp"

namespace provel {

using detail::BitRows;
using detail::DenseAra;
using detail::DenseComp;
using detail::DenseEdge;
using detail::kNoSym;

// ---------------------------------------------------------------------------
// Ara construction and well-formedness

namespace {

bool check_well_formed(const std::vector<AraComponent>& comps, std::size_t root,
                       const std::set<std::string>& base_alphabet) {
  if (comps.empty() || root >= comps.size()) return false;
  std::set<State> all_states;
  std::size_t total = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Nfa& nfa = comps[i].nfa;
    if (!nfa.valid()) return false;
    all_states.insert(nfa.states.begin(), nfa.states.end());
    total += nfa.states.size();
    for (const auto& t : nfa.transitions) {
      if (t.sym.is_call()) {
        if (t.sym.call_target() >= i) return false;  // must call lower only
      } else if (!base_alphabet.count(t.sym.base_name())) {
        return false;
      }
    }
  }
  return all_states.size() == total;  // pairwise disjoint state sets
}

}  // namespace

Ara::Ara(std::vector<AraComponent> components, std::size_t root,
         std::set<std::string> base_alphabet)
    : components_(std::move(components)),
      root_(root),
      base_alphabet_(std::move(base_alphabet)) {
  well_formed_ = check_well_formed(components_, root_, base_alphabet_);
}

std::size_t Ara::total_states() const {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.nfa.states.size();
  return n;
}

bool well_formed(const Ara& a) { return a.is_well_formed(); }

Ara ara_from_nfa(Nfa nfa, std::string name) {
  std::set<std::string> base;
  for (const auto& t : nfa.transitions) {
    if (t.sym.is_call()) throw Error("ara_from_nfa: nfa carries call triggers");
    base.insert(t.sym.base_name());
  }
  std::vector<AraComponent> comps;
  comps.push_back({std::move(nfa), std::move(name)});
  return Ara(std::move(comps), 0, std::move(base));
}

// ---------------------------------------------------------------------------
// Dense view

namespace detail {

DenseAra densify(const Ara& a) {
  DenseAra d;
  d.root = a.root();
  d.comps.resize(a.components().size());
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    const Nfa& nfa = a.components()[i].nfa;
    DenseComp& comp = d.comps[i];
    comp.n = static_cast<std::uint32_t>(nfa.states.size());
    auto local = [&](State s) {
      return static_cast<std::uint32_t>(
          std::lower_bound(nfa.states.begin(), nfa.states.end(), s) -
          nfa.states.begin());
    };
    for (const auto& t : nfa.transitions) {
      if (t.sym.is_call()) {
        comp.call_edges.push_back(
            {local(t.from), static_cast<std::uint32_t>(t.sym.call_target()),
             local(t.to)});
      } else {
        comp.base_edges.push_back(
            {local(t.from), d.intern(t.sym.base_name()), local(t.to)});
      }
    }
    for (State s : nfa.initial) comp.initials.push_back(local(s));
    for (State s : nfa.accepting) comp.finals.push_back(local(s));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Membership: memoized span table

namespace {

struct MembershipCtx {
  const DenseAra& a;
  std::vector<std::uint32_t> word;
  std::size_t len;
  // memo[comp][start] -> bitset over end positions 0..len
  std::vector<std::map<std::uint32_t, std::vector<std::uint64_t>>> memo;
  MembershipStats* stats;

  const std::vector<std::uint64_t>& ends(std::uint32_t c, std::uint32_t start) {
    auto it = memo[c].find(start);
    if (it != memo[c].end()) return it->second;

    const DenseComp& comp = a.comps[c];
    const std::size_t words = (len + 1 + 63) / 64;
    std::vector<std::uint64_t> result(words, 0);
    // visited over (state, position)
    std::vector<std::uint64_t> visited(comp.n * words, 0);
    auto seen = [&](std::uint32_t p, std::uint32_t pos) {
      return (visited[p * words + (pos >> 6)] >> (pos & 63)) & 1u;
    };
    auto mark = [&](std::uint32_t p, std::uint32_t pos) {
      visited[p * words + (pos >> 6)] |= 1ull << (pos & 63);
    };
    std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;
    for (std::uint32_t p : comp.initials) {
      if (!seen(p, start)) {
        mark(p, start);
        queue.emplace_back(p, start);
      }
    }
    while (!queue.empty()) {
      auto [p, pos] = queue.front();
      queue.pop_front();
      if (stats) ++stats->node_visits;
      for (const auto& e : comp.base_edges) {
        if (e.from != p || pos >= len || word[pos] != e.label) continue;
        if (!seen(e.to, pos + 1)) {
          mark(e.to, pos + 1);
          queue.emplace_back(e.to, pos + 1);
        }
      }
      for (const auto& e : comp.call_edges) {
        if (e.from != p) continue;
        const auto& sub = ends(e.label, pos);
        for (std::size_t w = 0; w < sub.size(); ++w) {
          std::uint64_t bitsw = sub[w];
          while (bitsw) {
            auto end = static_cast<std::uint32_t>(
                w * 64 + static_cast<std::size_t>(__builtin_ctzll(bitsw)));
            bitsw &= bitsw - 1;
            if (!seen(e.to, end)) {
              mark(e.to, end);
              queue.emplace_back(e.to, end);
            }
          }
        }
      }
    }
    for (std::uint32_t f : comp.finals)
      for (std::uint32_t pos = start; pos <= len; ++pos)
        if (seen(f, pos)) result[pos >> 6] |= 1ull << (pos & 63);

    if (stats) ++stats->memo_cells;
    return memo[c].emplace(start, std::move(result)).first->second;
  }
};

}  // namespace

bool dense_membership(const DenseAra& a, const Word& w, MembershipStats* stats) {
  MembershipCtx ctx{a, {}, w.size(), {}, stats};
  ctx.word.reserve(w.size());
  for (const auto& v : w) ctx.word.push_back(a.lookup(v));
  ctx.memo.resize(a.comps.size());
  const auto& root_ends =
      ctx.ends(static_cast<std::uint32_t>(a.root), 0);
  return (root_ends[w.size() >> 6] >> (w.size() & 63)) & 1u;
}

// ---------------------------------------------------------------------------
// Intersection with a trigger-free NFA: per-component summaries over pairs of
// query states, processed in call order.

bool intersect_summaries(const DenseAra& a, const Nfa& query,
                         IntersectScratch& sc) {
  std::map<State, std::uint32_t> qlocal;
  for (State s : query.states)
    qlocal.emplace(s, static_cast<std::uint32_t>(qlocal.size()));
  sc.nfa_states = qlocal.size();
  sc.nfa_initial.clear();
  sc.nfa_accepting.clear();
  for (State s : query.initial) sc.nfa_initial.push_back(qlocal.at(s));
  for (State s : query.accepting) sc.nfa_accepting.push_back(qlocal.at(s));

  sc.edge_rel.clear();
  for (const auto& t : query.transitions) {
    if (t.sym.is_call())
      throw Error("intersection: query NFA must be trigger-free");
    std::uint32_t id = a.lookup(t.sym.base_name());
    if (id == kNoSym) continue;  // symbol never produced by the Ara
    auto [it, fresh] = sc.edge_rel.try_emplace(id);
    if (fresh) it->second.init(sc.nfa_states, sc.nfa_states);
    it->second.set(qlocal.at(t.from), qlocal.at(t.to));
  }
  std::vector<const BitRows*> rel_by_id(a.sym_names.size(), nullptr);
  for (const auto& [id, rel] : sc.edge_rel) rel_by_id[id] = &rel;

  const std::size_t n = sc.nfa_states;
  const std::size_t words = (n + 63) / 64;
  const std::size_t per_state = n * words;
  sc.summary.assign(a.comps.size(), BitRows{});
  sc.summary_nonzero.assign(a.comps.size(), false);

  std::vector<std::uint64_t> reach;  // [local state][query row][word]
  for (std::size_t c = 0; c < a.comps.size(); ++c) {
    const DenseComp& comp = a.comps[c];
    reach.assign(comp.n * per_state, 0);
    auto row = [&](std::uint32_t p, std::size_t s) {
      return reach.data() + p * per_state + s * words;
    };
    for (std::uint32_t p : comp.initials)
      for (std::size_t s = 0; s < n; ++s) row(p, s)[s >> 6] |= 1ull << (s & 63);

    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& e : comp.base_edges) {
        const BitRows* rel = rel_by_id[e.label];
        if (!rel) continue;
        for (std::size_t s = 0; s < n; ++s)
          changed |= detail::or_selected_rows(row(e.to, s), row(e.from, s), *rel);
      }
      for (const auto& e : comp.call_edges) {
        if (!sc.summary_nonzero[e.label]) continue;
        const BitRows& sub = sc.summary[e.label];
        for (std::size_t s = 0; s < n; ++s)
          changed |= detail::or_selected_rows(row(e.to, s), row(e.from, s), sub);
      }
    }

    BitRows& summ = sc.summary[c];
    summ.init(n, n);
    for (std::uint32_t f : comp.finals)
      for (std::size_t s = 0; s < n; ++s)
        detail::or_into(summ.row(s), row(f, s), words);
    sc.summary_nonzero[c] = summ.any();
  }

  const BitRows& root = sc.summary[a.root];
  for (auto i : sc.nfa_initial)
    for (auto f : sc.nfa_accepting)
      if (root.test(i, f)) return true;
  return false;
}

// Shortest-witness extraction: min-plus summaries plus a deterministic
// Dijkstra per (component, query-state pair), preferring base steps on ties.

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

struct WitnessCtx {
  const DenseAra& a;
  const IntersectScratch& sc;
  std::size_t n;
  // min word length driving component c init->final while query moves s->t
  std::vector<std::vector<std::uint32_t>> len;  // [comp][s*n+t]
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, Word> realized;

  void compute_lengths() {
    len.assign(a.comps.size(), {});
    std::vector<std::vector<std::uint32_t>> dist;
    for (std::size_t c = 0; c < a.comps.size(); ++c) {
      if (!sc.summary_nonzero[c]) continue;  // len stays empty, callers skip
      const DenseComp& comp = a.comps[c];
      dist.assign(comp.n, std::vector<std::uint32_t>(n * n, kInf));
      for (std::uint32_t p : comp.initials)
        for (std::size_t s = 0; s < n; ++s) dist[p][s * n + s] = 0;
      bool changed = true;
      while (changed) {
        changed = false;
        auto relax = [&](std::uint32_t from, std::uint32_t to, std::size_t t1,
                         std::size_t t2, std::uint32_t w) {
          for (std::size_t s = 0; s < n; ++s) {
            std::uint32_t d = dist[from][s * n + t1];
            if (d == kInf) continue;
            if (d + w < dist[to][s * n + t2]) {
              dist[to][s * n + t2] = d + w;
              changed = true;
            }
          }
        };
        for (const auto& e : comp.base_edges) {
          auto it = sc.edge_rel.find(e.label);
          if (it == sc.edge_rel.end()) continue;
          for (std::size_t t1 = 0; t1 < n; ++t1)
            for (std::size_t t2 = 0; t2 < n; ++t2)
              if (it->second.test(t1, t2)) relax(e.from, e.to, t1, t2, 1);
        }
        for (const auto& e : comp.call_edges) {
          if (len[e.label].empty()) continue;
          for (std::size_t t1 = 0; t1 < n; ++t1)
            for (std::size_t t2 = 0; t2 < n; ++t2) {
              std::uint32_t w = len[e.label][t1 * n + t2];
              if (w != kInf) relax(e.from, e.to, t1, t2, w);
            }
        }
      }
      auto& out = len[c];
      out.assign(n * n, kInf);
      for (std::uint32_t f : comp.finals)
        for (std::size_t i = 0; i < n * n; ++i)
          out[i] = std::min(out[i], dist[f][i]);
    }
  }

  // shortest word w with component c init->final and query s ->w-> t
  Word realize(std::uint32_t c, std::uint32_t s, std::uint32_t t) {
    auto key = std::make_tuple(c, s, t);
    if (auto it = realized.find(key); it != realized.end()) return it->second;

    const DenseComp& comp = a.comps[c];
    const std::size_t nodes = comp.n * n;
    auto node = [&](std::uint32_t p, std::uint32_t u) { return p * n + u; };
    std::vector<std::uint32_t> d(nodes, kInf);
    // parent: (prev node, base sym or kNoSym, callee, callee s, callee t)
    struct Back {
      std::uint32_t prev = kInf, sym = kNoSym, callee = kInf, cs = 0, ct = 0;
    };
    std::vector<Back> back(nodes);
    using Item = std::pair<std::uint32_t, std::uint32_t>;  // (dist, node)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::uint32_t p : comp.initials) {
      d[node(p, s)] = 0;
      pq.emplace(0, node(p, s));
    }
    while (!pq.empty()) {
      auto [dd, v] = pq.top();
      pq.pop();
      if (dd != d[v]) continue;
      std::uint32_t p = v / static_cast<std::uint32_t>(n);
      std::uint32_t u = v % static_cast<std::uint32_t>(n);
      for (const auto& e : comp.base_edges) {
        if (e.from != p) continue;
        auto it = sc.edge_rel.find(e.label);
        if (it == sc.edge_rel.end()) continue;
        for (std::size_t u2 = 0; u2 < n; ++u2) {
          if (!it->second.test(u, u2)) continue;
          std::uint32_t w = node(e.to, static_cast<std::uint32_t>(u2));
          if (dd + 1 < d[w]) {
            d[w] = dd + 1;
            back[w] = {v, e.label, kInf, 0, 0};
            pq.emplace(d[w], w);
          }
        }
      }
      for (const auto& e : comp.call_edges) {
        if (e.from != p || len[e.label].empty()) continue;
        for (std::size_t u2 = 0; u2 < n; ++u2) {
          std::uint32_t cw = len[e.label][u * n + u2];
          if (cw == kInf || dd == kInf || dd + cw < dd) continue;
          std::uint32_t w = node(e.to, static_cast<std::uint32_t>(u2));
          if (dd + cw < d[w]) {
            d[w] = dd + cw;
            back[w] = {v, kNoSym, e.label, u, static_cast<std::uint32_t>(u2)};
            pq.emplace(d[w], w);
          }
        }
      }
    }
    std::uint32_t best = kInf, best_node = kInf;
    for (std::uint32_t f : comp.finals) {
      std::uint32_t v = node(f, t);
      if (d[v] < best) {
        best = d[v];
        best_node = v;
      }
    }
    assert(best != kInf && "witness requested for empty summary");
    std::vector<Back> trail;
    std::uint32_t v = best_node;
    while (back[v].prev != kInf) {
      trail.push_back(back[v]);
      v = back[v].prev;
    }
    Word word;
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
      if (it->sym != kNoSym) {
        word.push_back(a.sym_names[it->sym]);
      } else {
        Word sub = realize(it->callee, it->cs, it->ct);
        word.insert(word.end(), sub.begin(), sub.end());
      }
    }
    realized.emplace(key, word);
    return word;
  }
};

}  // namespace

Word intersect_witness(const DenseAra& a, const Nfa& /*query*/,
                       const IntersectScratch& sc) {
  WitnessCtx ctx{a, sc, sc.nfa_states, {}, {}};
  ctx.compute_lengths();
  const auto& root_len = ctx.len[a.root];
  std::uint32_t best = kInf;
  std::uint32_t bi = 0, bf = 0;
  for (auto i : sc.nfa_initial) {
    for (auto f : sc.nfa_accepting) {
      std::uint32_t v = root_len[i * sc.nfa_states + f];
      if (v < best) {
        best = v;
        bi = i;
        bf = f;
      }
    }
  }
  assert(best != kInf);
  return ctx.realize(static_cast<std::uint32_t>(a.root), bi, bf);
}

}  // namespace detail

bool membership(const Ara& a, const Word& w, MembershipStats* stats) {
  if (!a.is_well_formed()) throw Error("membership: ARA is not well-formed");
  DenseAra d = detail::densify(a);
  return detail::dense_membership(d, w, stats);
}

bool intersects(const Ara& a, const Nfa& nfa) {
  if (!a.is_well_formed()) throw Error("intersection: ARA is not well-formed");
  DenseAra d = detail::densify(a);
  detail::IntersectScratch sc;
  return detail::intersect_summaries(d, nfa, sc);
}

std::optional<Word> intersect_empty(const Ara& a, const Nfa& nfa) {
  if (!a.is_well_formed()) throw Error("intersection: ARA is not well-formed");
  DenseAra d = detail::densify(a);
  detail::IntersectScratch sc;
  if (!detail::intersect_summaries(d, nfa, sc)) return std::nullopt;
  return detail::intersect_witness(d, nfa, sc);
}

// ---------------------------------------------------------------------------
// Flattening

namespace {

struct FlatNfa {
  std::size_t n = 0;
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> initials, finals;

  bool accepts_eps() const {
    for (auto i : initials)
      if (std::find(finals.begin(), finals.end(), i) != finals.end())
        return true;
    return false;
  }
};

void eliminate_eps(FlatNfa& f,
                   const std::set<std::pair<std::uint32_t, std::uint32_t>>& eps) {
  if (eps.empty()) return;
  std::vector<std::vector<std::uint32_t>> adj(f.n);
  for (auto [x, y] : eps) adj[x].push_back(y);
  std::vector<bool> is_final(f.n, false);
  for (auto s : f.finals) is_final[s] = true;

  for (std::uint32_t x = 0; x < f.n; ++x) {
    std::vector<bool> seen(f.n, false);
    std::deque<std::uint32_t> queue{x};
    seen[x] = true;
    std::vector<std::uint32_t> closure;
    while (!queue.empty()) {
      auto y = queue.front();
      queue.pop_front();
      closure.push_back(y);
      for (auto z : adj[y])
        if (!seen[z]) {
          seen[z] = true;
          queue.push_back(z);
        }
    }
    bool hits_final = false;
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> added;
    for (auto y : closure) {
      if (is_final[y]) hits_final = true;
      if (y == x) continue;
      for (const auto& e : f.edges)
        if (std::get<0>(e) == y)
          added.insert({x, std::get<1>(e), std::get<2>(e)});
    }
    f.edges.insert(added.begin(), added.end());
    if (hits_final && !is_final[x]) {
      is_final[x] = true;
      f.finals.push_back(x);
    }
  }
  std::sort(f.finals.begin(), f.finals.end());
}

}  // namespace

Nfa inline_expand(const Ara& a, std::size_t size_cap) {
  if (!a.is_well_formed()) throw Error("inline_expand: ARA is not well-formed");
  DenseAra d = detail::densify(a);

  std::vector<FlatNfa> flats(d.comps.size());
  for (std::size_t c = 0; c < d.comps.size(); ++c) {
    const DenseComp& comp = d.comps[c];
    FlatNfa& f = flats[c];
    f.n = comp.n;
    if (f.n > size_cap)
      throw SizeLimitError("inline_expand: state count exceeds cap of " +
                           std::to_string(size_cap));
    for (const auto& e : comp.base_edges) f.edges.insert({e.from, e.label, e.to});
    f.initials = comp.initials;
    f.finals = comp.finals;
    std::set<std::pair<std::uint32_t, std::uint32_t>> eps;
    for (const auto& e : comp.call_edges) {
      const FlatNfa& sub = flats[e.label];
      auto off = static_cast<std::uint32_t>(f.n);
      f.n += sub.n;
      if (f.n > size_cap)
        throw SizeLimitError("inline_expand: state count exceeds cap of " +
                             std::to_string(size_cap));
      for (const auto& se : sub.edges)
        f.edges.insert({std::get<0>(se) + off, std::get<1>(se),
                        std::get<2>(se) + off});
      auto is_init = [&](std::uint32_t s) {
        return std::find(sub.initials.begin(), sub.initials.end(), s) !=
               sub.initials.end();
      };
      auto is_final = [&](std::uint32_t s) {
        return std::find(sub.finals.begin(), sub.finals.end(), s) !=
               sub.finals.end();
      };
      for (const auto& se : sub.edges) {
        if (is_init(std::get<0>(se)))
          f.edges.insert({e.from, std::get<1>(se), std::get<2>(se) + off});
        if (is_final(std::get<2>(se)))
          f.edges.insert({std::get<0>(se) + off, std::get<1>(se), e.to});
        if (is_init(std::get<0>(se)) && is_final(std::get<2>(se)))
          f.edges.insert({e.from, std::get<1>(se), e.to});
      }
      if (sub.accepts_eps()) eps.insert({e.from, e.to});
    }
    eliminate_eps(f, eps);
  }

  const FlatNfa& rf = flats[d.root];
  std::vector<NfaTransition> trans;
  trans.reserve(rf.edges.size());
  for (const auto& e : rf.edges)
    trans.push_back({std::get<0>(e), Symbol::base(d.sym_names[std::get<1>(e)]),
                     std::get<2>(e)});
  std::vector<State> init(rf.initials.begin(), rf.initials.end());
  std::vector<State> fin(rf.finals.begin(), rf.finals.end());
  return make_nfa(0, rf.n, std::move(trans), std::move(init), std::move(fin));
}

// ---------------------------------------------------------------------------
// Union, concatenation, the succinctness family

namespace {

// Appends a shifted copy of `part` to `comps`, returning the re-based root.
std::size_t append_rebased(std::vector<AraComponent>& comps, const Ara& part,
                           State& next_state) {
  const std::size_t index_off = comps.size();
  State max_seen = next_state;
  for (const auto& c : part.components()) {
    Nfa nfa = c.nfa;
    for (auto& s : nfa.states) s += next_state;
    for (auto& s : nfa.initial) s += next_state;
    for (auto& s : nfa.accepting) s += next_state;
    for (auto& t : nfa.transitions) {
      t.from += next_state;
      t.to += next_state;
      if (t.sym.is_call())
        t.sym = Symbol::call(t.sym.call_target() + index_off);
    }
    if (!nfa.states.empty()) max_seen = std::max(max_seen, nfa.states.back() + 1);
    comps.push_back({std::move(nfa), c.name});
  }
  next_state = max_seen;
  return index_off + part.root();
}

}  // namespace

Ara ara_concat(const std::vector<Ara>& parts) {
  std::vector<AraComponent> comps;
  std::set<std::string> base;
  std::vector<std::size_t> roots;
  State next_state = 0;
  for (const auto& p : parts) {
    if (!p.is_well_formed()) throw Error("concat: part is not well-formed");
    base.insert(p.base_alphabet().begin(), p.base_alphabet().end());
    roots.push_back(append_rebased(comps, p, next_state));
  }
  const auto n = parts.size();
  std::vector<NfaTransition> trans;
  for (std::size_t i = 0; i < n; ++i)
    trans.push_back({static_cast<State>(next_state + i), Symbol::call(roots[i]),
                     static_cast<State>(next_state + i + 1)});
  Nfa root = make_nfa(next_state, n + 1, std::move(trans), {next_state},
                      {static_cast<State>(next_state + n)});
  comps.push_back({std::move(root), "concat"});
  const std::size_t root_index = comps.size() - 1;
  return Ara(std::move(comps), root_index, std::move(base));
}

Ara ara_union(const std::vector<Ara>& parts) {
  std::vector<AraComponent> comps;
  std::set<std::string> base;
  std::vector<std::size_t> roots;
  State next_state = 0;
  for (const auto& p : parts) {
    if (!p.is_well_formed()) throw Error("union: part is not well-formed");
    base.insert(p.base_alphabet().begin(), p.base_alphabet().end());
    roots.push_back(append_rebased(comps, p, next_state));
  }
  std::vector<NfaTransition> trans;
  for (auto r : roots)
    trans.push_back({next_state, Symbol::call(r),
                     static_cast<State>(next_state + 1)});
  Nfa root = make_nfa(next_state, 2, std::move(trans), {next_state},
                      {static_cast<State>(next_state + 1)});
  comps.push_back({std::move(root), "union"});
  const std::size_t root_index = comps.size() - 1;
  return Ara(std::move(comps), root_index, std::move(base));
}

Ara power_family(int n) {
  if (n < 1) throw Error("power_family requires n >= 1");
  std::vector<AraComponent> comps;
  for (int i = 1; i <= n; ++i) {
    auto p = static_cast<State>(3 * (i - 1));
    Symbol step = i == 1 ? Symbol::base("a")
                         : Symbol::call(static_cast<std::size_t>(i - 2));
    Nfa nfa = make_nfa(p, 3, {{p, step, p + 1}, {p + 1, step, p + 2}}, {p},
                       {p + 2});
    comps.push_back({std::move(nfa), "A" + std::to_string(i)});
  }
  return Ara(std::move(comps), comps.size() - 1, {"a"});
}

// ---------------------------------------------------------------------------
// Exports

std::string to_dot(const Ara& a) {
  std::ostringstream os;
  os << "digraph ara {\n  rankdir=LR;\n  node [shape=circle];\n";
  const auto& comps = a.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    os << "  subgraph cluster_" << i << " {\n";
    os << "    label=\"" << (c.name.empty() ? "A" + std::to_string(i) : c.name)
       << "\";\n";
    for (State s : c.nfa.accepting)
      os << "    " << s << " [shape=doublecircle];\n";
    for (State s : c.nfa.states) os << "    " << s << ";\n";
    for (const auto& t : c.nfa.transitions) {
      if (t.sym.is_call()) continue;
      os << "    " << t.from << " -> " << t.to << " [label=\""
         << t.sym.base_name() << "\"];\n";
    }
    os << "  }\n";
  }
  if (!comps.empty()) {
    os << "  start [shape=point];\n";
    for (State s : comps[a.root()].nfa.initial)
      os << "  start -> " << s << ";\n";
  }
  for (const auto& c : comps) {
    for (const auto& t : c.nfa.transitions) {
      if (!t.sym.is_call()) continue;
      std::size_t j = t.sym.call_target();
      std::string callee =
          comps[j].name.empty() ? "A" + std::to_string(j) : comps[j].name;
      os << "  " << t.from << " -> " << t.to << " [style=dashed,label=\"call:"
         << j << " " << callee << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_json(const Ara& a) {
  nlohmann::json j;
  j["base_alphabet"] = a.base_alphabet();
  j["root"] = a.root();
  auto& autos = j["automata"] = nlohmann::json::array();
  for (const auto& c : a.components()) {
    nlohmann::json comp;
    comp["name"] = c.name;
    comp["states"] = c.nfa.states;
    comp["initial"] = c.nfa.initial;
    comp["accepting"] = c.nfa.accepting;
    auto& trans = comp["transitions"] = nlohmann::json::array();
    for (const auto& t : c.nfa.transitions) {
      nlohmann::json jt;
      jt["from"] = t.from;
      jt["to"] = t.to;
      if (t.sym.is_call())
        jt["call"] = t.sym.call_target();
      else
        jt["base"] = t.sym.base_name();
      trans.push_back(std::move(jt));
    }
    autos.push_back(std::move(comp));
  }
  return j.dump(2);
}

Ara ara_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("ARA JSON parse error: ") + e.what());
  }
  try {
    std::set<std::string> base;
    for (const auto& s : j.at("base_alphabet"))
      base.insert(s.get<std::string>());
    std::vector<AraComponent> comps;
    for (const auto& comp : j.at("automata")) {
      Nfa nfa;
      nfa.states = comp.at("states").get<std::vector<State>>();
      nfa.initial = comp.at("initial").get<std::vector<State>>();
      nfa.accepting = comp.at("accepting").get<std::vector<State>>();
      for (const auto& t : comp.at("transitions")) {
        Symbol sym = t.contains("call")
                         ? Symbol::call(t.at("call").get<std::size_t>())
                         : Symbol::base(t.at("base").get<std::string>());
        nfa.transitions.push_back(
            {t.at("from").get<State>(), std::move(sym), t.at("to").get<State>()});
      }
      comps.push_back({std::move(nfa), comp.value("name", std::string{})});
    }
    return Ara(std::move(comps), j.at("root").get<std::size_t>(),
               std::move(base));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("ARA JSON structure error: ") + e.what());
  }
}

}  // namespace provel
