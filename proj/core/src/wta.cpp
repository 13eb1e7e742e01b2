#include "provel/wta.hpp"

#include <map>
#include <set>
#include <sstream>

namespace provel {

namespace {

const Pad kPad{};

WtaState at(Concept a, Concept b) { return Axiom{AtomicGci{std::move(a), std::move(b)}}; }
WtaState ex(Concept a, Role r) { return Axiom{ExistGci{std::move(a), std::move(r)}}; }
WtaState cj(Concept l, Concept r, Concept rhs) {
  return Axiom{ConjGci{std::move(l), std::move(r), std::move(rhs)}};
}
WtaState qe(Role r, Concept f, Concept rhs) {
  return Axiom{QualExistGci{std::move(r), std::move(f), std::move(rhs)}};
}
WtaState rr(Role r, Concept rhs) { return Axiom{RangeGci{std::move(r), std::move(rhs)}}; }
WtaState ri(Role a, Role b) { return Axiom{RoleIncl{std::move(a), std::move(b)}}; }

std::vector<Concept> concept_operands(const AnnotatedTBox& tbox) {
  std::vector<Concept> out;
  out.push_back(Concept::top());
  for (const auto& name : tbox.signature().concepts)
    out.push_back(Concept::named(name));
  return out;
}

std::vector<Role> role_operands(const AnnotatedTBox& tbox) {
  std::vector<Role> out;
  for (const auto& name : tbox.signature().roles) out.push_back(Role{name});
  return out;
}

}  // namespace

std::string to_string(const WtaState& q) {
  if (is_pad(q)) return "[]";
  return to_string(std::get<Axiom>(q));
}

std::string to_string(const WtaTransition& t) {
  std::ostringstream os;
  os << to_string(t.head) << " <- ";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i > 0) os << ',';
    os << to_string(t.children[i]);
  }
  return os.str();
}

FiniteLanguage exit_weight(const WtaState& q, const AnnotatedTBox& tbox) {
  if (is_pad(q)) return {Word{}};
  const Axiom& axiom = std::get<Axiom>(q);
  if (const auto* ann = tbox.find_annotation(axiom)) {
    if (*ann) return {Word{**ann}};
    return {Word{}};  // unit label
  }
  if (const auto* a = std::get_if<AtomicGci>(&axiom)) {
    if (a->lhs == a->rhs || a->rhs.is_top()) return {Word{}};
  }
  return {};
}

bool is_head_shape(const WtaState& q) {
  if (is_pad(q)) return false;
  const Axiom& axiom = std::get<Axiom>(q);
  return std::holds_alternative<AtomicGci>(axiom) ||
         std::holds_alternative<ExistGci>(axiom) ||
         std::holds_alternative<RangeGci>(axiom) ||
         std::holds_alternative<RoleIncl>(axiom);
}

std::vector<WtaTransition> transitions_for_head(const WtaState& q,
                                                const AnnotatedTBox& tbox) {
  if (!is_head_shape(q))
    throw Error("transitions_for_head: not a head shape: " + to_string(q));

  const std::vector<Concept> concepts = concept_operands(tbox);
  const std::vector<Role> roles = role_operands(tbox);
  std::set<WtaTransition> out;
  auto add = [&](WtaState c1, WtaState c2, WtaState c3, WtaState c4, WtaState c5) {
    out.insert(WtaTransition{q, {std::move(c1), std::move(c2), std::move(c3),
                                 std::move(c4), std::move(c5)}});
  };

  const Axiom& axiom = std::get<Axiom>(q);
  if (const auto* h = std::get_if<RoleIncl>(&axiom)) {
    for (const auto& r2 : roles)
      add(ri(h->sub, r2), ri(r2, h->sup), kPad, kPad, kPad);
  } else if (const auto* h = std::get_if<RangeGci>(&axiom)) {
    for (const auto& s : roles)
      add(ri(h->role, s), rr(s, h->rhs), kPad, kPad, kPad);
    for (const auto& b1 : concepts)
      for (const auto& b2 : concepts)
        for (const auto& c1 : concepts)
          for (const auto& c2 : concepts)
            add(rr(h->role, b1), rr(h->role, b2), at(b1, c1), at(b2, c2),
                cj(c1, c2, h->rhs));
  } else if (const auto* h = std::get_if<ExistGci>(&axiom)) {
    for (const auto& r : roles)
      add(ex(h->lhs, r), ri(r, h->role), kPad, kPad, kPad);
    for (const auto& b : concepts)
      add(at(h->lhs, b), ex(b, h->role), kPad, kPad, kPad);
  } else {
    const auto& ha = std::get<AtomicGci>(axiom);
    for (const auto& b : concepts) {
      add(at(ha.lhs, b), at(b, ha.rhs), kPad, kPad, kPad);
      // a conjunctive premise may carry the head's subsumee on either side
      add(cj(ha.lhs, b, ha.rhs), at(Concept::top(), b), kPad, kPad, kPad);
      add(cj(b, ha.lhs, ha.rhs), at(Concept::top(), b), kPad, kPad, kPad);
    }
    for (const auto& b1 : concepts)
      for (const auto& b2 : concepts)
        add(at(ha.lhs, b1), at(ha.lhs, b2), cj(b1, b2, ha.rhs), kPad, kPad);
    for (const auto& s : roles)
      for (const auto& r : roles)
        for (const auto& b : concepts)
          for (const auto& c : concepts)
            add(ex(ha.lhs, s), rr(s, b), at(b, c), ri(s, r), qe(r, c, ha.rhs));
    for (const auto& r : roles)
      for (const auto& b : concepts)
        add(ex(ha.lhs, r), at(Concept::top(), b), qe(r, b, ha.rhs), kPad, kPad);
  }
  return {out.begin(), out.end()};
}

namespace {

struct RunEnumerator {
  const AnnotatedTBox& tbox;
  std::map<std::pair<WtaState, int>, FiniteLanguage> memo;

  const FiniteLanguage& weights(const WtaState& q, int depth) {
    auto key = std::make_pair(q, depth);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    FiniteLanguage language = exit_weight(q, tbox);
    if (depth > 0 && is_head_shape(q)) {
      for (const auto& t : transitions_for_head(q, tbox)) {
        FiniteLanguage acc{Word{}};
        for (const auto& child : t.children) {
          if (is_pad(child)) continue;
          const FiniteLanguage& sub = weights(child, depth - 1);
          if (sub.empty()) {
            acc.clear();
            break;
          }
          acc = lang_concat(acc, sub);
        }
        language = lang_union(language, acc);
      }
    }
    return memo.emplace(std::move(key), std::move(language)).first->second;
  }
};

}  // namespace

FiniteLanguage enumerate_runs(const WtaState& goal, int depth,
                              const AnnotatedTBox& tbox, int depth_cap) {
  if (depth < 0) throw Error("enumerate_runs: negative depth");
  if (depth > depth_cap)
    throw Error("enumerate_runs: depth " + std::to_string(depth) +
                " exceeds the oracle cap of " + std::to_string(depth_cap));
  RunEnumerator e{tbox, {}};
  return e.weights(goal, depth);
}

}  // namespace provel
