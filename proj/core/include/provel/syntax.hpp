#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "provel/semiring.hpp"

namespace provel {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, int line_no)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  int line;
};

/// A concept operand: a named concept or the universal concept (written
/// `top` in the surface syntax).
class Concept {
 public:
  static Concept top() { return Concept{}; }
  static Concept named(std::string name) {
    Concept c;
    c.name_ = std::move(name);
    return c;
  }

  bool is_top() const { return !name_.has_value(); }
  const std::string& name() const { return *name_; }
  std::string to_string() const { return is_top() ? "top" : *name_; }

  auto operator<=>(const Concept&) const = default;

 private:
  std::optional<std::string> name_;
};

struct Role {
  std::string name;
  auto operator<=>(const Role&) const = default;
};

// The six axiom shapes of the restricted normal form.
struct AtomicGci {  // A <= B
  Concept lhs, rhs;
  auto operator<=>(const AtomicGci&) const = default;
};
struct ExistGci {  // A <= ex R
  Concept lhs;
  Role role;
  auto operator<=>(const ExistGci&) const = default;
};
struct ConjGci {  // A & B <= C, conjuncts kept in written order
  Concept left, right, rhs;
  auto operator<=>(const ConjGci&) const = default;
};
struct QualExistGci {  // ex R . B <= C
  Role role;
  Concept filler, rhs;
  auto operator<=>(const QualExistGci&) const = default;
};
struct RangeGci {  // ran(R) <= A
  Role role;
  Concept rhs;
  auto operator<=>(const RangeGci&) const = default;
};
struct RoleIncl {  // R [= S
  Role sub, sup;
  auto operator<=>(const RoleIncl&) const = default;
};

using Axiom = std::variant<AtomicGci, ExistGci, ConjGci, QualExistGci,
                           RangeGci, RoleIncl>;

std::string to_string(const Axiom& axiom);

struct TBoxEntry {
  Axiom axiom;
  std::optional<Variable> annotation;  // nullopt encodes the unit label `1`
};

struct Signature {
  std::set<std::string> concepts;  // never contains top
  std::set<std::string> roles;
  std::set<std::string> variables;
};

class AnnotatedTBox {
 public:
  AnnotatedTBox() = default;

  /// Validates shape-level invariants: no duplicate axiom, no reused
  /// annotation variable, disjoint concept/role/variable namespaces.
  explicit AnnotatedTBox(std::vector<TBoxEntry> entries);

  const std::vector<TBoxEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const Signature& signature() const { return sig_; }

  /// nullptr if the axiom is not in the TBox; otherwise its annotation
  /// (nullopt for the unit label).
  const std::optional<Variable>* find_annotation(const Axiom& axiom) const;

  /// Renders in the line-oriented file format; parse(print()) round-trips.
  std::string print() const;

 private:
  std::vector<TBoxEntry> entries_;
  Signature sig_;
  std::map<Axiom, std::optional<Variable>> by_axiom_;
};

AnnotatedTBox parse_tbox(std::string_view text);
Signature signature(const AnnotatedTBox& tbox);

struct Query {
  Axiom goal;
  Word monomial;
};

/// True for the axiom shapes that may be queried (atomic and unqualified
/// existential inclusions).
bool queryable(const Axiom& axiom);

Query parse_query(std::string_view text);  // "<axiom> : <monomial>"
Axiom parse_goal(std::string_view text);   // "<axiom>", queryable shapes only

}  // namespace provel
