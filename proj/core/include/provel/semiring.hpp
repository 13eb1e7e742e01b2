#pragma once

#include <set>
#include <string>
#include <vector>

namespace provel {

using Variable = std::string;

/// A word over provenance variables; the empty word is the unit.
using Word = std::vector<Variable>;

/// The two product semantics the reasoner supports. Under the commutative
/// mode a monomial is a sorted, duplicate-free word; under the left-absorbing
/// mode repeated symbols collapse onto their first occurrence and the order
/// of first occurrences is kept.
enum class SemiringMode { trio_commutative, left_absorbing };

struct Monomial {
  Word canonical;
  SemiringMode mode = SemiringMode::trio_commutative;

  bool is_unit() const { return canonical.empty(); }
  auto operator<=>(const Monomial&) const = default;
};

using FiniteLanguage = std::set<Word>;
using MonomialSet = std::set<Monomial>;

Monomial canonicalize(const Word& w, SemiringMode mode);

FiniteLanguage lang_concat(const FiniteLanguage& a, const FiniteLanguage& b);
FiniteLanguage lang_union(const FiniteLanguage& a, const FiniteLanguage& b);

MonomialSet canonical_image(const FiniteLanguage& language, SemiringMode mode);

/// True iff the canonical images of the two languages coincide.
bool k_equivalent(const FiniteLanguage& a, const FiniteLanguage& b,
                  SemiringMode mode);

/// Variables joined by '*'; the empty word renders as "1".
std::string render_word(const Word& w);
std::string render_monomial(const Monomial& m);

std::string to_string(SemiringMode mode);  // "trio" or "lap"

}  // namespace provel
