#include "provel/semiring.hpp"

#include <algorithm>
#include <sstream>

namespace provel {

Monomial canonicalize(const Word& w, SemiringMode mode) {
  Monomial m;
  m.mode = mode;
  if (mode == SemiringMode::trio_commutative) {
    m.canonical = w;
    std::sort(m.canonical.begin(), m.canonical.end());
    m.canonical.erase(std::unique(m.canonical.begin(), m.canonical.end()),
                      m.canonical.end());
  } else {
    m.canonical.reserve(w.size());
    for (const auto& v : w) {
      if (std::find(m.canonical.begin(), m.canonical.end(), v) ==
          m.canonical.end()) {
        m.canonical.push_back(v);
      }
    }
  }
  return m;
}

FiniteLanguage lang_concat(const FiniteLanguage& a, const FiniteLanguage& b) {
  FiniteLanguage out;
  for (const auto& w : a) {
    for (const auto& v : b) {
      Word wv = w;
      wv.insert(wv.end(), v.begin(), v.end());
      out.insert(std::move(wv));
    }
  }
  return out;
}

FiniteLanguage lang_union(const FiniteLanguage& a, const FiniteLanguage& b) {
  FiniteLanguage out = a;
  out.insert(b.begin(), b.end());
  return out;
}

MonomialSet canonical_image(const FiniteLanguage& language, SemiringMode mode) {
  MonomialSet out;
  for (const auto& w : language) out.insert(canonicalize(w, mode));
  return out;
}

bool k_equivalent(const FiniteLanguage& a, const FiniteLanguage& b,
                  SemiringMode mode) {
  return canonical_image(a, mode) == canonical_image(b, mode);
}

std::string render_word(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) os << '*';
    os << w[i];
  }
  return os.str();
}

std::string render_monomial(const Monomial& m) { return render_word(m.canonical); }

std::string to_string(SemiringMode mode) {
  return mode == SemiringMode::trio_commutative ? "trio" : "lap";
}

}  // namespace provel
