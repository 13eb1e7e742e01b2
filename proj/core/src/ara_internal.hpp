#pragma once

// Dense scratch representations shared by the Ara algorithms and the
// entailment engine. Not installed; everything here is an implementation
// detail.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "provel/ara.hpp"

namespace provel::detail {

inline constexpr std::uint32_t kNoSym = std::numeric_limits<std::uint32_t>::max();

struct BitRows {
  std::size_t n = 0;      // columns
  std::size_t words = 0;  // words per row
  std::vector<std::uint64_t> bits;

  void init(std::size_t rows, std::size_t cols) {
    n = cols;
    words = (cols + 63) / 64;
    bits.assign(rows * words, 0);
  }
  std::uint64_t* row(std::size_t r) { return bits.data() + r * words; }
  const std::uint64_t* row(std::size_t r) const { return bits.data() + r * words; }
  bool test(std::size_t r, std::size_t c) const {
    return (row(r)[c >> 6] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c) { row(r)[c >> 6] |= 1ull << (c & 63); }
  bool any() const {
    for (auto w : bits)
      if (w) return true;
    return false;
  }
};

// dst |= src, returns whether dst changed
inline bool or_into(std::uint64_t* dst, const std::uint64_t* src,
                    std::size_t words) {
  bool changed = false;
  for (std::size_t i = 0; i < words; ++i) {
    std::uint64_t v = dst[i] | src[i];
    if (v != dst[i]) {
      dst[i] = v;
      changed = true;
    }
  }
  return changed;
}

// dst_row |= union of M.row(t) over set bits t of sel_row; returns changed
inline bool or_selected_rows(std::uint64_t* dst_row,
                             const std::uint64_t* sel_row, const BitRows& m) {
  bool changed = false;
  for (std::size_t w = 0; w < m.words; ++w) {
    std::uint64_t word = sel_row[w];
    while (word) {
      std::size_t t = w * 64 + static_cast<std::size_t>(__builtin_ctzll(word));
      word &= word - 1;
      if (t >= m.n) break;
      changed |= or_into(dst_row, m.row(t), m.words);
    }
  }
  return changed;
}

struct DenseEdge {
  std::uint32_t from;
  std::uint32_t label;  // symbol id, or callee component index for calls
  std::uint32_t to;
};

struct DenseComp {
  std::uint32_t n = 0;  // local states 0..n-1
  std::vector<DenseEdge> base_edges;
  std::vector<DenseEdge> call_edges;
  std::vector<std::uint32_t> initials;
  std::vector<std::uint32_t> finals;
};

struct DenseAra {
  std::vector<DenseComp> comps;
  std::size_t root = 0;
  std::vector<std::string> sym_names;
  std::map<std::string, std::uint32_t> sym_ids;

  std::uint32_t intern(const std::string& name) {
    auto [it, fresh] =
        sym_ids.emplace(name, static_cast<std::uint32_t>(sym_names.size()));
    if (fresh) sym_names.push_back(name);
    return it->second;
  }
  std::uint32_t lookup(const std::string& name) const {
    auto it = sym_ids.find(name);
    return it == sym_ids.end() ? kNoSym : it->second;
  }
};

DenseAra densify(const Ara& a);

// Per-component relation over NFA state pairs: summary[c].test(s, t) iff some
// word drives component c from an initial to a final state while the query
// NFA moves s -> t.
struct IntersectScratch {
  std::size_t nfa_states = 0;
  std::vector<std::uint32_t> nfa_initial, nfa_accepting;
  // per symbol id: NFA edge relation
  std::map<std::uint32_t, BitRows> edge_rel;
  std::vector<BitRows> summary;
  std::vector<bool> summary_nonzero;
};

// Builds summaries bottom-up; returns true iff the intersection is nonempty.
bool intersect_summaries(const DenseAra& a, const Nfa& query,
                         IntersectScratch& scratch);

// Shortest witness of a nonempty intersection (call after intersect_summaries
// returned true with the same scratch).
Word intersect_witness(const DenseAra& a, const Nfa& query,
                       const IntersectScratch& scratch);

bool dense_membership(const DenseAra& a, const Word& w, MembershipStats* stats);

}  // namespace provel::detail
