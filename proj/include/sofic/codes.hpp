#pragma once

// Sliding block codes: evaluation, one-block normal form, right-resolving and
// finite-to-one tests, degree and magic words.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "sofic/core.hpp"
#include "sofic/presentation.hpp"
#include "sofic/shift.hpp"
#include "sofic/thermo.hpp"

namespace sofic {

/// Image of a domain word; its length is |w| - memory - anticipation.
inline Word apply_to_word(const SlidingBlockCode& code, std::span<const Symbol> w) {
  const std::size_t n = code.window();
  if (w.size() < n) throw Error(ErrorKind::invalid_input, "word shorter than the code window");
  if (!code.domain.is_path(w)) throw Error(ErrorKind::not_in_language, "word is not in the domain language");
  Word out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    auto it = code.table.find(Word(w.begin() + static_cast<std::ptrdiff_t>(i),
                                   w.begin() + static_cast<std::ptrdiff_t>(i + n)));
    if (it == code.table.end()) throw Error(ErrorKind::invalid_input, "code table is not total");
    out.push_back(it->second);
  }
  return out;
}

/// Conjugate higher block domain and an equivalent one-block code. Edge e of
/// the new domain is the window path higher_block_paths(domain, window)[e].
inline std::pair<EdgeShift, SlidingBlockCode> recode_to_one_block(const SlidingBlockCode& code) {
  if (code.is_one_block()) return {code.domain, code};
  const std::size_t n = code.window();
  auto [block, conj] = higher_block_shift(code.domain, n);
  std::vector<Symbol> labels;
  for (const auto& path : higher_block_paths(code.domain, n)) {
    auto it = code.table.find(path);
    if (it == code.table.end()) throw Error(ErrorKind::invalid_input, "code table is not total");
    labels.push_back(it->second);
  }
  auto one = SlidingBlockCode::one_block(block, code.codomain, labels);
  return {std::move(block), std::move(one)};
}

inline bool is_right_resolving(const SlidingBlockCode& code) {
  if (!code.is_one_block()) throw Error(ErrorKind::invalid_input, "is_right_resolving needs a one-block code");
  return SoficPresentation(code.domain, code.codomain, code.labels()).is_deterministic();
}

/// Diamond search in the pair graph: split at a diagonal pair (two distinct
/// equally labeled edges), then look for a return to the diagonal.
inline bool is_finite_to_one(const SlidingBlockCode& code) {
  if (!code.is_one_block()) throw Error(ErrorKind::invalid_input, "is_finite_to_one needs a one-block code");
  const auto& g = code.domain;
  const auto labels = code.labels();
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n * n, false);
  std::queue<std::pair<std::size_t, std::size_t>> work;
  auto visit = [&](std::size_t a, std::size_t b) {
    if (!seen[a * n + b]) {
      seen[a * n + b] = true;
      work.emplace(a, b);
    }
  };
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    for (std::size_t f = 0; f < g.edge_count(); ++f) {
      if (e != f && labels[e] == labels[f] && g.edge(e).source == g.edge(f).source) {
        visit(g.edge(e).target, g.edge(f).target);
      }
    }
  }
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop();
    if (a == b) return false;
    for (std::size_t e : g.out_edges(a)) {
      for (std::size_t f : g.out_edges(b)) {
        if (labels[e] == labels[f]) visit(g.edge(e).target, g.edge(f).target);
      }
    }
  }
  return true;
}

struct MagicWord {
  Word word;
  std::size_t coordinate = 0;
  std::size_t count = 0;  // distinct preimage symbols at the coordinate
};

namespace detail {

/// Every set reachable by stepping the full state set forward (or backward)
/// along words, with a shortest word reaching it. Breadth-first with symbols
/// in increasing order, so ties go to the lexicographically least word.
inline std::vector<std::pair<StateSet, Word>> reachable_subsets(const SoficPresentation& p, bool backward,
                                                                 std::size_t cap = 1u << 16) {
  std::map<StateSet, std::size_t> index;
  std::vector<std::pair<StateSet, Word>> out;
  std::queue<std::size_t> work;
  out.emplace_back(p.all_states(), Word{});
  index.emplace(out.back().first, 0);
  work.push(0);
  while (!work.empty()) {
    const std::size_t i = work.front();
    work.pop();
    for (Symbol a = 0; a < p.alphabet().size(); ++a) {
      StateSet next = backward ? p.step_back(out[i].first, a) : p.step(out[i].first, a);
      if (next.empty() || index.count(next)) continue;
      Word w = out[i].second;
      if (backward) w.insert(w.begin(), a);
      else w.push_back(a);
      index.emplace(next, out.size());
      out.emplace_back(std::move(next), std::move(w));
      if (out.size() > cap) throw Error(ErrorKind::enumeration_too_large, "subset construction too large");
      work.push(out.size() - 1);
    }
  }
  return out;
}

}  // namespace detail

/// Minimum over words w = left b right of the number of edges usable at b's
/// coordinate, i.e. edges labeled b starting where a path labeled `left` can
/// end and ending where a path labeled `right` can start. The achievable
/// start/end sets come from forward and backward subset constructions, so the
/// minimum is exact.
inline MagicWord find_magic_word(const SlidingBlockCode& code) {
  if (!is_finite_to_one(code)) throw Error(ErrorKind::not_finite_to_one, "degree undefined (infinite)");
  const SoficPresentation p(code.domain, code.codomain, code.labels());
  const auto lefts = detail::reachable_subsets(p, false);
  const auto rights = detail::reachable_subsets(p, true);
  std::optional<MagicWord> best;
  for (const auto& [t, left] : lefts) {
    std::vector<bool> in_t(p.state_count(), false);
    for (auto q : t) in_t[q] = true;
    for (Symbol b = 0; b < p.alphabet().size(); ++b) {
      for (const auto& [s, right] : rights) {
        std::vector<bool> in_s(p.state_count(), false);
        for (auto q : s) in_s[q] = true;
        std::size_t count = 0;
        for (std::size_t e = 0; e < p.graph().edge_count(); ++e) {
          const auto& edge = p.graph().edge(e);
          if (p.label(e) == b && in_t[edge.source] && in_s[edge.target]) ++count;
        }
        if (count == 0) continue;
        MagicWord cand{concat(left, Word{b}, right), left.size(), count};
        const bool better = !best || count < best->count ||
                            (count == best->count && (cand.word.size() < best->word.size() ||
                                                      (cand.word.size() == best->word.size() &&
                                                       std::tie(cand.word, cand.coordinate) <
                                                           std::tie(best->word, best->coordinate))));
        if (better) best = std::move(cand);
      }
    }
  }
  if (!best) throw Error(ErrorKind::empty_shift, "code has an empty image");
  return *best;
}

/// Block codes are recoded to one-block form first; the degree is unchanged.
inline std::size_t degree(const SlidingBlockCode& code) {
  if (!code.is_one_block()) return find_magic_word(recode_to_one_block(code).second).count;
  return find_magic_word(code).count;
}

/// d*(w): minimum over coordinates of the number of distinct domain symbols
/// at that coordinate among preimage paths of w. Brute force, for tests.
inline std::size_t preimage_symbol_min(const SlidingBlockCode& code, std::span<const Symbol> w) {
  const auto labels = code.labels();
  std::vector<std::set<Symbol>> at(w.size());
  for (const auto& path : words_of_length(code.domain, w.size())) {
    bool match = true;
    for (std::size_t i = 0; i < w.size() && match; ++i) match = labels[path[i]] == w[i];
    if (!match) continue;
    for (std::size_t i = 0; i < w.size(); ++i) at[i].insert(path[i]);
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& s : at) best = std::min(best, s.size());
  return w.empty() ? 0 : best;
}

struct CodeAnalysis {
  bool right_resolving = false;
  bool finite_to_one = false;
  std::optional<std::size_t> degree;  // empty: infinite
  std::optional<MagicWord> magic_word;
  bool almost_invertible = false;
};

inline CodeAnalysis analyze(const SlidingBlockCode& code) {
  const auto one = recode_to_one_block(code).second;
  CodeAnalysis a;
  a.right_resolving = is_right_resolving(one);
  a.finite_to_one = is_finite_to_one(one);
  if (a.finite_to_one) {
    a.magic_word = find_magic_word(one);
    a.degree = a.magic_word->count;
    a.almost_invertible = *a.degree == 1;
  }
  return a;
}

/// (f o pi)(u) = f(Pi(u)) on every domain path of f's range.
inline Potential pullback_potential(const SlidingBlockCode& code, const Potential& f) {
  const auto labels = code.labels();
  Potential g;
  g.range = f.range;
  for (const auto& path : words_of_length(code.domain, f.range)) {
    Word image;
    for (Symbol e : path) image.push_back(labels[e]);
    g.table.emplace(path, f(image));
  }
  return g;
}

// Test codes.

/// Full 3-shift onto the full 2-shift merging symbols 1 and 2.
inline SlidingBlockCode amalgamation_code() {
  return SlidingBlockCode::one_block(full_shift(3), Alphabet::numeric(2), {0, 1, 1});
}

/// y_0 = x_0 xor x_1 on the full 2-shift (memory 0, anticipation 1).
inline SlidingBlockCode xor_code() {
  SlidingBlockCode c{full_shift(2), Alphabet::numeric(2), 0, 1, {}};
  for (Symbol a = 0; a < 2; ++a) {
    for (Symbol b = 0; b < 2; ++b) c.table.emplace(Word{a, b}, a ^ b);
  }
  return c;
}

}  // namespace sofic
