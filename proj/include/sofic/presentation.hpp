#pragma once

// Sofic shifts as labeled graphs: image presentations, subset construction,
// follower-set minimization to the Fischer cover, and language queries.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sofic/core.hpp"
#include "sofic/shift.hpp"

namespace sofic {

/// Sorted set of presentation states.
using StateSet = std::vector<std::size_t>;

/// A labeled directed graph; its bi-infinite label sequences form the sofic
/// shift it presents.
class SoficPresentation {
 public:
  SoficPresentation() = default;

  SoficPresentation(EdgeShift graph, Alphabet alphabet, std::vector<Symbol> labels)
      : graph_(std::move(graph)), alphabet_(std::move(alphabet)), labels_(std::move(labels)) {
    if (labels_.size() != graph_.edge_count()) {
      throw Error(ErrorKind::invalid_input, "one label per edge required");
    }
    for (Symbol a : labels_) {
      if (a >= alphabet_.size()) throw Error(ErrorKind::invalid_input, "edge label outside alphabet");
    }
  }

  /// An edge shift viewed as a presentation of itself (edges label themselves).
  static SoficPresentation of_edge_shift(const EdgeShift& s) {
    std::vector<Symbol> labels(s.edge_count());
    for (std::size_t e = 0; e < labels.size(); ++e) labels[e] = static_cast<Symbol>(e);
    return SoficPresentation(s, s.edge_alphabet(), std::move(labels));
  }

  /// The SFT given by forbidden words with each n-block edge labeled by its
  /// last symbol. The labeling is a conjugacy and is right-resolving.
  static SoficPresentation of_forbidden_words(const Alphabet& alphabet, const std::set<Word>& forbidden,
                                              std::size_t n) {
    auto bg = sft_block_graph(alphabet, forbidden, n);
    if (bg.shift.is_empty()) throw Error(ErrorKind::empty_shift, "empty shift");
    std::vector<Symbol> labels;
    for (const auto& block : bg.edge_blocks) labels.push_back(block.back());
    return SoficPresentation(std::move(bg.shift), alphabet, std::move(labels));
  }

  const EdgeShift& graph() const noexcept { return graph_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Symbol>& labels() const noexcept { return labels_; }
  Symbol label(std::size_t e) const { return labels_.at(e); }
  std::size_t state_count() const noexcept { return graph_.vertex_count(); }

  /// Right-resolving: out-labels at every state are pairwise distinct.
  bool is_deterministic() const {
    for (std::size_t v = 0; v < graph_.vertex_count(); ++v) {
      std::set<Symbol> seen;
      for (std::size_t e : graph_.out_edges(v)) {
        if (!seen.insert(labels_[e]).second) return false;
      }
    }
    return true;
  }

  /// Target of the (unique) edge labeled `a` out of `q`; deterministic only.
  std::optional<std::size_t> follow(std::size_t q, Symbol a) const {
    for (std::size_t e : graph_.out_edges(q)) {
      if (labels_[e] == a) return graph_.edge(e).target;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> follow(std::size_t q, std::span<const Symbol> w) const {
    std::optional<std::size_t> cur = q;
    for (Symbol a : w) {
      cur = follow(*cur, a);
      if (!cur) return std::nullopt;
    }
    return cur;
  }

  StateSet all_states() const {
    StateSet s(state_count());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
    return s;
  }

  /// Terminal states of paths labeled `a` starting in `from`.
  StateSet step(const StateSet& from, Symbol a) const {
    StateSet out;
    for (std::size_t q : from) {
      for (std::size_t e : graph_.out_edges(q)) {
        if (labels_[e] == a) out.push_back(graph_.edge(e).target);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  StateSet step(StateSet from, std::span<const Symbol> w) const {
    for (Symbol a : w) {
      from = step(from, a);
      if (from.empty()) break;
    }
    return from;
  }

  /// States from which some path labeled `a` leads into `to`.
  StateSet step_back(const StateSet& to, Symbol a) const {
    std::vector<bool> in(state_count(), false);
    for (auto q : to) in[q] = true;
    StateSet out;
    for (std::size_t e = 0; e < graph_.edge_count(); ++e) {
      if (labels_[e] == a && in[graph_.edge(e).target]) out.push_back(graph_.edge(e).source);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// The presentation as a one-block code from its edge shift.
  SlidingBlockCode code() const { return SlidingBlockCode::one_block(graph_, alphabet_, labels_); }

 private:
  EdgeShift graph_;
  Alphabet alphabet_;
  std::vector<Symbol> labels_;
};

/// Labels each domain edge by its image symbol.
inline SoficPresentation image_presentation(const EdgeShift& domain, const SlidingBlockCode& code) {
  if (!code.is_one_block()) {
    throw Error(ErrorKind::invalid_input, "image presentation requires a one-block code");
  }
  if (!(code.domain == domain)) throw Error(ErrorKind::invalid_input, "code domain does not match");
  return SoficPresentation(domain, code.codomain, code.labels());
}

/// w is in the language iff some path carries it.
inline bool membership(const SoficPresentation& p, std::span<const Symbol> w) {
  if (p.graph().is_empty()) return false;
  return !p.step(p.all_states(), w).empty();
}

/// Exact enumeration of the words of length n, lexicographic in symbol index.
/// Runs the subset construction on the fly, so each word is produced once.
inline std::vector<Word> words_of_length(const SoficPresentation& p, std::size_t n,
                                         std::size_t cap = kDefaultEnumerationCap) {
  std::vector<Word> out;
  if (p.graph().is_empty()) return out;
  Word cur;
  std::vector<std::pair<StateSet, Symbol>> stack;  // (state set before position, next symbol)
  stack.emplace_back(p.all_states(), 0);
  if (n == 0) return {Word{}};
  while (!stack.empty()) {
    auto& [set, next] = stack.back();
    if (next >= p.alphabet().size()) {
      stack.pop_back();
      if (!cur.empty()) cur.pop_back();
      continue;
    }
    const Symbol a = next++;
    StateSet after = p.step(set, a);
    if (after.empty()) continue;
    cur.push_back(a);
    if (cur.size() == n) {
      out.push_back(cur);
      if (out.size() > cap) {
        throw Error(ErrorKind::enumeration_too_large,
                    "enumeration too large: more than " + std::to_string(cap) + " words");
      }
      cur.pop_back();
    } else {
      stack.emplace_back(std::move(after), 0);
    }
  }
  return out;
}

namespace detail {

inline std::string subset_name(const SoficPresentation& p, const StateSet& s) {
  std::string name = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) name += ',';
    name += p.graph().vertices()[s[i]];
  }
  return name + "}";
}

/// Builds a presentation from states and (source, label, target) triples,
/// naming each edge "<source>/<label>".
inline SoficPresentation build_presentation(const std::vector<std::string>& states,
                                            const std::vector<std::tuple<std::size_t, Symbol, std::size_t>>& edges,
                                            const Alphabet& alphabet) {
  std::vector<Edge> es;
  std::vector<Symbol> labels;
  for (const auto& [src, a, tgt] : edges) {
    es.push_back({states[src] + "/" + alphabet[a], src, tgt});
    labels.push_back(a);
  }
  return SoficPresentation(EdgeShift(states, std::move(es)), alphabet, std::move(labels));
}

inline SoficPresentation restrict_states(const SoficPresentation& p, const std::vector<bool>& keep) {
  std::vector<std::size_t> remap(p.state_count(), 0);
  std::vector<std::string> states;
  for (std::size_t v = 0; v < p.state_count(); ++v) {
    if (keep[v]) {
      remap[v] = states.size();
      states.push_back(p.graph().vertices()[v]);
    }
  }
  std::vector<Edge> edges;
  std::vector<Symbol> labels;
  for (std::size_t e = 0; e < p.graph().edge_count(); ++e) {
    const auto& edge = p.graph().edge(e);
    if (keep[edge.source] && keep[edge.target]) {
      edges.push_back({edge.name, remap[edge.source], remap[edge.target]});
      labels.push_back(p.label(e));
    }
  }
  return SoficPresentation(EdgeShift(std::move(states), std::move(edges)), p.alphabet(), std::move(labels));
}

/// Drops states not on bi-infinite paths, keeping labels aligned.
inline SoficPresentation prune_presentation(const SoficPresentation& p) {
  EdgeShift pruned = prune(p.graph());
  std::map<std::string, Symbol> label_of;
  for (std::size_t e = 0; e < p.graph().edge_count(); ++e) label_of.emplace(p.graph().edge(e).name, p.label(e));
  std::vector<Symbol> labels;
  for (const auto& e : pruned.edges()) labels.push_back(label_of.at(e.name));
  return SoficPresentation(std::move(pruned), p.alphabet(), std::move(labels));
}

}  // namespace detail

/// Subset construction from singleton states, restricted to reachable
/// nonempty subsets and pruned to the essential part. Presents the same shift.
inline SoficPresentation determinize(const SoficPresentation& p, std::size_t cap = 1u << 16) {
  if (p.graph().is_empty()) throw Error(ErrorKind::empty_shift, "determinize requires a nonempty shift");
  std::map<StateSet, std::size_t> index;
  std::vector<StateSet> subsets;
  std::queue<std::size_t> work;
  auto intern = [&](const StateSet& s) {
    auto [it, fresh] = index.emplace(s, subsets.size());
    if (fresh) {
      subsets.push_back(s);
      work.push(it->second);
      if (subsets.size() > cap) {
        throw Error(ErrorKind::enumeration_too_large,
                    "subset construction exceeded " + std::to_string(cap) + " states");
      }
    }
    return it->second;
  };
  for (std::size_t q = 0; q < p.state_count(); ++q) intern(StateSet{q});
  std::vector<std::tuple<std::size_t, Symbol, std::size_t>> edges;
  while (!work.empty()) {
    const std::size_t i = work.front();
    work.pop();
    for (Symbol a = 0; a < p.alphabet().size(); ++a) {
      StateSet next = p.step(subsets[i], a);
      if (next.empty()) continue;
      const std::size_t j = intern(next);
      edges.emplace_back(i, a, j);
    }
  }
  std::vector<std::string> names;
  for (const auto& s : subsets) names.push_back(detail::subset_name(p, s));
  std::sort(edges.begin(), edges.end());
  auto built = detail::build_presentation(names, edges, p.alphabet());
  auto pruned = detail::prune_presentation(built);
  if (pruned.graph().is_empty()) throw Error(ErrorKind::empty_shift, "presentation has no bi-infinite paths");
  return pruned;
}

/// Merges states with equal follower sets by partition refinement on a
/// deterministic presentation.
inline SoficPresentation minimize(const SoficPresentation& p) {
  if (!p.is_deterministic()) throw Error(ErrorKind::invalid_input, "minimize requires a deterministic presentation");
  const std::size_t n = p.state_count();
  const std::size_t k = p.alphabet().size();
  std::vector<std::size_t> block(n, 0);
  std::size_t blocks = 1;
  for (;;) {
    std::map<std::vector<long long>, std::size_t> sig_index;
    std::vector<std::size_t> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<long long> sig{static_cast<long long>(block[q])};
      for (Symbol a = 0; a < k; ++a) {
        auto t = p.follow(q, a);
        sig.push_back(t ? static_cast<long long>(block[*t]) : -1);
      }
      auto [it, fresh] = sig_index.emplace(std::move(sig), sig_index.size());
      next[q] = it->second;
    }
    const std::size_t count = sig_index.size();
    block = std::move(next);
    if (count == blocks) break;
    blocks = count;
  }
  // number blocks by smallest member so the output order is canonical
  std::vector<std::size_t> rep(blocks, n), order(blocks);
  for (std::size_t q = 0; q < n; ++q) rep[block[q]] = std::min(rep[block[q]], q);
  std::vector<std::size_t> sorted(blocks);
  for (std::size_t b = 0; b < blocks; ++b) sorted[b] = b;
  std::sort(sorted.begin(), sorted.end(), [&](auto a, auto b) { return rep[a] < rep[b]; });
  for (std::size_t i = 0; i < blocks; ++i) order[sorted[i]] = i;
  std::vector<std::string> names(blocks);
  std::vector<std::tuple<std::size_t, Symbol, std::size_t>> edges;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t q = rep[b];
    names[order[b]] = p.graph().vertices()[q];
    for (Symbol a = 0; a < k; ++a) {
      if (auto t = p.follow(q, a)) edges.emplace_back(order[b], a, order[block[*t]]);
    }
  }
  std::sort(edges.begin(), edges.end());
  return detail::build_presentation(names, edges, p.alphabet());
}

namespace detail {

/// True when every word presented by `big` is also presented by `small`.
inline bool language_included(const SoficPresentation& big, const SoficPresentation& small,
                              std::size_t cap = 1u << 18) {
  std::set<std::pair<StateSet, StateSet>> seen;
  std::queue<std::pair<StateSet, StateSet>> work;
  work.emplace(big.all_states(), small.all_states());
  seen.insert(work.front());
  while (!work.empty()) {
    auto [b, s] = work.front();
    work.pop();
    for (Symbol a = 0; a < big.alphabet().size(); ++a) {
      StateSet nb = big.step(b, a);
      if (nb.empty()) continue;
      StateSet ns = small.step(s, a);
      if (ns.empty()) return false;
      if (seen.emplace(nb, ns).second) {
        if (seen.size() > cap) throw Error(ErrorKind::enumeration_too_large, "language inclusion search too large");
        work.emplace(std::move(nb), std::move(ns));
      }
    }
  }
  return true;
}

/// Sink components of the condensation that carry at least one edge.
inline std::vector<std::vector<std::size_t>> sink_components(const EdgeShift& g) {
  const auto comps = strongly_connected_components(g);
  std::vector<std::size_t> comp_of(g.vertex_count());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (auto v : comps[c]) comp_of[v] = c;
  }
  std::vector<bool> sink(comps.size(), true), cyclic(comps.size(), false);
  for (const auto& e : g.edges()) {
    if (comp_of[e.source] != comp_of[e.target]) sink[comp_of[e.source]] = false;
    else cyclic[comp_of[e.source]] = true;
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (sink[c] && cyclic[c]) out.push_back(comps[c]);
  }
  return out;
}

}  // namespace detail

/// Irreducibility of the presented language, decided on the minimized
/// deterministic presentation: a unique sink component must already present
/// every word.
inline bool is_irreducible(const SoficPresentation& p) {
  if (p.graph().is_empty()) return false;
  const SoficPresentation det = p.is_deterministic() ? detail::prune_presentation(p) : determinize(p);
  const SoficPresentation m = minimize(det);
  const auto sinks = detail::sink_components(m.graph());
  if (sinks.size() != 1) return false;
  std::vector<bool> keep(m.state_count(), false);
  for (auto v : sinks.front()) keep[v] = true;
  return detail::language_included(m, detail::restrict_states(m, keep));
}

struct FischerCover {
  SoficPresentation presentation;  // minimal right-resolving presentation
  SlidingBlockCode cover;          // one-block code from its edge shift onto the sofic shift
};

/// Minimal right-resolving presentation of an irreducible sofic shift.
inline FischerCover minimize_fischer(const SoficPresentation& p) {
  if (!p.is_deterministic()) {
    throw Error(ErrorKind::invalid_input, "minimize_fischer requires a deterministic presentation");
  }
  const SoficPresentation m = minimize(detail::prune_presentation(p));
  const auto sinks = detail::sink_components(m.graph());
  if (sinks.size() != 1) throw Error(ErrorKind::requires_irreducible, "requires irreducible sofic shift");
  std::vector<bool> keep(m.state_count(), false);
  for (auto v : sinks.front()) keep[v] = true;
  SoficPresentation core = detail::restrict_states(m, keep);
  if (!detail::language_included(m, core)) {
    throw Error(ErrorKind::requires_irreducible, "requires irreducible sofic shift");
  }
  // the sink component is follower-separated already; minimizing again only
  // renumbers
  SoficPresentation fischer = minimize(core);
  auto code = fischer.code();
  return {std::move(fischer), std::move(code)};
}

/// Fischer cover of any presentation of an irreducible sofic shift.
inline FischerCover fischer_cover(const SoficPresentation& p) {
  return minimize_fischer(p.is_deterministic() ? detail::prune_presentation(p) : determinize(p));
}

// Standard presentations used by tests, samples and the CLI.

/// Even shift: A -1-> A, A -0-> B, B -0-> A.
inline SoficPresentation even_shift() {
  EdgeShift g({"A", "B"}, {{"a", 0, 0}, {"b", 0, 1}, {"c", 1, 0}});
  return SoficPresentation(std::move(g), Alphabet::numeric(2), {1, 0, 0});
}

/// Golden mean shift (no "11") on its 2-block graph, labeled by symbol.
inline SoficPresentation golden_mean() {
  return SoficPresentation::of_forbidden_words(Alphabet::numeric(2), {Word{1, 1}}, 2);
}

/// Sequences over {0,1} with at most one 1.
inline SoficPresentation sunny_side_up() {
  EdgeShift g({"S0", "S1"}, {{"z0", 0, 0}, {"one", 0, 1}, {"z1", 1, 1}});
  return SoficPresentation(std::move(g), Alphabet::numeric(2), {0, 1, 0});
}

}  // namespace sofic
