#pragma once

// Edge shifts: finite directed multigraphs whose bi-infinite edge paths form a
// shift of finite type, together with the structural invariants used by the
// rest of the library (strong connectivity, period, cyclic classes) and the
// standard higher block / higher power recodings.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sofic/core.hpp"

namespace sofic {

struct Edge {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;

  bool operator==(const Edge&) const = default;
};

/// A finite directed multigraph. The alphabet of the shift is the edge set,
/// so a Word over an EdgeShift is a sequence of edge indices.
class EdgeShift {
 public:
  /// The empty shift.
  EdgeShift() = default;

  EdgeShift(std::vector<std::string> vertices, std::vector<Edge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::set<std::string> seen;
    for (const auto& v : vertices_) {
      if (!seen.insert(v).second) {
        throw Error(ErrorKind::invalid_input, "duplicate vertex '" + v + "'");
      }
    }
    seen.clear();
    out_.resize(vertices_.size());
    in_.resize(vertices_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& edge = edges_[e];
      if (edge.source >= vertices_.size() || edge.target >= vertices_.size()) {
        throw Error(ErrorKind::invalid_input, "edge '" + edge.name + "' has an undeclared endpoint");
      }
      if (!seen.insert(edge.name).second) {
        throw Error(ErrorKind::invalid_input, "duplicate edge id '" + edge.name + "'");
      }
      out_[edge.source].push_back(e);
      in_[edge.target].push_back(e);
    }
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool is_empty() const noexcept { return edges_.empty(); }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_.at(v); }

  std::optional<std::size_t> find_vertex(const std::string& name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  /// Vertex-indexed matrix of edge counts.
  std::vector<std::vector<std::uint64_t>> adjacency() const {
    std::vector<std::vector<std::uint64_t>> a(vertices_.size(), std::vector<std::uint64_t>(vertices_.size(), 0));
    for (const auto& e : edges_) ++a[e.source][e.target];
    return a;
  }

  /// Every vertex has in-degree and out-degree at least one.
  bool is_essential() const {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      if (out_[v].empty() || in_[v].empty()) return false;
    }
    return true;
  }

  /// Alphabet whose tokens are the edge names.
  Alphabet edge_alphabet() const {
    std::vector<std::string> names;
    for (const auto& e : edges_) names.push_back(e.name);
    return Alphabet(std::move(names));
  }

  /// True when `w` is a path.
  bool is_path(std::span<const Symbol> w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] >= edges_.size()) return false;
      if (i > 0 && edges_[w[i - 1]].target != edges_[w[i]].source) return false;
    }
    return true;
  }

  bool operator==(const EdgeShift&) const = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// A sliding block code on an edge shift: the image symbol at coordinate i is
/// table(x[i-memory .. i+anticipation]).
struct SlidingBlockCode {
  EdgeShift domain;
  Alphabet codomain;
  std::size_t memory = 0;
  std::size_t anticipation = 0;
  std::map<Word, Symbol> table;

  std::size_t window() const noexcept { return memory + anticipation + 1; }
  bool is_one_block() const noexcept { return memory == 0 && anticipation == 0; }

  /// Edge-indexed labels of a one-block code.
  std::vector<Symbol> labels() const {
    if (!is_one_block()) {
      throw Error(ErrorKind::invalid_input, "labels() requires a one-block code");
    }
    std::vector<Symbol> out(domain.edge_count());
    for (std::size_t e = 0; e < out.size(); ++e) {
      auto it = table.find(Word{static_cast<Symbol>(e)});
      if (it == table.end()) {
        throw Error(ErrorKind::invalid_input, "code table is not total on edges");
      }
      out[e] = it->second;
    }
    return out;
  }

  static SlidingBlockCode one_block(EdgeShift domain, Alphabet codomain, const std::vector<Symbol>& labels) {
    if (labels.size() != domain.edge_count()) {
      throw Error(ErrorKind::invalid_input, "one label per edge required");
    }
    SlidingBlockCode code{std::move(domain), std::move(codomain), 0, 0, {}};
    for (std::size_t e = 0; e < labels.size(); ++e) {
      if (labels[e] >= code.codomain.size()) {
        throw Error(ErrorKind::invalid_input, "label outside codomain alphabet");
      }
      code.table.emplace(Word{static_cast<Symbol>(e)}, labels[e]);
    }
    return code;
  }

  static SlidingBlockCode identity(const EdgeShift& domain) {
    std::vector<Symbol> labels(domain.edge_count());
    std::iota(labels.begin(), labels.end(), Symbol{0});
    return one_block(domain, domain.edge_alphabet(), labels);
  }
};

struct CyclicStructure {
  std::size_t period = 1;
  std::vector<std::size_t> class_of;  // vertex -> residue mod period
};

namespace detail {

inline std::string join_names(const std::vector<std::string>& parts, bool tight) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!tight && i > 0) out += '.';
    out += parts[i];
  }
  return out;
}

inline bool single_char_edge_names(const EdgeShift& s) {
  return std::all_of(s.edges().begin(), s.edges().end(), [](const Edge& e) { return e.name.size() == 1; });
}

inline bool single_char_vertex_names(const EdgeShift& s) {
  return std::all_of(s.vertices().begin(), s.vertices().end(), [](const std::string& v) { return v.size() == 1; });
}

/// All paths with exactly `length` edges, lexicographic in edge index.
inline std::vector<Word> enumerate_paths(const EdgeShift& s, std::size_t length, std::size_t cap) {
  std::vector<Word> out;
  if (length == 0) {
    out.emplace_back();
    return out;
  }
  Word cur;
  cur.reserve(length);
  // cursor[d] is the next option to try at depth d
  std::vector<std::size_t> cursor;
  std::vector<std::size_t> all(s.edge_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  auto options = [&](std::size_t depth) -> const std::vector<std::size_t>& {
    if (depth == 0) return all;
    return s.out_edges(s.edge(cur[depth - 1]).target);
  };
  cursor.push_back(0);
  while (!cursor.empty()) {
    const std::size_t depth = cursor.size() - 1;
    const auto& opts = options(depth);
    if (cursor.back() >= opts.size()) {
      cursor.pop_back();
      if (!cur.empty()) cur.pop_back();
      continue;
    }
    const std::size_t e = opts[cursor.back()++];
    cur.push_back(static_cast<Symbol>(e));
    if (cur.size() == length) {
      out.push_back(cur);
      if (out.size() > cap) {
        throw Error(ErrorKind::enumeration_too_large,
                    "enumeration too large: more than " + std::to_string(cap) + " words");
      }
      cur.pop_back();
    } else {
      cursor.push_back(0);
    }
  }
  // out_edges lists are in edge-index order, so `out` is already sorted
  return out;
}

inline std::vector<std::size_t> bfs_levels(const EdgeShift& s, std::size_t root,
                                           const std::vector<bool>& allowed) {
  std::vector<std::size_t> level(s.vertex_count(), std::numeric_limits<std::size_t>::max());
  std::queue<std::size_t> q;
  level[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t e : s.out_edges(v)) {
      const std::size_t t = s.edge(e).target;
      if (!allowed[t] || level[t] != std::numeric_limits<std::size_t>::max()) continue;
      level[t] = level[v] + 1;
      q.push(t);
    }
  }
  return level;
}

inline std::size_t gcd_of_level_gaps(const EdgeShift& s, const std::vector<std::size_t>& level,
                                     const std::vector<bool>& allowed) {
  std::size_t g = 0;
  for (const auto& e : s.edges()) {
    if (!allowed[e.source] || !allowed[e.target]) continue;
    const auto a = static_cast<long long>(level[e.source]) + 1;
    const auto b = static_cast<long long>(level[e.target]);
    g = std::gcd(g, static_cast<std::size_t>(a > b ? a - b : b - a));
  }
  return g;
}

}  // namespace detail

/// Strongly connected components (Tarjan, iterative). Components are listed
/// in order of their smallest vertex; vertices within a component ascend.
inline std::vector<std::vector<std::size_t>> strongly_connected_components(const EdgeShift& s) {
  const std::size_t n = s.vertex_count();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next out-edge slot)
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, slot] = call.back();
      const auto& outs = s.out_edges(v);
      if (slot < outs.size()) {
        const std::size_t w = s.edge(outs[slot++]).target;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        low[call.back().first] = std::min(low[call.back().first], low[finished]);
      }
    }
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

/// Removes vertices with no incoming or no outgoing edges until a fixpoint.
/// Vertex and edge order is preserved.
inline EdgeShift prune(const EdgeShift& s) {
  const std::size_t n = s.vertex_count();
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  for (const auto& e : s.edges()) {
    ++outdeg[e.source];
    ++indeg[e.target];
  }
  std::queue<std::size_t> q;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0 || outdeg[v] == 0) {
      alive[v] = false;
      q.push(v);
    }
  }
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t e : s.out_edges(v)) {
      const std::size_t t = s.edge(e).target;
      if (alive[t] && --indeg[t] == 0) {
        alive[t] = false;
        q.push(t);
      }
    }
    for (std::size_t e : s.in_edges(v)) {
      const std::size_t src = s.edge(e).source;
      if (alive[src] && --outdeg[src] == 0) {
        alive[src] = false;
        q.push(src);
      }
    }
  }
  std::vector<std::size_t> remap(n, 0);
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v]) {
      remap[v] = vertices.size();
      vertices.push_back(s.vertices()[v]);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : s.edges()) {
    if (alive[e.source] && alive[e.target]) {
      edges.push_back({e.name, remap[e.source], remap[e.target]});
    }
  }
  if (edges.empty()) return EdgeShift{};
  return EdgeShift(std::move(vertices), std::move(edges));
}

namespace detail {

inline bool contains_factor(std::span<const Symbol> w, const std::set<Word>& forbidden) {
  for (const auto& f : forbidden) {
    if (f.size() > w.size()) continue;
    for (std::size_t i = 0; i + f.size() <= w.size(); ++i) {
      if (std::equal(f.begin(), f.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) return true;
    }
  }
  return false;
}

/// All words of a given length over `k` symbols avoiding `forbidden`,
/// lexicographic.
inline std::vector<Word> allowed_words(std::size_t k, std::size_t length, const std::set<Word>& forbidden,
                                       std::size_t cap) {
  std::vector<Word> out{Word{}};
  for (std::size_t len = 1; len <= length; ++len) {
    std::vector<Word> next;
    for (const auto& w : out) {
      for (Symbol a = 0; a < k; ++a) {
        Word x = w;
        x.push_back(a);
        // only suffixes can newly contain a forbidden factor
        bool bad = false;
        for (const auto& f : forbidden) {
          if (f.size() <= x.size() &&
              std::equal(f.begin(), f.end(), x.end() - static_cast<std::ptrdiff_t>(f.size()))) {
            bad = true;
            break;
          }
        }
        if (!bad) next.push_back(std::move(x));
        if (next.size() > cap) {
          throw Error(ErrorKind::enumeration_too_large,
                      "enumeration too large: more than " + std::to_string(cap) + " words");
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

/// An SFT presented on (n-1)-blocks, with the n-block carried by each edge.
struct BlockGraph {
  EdgeShift shift;
  std::vector<Word> edge_blocks;  // edge index -> allowed n-word
};

inline BlockGraph sft_block_graph(const Alphabet& alphabet, const std::set<Word>& forbidden, std::size_t n,
                                  std::size_t cap = kDefaultEnumerationCap) {
  if (n < 2) throw Error(ErrorKind::invalid_input, "window must be at least 2");
  for (const auto& f : forbidden) {
    if (f.empty()) throw Error(ErrorKind::invalid_input, "forbidden words must be nonempty");
    if (f.size() > n) {
      throw Error(ErrorKind::invalid_input, "forbidden word '" + alphabet.format(f) + "' is longer than the window " +
                                                std::to_string(n));
    }
    for (Symbol a : f) {
      if (a >= alphabet.size()) throw Error(ErrorKind::invalid_input, "forbidden word outside alphabet");
    }
  }
  const auto vertex_words = detail::allowed_words(alphabet.size(), n - 1, forbidden, cap);
  const auto edge_words = detail::allowed_words(alphabet.size(), n, forbidden, cap);
  std::map<Word, std::size_t> vertex_index;
  std::vector<std::string> vertices;
  for (const auto& w : vertex_words) {
    vertex_index.emplace(w, vertices.size());
    vertices.push_back(alphabet.format(w));
  }
  std::vector<Edge> edges;
  std::vector<Word> blocks;
  for (const auto& w : edge_words) {
    const Word head(w.begin(), w.end() - 1);
    const Word tail(w.begin() + 1, w.end());
    edges.push_back({alphabet.format(w), vertex_index.at(head), vertex_index.at(tail)});
    blocks.push_back(w);
  }
  if (edges.empty()) return {};
  EdgeShift raw(std::move(vertices), std::move(edges));
  EdgeShift pruned = prune(raw);
  // recover the blocks of the surviving edges by name
  std::map<std::string, Word> by_name;
  for (std::size_t e = 0; e < raw.edge_count(); ++e) by_name.emplace(raw.edge(e).name, blocks[e]);
  BlockGraph out{std::move(pruned), {}};
  for (const auto& e : out.shift.edges()) out.edge_blocks.push_back(by_name.at(e.name));
  return out;
}

/// The essential edge shift whose vertices are the allowed (n-1)-words and
/// whose edges are the allowed n-words. Returns the empty shift when nothing
/// survives pruning.
inline EdgeShift sft_from_forbidden_words(const Alphabet& alphabet, const std::set<Word>& forbidden, std::size_t n) {
  return sft_block_graph(alphabet, forbidden, n).shift;
}

inline bool is_irreducible(const EdgeShift& s) {
  if (s.is_empty()) return false;
  return strongly_connected_components(s).size() == 1;
}

/// Period and cyclic classes via BFS levels: the period is the gcd over all
/// edges u->v of |level(u) + 1 - level(v)|.
inline CyclicStructure cyclic_structure(const EdgeShift& s) {
  if (!is_irreducible(s)) {
    throw Error(ErrorKind::requires_irreducible, "cyclic structure requires irreducible shift");
  }
  const std::vector<bool> all(s.vertex_count(), true);
  const auto level = detail::bfs_levels(s, 0, all);
  CyclicStructure cs;
  cs.period = std::max<std::size_t>(1, detail::gcd_of_level_gaps(s, level, all));
  cs.class_of.resize(s.vertex_count());
  for (std::size_t v = 0; v < s.vertex_count(); ++v) cs.class_of[v] = level[v] % cs.period;
  return cs;
}

/// Period of every component that carries at least one cycle. Reducible
/// shifts have no global period; this is what gets reported instead.
inline std::vector<std::pair<std::vector<std::size_t>, std::size_t>> component_periods(const EdgeShift& s) {
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> out;
  for (const auto& comp : strongly_connected_components(s)) {
    std::vector<bool> in(s.vertex_count(), false);
    for (auto v : comp) in[v] = true;
    bool has_cycle = false;
    for (const auto& e : s.edges()) {
      if (in[e.source] && in[e.target]) has_cycle = true;
    }
    if (!has_cycle) continue;
    const auto level = detail::bfs_levels(s, comp.front(), in);
    out.emplace_back(comp, detail::gcd_of_level_gaps(s, level, in));
  }
  return out;
}

/// n-th higher block shift (vertices are paths of n-1 edges, edges are paths
/// of n edges) with the one-block conjugacy sending each block to its first
/// edge. n = 1 returns the shift itself with the identity code.
inline std::pair<EdgeShift, SlidingBlockCode> higher_block_shift(const EdgeShift& s, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_input, "block length must be positive");
  if (n == 1) return {s, SlidingBlockCode::identity(s)};
  const bool tight = detail::single_char_edge_names(s);
  auto name_of = [&](const Word& path) {
    std::vector<std::string> parts;
    for (Symbol e : path) parts.push_back(s.edge(e).name);
    return detail::join_names(parts, tight);
  };
  const auto vertex_paths = detail::enumerate_paths(s, n - 1, kDefaultEnumerationCap);
  const auto edge_paths = detail::enumerate_paths(s, n, kDefaultEnumerationCap);
  std::map<Word, std::size_t> vindex;
  std::vector<std::string> vertices;
  for (const auto& p : vertex_paths) {
    vindex.emplace(p, vertices.size());
    vertices.push_back(name_of(p));
  }
  std::vector<Edge> edges;
  std::vector<Symbol> first;
  for (const auto& p : edge_paths) {
    const Word head(p.begin(), p.end() - 1);
    const Word tail(p.begin() + 1, p.end());
    edges.push_back({name_of(p), vindex.at(head), vindex.at(tail)});
    first.push_back(p.front());
  }
  EdgeShift block(std::move(vertices), std::move(edges));
  auto code = SlidingBlockCode::one_block(block, s.edge_alphabet(), first);
  return {std::move(block), std::move(code)};
}

/// Edge paths of the n-th higher block shift in edge order (the block each
/// new edge stands for).
inline std::vector<Word> higher_block_paths(const EdgeShift& s, std::size_t n) {
  return detail::enumerate_paths(s, n, kDefaultEnumerationCap);
}

/// Same vertices; one edge per directed path of p edges.
inline EdgeShift higher_power_shift(const EdgeShift& s, std::size_t p) {
  if (p == 0) throw Error(ErrorKind::invalid_input, "power must be positive");
  if (p == 1) return s;
  const bool tight = detail::single_char_edge_names(s);
  std::vector<Edge> edges;
  for (const auto& path : detail::enumerate_paths(s, p, kDefaultEnumerationCap)) {
    std::vector<std::string> parts;
    for (Symbol e : path) parts.push_back(s.edge(e).name);
    edges.push_back({detail::join_names(parts, tight), s.edge(path.front()).source, s.edge(path.back()).target});
  }
  return EdgeShift(s.vertices(), std::move(edges));
}

/// The p-th higher power shift restricted to one cyclic class, with the
/// original p-path carried by each edge.
struct ClassPowerShift {
  EdgeShift shift;
  std::vector<Word> paths;
  std::vector<std::size_t> vertex_origin;  // new vertex -> original vertex
};

inline ClassPowerShift class_power_shift(const EdgeShift& s, const CyclicStructure& cs, std::size_t cls = 0) {
  const std::size_t p = cs.period;
  const bool tight = detail::single_char_edge_names(s);
  std::vector<std::size_t> remap(s.vertex_count(), std::numeric_limits<std::size_t>::max());
  ClassPowerShift out;
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    if (cs.class_of[v] == cls) {
      remap[v] = vertices.size();
      vertices.push_back(s.vertices()[v]);
      out.vertex_origin.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const auto& path : detail::enumerate_paths(s, p, kDefaultEnumerationCap)) {
    const auto src = s.edge(path.front()).source;
    if (cs.class_of[src] != cls) continue;
    std::vector<std::string> parts;
    for (Symbol e : path) parts.push_back(s.edge(e).name);
    edges.push_back({detail::join_names(parts, tight), remap[src], remap[s.edge(path.back()).target]});
    out.paths.push_back(path);
  }
  out.shift = EdgeShift(std::move(vertices), std::move(edges));
  return out;
}

/// Number of paths of n edges, i.e. the sum of entries of A^n (saturating).
inline std::uint64_t path_count(const EdgeShift& s, std::size_t n) {
  const std::size_t V = s.vertex_count();
  if (n == 0) return 1;
  if (V == 0) return 0;
  std::vector<std::uint64_t> ways(V, 1);  // paths of length 0 ending at v
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<std::uint64_t> next(V, 0);
    for (const auto& e : s.edges()) {
      const auto add = ways[e.source];
      next[e.target] = (kMax - next[e.target] < add) ? kMax : next[e.target] + add;
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total = (kMax - total < w) ? kMax : total + w;
  return total;
}

/// Exact enumeration of the words of length n over the edge alphabet,
/// lexicographic. n = 0 yields the empty word.
inline std::vector<Word> words_of_length(const EdgeShift& s, std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
  const auto count = path_count(s, n);
  if (count > cap) {
    throw Error(ErrorKind::enumeration_too_large, "enumeration too large: " + std::to_string(count) + " words");
  }
  return detail::enumerate_paths(s, n, cap);
}

/// Vertex sequences of length n (paths of n-1 edges, parallel edges merged),
/// lexicographic in vertex index.
inline std::vector<Word> vertex_words_of_length(const EdgeShift& s, std::size_t n,
                                                std::size_t cap = kDefaultEnumerationCap) {
  std::set<Word> out;
  if (n == 0) return {Word{}};
  if (n == 1) {
    std::vector<Word> single;
    for (std::size_t v = 0; v < s.vertex_count(); ++v) single.push_back({static_cast<Symbol>(v)});
    return single;
  }
  for (const auto& path : words_of_length(s, n - 1, cap)) {
    Word w{static_cast<Symbol>(s.edge(path.front()).source)};
    for (Symbol e : path) w.push_back(static_cast<Symbol>(s.edge(e).target));
    out.insert(std::move(w));
  }
  return {out.begin(), out.end()};
}

// Fixtures used across tests, samples and the CLI.

/// One vertex with k self-loops named "0".."k-1".
inline EdgeShift full_shift(std::size_t k) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) edges.push_back({std::to_string(i), 0, 0});
  return EdgeShift({"v"}, std::move(edges));
}

/// Directed cycle v0 -> v1 -> ... -> v(p-1) -> v0.
inline EdgeShift directed_cycle(std::size_t p) {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < p; ++i) vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < p; ++i) edges.push_back({"e" + std::to_string(i), i, (i + 1) % p});
  return EdgeShift(std::move(vertices), std::move(edges));
}

}  // namespace sofic
