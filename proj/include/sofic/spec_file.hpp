#pragma once

// Line-based description files for shifts, codes and potentials.
//
//   [alphabet] 0 1
//   [shift] kind=edge vertices=A B
//   edge e1: A -> A label 0
//   edge e2: A -> B label 1
//   edge e3: B -> A label 0
//   [potential] range=1
//   f(0) = 0.0
//   f(1) = log(2)
//
// Shift kinds: `forbidden` (window=n, lines `forbid <word>`), `edge` (edges,
// labels optional) and `labeled` (edges, labels required). `[code]` takes
// memory=, anticipation=, codomain= and lines `map <word> -> <symbol>`.
// Reals are decimals or log(<rational>). `#` starts a comment.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sofic/core.hpp"
#include "sofic/presentation.hpp"
#include "sofic/shift.hpp"
#include "sofic/thermo.hpp"

namespace sofic {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorKind::parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A real literal with its canonical spelling.
struct RealLiteral {
  double value = 0;
  std::string text;

  bool operator==(const RealLiteral&) const = default;
};

struct EdgeDecl {
  std::string name;
  std::string source;
  std::string target;
  std::optional<std::string> label;

  bool operator==(const EdgeDecl&) const = default;
};

struct ShiftDecl {
  std::string kind;  // forbidden | edge | labeled
  std::size_t window = 0;
  std::vector<std::string> forbidden;
  std::vector<std::string> vertices;
  std::vector<EdgeDecl> edges;

  bool operator==(const ShiftDecl&) const = default;
};

struct CodeDecl {
  std::size_t memory = 0;
  std::size_t anticipation = 0;
  std::vector<std::string> codomain;
  std::vector<std::pair<std::string, std::string>> maps;

  bool operator==(const CodeDecl&) const = default;
};

struct PotentialDecl {
  std::size_t range = 1;
  std::vector<std::pair<std::string, RealLiteral>> values;

  bool operator==(const PotentialDecl&) const = default;
};

struct ShiftSpecFile {
  std::optional<std::vector<std::string>> alphabet;
  std::optional<ShiftDecl> shift;
  std::optional<CodeDecl> code;
  std::optional<PotentialDecl> potential;

  bool operator==(const ShiftSpecFile&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

/// Whitespace-separated tokens with their 1-based columns.
inline std::vector<std::pair<std::string, std::size_t>> tokens(std::string_view line) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(std::string(line.substr(i, j - i)), i + 1);
    i = j;
  }
  return out;
}

inline std::string shortest_decimal(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos && s.find("inf") == std::string::npos) s += ".0";
  return s;
}

inline std::optional<double> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E')) {
      return std::nullopt;
    }
  }
  std::string buf(s);
  if (buf.front() == '+') buf.erase(0, 1);
  double v = 0;
  auto res = std::from_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc() || res.ptr != buf.data() + buf.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

/// Decimal, or log(a) / log(a/b) with positive decimals a, b.
inline std::optional<RealLiteral> parse_real(std::string_view text) {
  text = trim(text);
  if (text.rfind("log(", 0) == 0 && text.size() > 5 && text.back() == ')') {
    const std::string_view inner = trim(text.substr(4, text.size() - 5));
    const auto slash = inner.find('/');
    const auto num = parse_decimal(trim(inner.substr(0, slash)));
    std::optional<double> den = 1.0;
    if (slash != std::string_view::npos) den = parse_decimal(trim(inner.substr(slash + 1)));
    if (!num || !den || *num <= 0 || *den <= 0) return std::nullopt;
    std::string canon = "log(" + std::string(trim(inner.substr(0, slash)));
    if (slash != std::string_view::npos) canon += "/" + std::string(trim(inner.substr(slash + 1)));
    canon += ")";
    return RealLiteral{std::log(*num / *den), canon};
  }
  if (auto v = parse_decimal(text)) return RealLiteral{*v, shortest_decimal(*v)};
  return std::nullopt;
}

/// key=value attributes; bare tokens extend the previous key's value.
inline std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> attributes(
    const std::vector<std::pair<std::string, std::size_t>>& toks, std::size_t line, std::size_t from) {
  std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> out;
  std::string key;
  for (std::size_t i = from; i < toks.size(); ++i) {
    const auto& [t, col] = toks[i];
    const auto eq = t.find('=');
    if (eq != std::string::npos) {
      key = t.substr(0, eq);
      if (key.empty()) throw ParseError(line, col, "attribute without a name");
      if (out.count(key)) throw ParseError(line, col, "duplicate attribute '" + key + "'");
      auto& vals = out[key];
      if (eq + 1 < t.size()) vals.emplace_back(t.substr(eq + 1), col + eq + 1);
    } else {
      if (key.empty()) throw ParseError(line, col, "expected key=value, got '" + t + "'");
      out[key].emplace_back(t, col);
    }
  }
  return out;
}

inline std::size_t parse_count(const std::pair<std::string, std::size_t>& tok, std::size_t line) {
  std::size_t v = 0;
  auto res = std::from_chars(tok.first.data(), tok.first.data() + tok.first.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.first.data() + tok.first.size()) {
    throw ParseError(line, tok.second, "expected a nonnegative integer, got '" + tok.first + "'");
  }
  return v;
}

}  // namespace detail

/// Parses any combination of sections.
inline ShiftSpecFile parse_sections(std::string_view text) {
  ShiftSpecFile spec;
  std::string section;
  std::set<std::string> edge_ids;
  std::set<std::string> keys;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (detail::trim(raw).empty()) continue;
    const auto toks = detail::tokens(raw);
    const auto& [first, first_col] = toks.front();
    if (first.front() == '[') {
      if (first.back() != ']') throw ParseError(line_no, first_col, "malformed section header '" + first + "'");
      section = first.substr(1, first.size() - 2);
      if (section == "alphabet") {
        if (spec.alphabet) throw ParseError(line_no, first_col, "duplicate [alphabet] section");
        std::vector<std::string> symbols;
        std::set<std::string> seen;
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (!seen.insert(toks[i].first).second) {
            throw ParseError(line_no, toks[i].second, "duplicate alphabet symbol '" + toks[i].first + "'");
          }
          symbols.push_back(toks[i].first);
        }
        if (symbols.empty()) throw ParseError(line_no, first_col, "empty alphabet");
        spec.alphabet = std::move(symbols);
      } else if (section == "shift") {
        if (spec.shift) throw ParseError(line_no, first_col, "duplicate [shift] section");
        auto attrs = detail::attributes(toks, line_no, 1);
        ShiftDecl d;
        auto kind = attrs.find("kind");
        if (kind == attrs.end() || kind->second.size() != 1) throw ParseError(line_no, first_col, "[shift] needs kind=");
        d.kind = kind->second.front().first;
        if (d.kind == "forbidden") {
          auto w = attrs.find("window");
          if (w == attrs.end() || w->second.size() != 1) throw ParseError(line_no, first_col, "forbidden shift needs window=");
          d.window = detail::parse_count(w->second.front(), line_no);
          if (d.window < 2) throw ParseError(line_no, w->second.front().second, "window must be at least 2");
        } else if (d.kind == "edge" || d.kind == "labeled") {
          auto v = attrs.find("vertices");
          if (v == attrs.end() || v->second.empty()) throw ParseError(line_no, first_col, "edge shift needs vertices=");
          std::set<std::string> seen;
          for (const auto& [name, col] : v->second) {
            if (!seen.insert(name).second) throw ParseError(line_no, col, "duplicate vertex '" + name + "'");
            d.vertices.push_back(name);
          }
        } else {
          throw ParseError(line_no, kind->second.front().second, "unknown shift kind '" + d.kind + "'");
        }
        for (const auto& [k, vals] : attrs) {
          if (k != "kind" && k != "window" && k != "vertices") {
            throw ParseError(line_no, vals.empty() ? first_col : vals.front().second, "unknown attribute '" + k + "'");
          }
        }
        spec.shift = std::move(d);
      } else if (section == "code") {
        if (spec.code) throw ParseError(line_no, first_col, "duplicate [code] section");
        auto attrs = detail::attributes(toks, line_no, 1);
        CodeDecl c;
        for (const auto& [k, vals] : attrs) {
          if (k == "memory" && vals.size() == 1) c.memory = detail::parse_count(vals.front(), line_no);
          else if (k == "anticipation" && vals.size() == 1) c.anticipation = detail::parse_count(vals.front(), line_no);
          else if (k == "codomain" && !vals.empty()) {
            for (const auto& [s, col] : vals) {
              std::stringstream ss(s);
              std::string part;
              while (std::getline(ss, part, ',')) {
                if (!part.empty()) c.codomain.push_back(part);
              }
            }
          } else {
            throw ParseError(line_no, vals.empty() ? first_col : vals.front().second, "bad [code] attribute '" + k + "'");
          }
        }
        if (c.codomain.empty()) throw ParseError(line_no, first_col, "[code] needs codomain=");
        spec.code = std::move(c);
      } else if (section == "potential") {
        if (spec.potential) throw ParseError(line_no, first_col, "duplicate [potential] section");
        auto attrs = detail::attributes(toks, line_no, 1);
        PotentialDecl p;
        for (const auto& [k, vals] : attrs) {
          if (k == "range" && vals.size() == 1) p.range = detail::parse_count(vals.front(), line_no);
          else throw ParseError(line_no, vals.empty() ? first_col : vals.front().second, "bad [potential] attribute '" + k + "'");
        }
        if (p.range == 0) throw ParseError(line_no, first_col, "range must be positive");
        spec.potential = std::move(p);
        keys.clear();
      } else {
        throw ParseError(line_no, first_col, "unknown section '[" + section + "]'");
      }
      continue;
    }
    // declarations inside a section
    if (section == "shift" && spec.shift->kind == "forbidden") {
      if (first != "forbid" || toks.size() < 2) throw ParseError(line_no, first_col, "expected 'forbid <word>'");
      spec.shift->forbidden.emplace_back(detail::trim(raw.substr(toks[1].second - 1)));
    } else if (section == "shift") {
      // edge <id>: <src> -> <tgt> [label <symbol>]
      if (first != "edge") throw ParseError(line_no, first_col, "expected 'edge <id>: <src> -> <tgt>'");
      if (toks.size() < 5 || toks[1].first.back() != ':' || toks[3].first != "->") {
        throw ParseError(line_no, first_col, "expected 'edge <id>: <src> -> <tgt>'");
      }
      EdgeDecl e;
      e.name = toks[1].first.substr(0, toks[1].first.size() - 1);
      if (e.name.empty()) throw ParseError(line_no, toks[1].second, "empty edge id");
      if (!edge_ids.insert(e.name).second) throw ParseError(line_no, toks[1].second, "duplicate edge id '" + e.name + "'");
      const auto& vs = spec.shift->vertices;
      for (std::size_t i : {std::size_t{2}, std::size_t{4}}) {
        if (std::find(vs.begin(), vs.end(), toks[i].first) == vs.end()) {
          throw ParseError(line_no, toks[i].second, "undeclared vertex '" + toks[i].first + "'");
        }
      }
      e.source = toks[2].first;
      e.target = toks[4].first;
      if (toks.size() == 7 && toks[5].first == "label") {
        e.label = toks[6].first;
      } else if (toks.size() != 5) {
        throw ParseError(line_no, toks[5].second, "expected 'label <symbol>' or end of line");
      }
      if (spec.shift->kind == "labeled" && !e.label) throw ParseError(line_no, first_col, "labeled shift edges need a label");
      spec.shift->edges.push_back(std::move(e));
    } else if (section == "code") {
      const auto arrow = raw.find("->");
      if (first != "map" || arrow == std::string_view::npos) throw ParseError(line_no, first_col, "expected 'map <word> -> <symbol>'");
      const auto word_start = toks[0].second + 3;
      if (word_start - 1 > arrow) throw ParseError(line_no, first_col, "expected 'map <word> -> <symbol>'");
      auto word = detail::trim(raw.substr(word_start - 1, arrow - (word_start - 1)));
      auto sym = detail::trim(raw.substr(arrow + 2));
      if (word.empty() || sym.empty()) throw ParseError(line_no, first_col, "expected 'map <word> -> <symbol>'");
      spec.code->maps.emplace_back(std::string(word), std::string(sym));
    } else if (section == "potential") {
      const auto open = raw.find("f(");
      const auto close = raw.find(')', open == std::string_view::npos ? 0 : open);
      const auto eq = raw.find('=', close == std::string_view::npos ? 0 : close);
      if (open == std::string_view::npos || close == std::string_view::npos || eq == std::string_view::npos ||
          !detail::trim(raw.substr(0, open)).empty() || !detail::trim(raw.substr(close + 1, eq - close - 1)).empty()) {
        throw ParseError(line_no, first_col, "expected 'f(<word>) = <real>'");
      }
      const std::string word(detail::trim(raw.substr(open + 2, close - open - 2)));
      if (!keys.insert(word).second) throw ParseError(line_no, open + 3, "duplicate potential entry f(" + word + ")");
      auto value = detail::parse_real(raw.substr(eq + 1));
      if (!value) {
        const auto rest = raw.substr(eq + 1);
        const auto col = eq + 2 + (rest.size() - detail::trim(rest).size() > 0 ? rest.find_first_not_of(" \t") : 0);
        throw ParseError(line_no, col, "malformed real literal '" + std::string(detail::trim(rest)) + "'");
      }
      spec.potential->values.emplace_back(word, *value);
    } else {
      throw ParseError(line_no, first_col, section.empty() ? "declaration outside any section" : "unexpected line in [" + section + "]");
    }
  }
  return spec;
}

/// A shift description: the [shift] section is required.
inline ShiftSpecFile parse_spec(std::string_view text) {
  auto spec = parse_sections(text);
  if (!spec.shift) throw ParseError(1, 1, "missing [shift] section");
  if (!spec.alphabet && (spec.shift->kind != "edge" ||
                         std::any_of(spec.shift->edges.begin(), spec.shift->edges.end(),
                                     [](const EdgeDecl& e) { return e.label.has_value(); }))) {
    throw ParseError(1, 1, "missing [alphabet] section");
  }
  return spec;
}

/// A potential description: the [potential] section is required.
inline PotentialDecl parse_potential_spec(std::string_view text) {
  auto spec = parse_sections(text);
  if (!spec.potential) throw ParseError(1, 1, "missing [potential] section");
  return *spec.potential;
}

inline std::string serialize(const ShiftSpecFile& spec) {
  std::string out;
  auto join = [](const std::vector<std::string>& xs, char sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i > 0) s += sep;
      s += xs[i];
    }
    return s;
  };
  if (spec.alphabet) out += "[alphabet] " + join(*spec.alphabet, ' ') + "\n";
  if (spec.shift) {
    const auto& s = *spec.shift;
    if (s.kind == "forbidden") {
      out += "[shift] kind=forbidden window=" + std::to_string(s.window) + "\n";
      for (const auto& w : s.forbidden) out += "forbid " + w + "\n";
    } else {
      out += "[shift] kind=" + s.kind + " vertices=" + join(s.vertices, ' ') + "\n";
      for (const auto& e : s.edges) {
        out += "edge " + e.name + ": " + e.source + " -> " + e.target;
        if (e.label) out += " label " + *e.label;
        out += "\n";
      }
    }
  }
  if (spec.code) {
    const auto& c = *spec.code;
    out += "[code] memory=" + std::to_string(c.memory) + " anticipation=" + std::to_string(c.anticipation) +
           " codomain=" + join(c.codomain, ',') + "\n";
    for (const auto& [w, s] : c.maps) out += "map " + w + " -> " + s + "\n";
  }
  if (spec.potential) {
    out += "[potential] range=" + std::to_string(spec.potential->range) + "\n";
    for (const auto& [w, v] : spec.potential->values) out += "f(" + w + ") = " + v.text + "\n";
  }
  return out;
}

/// The language described by the [shift] section as a labeled graph:
/// forbidden words give the block graph labeled by last symbol, unlabeled
/// edge graphs label each edge by its own id.
inline SoficPresentation to_presentation(const ShiftSpecFile& spec) {
  if (!spec.shift) throw Error(ErrorKind::invalid_input, "missing [shift] section");
  const auto& s = *spec.shift;
  if (s.kind == "forbidden") {
    const Alphabet alphabet(*spec.alphabet);
    std::set<Word> forbidden;
    for (const auto& w : s.forbidden) forbidden.insert(alphabet.parse(w));
    return SoficPresentation::of_forbidden_words(alphabet, forbidden, s.window);
  }
  std::vector<Edge> edges;
  auto index_of = [&](const std::string& v) {
    return static_cast<std::size_t>(std::find(s.vertices.begin(), s.vertices.end(), v) - s.vertices.begin());
  };
  for (const auto& e : s.edges) edges.push_back({e.name, index_of(e.source), index_of(e.target)});
  EdgeShift g(s.vertices, std::move(edges));
  const bool labeled = std::any_of(s.edges.begin(), s.edges.end(), [](const EdgeDecl& e) { return e.label.has_value(); });
  if (!labeled) return SoficPresentation::of_edge_shift(g);
  const Alphabet alphabet(*spec.alphabet);
  std::vector<Symbol> labels;
  for (const auto& e : s.edges) {
    if (!e.label) throw Error(ErrorKind::invalid_input, "edge '" + e.name + "' has no label");
    labels.push_back(alphabet.index_of(*e.label));
  }
  return SoficPresentation(std::move(g), alphabet, std::move(labels));
}

/// The [code] section as a code on the presentation's edge shift: each edge
/// path is sent through the table applied to its labels.
inline SlidingBlockCode to_code(const ShiftSpecFile& spec, const SoficPresentation& domain) {
  if (!spec.code) throw Error(ErrorKind::invalid_input, "missing [code] section");
  const auto& c = *spec.code;
  const Alphabet codomain(c.codomain);
  std::map<Word, Symbol> by_labels;
  for (const auto& [w, s] : c.maps) {
    Word word = domain.alphabet().parse(w);
    if (word.size() != c.memory + c.anticipation + 1) {
      throw Error(ErrorKind::invalid_input, "map entry '" + w + "' does not match the code window");
    }
    by_labels[word] = codomain.index_of(s);
  }
  SlidingBlockCode code{domain.graph(), codomain, c.memory, c.anticipation, {}};
  for (const auto& path : words_of_length(domain.graph(), code.window())) {
    Word labels;
    for (Symbol e : path) labels.push_back(domain.label(e));
    auto it = by_labels.find(labels);
    if (it == by_labels.end()) {
      throw Error(ErrorKind::invalid_input, "code table has no entry for '" + domain.alphabet().format(labels) + "'");
    }
    code.table.emplace(path, it->second);
  }
  return code;
}

/// Potential over words of the presentation's language. The table must be
/// total on words of length `range`.
inline Potential to_potential(const PotentialDecl& decl, const SoficPresentation& y) {
  Potential f;
  f.range = decl.range;
  for (const auto& [w, v] : decl.values) {
    Word word = y.alphabet().parse(w);
    if (word.size() != decl.range) throw Error(ErrorKind::invalid_input, "potential entry f(" + w + ") has wrong length");
    f.table[word] = v.value;
  }
  for (const auto& w : words_of_length(y, decl.range)) {
    if (!f.table.count(w)) {
      throw Error(ErrorKind::invalid_input, "potential has no value for f(" + y.alphabet().format(w) + ")");
    }
  }
  return f;
}

}  // namespace sofic
