#pragma once

// Basic vocabulary shared by every module: symbols, words, alphabets and the
// library error type.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sofic {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

enum class ErrorKind {
  invalid_input,
  empty_shift,
  requires_irreducible,
  enumeration_too_large,
  not_finite_to_one,
  no_convergence,
  not_in_language,
  parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Default cap on exhaustive word enumeration.
inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 22;

/// An ordered finite list of distinct tokens.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
      throw Error(ErrorKind::invalid_input, "alphabet must be nonempty");
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].empty()) {
        throw Error(ErrorKind::invalid_input, "alphabet tokens must be nonempty");
      }
      if (!index_.emplace(symbols_[i], static_cast<Symbol>(i)).second) {
        throw Error(ErrorKind::invalid_input, "duplicate alphabet token '" + symbols_[i] + "'");
      }
    }
  }

  /// Tokens "0", "1", ..., "k-1".
  static Alphabet numeric(std::size_t k) {
    std::vector<std::string> s;
    for (std::size_t i = 0; i < k; ++i) s.push_back(std::to_string(i));
    return Alphabet(std::move(s));
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const std::string& operator[](Symbol s) const { return symbols_.at(s); }
  const std::vector<std::string>& tokens() const noexcept { return symbols_; }

  bool contains(std::string_view token) const { return index_.count(std::string(token)) != 0; }

  Symbol index_of(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) {
      throw Error(ErrorKind::invalid_input, "unknown symbol '" + std::string(token) + "'");
    }
    return it->second;
  }

  /// True when every token is a single character, so words can be written
  /// without separators.
  bool compact() const noexcept {
    for (const auto& s : symbols_) {
      if (s.size() != 1) return false;
    }
    return true;
  }

  std::string format(std::span<const Symbol> w) const {
    std::string out;
    const bool tight = compact();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!tight && i > 0) out += ' ';
      out += (*this)[w[i]];
    }
    return out;
  }

  /// Parses space-separated tokens, or a run of single-character tokens when
  /// the alphabet is compact.
  Word parse(std::string_view text) const {
    Word w;
    std::size_t i = 0;
    const bool has_space = text.find_first_of(" \t") != std::string_view::npos;
    if (!has_space && compact()) {
      for (char c : text) w.push_back(index_of(std::string(1, c)));
      return w;
    }
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
      if (j > i) w.push_back(index_of(text.substr(i, j - i)));
      i = j;
    }
    return w;
  }

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, Symbol, std::less<>> index_;
};

inline Word concat(std::span<const Symbol> a, std::span<const Symbol> b) {
  Word w(a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

inline Word concat(std::span<const Symbol> a, std::span<const Symbol> b, std::span<const Symbol> c) {
  Word w = concat(a, b);
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

}  // namespace sofic
