#pragma once

// Flat key/value reports, printed either for people or as `key = value`
// lines ending in `verdict = pass|fail`.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace sofic {

class Report {
 public:
  explicit Report(std::string title) : title_(std::move(title)) {}

  Report& add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  Report& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "yes" : "no")); }
  Report& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
  Report& add(std::string key, std::size_t value) { return add(std::move(key), std::to_string(value)); }

  /// Fixed-point with 10 decimals.
  Report& real(std::string key, double value) { return add(std::move(key), fixed(value)); }

  /// Scientific with 3 significant decimals, for small deviations.
  Report& sci(std::string key, double value) { return add(std::move(key), scientific(value)); }

  void set_verdict(bool pass) { verdict_ = pass; }
  bool verdict() const noexcept { return verdict_.value_or(false); }

  void print(std::ostream& out, bool machine) const {
    if (!machine) out << title_ << "\n";
    std::size_t width = 0;
    for (const auto& [k, v] : entries_) width = std::max(width, k.size());
    for (const auto& [k, v] : entries_) {
      if (machine) {
        out << k << " = " << v << "\n";
      } else {
        out << "  " << k << std::string(width - k.size(), ' ') << " : " << v << "\n";
      }
    }
    const char* word = verdict() ? "pass" : "fail";
    if (machine) out << "verdict = " << word << "\n";
    else out << "  verdict" << std::string(width > 7 ? width - 7 : 0, ' ') << " : " << word << "\n";
  }

  static std::string fixed(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", x);
    return buf;
  }

  static std::string scientific(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
  }

 private:
  std::string title_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::optional<bool> verdict_;
};

}  // namespace sofic
