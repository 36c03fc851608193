#pragma once

// Cylinder evaluators for Markov measures and their images under one-block
// codes, lifting of equilibrium states through the Fischer cover, block
// entropies, restriction to a cyclic class and averaging back, empirical
// measures.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sofic/codes.hpp"
#include "sofic/core.hpp"
#include "sofic/presentation.hpp"
#include "sofic/shift.hpp"
#include "sofic/thermo.hpp"

namespace sofic {

inline double cylinder_prob(const MarkovMeasure& mu, std::span<const Symbol> w) { return mu.cylinder(w); }
inline double cylinder_prob(const BlockMarkovMeasure& mu, std::span<const Symbol> w) { return mu.cylinder(w); }

/// Probability of a vertex word under a Markov measure (sum over parallel
/// edges).
inline double vertex_cylinder_prob(const MarkovMeasure& mu, std::span<const Symbol> vertices) {
  if (vertices.empty()) return 1.0;
  if (vertices[0] >= mu.shift.vertex_count()) return 0.0;
  double p = mu.stationary[vertices[0]];
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    double step = 0;
    for (std::size_t e : mu.shift.out_edges(vertices[i - 1])) {
      if (mu.shift.edge(e).target == vertices[i]) step += mu.transitions[e];
    }
    p *= step;
  }
  return p;
}

/// nu = pi_* mu for a one-block code, evaluated as
/// stationary * T_{w_1} ... T_{w_n} * 1 with T_s the transitions on edges
/// labeled s.
class HiddenMarkovMeasure {
 public:
  using Vector = Eigen::VectorXd;

  HiddenMarkovMeasure() = default;

  HiddenMarkovMeasure(MarkovMeasure upstairs, SlidingBlockCode code)
      : upstairs_(std::move(upstairs)), code_(std::move(code)) {
    if (!code_.is_one_block()) throw Error(ErrorKind::invalid_input, "pushforward needs a one-block code");
    if (!(code_.domain == upstairs_.shift)) throw Error(ErrorKind::invalid_input, "code domain differs from measure");
    labels_ = code_.labels();
    by_label_.resize(code_.codomain.size());
    for (std::size_t e = 0; e < labels_.size(); ++e) by_label_[labels_[e]].push_back(e);
  }

  const MarkovMeasure& upstairs() const noexcept { return upstairs_; }
  const SlidingBlockCode& code() const noexcept { return code_; }
  const Alphabet& alphabet() const noexcept { return code_.codomain; }
  std::size_t states() const noexcept { return upstairs_.shift.vertex_count(); }

  Vector start() const {
    return Eigen::Map<const Vector>(upstairs_.stationary.data(), static_cast<Eigen::Index>(states()));
  }

  /// Row vector times T_a.
  Vector forward(const Vector& v, Symbol a) const {
    Vector out = Vector::Zero(v.size());
    for (std::size_t e : by_label_.at(a)) {
      const auto& edge = upstairs_.shift.edge(e);
      out[static_cast<Eigen::Index>(edge.target)] +=
          v[static_cast<Eigen::Index>(edge.source)] * upstairs_.transitions[e];
    }
    return out;
  }

  /// T_a times column vector.
  Vector backward(Symbol a, const Vector& v) const {
    Vector out = Vector::Zero(v.size());
    for (std::size_t e : by_label_.at(a)) {
      const auto& edge = upstairs_.shift.edge(e);
      out[static_cast<Eigen::Index>(edge.source)] +=
          upstairs_.transitions[e] * v[static_cast<Eigen::Index>(edge.target)];
    }
    return out;
  }

  Vector forward(Vector v, std::span<const Symbol> w) const {
    for (Symbol a : w) v = forward(v, a);
    return v;
  }

  Vector backward(std::span<const Symbol> w, Vector v) const {
    for (std::size_t i = w.size(); i-- > 0;) v = backward(w[i], v);
    return v;
  }

  double cylinder(std::span<const Symbol> w) const {
    for (Symbol a : w) {
      if (a >= code_.codomain.size()) return 0.0;
    }
    return forward(start(), w).sum();
  }

 private:
  MarkovMeasure upstairs_;
  SlidingBlockCode code_;
  std::vector<Symbol> labels_;
  std::vector<std::vector<std::size_t>> by_label_;
};

inline HiddenMarkovMeasure pushforward(const MarkovMeasure& mu, const SlidingBlockCode& code) {
  return HiddenMarkovMeasure(mu, code);
}

inline double cylinder_prob(const HiddenMarkovMeasure& nu, std::span<const Symbol> w) { return nu.cylinder(w); }

/// The pushforward of an equilibrium state carried on a block recoding: each
/// chain edge is labeled by the image of its first base edge.
inline HiddenMarkovMeasure pushforward(const BlockMarkovMeasure& mu, const SlidingBlockCode& code) {
  const auto labels = code.labels();
  std::vector<Symbol> chain_labels;
  for (const auto& b : mu.blocks) chain_labels.push_back(labels[b.front()]);
  return HiddenMarkovMeasure(mu.chain, SlidingBlockCode::one_block(mu.chain.shift, code.codomain, chain_labels));
}

/// Pressure of f on a sofic shift, computed on its Fischer cover.
inline double sofic_pressure(const SoficPresentation& y, const Potential& f) {
  const auto cover = fischer_cover(y);
  return pressure(cover.presentation.graph(), pullback_potential(cover.cover, f));
}

/// (1/n) log sum_{w in B_n(Y)} exp(sum of f over windows inside w).
inline double sofic_pressure_oracle(const SoficPresentation& y, const Potential& f, std::size_t n,
                                    std::size_t cap = kDefaultEnumerationCap) {
  std::vector<double> sums;
  for (const auto& w : words_of_length(y, n, cap)) {
    double s = 0;
    for (std::size_t i = 0; i + f.range <= w.size(); ++i) s += f(std::span<const Symbol>(w).subspan(i, f.range));
    sums.push_back(s);
  }
  const double top = *std::max_element(sums.begin(), sums.end());
  double z = 0;
  for (double s : sums) z += std::exp(s - top);
  return (std::log(z) + top) / static_cast<double>(n);
}

struct LiftReport {
  FischerCover cover;
  Potential pulled;              // f o pi on the cover
  Equilibrium upstairs;          // equilibrium state for f o pi
  HiddenMarkovMeasure nu;        // pi_* mu
  std::size_t degree = 0;
  double pressure = 0;           // P_X(f o pi)
  double entropy_upstairs = 0;   // h(mu)
  double integral = 0;           // int f dnu from cylinders of length range
  double variational_gap = 0;    // |h(mu) + int f dnu - P_X(f o pi)|
};

inline LiftReport lift_equilibrium(const SoficPresentation& y, const Potential& f) {
  auto cover = fischer_cover(y);
  const auto& x = cover.presentation.graph();
  auto pulled = pullback_potential(cover.cover, f);
  auto eq = equilibrium(x, pulled);
  auto nu = pushforward(eq.measure, cover.cover);
  LiftReport r{std::move(cover), std::move(pulled), std::move(eq), std::move(nu)};
  r.degree = degree(r.cover.cover);
  r.pressure = r.upstairs.pressure;
  r.entropy_upstairs = entropy(r.upstairs.measure);
  r.integral = integrate(f, r.nu, words_of_length(y, f.range));
  r.variational_gap = std::abs(r.entropy_upstairs + r.integral - r.pressure);
  return r;
}

struct EntropyEstimate {
  std::vector<double> block_entropy;  // H(1) .. H(n_max + 1)
  std::vector<double> h;              // h_n = H(n+1) - H(n), n = 1..n_max
  double estimate = 0;
  bool non_increasing = true;
};

/// Block entropies of nu by depth-first search over positive-mass words.
inline EntropyEstimate entropy_estimate(const HiddenMarkovMeasure& nu, std::size_t n_max,
                                        std::size_t cap = kDefaultEnumerationCap) {
  if (n_max < 1) throw Error(ErrorKind::invalid_input, "entropy_estimate needs n_max >= 1");
  const std::size_t depth = n_max + 1;
  std::vector<double> big_h(depth + 1, 0.0);
  std::size_t visited = 0;
  std::vector<HiddenMarkovMeasure::Vector> stack{nu.start()};
  std::vector<Symbol> next{0};
  while (!next.empty()) {
    if (next.back() >= nu.alphabet().size()) {
      next.pop_back();
      stack.pop_back();
      continue;
    }
    const Symbol a = next.back()++;
    auto v = nu.forward(stack.back(), a);
    const double m = v.sum();
    if (m <= 0) continue;
    const std::size_t len = stack.size();
    big_h[len] -= m * std::log(m);
    if (++visited > cap) throw Error(ErrorKind::enumeration_too_large, "entropy estimate enumeration too large");
    if (len < depth) {
      stack.push_back(std::move(v));
      next.push_back(0);
    }
  }
  EntropyEstimate out;
  out.block_entropy.assign(big_h.begin() + 1, big_h.end());
  for (std::size_t n = 1; n <= n_max; ++n) out.h.push_back(big_h[n + 1] - big_h[n]);
  for (std::size_t i = 1; i < out.h.size(); ++i) {
    if (out.h[i] > out.h[i - 1] + 1e-9) out.non_increasing = false;
  }
  out.estimate = out.h.back();
  return out;
}

namespace detail {

/// mu'-measure of {x in X_0 : x[j .. j+|w|-1] = w} for a measure on the
/// class-0 power shift, by enumerating block words that cover the window.
template <class PowerMeasure>
double offset_cylinder(const PowerMeasure& mu0, const ClassPowerShift& power, std::size_t p, std::size_t j,
                       std::span<const Symbol> w) {
  const std::size_t blocks = (j + w.size() + p - 1) / p;
  double total = 0;
  for (const auto& bw : words_of_length(power.shift, blocks)) {
    bool match = true;
    for (std::size_t i = 0; i < w.size() && match; ++i) {
      const std::size_t pos = j + i;
      match = power.paths[bw[pos / p]][pos % p] == w[i];
    }
    if (match) total += mu0.cylinder(bw);
  }
  return total;
}

inline Word flatten(const ClassPowerShift& power, std::span<const Symbol> bw) {
  Word path;
  for (Symbol b : bw) path.insert(path.end(), power.paths[b].begin(), power.paths[b].end());
  return path;
}

}  // namespace detail

/// (1/p) sum_{j<p} (sigma^j)_* mu' evaluated on a base cylinder.
template <class PowerMeasure>
double averaged_cylinder(const PowerMeasure& mu0, const ClassPowerShift& power, std::size_t p,
                         std::span<const Symbol> w) {
  double total = 0;
  for (std::size_t j = 0; j < p; ++j) total += detail::offset_cylinder(mu0, power, p, j, w);
  return total / static_cast<double>(p);
}

struct RestrictionReport {
  std::size_t period = 1;
  ClassPowerShift power;
  MarkovMeasure restricted;  // p * mu restricted to X_0, on the power shift
  std::size_t checked_length = 0;
  double reconstruction_error = 0;  // max over base cylinders of |mu - average of mu'|
  bool full_support = false;        // mu has full support and so does mu'
};

/// Normalized restriction to the class-0 power shift and averaging back.
inline RestrictionReport restrict_and_average(const MarkovMeasure& mu, const CyclicStructure& cs,
                                              std::size_t max_len = 0) {
  const std::size_t p = cs.period;
  RestrictionReport r;
  r.period = p;
  r.power = class_power_shift(mu.shift, cs, 0);
  r.checked_length = max_len == 0 ? 4 * p : max_len;
  r.restricted.shift = r.power.shift;
  for (std::size_t v : r.power.vertex_origin) r.restricted.stationary.push_back(static_cast<double>(p) * mu.stationary[v]);
  for (const auto& path : r.power.paths) {
    double t = 1;
    for (Symbol e : path) t *= mu.transitions[e];
    r.restricted.transitions.push_back(t);
  }
  for (std::size_t n = 1; n <= r.checked_length; ++n) {
    for (const auto& w : words_of_length(mu.shift, n)) {
      r.reconstruction_error =
          std::max(r.reconstruction_error, std::abs(mu.cylinder(w) - averaged_cylinder(r.restricted, r.power, p, w)));
    }
  }
  const auto positive = [](const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return x > 0; });
  };
  r.full_support = positive(mu.transitions) == positive(r.restricted.transitions) &&
                   positive(mu.stationary) == positive(r.restricted.stationary);
  return r;
}

struct CyclicPressureReport {
  std::size_t period = 1;
  double pressure_x = 0;        // P_X(f)
  double pressure_x0 = 0;       // P_{X_0}(R_p f)
  double identity_gap = 0;      // |P_X(f) - P_{X_0}(R_p f) / p|
  double restriction_error = 0; // max |mu'[W] - p mu[W]| over power cylinders
  double averaging_error = 0;   // max |mu[w] - average of mu'| over base cylinders
  std::size_t checked_length = 0;
};

/// Checks P_X(f) = P_{X_0}(R_p f)/p and that the equilibrium state for R_p f
/// is the normalized restriction of the one for f, and averages back to it.
inline CyclicPressureReport cyclic_pressure_check(const EdgeShift& s, const Potential& f,
                                                  std::size_t max_len = 4) {
  const auto cs = cyclic_structure(s);
  const std::size_t p = cs.period;
  CyclicPressureReport r;
  r.period = p;
  r.checked_length = max_len;
  const auto mu = equilibrium(s, f);
  r.pressure_x = mu.pressure;
  const auto rp = r_p(s, f, cs);
  const auto mu0 = equilibrium(rp.power.shift, rp.f);
  r.pressure_x0 = mu0.pressure;
  r.identity_gap = std::abs(r.pressure_x - r.pressure_x0 / static_cast<double>(p));
  for (std::size_t n = 1; n <= max_len; ++n) {
    for (const auto& bw : words_of_length(rp.power.shift, n)) {
      const Word path = detail::flatten(rp.power, bw);
      r.restriction_error =
          std::max(r.restriction_error, std::abs(mu0.measure.cylinder(bw) - static_cast<double>(p) * mu.measure.cylinder(path)));
    }
    for (const auto& w : words_of_length(s, n)) {
      r.averaging_error = std::max(
          r.averaging_error, std::abs(mu.measure.cylinder(w) - averaged_cylinder(mu0.measure, rp.power, p, w)));
    }
  }
  return r;
}

/// Frequencies of subwords in a finite word.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(Word source) : source_(std::move(source)) {}

  const Word& source() const noexcept { return source_; }

  /// occurrences of w / (n - |w| + 1)
  double cylinder(std::span<const Symbol> w) const {
    if (w.empty()) return 1.0;
    if (w.size() > source_.size()) return 0.0;
    std::size_t hits = 0;
    const std::size_t windows = source_.size() - w.size() + 1;
    for (std::size_t i = 0; i < windows; ++i) {
      if (std::equal(w.begin(), w.end(), source_.begin() + static_cast<std::ptrdiff_t>(i))) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(windows);
  }

 private:
  Word source_;
};

inline EmpiricalMeasure empirical_measure(Word w) { return EmpiricalMeasure(std::move(w)); }

/// Lexicographically least edge path whose labels spell y.
inline Word lift_empirical(std::span<const Symbol> y, const SlidingBlockCode& code) {
  const SoficPresentation p(code.domain, code.codomain, code.labels());
  if (y.empty()) return {};
  // can_finish[i]: states from which y[i..] can be read
  std::vector<std::vector<bool>> can_finish(y.size() + 1, std::vector<bool>(p.state_count(), true));
  for (std::size_t i = y.size(); i-- > 0;) {
    std::fill(can_finish[i].begin(), can_finish[i].end(), false);
    for (std::size_t e = 0; e < p.graph().edge_count(); ++e) {
      if (p.label(e) == y[i] && can_finish[i + 1][p.graph().edge(e).target]) can_finish[i][p.graph().edge(e).source] = true;
    }
  }
  Word path;
  for (std::size_t i = 0; i < y.size(); ++i) {
    std::optional<std::size_t> pick;
    for (std::size_t e = 0; e < p.graph().edge_count() && !pick; ++e) {
      const auto& edge = p.graph().edge(e);
      if (p.label(e) != y[i] || !can_finish[i + 1][edge.target]) continue;
      if (i > 0 && p.graph().edge(path.back()).target != edge.source) continue;
      pick = e;
    }
    if (!pick) throw Error(ErrorKind::not_in_language, "word has no preimage path");
    path.push_back(static_cast<Symbol>(*pick));
  }
  return path;
}

}  // namespace sofic
