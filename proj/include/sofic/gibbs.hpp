#pragma once

// Finite Gibbs certificates: the cocycle of a locally constant potential,
// cylinder-ratio tests under word exchanges, and the end-to-end pipelines for
// sofic shifts (Lanford-Ruelle and Dobrushin directions, finite-to-one
// codes, and the sunny-side-up counterexample).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sofic/codes.hpp"
#include "sofic/core.hpp"
#include "sofic/measures.hpp"
#include "sofic/presentation.hpp"
#include "sofic/shift.hpp"
#include "sofic/thermo.hpp"

namespace sofic {

inline double window_sum(const Potential& f, std::span<const Symbol> w) {
  double s = 0;
  for (std::size_t i = 0; i + f.range <= w.size(); ++i) s += f(w.subspan(i, f.range));
  return s;
}

/// phi_f(x, psi(x)) for the exchange u -> v between contexts p and s: only
/// windows meeting the exchanged block differ, and with |p|, |s| >= range-1
/// all of them lie inside pus and pvs.
inline double cocycle_delta(const Potential& f, std::span<const Symbol> p, std::span<const Symbol> u,
                            std::span<const Symbol> v, std::span<const Symbol> s) {
  if (u.size() != v.size()) throw Error(ErrorKind::invalid_input, "exchanged words must have equal length");
  if (p.size() + 1 < f.range || s.size() + 1 < f.range) {
    throw Error(ErrorKind::invalid_input, "insufficient context for exact cocycle");
  }
  return window_sum(f, concat(p, u, s)) - window_sum(f, concat(p, v, s));
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct GibbsRatioReport {
  Word u, v;
  std::vector<std::size_t> lengths;
  std::vector<std::optional<double>> deviation;  // max over forced contexts; empty if none
  std::vector<std::size_t> forced_contexts;      // class pairs contributing
  std::vector<double> unforced_mass;             // nu-mass of excluded exchanges
  bool violation = false;                        // some exchange has exactly one side of zero mass
  bool trend_ok = true;
  bool pass = false;
};

namespace detail {

using Quantized = std::vector<long long>;

/// Vectors are compared after sum normalization and rounding to 2^-40, which
/// merges contexts whose cylinder ratios agree to about 1e-12.
inline Quantized quantize(const Eigen::VectorXd& v) {
  Quantized q(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) q[static_cast<std::size_t>(i)] = std::llround(std::ldexp(v[i], 40));
  return q;
}

inline Word tail(const Word& w, std::size_t n) {
  return Word(w.end() - static_cast<std::ptrdiff_t>(std::min(n, w.size())), w.end());
}

inline Word head(const Word& w, std::size_t n) {
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(n, w.size())));
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Left contexts p sharing the normalized forward vector, the set of
/// reference states reachable by p, and the last range-1 symbols.
struct LeftClass {
  Eigen::VectorXd vec;  // sum-normalized (zero if nu[p] = 0)
  StateSet reach;
  Word tail;
  double weight = 0;  // total nu-mass of the class
};

/// Right contexts s sharing the normalized backward vector, the reference
/// transition maps for s and for s minus its last range-1 symbols, and the
/// first range-1 symbols.
struct RightClass {
  Eigen::VectorXd vec;
  std::vector<std::size_t> full;     // q -> delta(q, s) or kNone
  std::vector<std::size_t> trimmed;  // q -> delta(q, s') or kNone
  Word head;
  std::size_t length = 0;
  double weight = 0;
};

inline std::vector<std::vector<LeftClass>> left_classes(const HiddenMarkovMeasure& nu, const SoficPresentation& ref,
                                                       std::size_t max_len, std::size_t keep, std::size_t cap) {
  std::vector<std::vector<LeftClass>> by_len;
  std::vector<LeftClass> cur{{nu.start() / nu.start().sum(), ref.all_states(), {}, 1.0}};
  by_len.push_back(cur);
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::map<std::tuple<Quantized, StateSet, Word>, std::size_t> index;
    std::vector<LeftClass> next;
    for (const auto& c : cur) {
      for (Symbol a = 0; a < ref.alphabet().size(); ++a) {
        StateSet reach = ref.step(c.reach, a);
        if (reach.empty()) continue;
        Eigen::VectorXd v = nu.forward(c.vec, a);
        const double m = v.sum();
        if (m > 0) v /= m;
        Word t = c.tail;
        t.push_back(a);
        t = tail(t, keep);
        auto key = std::make_tuple(quantize(v), reach, t);
        auto [it, fresh] = index.emplace(std::move(key), next.size());
        if (fresh) {
          next.push_back({std::move(v), std::move(reach), std::move(t), 0.0});
          if (next.size() > cap) {
            throw Error(ErrorKind::enumeration_too_large, "too many left context classes");
          }
        }
        next[it->second].weight += c.weight * m;
      }
    }
    cur = std::move(next);
    by_len.push_back(cur);
  }
  return by_len;
}

inline std::vector<std::vector<RightClass>> right_classes(const HiddenMarkovMeasure& nu, const SoficPresentation& ref,
                                                         std::size_t max_len, std::size_t keep, std::size_t cap) {
  const std::size_t n = ref.state_count();
  std::vector<std::size_t> identity(n);
  for (std::size_t q = 0; q < n; ++q) identity[q] = q;
  std::vector<std::vector<RightClass>> by_len;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(nu.states()));
  std::vector<RightClass> cur{{ones, identity, identity, {}, 0, 1.0}};
  by_len.push_back(cur);
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::map<std::tuple<Quantized, std::vector<std::size_t>, std::vector<std::size_t>, Word>, std::size_t> index;
    std::vector<RightClass> next;
    for (const auto& c : cur) {
      for (Symbol a = 0; a < ref.alphabet().size(); ++a) {
        std::vector<std::size_t> full(n, kNone), trimmed(n, kNone);
        bool any = false;
        for (std::size_t q = 0; q < n; ++q) {
          const auto t = ref.follow(q, a);
          if (t) full[q] = c.full[*t];
          any = any || full[q] != kNone;
          if (len <= keep) {
            trimmed[q] = q;
          } else if (t) {
            trimmed[q] = c.trimmed[*t];
          }
        }
        if (!any) continue;
        Eigen::VectorXd v = nu.backward(a, c.vec);
        const double m = v.sum();
        if (m > 0) v /= m;
        Word h{a};
        h.insert(h.end(), c.head.begin(), c.head.end());
        h = head(h, keep);
        auto key = std::make_tuple(quantize(v), full, trimmed, h);
        auto [it, fresh] = index.emplace(std::move(key), next.size());
        if (fresh) {
          next.push_back({std::move(v), std::move(full), std::move(trimmed), std::move(h), len, 0.0});
          if (next.size() > cap) {
            throw Error(ErrorKind::enumeration_too_large, "too many right context classes");
          }
        }
        next[it->second].weight += c.weight * m;
      }
    }
    cur = std::move(next);
    by_len.push_back(cur);
  }
  return by_len;
}

struct ContextTables {
  std::vector<std::vector<LeftClass>> left;
  std::vector<std::vector<RightClass>> right;
};

inline ContextTables context_tables(const HiddenMarkovMeasure& nu, const SoficPresentation& ref,
                                    const Potential& f, std::size_t max_len, std::size_t cap) {
  const std::size_t keep = f.range - 1;
  return {left_classes(nu, ref, max_len, keep, cap), right_classes(nu, ref, max_len, keep, cap)};
}

inline std::size_t follow_or_none(const SoficPresentation& ref, std::size_t q, std::span<const Symbol> w) {
  auto t = ref.follow(q, w);
  return t ? *t : kNone;
}

struct ExchangeOutcome {
  std::optional<double> deviation;
  std::size_t forced = 0;
  double unforced_mass = 0;
  bool violation = false;
  bool valid = false;  // some language-valid exchange exists
};

inline ExchangeOutcome evaluate_exchange(const HiddenMarkovMeasure& nu, const SoficPresentation& ref,
                                         const Potential& f, const Word& u, const Word& v,
                                         const std::vector<LeftClass>& lefts, const std::vector<RightClass>& rights) {
  ExchangeOutcome out;
  for (const auto& l : lefts) {
    // reference states after p u and p v
    std::vector<std::pair<std::size_t, std::size_t>> after;
    for (std::size_t q : l.reach) after.emplace_back(follow_or_none(ref, q, u), follow_or_none(ref, q, v));
    const Eigen::VectorXd lu = nu.forward(l.vec, u);
    const Eigen::VectorXd lv = nu.forward(l.vec, v);
    for (const auto& r : rights) {
      bool u_ok = false, v_ok = false, forced = true;
      for (const auto& [qu, qv] : after) {
        const std::size_t fu = qu == kNone ? kNone : r.full[qu];
        const std::size_t fv = qv == kNone ? kNone : r.full[qv];
        u_ok = u_ok || fu != kNone;
        v_ok = v_ok || fv != kNone;
        const std::size_t tu = qu == kNone ? kNone : r.trimmed[qu];
        const std::size_t tv = qv == kNone ? kNone : r.trimmed[qv];
        if (tu != tv) forced = false;
      }
      if (!u_ok || !v_ok) continue;
      out.valid = true;
      const double x = lu.dot(r.vec);
      const double y = lv.dot(r.vec);
      if ((x > 0) != (y > 0)) {
        out.violation = true;
        out.deviation = kInf;
        continue;
      }
      if (x <= 0) continue;
      if (!forced) {
        out.unforced_mass += l.weight * r.weight * (x + y);
        continue;
      }
      const double delta = cocycle_delta(f, l.tail, u, v, r.head);
      const double dev = std::abs(std::log(x) - std::log(y) - delta);
      ++out.forced;
      out.deviation = std::max(out.deviation.value_or(0.0), dev);
    }
  }
  return out;
}

}  // namespace detail

inline constexpr double kTrendSlack = 1.10;
inline constexpr double kTrendFloor = 1e-12;
inline constexpr std::size_t kContextClassCap = 200'000;

/// Verdict from per-length deviations: finite everywhere, below tol at the
/// largest length, and non-increasing up to 10% slack (deviations below the
/// rounding floor always count as non-increasing).
inline void settle(GibbsRatioReport& r, double tol) {
  r.trend_ok = true;
  std::optional<double> prev;
  for (const auto& d : r.deviation) {
    if (!d) continue;
    if (prev && *d > kTrendSlack * *prev + kTrendFloor) r.trend_ok = false;
    prev = d;
  }
  const auto& last = r.deviation.back();
  r.pass = !r.violation && r.trend_ok && last && *last < tol;
}

/// Cylinder-ratio test of nu against f for the exchange u <-> v. `ref` is a
/// deterministic presentation of the language, used to decide which
/// exchanges are language-valid and which contexts determine the future
/// after the exchanged block. Only those "forced" contexts enter the maximum;
/// the mass of the rest is reported.
inline GibbsRatioReport gibbs_ratio_test(const HiddenMarkovMeasure& nu, const SoficPresentation& ref,
                                         const Potential& f, const Word& u, const Word& v,
                                         const std::vector<std::size_t>& lengths, double tol,
                                         std::size_t cap = kContextClassCap) {
  if (!ref.is_deterministic()) throw Error(ErrorKind::invalid_input, "reference presentation must be deterministic");
  if (lengths.empty()) throw Error(ErrorKind::invalid_input, "no context lengths");
  if (!std::is_sorted(lengths.begin(), lengths.end())) throw Error(ErrorKind::invalid_input, "lengths must increase");
  if (lengths.front() + 1 < f.range) throw Error(ErrorKind::invalid_input, "insufficient context for exact cocycle");
  const auto tables = detail::context_tables(nu, ref, f, lengths.back(), cap);
  GibbsRatioReport r;
  r.u = u;
  r.v = v;
  r.lengths = lengths;
  for (std::size_t c : lengths) {
    const auto out = detail::evaluate_exchange(nu, ref, f, u, v, tables.left[c], tables.right[c]);
    r.deviation.push_back(out.deviation);
    r.forced_contexts.push_back(out.forced);
    r.unforced_mass.push_back(out.unforced_mass);
    r.violation = r.violation || out.violation;
  }
  settle(r, tol);
  return r;
}

struct BatteryReport {
  std::vector<std::size_t> lengths;
  std::vector<GibbsRatioReport> pairs;
  std::size_t skipped_pairs = 0;            // no forced context at some length
  std::vector<double> max_deviation;        // over pairs, per length
  bool violation = false;
  bool trend_ok = true;
  bool pass = false;
};

inline std::vector<std::size_t> context_lengths(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t c = std::max<std::size_t>(first, 1); c <= last; ++c) out.push_back(c);
  return out;
}

/// Runs the ratio test on pairs u < v of equal length (1 to max_word) from
/// the language, capped at max_pairs. Pairs with no forced context at some
/// length are skipped unless they show a hard violation.
inline BatteryReport gibbs_battery(const HiddenMarkovMeasure& nu, const SoficPresentation& ref, const Potential& f,
                                   const std::vector<std::size_t>& lengths, double tol, std::size_t max_word = 3,
                                   std::size_t max_pairs = 200, std::size_t cap = kContextClassCap) {
  const auto tables = detail::context_tables(nu, ref, f, lengths.back(), cap);
  BatteryReport b;
  b.lengths = lengths;
  b.max_deviation.assign(lengths.size(), 0.0);
  std::size_t considered = 0;
  for (std::size_t len = 1; len <= max_word && considered < max_pairs; ++len) {
    const auto words = words_of_length(ref, len);
    for (std::size_t i = 0; i < words.size() && considered < max_pairs; ++i) {
      for (std::size_t j = i + 1; j < words.size() && considered < max_pairs; ++j) {
        ++considered;
        GibbsRatioReport r;
        r.u = words[i];
        r.v = words[j];
        r.lengths = lengths;
        bool complete = true;
        for (std::size_t c : lengths) {
          const auto out = detail::evaluate_exchange(nu, ref, f, words[i], words[j], tables.left[c], tables.right[c]);
          r.deviation.push_back(out.deviation);
          r.forced_contexts.push_back(out.forced);
          r.unforced_mass.push_back(out.unforced_mass);
          r.violation = r.violation || out.violation;
          complete = complete && out.deviation.has_value();
        }
        if (!complete && !r.violation) {
          ++b.skipped_pairs;
          continue;
        }
        settle(r, tol);
        for (std::size_t k = 0; k < lengths.size(); ++k) {
          b.max_deviation[k] = std::max(b.max_deviation[k], r.deviation[k].value_or(0.0));
        }
        b.violation = b.violation || r.violation;
        b.pairs.push_back(std::move(r));
      }
    }
  }
  for (std::size_t k = 1; k < b.max_deviation.size(); ++k) {
    if (b.max_deviation[k] > kTrendSlack * b.max_deviation[k - 1] + kTrendFloor) b.trend_ok = false;
  }
  b.pass = !b.pairs.empty() && !b.violation && b.trend_ok &&
           std::all_of(b.pairs.begin(), b.pairs.end(), [](const auto& r) { return r.pass; });
  return b;
}

struct LanfordRuelleReport {
  std::size_t cover_states = 0;
  std::size_t degree = 0;
  double pressure = 0;
  double variational_gap = 0;
  BatteryReport battery;
  bool pass = false;
};

/// Fischer cover (checked almost invertible), lifted equilibrium state, and
/// the ratio battery on its image.
inline LanfordRuelleReport verify_sofic_lanford_ruelle(const SoficPresentation& y, const Potential& f, double tol,
                                                       std::size_t cmax) {
  const auto lift = lift_equilibrium(y, f);
  LanfordRuelleReport r;
  r.cover_states = lift.cover.presentation.state_count();
  r.degree = lift.degree;
  r.pressure = lift.pressure;
  r.variational_gap = lift.variational_gap;
  r.battery = gibbs_battery(lift.nu, lift.cover.presentation, f, context_lengths(f.range - 1, cmax), tol);
  r.pass = r.degree == 1 && r.battery.pass;
  return r;
}

struct DobrushinReport {
  double pressure = 0;     // P_Y(f)
  double integral = 0;     // int f dnu
  EntropyEstimate entropy; // block entropy differences of nu
  double gap = 0;          // |h_n + int f dnu - P_Y(f)|
  bool pass = false;
};

inline DobrushinReport verify_sofic_dobrushin(const SoficPresentation& y, const Potential& f, double tol,
                                              std::size_t n = 12) {
  const auto lift = lift_equilibrium(y, f);
  DobrushinReport r;
  r.pressure = lift.pressure;
  r.integral = lift.integral;
  r.entropy = entropy_estimate(lift.nu, n);
  r.gap = std::abs(r.entropy.estimate + r.integral - r.pressure);
  r.pass = r.gap < tol;
  return r;
}

struct FiniteToOneReport {
  std::size_t degree = 0;
  double pressure = 0;          // P_X(f o pi)
  double entropy_upstairs = 0;  // h(mu)
  double entropy_downstairs = 0;  // h_n(nu)
  double entropy_gap = 0;
  double lift_error = 0;  // pushforward vs brute-force preimage sums
  BatteryReport battery;
  bool pass = false;
};

/// mu = equilibrium state for f o pi upstairs, nu = pi_* mu checked against f
/// downstairs. `entropy_n` is the block length for the entropy comparison
/// and `check_len` the cylinder length for the preimage-sum comparison.
inline FiniteToOneReport verify_finite_to_one_preservation(const SlidingBlockCode& code, const Potential& f,
                                                           double tol, std::size_t cmax, std::size_t entropy_n = 12,
                                                           std::size_t check_len = 6) {
  const auto [x, one] = recode_to_one_block(code);
  if (!is_finite_to_one(one)) throw Error(ErrorKind::not_finite_to_one, "code is not finite-to-one");
  if (!is_irreducible(x)) throw Error(ErrorKind::requires_irreducible, "domain must be irreducible");
  FiniteToOneReport r;
  r.degree = degree(one);
  const auto image = image_presentation(x, one);
  const auto ref = fischer_cover(image).presentation;
  const auto pulled = pullback_potential(one, f);
  const auto eq = equilibrium(x, pulled);
  const auto nu = pushforward(eq.measure, one);
  r.pressure = eq.pressure;
  r.entropy_upstairs = entropy(eq.measure);
  r.entropy_downstairs = entropy_estimate(nu, entropy_n).estimate;
  r.entropy_gap = std::abs(r.entropy_downstairs - r.entropy_upstairs);
  const auto labels = one.labels();
  for (std::size_t n = 1; n <= check_len; ++n) {
    std::map<Word, double> sums;
    for (const auto& path : words_of_length(x, n)) {
      Word w;
      for (Symbol e : path) w.push_back(labels[e]);
      sums[w] += eq.measure.cylinder(path);
    }
    for (const auto& [w, m] : sums) r.lift_error = std::max(r.lift_error, std::abs(m - nu.cylinder(w)));
  }
  r.battery = gibbs_battery(nu, ref, f, context_lengths(f.range - 1, cmax), tol);
  r.pass = r.battery.pass && r.lift_error < 1e-12;
  return r;
}

struct CounterexampleReport {
  bool irreducible = true;
  std::vector<std::uint64_t> word_counts;  // |B_n|, n = 1..
  double pressure = 0;                     // largest component pressure for f = 0
  double entropy = 0;                      // h_n of the point mass
  bool equilibrium = false;
  GibbsRatioReport gibbs;
  bool gibbs_consistent = true;
  bool pass = false;
};

/// The point mass on 0^infinity over the sequences with at most one 1:
/// an equilibrium measure for f = 0 that fails the ratio test.
inline CounterexampleReport sunny_side_up_counterexample(std::size_t cmax = 8) {
  const auto y = sunny_side_up();
  CounterexampleReport r;
  r.irreducible = is_irreducible(y);
  for (std::size_t n = 1; n <= 12; ++n) r.word_counts.push_back(words_of_length(y, n).size());
  // pressure of a reducible graph: the largest over its components
  double best = -kInf;
  for (const auto& comp : strongly_connected_components(y.graph())) {
    std::vector<bool> in(y.state_count(), false);
    for (auto q : comp) in[q] = true;
    const auto sub = detail::restrict_states(y, in);
    if (sub.graph().is_empty()) continue;
    best = std::max(best, pressure(sub.graph(), zero_potential(sub.graph())));
  }
  r.pressure = best;
  // point mass: all weight on the 0-loop at S0
  MarkovMeasure mu{y.graph(), {1.0, 0.0}, {1.0, 0.0, 1.0}};
  const HiddenMarkovMeasure nu(mu, y.code());
  r.entropy = entropy_estimate(nu, 12).estimate;
  r.equilibrium = std::abs(r.entropy + 0.0 - r.pressure) < 1e-12;
  r.gibbs = gibbs_ratio_test(nu, y, zero_potential(y), Word{1}, Word{0}, context_lengths(1, cmax), 1e-6);
  r.gibbs_consistent = r.gibbs.pass;
  r.pass = r.equilibrium && !r.gibbs_consistent && !r.irreducible;
  return r;
}

}  // namespace sofic
