#pragma once

// Thermodynamic formalism for locally constant potentials on edge shifts:
// variations, SV norm, Perron data, pressure, equilibrium Markov measures.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sofic/core.hpp"
#include "sofic/presentation.hpp"
#include "sofic/shift.hpp"

namespace sofic {

/// f(x) = table(x[0 .. range-1]). Words are edge-index words on an edge shift
/// and symbol words on a sofic shift.
struct Potential {
  std::size_t range = 1;
  std::map<Word, double> table;

  double operator()(std::span<const Symbol> w) const {
    if (w.size() < range) throw Error(ErrorKind::invalid_input, "potential needs a word of length >= range");
    auto it = table.find(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(range)));
    if (it == table.end()) throw Error(ErrorKind::invalid_input, "potential is not defined on this word");
    return it->second;
  }

  double sup_norm() const {
    double m = 0;
    for (const auto& [w, v] : table) m = std::max(m, std::abs(v));
    return m;
  }

  bool operator==(const Potential&) const = default;
};

/// The constant potential over a list of words of equal length.
inline Potential constant_potential(const std::vector<Word>& words, double c = 0.0) {
  Potential f;
  f.range = words.empty() ? 1 : words.front().size();
  for (const auto& w : words) f.table.emplace(w, c);
  return f;
}

inline Potential zero_potential(const EdgeShift& s) { return constant_potential(words_of_length(s, 1)); }
inline Potential zero_potential(const SoficPresentation& p) { return constant_potential(words_of_length(p, 1)); }

/// Range-1 potential on an edge shift from one value per edge.
inline Potential edge_potential(const std::vector<double>& values) {
  Potential f;
  for (std::size_t e = 0; e < values.size(); ++e) f.table.emplace(Word{static_cast<Symbol>(e)}, values[e]);
  return f;
}

namespace detail {

using WordSource = std::function<std::vector<Word>(std::size_t)>;

/// v_j for j >= 0: words cover positions [-j, max(j, range-1)], grouped by
/// their central window [-j, j].
inline double variation_from(const WordSource& words, const Potential& f, long j) {
  if (j < -1) throw Error(ErrorKind::invalid_input, "variation index must be >= -1");
  if (j == -1) return f.sup_norm();
  const auto uj = static_cast<std::size_t>(j);
  if (uj + 1 >= f.range) return 0.0;  // window [-j, j] already fixes f
  const std::size_t right = std::max(uj, f.range - 1);
  std::map<Word, std::pair<double, double>> spread;
  for (const auto& w : words(uj + right + 1)) {
    const double value = f(std::span<const Symbol>(w).subspan(uj, f.range));
    Word centre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(2 * uj + 1));
    auto [it, fresh] = spread.emplace(std::move(centre), std::make_pair(value, value));
    if (!fresh) {
      it->second.first = std::min(it->second.first, value);
      it->second.second = std::max(it->second.second, value);
    }
  }
  double v = 0;
  for (const auto& [c, mm] : spread) v = std::max(v, mm.second - mm.first);
  return v;
}

}  // namespace detail

inline double variation(const EdgeShift& s, const Potential& f, long j) {
  return detail::variation_from([&](std::size_t n) { return words_of_length(s, n); }, f, j);
}

inline double variation(const SoficPresentation& p, const Potential& f, long j) {
  return detail::variation_from([&](std::size_t n) { return words_of_length(p, n); }, f, j);
}

/// ||f||_SV = ||f||_inf + sum_{j>=0} v_j(f); finite since v_j = 0 once j >= range-1.
inline double sv_norm(const EdgeShift& s, const Potential& f) {
  double n = f.sup_norm();
  for (long j = 0; j + 1 < static_cast<long>(f.range); ++j) n += variation(s, f, j);
  return n;
}

inline double sv_norm(const SoficPresentation& p, const Potential& f) {
  double n = f.sup_norm();
  for (long j = 0; j + 1 < static_cast<long>(f.range); ++j) n += variation(p, f, j);
  return n;
}

/// Potential recoded onto the range-th higher block shift so it reads a single
/// edge. `conjugacy` sends each block to its first edge; `blocks[e]` is the
/// original path carried by new edge e.
struct EdgeReduction {
  EdgeShift shift;
  Potential f;
  SlidingBlockCode conjugacy;
  std::vector<Word> blocks;
};

inline EdgeReduction reduce_to_edge_potential(const EdgeShift& s, const Potential& f) {
  if (f.range == 0) throw Error(ErrorKind::invalid_input, "potential range must be positive");
  auto [block, code] = higher_block_shift(s, f.range);
  std::vector<Word> blocks = f.range == 1 ? words_of_length(s, 1) : higher_block_paths(s, f.range);
  Potential g;
  g.range = 1;
  for (std::size_t e = 0; e < blocks.size(); ++e) g.table.emplace(Word{static_cast<Symbol>(e)}, f(blocks[e]));
  return {std::move(block), std::move(g), std::move(code), std::move(blocks)};
}

/// g carried to the n-th higher block shift (edges are n-paths, read through
/// their first edge), with the smallest range that still covers g's window.
inline Potential potential_on_higher_block(const EdgeShift& s, const Potential& g, std::size_t n) {
  if (n <= 1) return g;
  const auto paths = higher_block_paths(s, n);
  const auto block = higher_block_shift(s, n).first;
  Potential out;
  out.range = g.range + 1 > n ? g.range + 1 - n : 1;
  for (const auto& w : words_of_length(block, out.range)) {
    Word path;
    for (Symbol b : w) path.push_back(paths[b].front());
    path.insert(path.end(), paths[w.back()].begin() + 1, paths[w.back()].end());
    out.table.emplace(w, g(std::span<const Symbol>(path).first(g.range)));
  }
  return out;
}

struct PerronData {
  double lambda = 0;
  std::vector<double> left;
  std::vector<double> right;
  double residual = 0;
  std::size_t iterations = 0;
};

inline constexpr double kPerronTol = 1e-12;
inline constexpr std::size_t kPerronIterationCap = 1'000'000;

namespace detail {

inline bool matrix_irreducible(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  if (n == 0) return false;
  auto reach = [&](bool transpose) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Eigen::Index> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < n; ++j) {
        const double x = transpose ? m(j, i) : m(i, j);
        if (x > 0 && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = true;
          stack.push_back(j);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach(false) && reach(true);
}

/// Power iteration on a + I. Stops when the Collatz-Wielandt bounds
/// min_i (Ar)_i/r_i <= rho <= max_i (Ar)_i/r_i are within tol (relative) of
/// each other, which also bounds the residual.
inline std::pair<double, Eigen::VectorXd> power_iteration(const Eigen::MatrixXd& a, double tol, std::size_t cap,
                                                         std::size_t& iterations, double& residual) {
  const auto n = a.rows();
  const Eigen::MatrixXd shifted = a + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd r = Eigen::VectorXd::Ones(n);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= cap; ++it) {
    Eigen::VectorXd next = shifted * r;
    const double hi = (next.array() / r.array()).maxCoeff();
    const double lo = (next.array() / r.array()).minCoeff();
    const double est = 0.5 * (hi + lo);
    r = next / next.maxCoeff();
    if (hi - lo <= tol * est && std::abs(est - prev) <= tol * est) {
      iterations = it;
      residual = ((a * r) - (est - 1.0) * r).cwiseAbs().maxCoeff() / r.cwiseAbs().maxCoeff();
      return {est - 1.0, r};
    }
    prev = est;
  }
  residual = ((a * r) - (prev - 1.0) * r).cwiseAbs().maxCoeff();
  throw Error(ErrorKind::no_convergence,
              "Perron iteration did not converge; residual " + std::to_string(residual));
}

}  // namespace detail

/// Perron eigenvalue and positive eigenvectors of an irreducible nonnegative
/// matrix, normalized with sum(right) = 1 and sum(left * right) = 1.
inline PerronData perron(const Eigen::MatrixXd& m, double tol = kPerronTol, std::size_t cap = kPerronIterationCap) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::invalid_input, "perron needs a square matrix");
  if ((m.array() < 0).any()) throw Error(ErrorKind::invalid_input, "perron needs a nonnegative matrix");
  if (!detail::matrix_irreducible(m)) throw Error(ErrorKind::requires_irreducible, "matrix is not irreducible");
  // bring the spectral radius near 1 so the +I shift separates eigenvalues well
  const double scale = m.rowwise().sum().maxCoeff();
  const Eigen::MatrixXd a = m / scale;
  PerronData out;
  std::size_t it_r = 0, it_l = 0;
  double res_r = 0, res_l = 0;
  auto [lam, r] = detail::power_iteration(a, tol, cap, it_r, res_r);
  auto [lam_l, l] = detail::power_iteration(a.transpose(), tol, cap, it_l, res_l);
  (void)lam_l;
  r /= r.sum();
  l /= l.dot(r);
  out.lambda = lam * scale;
  out.left.assign(l.data(), l.data() + l.size());
  out.right.assign(r.data(), r.data() + r.size());
  out.residual = std::max(res_r, res_l) * scale;
  out.iterations = std::max(it_r, it_l);
  return out;
}

inline PerronData perron(const std::vector<std::vector<double>>& m, double tol = kPerronTol) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) throw Error(ErrorKind::invalid_input, "perron needs a square matrix");
    for (std::size_t j = 0; j < m.size(); ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
    }
  }
  return perron(a, tol);
}

/// M(i,j) = sum over edges i->j of exp(f(e)), for a range-1 potential.
inline Eigen::MatrixXd transfer_matrix(const EdgeShift& s, const Potential& f) {
  if (f.range != 1) throw Error(ErrorKind::invalid_input, "transfer_matrix needs an edge potential (range 1)");
  const auto n = static_cast<Eigen::Index>(s.vertex_count());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const auto& edge = s.edge(e);
    m(static_cast<Eigen::Index>(edge.source), static_cast<Eigen::Index>(edge.target)) +=
        std::exp(f(Word{static_cast<Symbol>(e)}));
  }
  return m;
}

inline double pressure(const EdgeShift& s, const Potential& f) {
  if (!is_irreducible(s)) throw Error(ErrorKind::requires_irreducible, "pressure requires an irreducible shift");
  if (f.range == 1) return std::log(perron(transfer_matrix(s, f)).lambda);
  const auto red = reduce_to_edge_potential(s, f);
  return std::log(perron(transfer_matrix(red.shift, red.f)).lambda);
}

/// A stationary Markov measure on the edge paths of a graph.
struct MarkovMeasure {
  EdgeShift shift;
  std::vector<double> stationary;   // vertex-indexed
  std::vector<double> transitions;  // edge-indexed, rows sum to 1

  /// mu([w]) at coordinate 0; 0 for words that are not paths.
  double cylinder(std::span<const Symbol> w) const {
    if (w.empty()) return 1.0;
    if (!shift.is_path(w)) return 0.0;
    double p = stationary[shift.edge(w[0]).source];
    for (Symbol e : w) p *= transitions[e];
    return p;
  }
};

/// Markov measure from positive edge weights: rows normalized, stationary
/// vector from Perron data of the stochastic matrix.
inline MarkovMeasure markov_from_weights(const EdgeShift& s, const std::vector<double>& weights) {
  if (weights.size() != s.edge_count()) throw Error(ErrorKind::invalid_input, "one weight per edge required");
  std::vector<double> row(s.vertex_count(), 0.0);
  for (std::size_t e = 0; e < s.edge_count(); ++e) row[s.edge(e).source] += weights[e];
  MarkovMeasure mu{s, {}, std::vector<double>(s.edge_count())};
  const auto n = static_cast<Eigen::Index>(s.vertex_count());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    mu.transitions[e] = weights[e] / row[s.edge(e).source];
    p(static_cast<Eigen::Index>(s.edge(e).source), static_cast<Eigen::Index>(s.edge(e).target)) += mu.transitions[e];
  }
  const auto data = perron(p);
  double total = 0;
  for (double x : data.left) total += x;
  for (double x : data.left) mu.stationary.push_back(x / total);
  return mu;
}

inline MarkovMeasure random_markov_measure(const EdgeShift& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  std::vector<double> w(s.edge_count());
  for (auto& x : w) x = dist(rng);
  return markov_from_weights(s, w);
}

/// Entropy rate -sum_i p_i sum_e P(e) log P(e).
inline double entropy(const MarkovMeasure& mu) {
  double h = 0;
  for (std::size_t e = 0; e < mu.shift.edge_count(); ++e) {
    const double pe = mu.transitions[e];
    if (pe > 0) h -= mu.stationary[mu.shift.edge(e).source] * pe * std::log(pe);
  }
  return h;
}

/// A measure on a base edge shift carried by a Markov chain on its
/// block-th higher block shift.
struct BlockMarkovMeasure {
  EdgeShift base;
  std::size_t block = 1;
  std::vector<Word> blocks;           // chain edge -> base path
  std::map<Word, std::size_t> index;  // base path -> chain edge
  MarkovMeasure chain;

  BlockMarkovMeasure() = default;
  BlockMarkovMeasure(EdgeShift b, std::size_t k, std::vector<Word> bl, MarkovMeasure c)
      : base(std::move(b)), block(k), blocks(std::move(bl)), chain(std::move(c)) {
    for (std::size_t e = 0; e < blocks.size(); ++e) index.emplace(blocks[e], e);
  }

  double cylinder(std::span<const Symbol> w) const {
    if (w.empty()) return 1.0;
    if (!base.is_path(w)) return 0.0;
    if (w.size() >= block) {
      Word up;
      for (std::size_t i = 0; i + block <= w.size(); ++i) {
        up.push_back(static_cast<Symbol>(index.at(Word(w.begin() + static_cast<std::ptrdiff_t>(i),
                                                       w.begin() + static_cast<std::ptrdiff_t>(i + block)))));
      }
      return chain.cylinder(up);
    }
    // sum over right extensions to a full block
    double total = 0;
    Word ext(w.begin(), w.end());
    std::function<void()> grow = [&]() {
      if (ext.size() == block) {
        total += chain.cylinder(Word{static_cast<Symbol>(index.at(ext))});
        return;
      }
      for (std::size_t e : base.out_edges(base.edge(ext.back()).target)) {
        ext.push_back(static_cast<Symbol>(e));
        grow();
        ext.pop_back();
      }
    };
    grow();
    return total;
  }
};

inline double entropy(const BlockMarkovMeasure& mu) { return entropy(mu.chain); }

struct Equilibrium {
  PerronData perron;
  double pressure = 0;
  BlockMarkovMeasure measure;
};

/// RPF construction: P(e: i->j) = exp(f(e)) r_j / (lambda r_i), p_i = l_i r_i.
inline MarkovMeasure equilibrium_measure(const EdgeShift& s, const Potential& f, PerronData* data = nullptr) {
  if (f.range != 1) throw Error(ErrorKind::invalid_input, "equilibrium_measure needs an edge potential (range 1)");
  if (!is_irreducible(s)) throw Error(ErrorKind::requires_irreducible, "equilibrium measure requires irreducible shift");
  const auto pd = perron(transfer_matrix(s, f));
  MarkovMeasure mu{s, std::vector<double>(s.vertex_count()), std::vector<double>(s.edge_count())};
  for (std::size_t v = 0; v < s.vertex_count(); ++v) mu.stationary[v] = pd.left[v] * pd.right[v];
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const auto& edge = s.edge(e);
    mu.transitions[e] =
        std::exp(f(Word{static_cast<Symbol>(e)})) * pd.right[edge.target] / (pd.lambda * pd.right[edge.source]);
  }
  if (data) *data = pd;
  return mu;
}

/// Equilibrium state for a potential of any range.
inline Equilibrium equilibrium(const EdgeShift& s, const Potential& f) {
  auto red = reduce_to_edge_potential(s, f);
  Equilibrium out;
  auto mu = equilibrium_measure(red.shift, red.f, &out.perron);
  out.pressure = std::log(out.perron.lambda);
  out.measure = BlockMarkovMeasure(s, f.range, std::move(red.blocks), std::move(mu));
  return out;
}

/// Integral of f against any cylinder evaluator: sum over B_range of mu[w] f(w).
template <class Measure>
double integrate(const Potential& f, const Measure& mu, const std::vector<Word>& range_words) {
  double total = 0;
  for (const auto& w : range_words) total += mu.cylinder(w) * f(w);
  return total;
}

inline double integrate(const Potential& f, const MarkovMeasure& mu) {
  return integrate(f, mu, words_of_length(mu.shift, f.range));
}

inline double integrate(const Potential& f, const BlockMarkovMeasure& mu) {
  return integrate(f, mu, words_of_length(mu.base, f.range));
}

/// (1/n) log trace(M^n) with per-step scaling; -inf when there are no closed
/// paths of length n.
inline double pressure_periodic_oracle(const EdgeShift& s, const Potential& f, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_input, "oracle length must be positive");
  const auto red = reduce_to_edge_potential(s, f);
  const Eigen::MatrixXd m = transfer_matrix(red.shift, red.f);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  double log_scale = 0;
  for (std::size_t i = 0; i < n; ++i) {
    power = power * m;
    const double top = power.cwiseAbs().maxCoeff();
    if (top == 0) return -std::numeric_limits<double>::infinity();
    power /= top;
    log_scale += std::log(top);
  }
  const double tr = power.trace();
  if (tr <= 0) return -std::numeric_limits<double>::infinity();
  return (std::log(tr) + log_scale) / static_cast<double>(n);
}

/// R_p f = sum_{j<p} f o sigma^j on the class-0 power shift.
struct PowerPotential {
  ClassPowerShift power;
  Potential f;
};

inline PowerPotential r_p(const EdgeShift& s, const Potential& f, const CyclicStructure& cs) {
  const std::size_t p = cs.period;
  auto power = class_power_shift(s, cs, 0);
  if (p == 1) return {std::move(power), f};
  // f at offsets 0..p-1 reads p+range-1 base edges, i.e. this many blocks
  const std::size_t range = (p + f.range - 1 + p - 1) / p;
  Potential g;
  g.range = range;
  for (const auto& blocks : words_of_length(power.shift, range)) {
    Word path;
    for (Symbol b : blocks) path.insert(path.end(), power.paths[b].begin(), power.paths[b].end());
    double total = 0;
    for (std::size_t j = 0; j < p; ++j) total += f(std::span<const Symbol>(path).subspan(j, f.range));
    g.table.emplace(blocks, total);
  }
  return {std::move(power), std::move(g)};
}

}  // namespace sofic
