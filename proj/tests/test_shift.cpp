#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "sofic/presentation.hpp"
#include "sofic/shift.hpp"

using namespace sofic;

namespace {

using Matrix = std::vector<std::vector<std::uint64_t>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.size(), std::vector<std::uint64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

EdgeShift period_two() { return EdgeShift({"A", "B"}, {{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 0}}); }

EdgeShift random_graph(std::mt19937_64& rng, std::size_t v, std::size_t e) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < v; ++i) names.push_back("v" + std::to_string(i));
  std::vector<Edge> edges;
  std::uniform_int_distribution<std::size_t> pick(0, v - 1);
  for (std::size_t i = 0; i < v; ++i) edges.push_back({"c" + std::to_string(i), i, (i + 1) % v});
  for (std::size_t i = 0; i < e; ++i) edges.push_back({"r" + std::to_string(i), pick(rng), pick(rng)});
  return EdgeShift(names, edges);
}

}  // namespace

TEST(EdgeShift, RejectsDuplicateEdgeIds) {
  EXPECT_THROW(EdgeShift({"A"}, {{"a", 0, 0}, {"a", 0, 0}}), Error);
}

TEST(EdgeShift, RejectsUndeclaredEndpoint) {
  EXPECT_THROW(EdgeShift({"A"}, {{"a", 0, 1}}), Error);
}

TEST(EdgeShift, GoldenMeanTraceIsLucasNumber) {
  const auto g = golden_mean().graph();
  Matrix p = g.adjacency();
  for (int i = 1; i < 12; ++i) p = multiply(p, g.adjacency());
  std::uint64_t trace = 0;
  for (std::size_t i = 0; i < p.size(); ++i) trace += p[i][i];
  EXPECT_EQ(trace, 322u);
}

TEST(EdgeShift, PathCountsMatchAdjacencyPowers) {
  std::mt19937_64 rng(3);
  std::vector<EdgeShift> graphs{golden_mean().graph(), full_shift(3), period_two(), directed_cycle(4)};
  for (int i = 0; i < 5; ++i) graphs.push_back(random_graph(rng, 4, 3));
  for (const auto& g : graphs) {
    Matrix p = g.adjacency();
    for (std::size_t n = 1; n <= 10; ++n) {
      std::uint64_t total = 0;
      for (const auto& row : p) total = std::accumulate(row.begin(), row.end(), total);
      EXPECT_EQ(path_count(g, n), total);
      EXPECT_EQ(words_of_length(g, n).size(), total);
      p = multiply(p, g.adjacency());
    }
  }
}

TEST(EdgeShift, EnumerationCapIsEnforced) {
  try {
    (void)words_of_length(full_shift(2), 20, 1000);
    FAIL() << "expected enumeration_too_large";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::enumeration_too_large);
  }
}

TEST(Structure, Irreducibility) {
  EXPECT_TRUE(is_irreducible(golden_mean().graph()));
  EXPECT_TRUE(is_irreducible(period_two()));
  EXPECT_FALSE(is_irreducible(sunny_side_up().graph()));
}

TEST(Structure, PeriodsAndCyclicClasses) {
  EXPECT_EQ(cyclic_structure(golden_mean().graph()).period, 1u);
  const auto cs = cyclic_structure(period_two());
  EXPECT_EQ(cs.period, 2u);
  EXPECT_NE(cs.class_of[0], cs.class_of[1]);
  EXPECT_EQ(cyclic_structure(directed_cycle(5)).period, 5u);
  // every edge advances the class by one
  const auto c4 = directed_cycle(4);
  const auto cs4 = cyclic_structure(c4);
  for (const auto& e : c4.edges()) EXPECT_EQ((cs4.class_of[e.source] + 1) % 4, cs4.class_of[e.target]);
}

TEST(Structure, ReducibleShiftsReportPerComponentPeriods) {
  EXPECT_THROW(cyclic_structure(sunny_side_up().graph()), Error);
  const auto parts = component_periods(sunny_side_up().graph());
  EXPECT_EQ(parts.size(), 2u);
  for (const auto& [states, period] : parts) EXPECT_EQ(period, 1u);
}

TEST(Structure, PruneRemovesStrandedVertices) {
  EdgeShift s({"A", "B", "C"}, {{"a", 0, 0}, {"b", 0, 1}, {"c", 2, 0}});
  const auto p = prune(s);
  EXPECT_EQ(p.vertex_count(), 1u);
  EXPECT_EQ(p.edge_count(), 1u);
  EXPECT_TRUE(p.is_essential());
}

TEST(Recoding, HigherBlockShiftIsConjugate) {
  const auto g = golden_mean().graph();
  const auto [h, code] = higher_block_shift(g, 3);
  EXPECT_EQ(h.edge_count(), path_count(g, 3));
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(path_count(h, n), path_count(g, n + 2));
}

TEST(Recoding, PowerShiftCountsPaths) {
  const auto s = period_two();
  const auto p2 = higher_power_shift(s, 2);
  EXPECT_EQ(p2.edge_count(), path_count(s, 2));
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(path_count(p2, n), path_count(s, 2 * n));
}

TEST(Recoding, ClassPowerShiftIsMixing) {
  const auto s = period_two();
  const auto power = class_power_shift(s, cyclic_structure(s), 0);
  EXPECT_TRUE(is_irreducible(power.shift));
  EXPECT_EQ(cyclic_structure(power.shift).period, 1u);
  for (const auto& path : power.paths) EXPECT_EQ(path.size(), 2u);
}
