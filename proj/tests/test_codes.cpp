#include <gtest/gtest.h>

#include <random>

#include "sofic/codes.hpp"
#include "sofic/presentation.hpp"

using namespace sofic;

namespace {

// Brute force d*(w): for a one-block code on a graph, the minimum over
// coordinates of the number of distinct edges that occur there among
// preimage paths of w.
std::size_t brute_min_symbols(const SlidingBlockCode& code, const Word& w) {
  const auto labels = code.labels();
  std::vector<std::set<Symbol>> at(w.size());
  for (const auto& path : words_of_length(code.domain, w.size())) {
    bool ok = true;
    for (std::size_t i = 0; i < w.size() && ok; ++i) ok = labels[path[i]] == w[i];
    if (!ok) continue;
    for (std::size_t i = 0; i < w.size(); ++i) at[i].insert(path[i]);
  }
  std::size_t best = SIZE_MAX;
  for (const auto& s : at) best = std::min(best, s.size());
  return best;
}

}  // namespace

TEST(Codes, ApplyXor) {
  const auto c = xor_code();
  EXPECT_EQ(apply_to_word(c, Word{0, 1, 1, 0}), (Word{1, 0, 1}));
}

TEST(Codes, OneBlockRecodingAgrees) {
  const auto c = xor_code();
  const auto [x, one] = recode_to_one_block(c);
  EXPECT_TRUE(one.is_one_block());
  EXPECT_EQ(x.vertex_count(), 2u);
  EXPECT_EQ(x.edge_count(), 4u);
  const auto paths = higher_block_paths(c.domain, 2);
  for (const auto& w : words_of_length(c.domain, 6)) {
    Word lifted;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Word block{w[i], w[i + 1]};
      lifted.push_back(static_cast<Symbol>(std::find(paths.begin(), paths.end(), block) - paths.begin()));
    }
    EXPECT_EQ(apply_to_word(c, w), apply_to_word(one, lifted));
  }
}

TEST(Codes, RightResolving) {
  EXPECT_TRUE(is_right_resolving(fischer_cover(even_shift()).cover));
  EXPECT_FALSE(is_right_resolving(amalgamation_code()));
}

TEST(Codes, FiniteToOne) {
  EXPECT_TRUE(is_finite_to_one(fischer_cover(even_shift()).cover));
  EXPECT_TRUE(is_finite_to_one(recode_to_one_block(xor_code()).second));
  EXPECT_FALSE(is_finite_to_one(amalgamation_code()));
}

TEST(Codes, Degrees) {
  EXPECT_EQ(degree(fischer_cover(even_shift()).cover), 1u);
  EXPECT_EQ(degree(xor_code()), 2u);
  EXPECT_EQ(degree(SlidingBlockCode::identity(golden_mean().graph())), 1u);
}

TEST(Codes, AmalgamationDegreeIsUndefined) {
  try {
    (void)degree(amalgamation_code());
    FAIL() << "expected not_finite_to_one";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_finite_to_one);
  }
  const auto a = analyze(amalgamation_code());
  EXPECT_FALSE(a.finite_to_one);
  EXPECT_FALSE(a.degree.has_value());
}

TEST(Codes, MagicWordAttainsDegree) {
  for (const auto& code : {fischer_cover(even_shift()).cover, recode_to_one_block(xor_code()).second,
                           fischer_cover(golden_mean()).cover}) {
    const auto m = find_magic_word(code);
    EXPECT_EQ(brute_min_symbols(code, m.word), m.count);
    EXPECT_EQ(preimage_symbol_min(code, m.word), m.count);
  }
}

TEST(Codes, DegreeIsMinimumOverWords) {
  const auto code = recode_to_one_block(xor_code()).second;
  const auto d = degree(code);
  const auto image = image_presentation(code.domain, code);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const auto& w : words_of_length(image, n)) {
      EXPECT_GE(brute_min_symbols(code, w), d);
      EXPECT_EQ(preimage_symbol_min(code, w), brute_min_symbols(code, w));
    }
  }
}

TEST(Codes, PreimageCountIsMonotoneUnderExtension) {
  const auto code = fischer_cover(even_shift()).cover;
  const auto image = image_presentation(code.domain, code);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& w : words_of_length(image, n)) {
      for (Symbol a = 0; a < 2; ++a) {
        Word right = w, left{a};
        right.push_back(a);
        left.insert(left.end(), w.begin(), w.end());
        if (membership(image, right)) EXPECT_LE(preimage_symbol_min(code, right), preimage_symbol_min(code, w));
        if (membership(image, left)) EXPECT_LE(preimage_symbol_min(code, left), preimage_symbol_min(code, w));
      }
    }
  }
}

TEST(Codes, AnalyzeEvenCover) {
  const auto a = analyze(fischer_cover(even_shift()).cover);
  EXPECT_TRUE(a.right_resolving);
  EXPECT_TRUE(a.finite_to_one);
  EXPECT_TRUE(a.almost_invertible);
  ASSERT_TRUE(a.magic_word.has_value());
  EXPECT_EQ(a.magic_word->word, Word{1});
}
