#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "sofic/spec_file.hpp"

using namespace sofic;

namespace {

std::string read_sample(const std::string& name) {
  std::ifstream in(std::string(SOFIC_SAMPLES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t error_line(const std::string& text) {
  try {
    (void)parse_spec(text);
  } catch (const ParseError& e) {
    return e.line();
  } catch (const Error&) {
    return 0;
  }
  return SIZE_MAX;
}

}  // namespace

TEST(SpecFile, ParsesGoldenMean) {
  const auto spec = parse_spec(read_sample("golden_mean.shift"));
  ASSERT_TRUE(spec.shift);
  EXPECT_EQ(spec.shift->vertices, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(spec.shift->edges.size(), 3u);
  const auto y = to_presentation(spec);
  EXPECT_EQ(words_of_length(y, 5).size(), 13u);
}

TEST(SpecFile, ForbiddenAndEdgeFormsAgree) {
  const auto a = to_presentation(parse_spec(read_sample("golden_mean.shift")));
  const auto b = to_presentation(parse_spec(read_sample("golden_mean_forbidden.shift")));
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(words_of_length(a, n), words_of_length(b, n));
}

TEST(SpecFile, RoundTripsEverySample) {
  for (const char* name : {"golden_mean.shift", "golden_mean_forbidden.shift", "even_shift.shift", "even_shift_nd.shift",
                           "full2.shift", "amalgamation.shift", "xor.shift", "period2.shift", "sunny_side_up.shift",
                           "even_range1.pot", "even_range2.pot", "bernoulli.pot"}) {
    const auto first = parse_sections(read_sample(name));
    const auto text = serialize(first);
    const auto second = parse_sections(text);
    EXPECT_EQ(first, second) << name;
    EXPECT_EQ(serialize(second), text) << name;
  }
}

TEST(SpecFile, LogLiteralsKeepTheirSpelling) {
  const auto pot = parse_potential_spec(read_sample("even_range2.pot"));
  bool found = false;
  for (const auto& [w, v] : pot.values) {
    if (w == "11") {
      found = true;
      EXPECT_EQ(v.text, "log(3/2)");
      EXPECT_DOUBLE_EQ(v.value, std::log(1.5));
    }
  }
  EXPECT_TRUE(found);
}

TEST(SpecFile, CodeSection) {
  const auto spec = parse_spec(read_sample("xor.shift"));
  const auto y = to_presentation(spec);
  const auto code = to_code(spec, y);
  EXPECT_EQ(code.window(), 2u);
  EXPECT_EQ(code.table.size(), 4u);
}

TEST(SpecFile, PotentialMustBeTotal) {
  const auto y = to_presentation(parse_spec(read_sample("even_shift.shift")));
  const auto partial = parse_potential_spec("[potential] range=1\nf(0) = 1.0\n");
  EXPECT_THROW(to_potential(partial, y), Error);
  const auto full = to_potential(parse_potential_spec(read_sample("even_range1.pot")), y);
  EXPECT_DOUBLE_EQ(full(Word{1}), 1.0);
}

TEST(SpecFile, EmptyFile) {
  EXPECT_THROW(parse_spec(""), ParseError);
}

TEST(SpecFile, UndeclaredVertex) {
  const std::string text = "[alphabet] 0 1\n[shift] kind=edge vertices=A\nedge e: A -> C label 0\n";
  EXPECT_EQ(error_line(text), 3u);
}

TEST(SpecFile, DuplicateEdge) {
  const std::string text = "[alphabet] 0 1\n[shift] kind=edge vertices=A\nedge e: A -> A label 0\nedge e: A -> A label 1\n";
  EXPECT_EQ(error_line(text), 4u);
}

TEST(SpecFile, MalformedReal) {
  EXPECT_THROW(parse_potential_spec("[potential] range=1\nf(0) = 1.2.3\n"), ParseError);
  EXPECT_THROW(parse_potential_spec("[potential] range=1\nf(0) = log(-1)\n"), ParseError);
}

TEST(SpecFile, UnknownSection) {
  EXPECT_THROW(parse_spec("[bogus]\n"), ParseError);
}
