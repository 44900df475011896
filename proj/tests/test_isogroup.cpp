#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace propmet;

namespace {

std::set<std::vector<std::uint32_t>> as_set(const std::vector<Permutation>& ps) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& p : ps) out.insert(p.images);
  return out;
}

std::set<std::vector<std::uint32_t>> as_set(const std::vector<std::vector<std::uint32_t>>& ps) {
  return {ps.begin(), ps.end()};
}

}  // namespace

TEST(Isometries, SquareHasDihedralGroup) {
  const auto x = square_space();
  const auto isos = isometries(x);
  EXPECT_EQ(isos.size(), 8u);
  EXPECT_EQ(as_set(isos), as_set(oracle::isometries_brute(x.distances)));
  const auto g = isometry_group(x);
  EXPECT_EQ(*g.order(), 8);
  EXPECT_TRUE(verify_proper_isometry_action(x, g).pass());
}

TEST(Isometries, EquilateralTriangleHasFullSymmetricGroup) {
  const auto x = FiniteMetricSpace::make({"u", "v", "w"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto g = isometry_group(x);
  EXPECT_EQ(*g.order(), 6);
  EXPECT_EQ(as_set(isometries(x)), as_set(oracle::isometries_brute(x.distances)));
  EXPECT_TRUE(verify_proper_isometry_action(x, g).pass());
}

TEST(Isometries, RandomTablesMatchBruteForce) {
  oracle::Gen gen(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + gen.index(6);
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, 0));
    // Few distinct values so that nontrivial symmetries actually occur.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = Rational(gen.integer(1, 2));
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    const auto x = FiniteMetricSpace::make(names, d);
    EXPECT_EQ(as_set(isometries(x)), as_set(oracle::isometries_brute(d)));
    EXPECT_TRUE(verify_proper_isometry_action(x, isometry_group(x)).pass());
  }
}

TEST(Isometries, InjectedNonIsometryFailsInvariance) {
  const auto x = square_space();
  // The transposition of two adjacent corners does not preserve distances.
  const auto g = GroupDescriptor::permutations(4, {Permutation{{1, 0, 2, 3}}});
  const auto rep = verify_proper_isometry_action(x, g);
  EXPECT_FALSE(rep.invariance.pass);
  EXPECT_FALSE(rep.pass());
}

TEST(Isometries, Validation) {
  EXPECT_THROW(FiniteMetricSpace::make({"a", "b"}, {{0, 1}, {2, 0}}), UsageError);
  EXPECT_THROW(FiniteMetricSpace::make({"a", "b"}, {{0, 0}, {0, 0}}), UsageError);
  EXPECT_THROW(FiniteMetricSpace::make({"a"}, {{0, 1}}), UsageError);
  std::vector<std::string> names(10, "p");
  std::vector<std::vector<Rational>> d(10, std::vector<Rational>(10, 1));
  for (std::size_t i = 0; i < 10; ++i) d[i][i] = 0;
  EXPECT_THROW(isometries(FiniteMetricSpace::make(names, d)), BudgetError);
}
