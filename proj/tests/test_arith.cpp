#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace propmet;

TEST(Rational, ParseAndFormatRoundTrip) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-7")), "-7");
  EXPECT_EQ(to_string(parse_rational("0/5")), "0");
  EXPECT_THROW(parse_rational("1/0"), UsageError);
  EXPECT_THROW(parse_rational("x"), UsageError);
}

TEST(Rational, FloorAndCeil) {
  EXPECT_EQ(floor(Rational(7, 2)), 3);
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil(Rational(7, 2)), 4);
  EXPECT_EQ(ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(floor(Rational(4)), 4);
}

TEST(Rational, CompareAgreesWithLibraryOrdering) {
  oracle::Gen gen(11);
  for (int i = 0; i < 2000; ++i) {
    const Rational a = gen.rational(50, 12), b = gen.rational(50, 12);
    const auto c = compare(a, b);
    EXPECT_EQ(c < 0, a < b);
    EXPECT_EQ(c == 0, a == b);
    EXPECT_EQ(is_negative(a), a < 0);
  }
}

TEST(ExtReal, InfinityAbsorbsAndOrdersLast) {
  const ExtReal inf = ExtReal::infinity();
  EXPECT_TRUE((ExtReal(3) + inf).is_infinite());
  EXPECT_LT(ExtReal(Rational(1000000)), inf);
  EXPECT_EQ(inf, ExtReal::infinity());
  EXPECT_EQ(min(ExtReal(2), inf), ExtReal(2));
  EXPECT_EQ(max(ExtReal(2), inf), inf);
  EXPECT_EQ((Rational(1, 2) * ExtReal(3)).str(), "3/2");
  EXPECT_THROW(ExtReal(Rational(-1)), UsageError);
  EXPECT_THROW(inf.value(), UsageError);
  EXPECT_EQ(parse_ext_real("inf"), inf);
  EXPECT_EQ(parse_ext_real("5/10"), ExtReal(Rational(1, 2)));
}

TEST(IntLattice, HermiteBasisIsCanonical) {
  const auto a = IntLattice::span(2, {{Integer(2), Integer(0)}, {Integer(0), Integer(3)}});
  const auto b = IntLattice::span(2, {{Integer(2), Integer(3)}, {Integer(2), Integer(6)}, {Integer(4), Integer(0)}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.determinant(), 6);
  EXPECT_TRUE(a.contains({Integer(-4), Integer(9)}));
  EXPECT_FALSE(a.contains({Integer(1), Integer(0)}));
}

TEST(IntLattice, ReduceIsConstantOnCosets) {
  const auto lat = IntLattice::span(2, {{Integer(3), Integer(1)}, {Integer(0), Integer(4)}});
  oracle::Gen gen(5);
  for (int i = 0; i < 300; ++i) {
    IntVector v{Integer(gen.integer(-30, 30)), Integer(gen.integer(-30, 30))};
    const Integer s = gen.integer(-5, 5), t = gen.integer(-5, 5);
    IntVector w{v[0] + 3 * s, v[1] + s + 4 * t};
    EXPECT_EQ(lat.reduce(v), lat.reduce(w));
    const auto r = lat.reduce(v);
    EXPECT_TRUE(r[0] >= 0 && r[0] < 3);
    EXPECT_TRUE(r[1] >= 0 && r[1] < 4);
  }
}

TEST(IntLattice, RankDeficientSpan) {
  const auto lat = IntLattice::span(2, {{Integer(1), Integer(1)}, {Integer(2), Integer(2)}});
  EXPECT_EQ(lat.rank(), 1u);
  EXPECT_FALSE(lat.full_rank());
  EXPECT_THROW(lat.determinant(), UsageError);
}
