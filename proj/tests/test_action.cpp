#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace propmet;

namespace {

Point z(long long v) { return lattice_point({v}); }

}  // namespace

TEST(LatticeAction, TransporterMatchesBoxSearch) {
  const LatticeAction act(GroupDescriptor::lattice(2, {{Integer(2), Integer(0)}, {Integer(1), Integer(3)}}));
  oracle::Gen gen(21);
  for (int trial = 0; trial < 40; ++trial) {
    PointSet a, b;
    for (int i = 0; i < 3; ++i) a.push_back(lattice_point({gen.integer(-4, 4), gen.integer(-4, 4)}));
    for (int i = 0; i < 3; ++i) b.push_back(lattice_point({gen.integer(-4, 4), gen.integer(-4, 4)}));
    const auto t = act.transporter(a, b);
    ASSERT_TRUE(t.exact());
    std::vector<GroupElement> brute;
    const PointSet nb = normalized(b);
    for (const auto& g : oracle::box_translations(2, -10, 10)) {
      if (!act.group().contains(g)) continue;
      for (const auto& x : a) {
        if (contains(nb, act.apply(g, x))) {
          brute.push_back(g);
          break;
        }
      }
    }
    std::sort(brute.begin(), brute.end());
    EXPECT_EQ(t.elements, brute);
  }
}

TEST(LatticeAction, OrbitIndexSeparatesOrbits) {
  const LatticeAction act(GroupDescriptor::lattice(1, {{Integer(3)}}), 2);
  EXPECT_EQ(act.orbit_index(lattice_point({7}, 0)), 1);
  EXPECT_EQ(act.orbit_index(lattice_point({-2}, 0)), 1);
  EXPECT_EQ(act.orbit_index(lattice_point({5}, 1)), 5);
  const auto reps = act.orbit_reps(10);
  EXPECT_TRUE(reps.exhausted);
  EXPECT_EQ(reps.representatives.size(), 6u);
  for (std::size_t i = 0; i < reps.representatives.size(); ++i) {
    EXPECT_EQ(act.orbit_index(reps.representatives[i]), Integer(i));
  }
}

TEST(LatticeAction, FormatParseRoundTrip) {
  const LatticeAction two(GroupDescriptor::integers(1), 2);
  EXPECT_EQ(two.format(lattice_point({-3}, 1)), "-3_b");
  EXPECT_EQ(two.parse("-3_b"), lattice_point({-3}, 1));
  EXPECT_THROW(two.parse("4"), UsageError);
  const LatticeAction plane(GroupDescriptor::integers(2));
  EXPECT_EQ(plane.parse(plane.format(lattice_point({3, -4}))), lattice_point({3, -4}));
}

TEST(TranslatesWindow, ZLineWindowIsAnInterval) {
  const LatticeAction act(GroupDescriptor::integers(1));
  const auto w = translates_window(act, {z(-1), z(0), z(1)}, 19);
  ASSERT_EQ(w.size(), 41u);
  EXPECT_EQ(w.front(), z(-20));
  EXPECT_EQ(w.back(), z(20));
}

TEST(CheckProper, ProperScenarios) {
  for (const auto& id : {"z-line", "2z-on-z", "two-lines", "c3-finite", "free-group-cayley"}) {
    const auto s = make_scenario(id);
    PointSet seed = s.fundamental ? *s.fundamental : s.action->orbit_reps(8).representatives;
    const auto w = translates_window(*s.action, seed, 2);
    const auto r = check_proper(*s.action, w);
    EXPECT_EQ(r.verdict, ProperReport::Verdict::proper_certified) << id;
    EXPECT_GE(r.max_singleton_cardinality, 1u) << id;
  }
}

TEST(CheckProper, TrivialActionHasInfiniteTransporter) {
  const TrivialAction act(GroupDescriptor::integers(1));
  const auto r = check_proper(act, {label_point(0)});
  EXPECT_EQ(r.verdict, ProperReport::Verdict::not_proper);
  EXPECT_NE(r.witness.find("infinite"), std::string::npos);
}

TEST(CheckProper, TrivialActionOfFiniteGroupIsProper) {
  const TrivialAction act(GroupDescriptor::permutations(2, {Permutation{{1, 0}}}));
  EXPECT_EQ(check_proper(act, {label_point(0)}).verdict, ProperReport::Verdict::proper_certified);
}

TEST(FreeSelfAction, TransporterIsSimplyTransitive) {
  const FreeSelfAction act(GroupDescriptor::free_group(2));
  oracle::Gen gen(8);
  for (int i = 0; i < 100; ++i) {
    const Point x = WordPoint{gen.word(2, 5)}, y = WordPoint{gen.word(2, 5)};
    const auto t = act.transporter({x}, {y});
    ASSERT_EQ(t.elements.size(), 1u);
    EXPECT_EQ(act.apply(t.elements[0], x), y);
  }
  EXPECT_THROW(act.parse("abc"), UsageError);
}

TEST(PermutationAction, OrbitsOfASubgroup) {
  const PermutationAction act(GroupDescriptor::permutations(4, {Permutation{{1, 0, 2, 3}}}), {"a", "b", "c", "d"});
  EXPECT_EQ(act.orbit_index(label_point(1)), 0);
  EXPECT_EQ(act.orbit_index(label_point(2)), 1);
  EXPECT_EQ(act.orbit_index(label_point(3)), 2);
  EXPECT_EQ(act.orbit_reps(10).representatives.size(), 3u);
  EXPECT_EQ(act.parse("c"), label_point(2));
}
