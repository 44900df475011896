#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace propmet;

namespace {

Point z(long long v) { return lattice_point({v}); }

std::shared_ptr<const StickGraph> sticks_for(const Scenario& s, const PointSet& f, std::size_t window_radius) {
  const auto w = translates_window(*s.action, f, window_radius);
  auto fs = verify_fundamental_set(s.action, f, w);
  auto base = orbitwise_augment(discrete_metric(s.action), s.action);
  return std::make_shared<const StickGraph>(std::move(fs), std::move(base));
}

Integer abs_int(const Integer& v) { return v < 0 ? Integer(-v) : v; }

}  // namespace

TEST(StickGraph, ZLineDistanceIsHalfTheGapRoundedUp) {
  const auto s = make_scenario("z-line");
  const auto g = sticks_for(s, *s.fundamental, 3);
  const auto d = stick_pseudometric(g);
  for (long long x = -12; x <= 12; ++x) {
    for (long long y = -12; y <= 12; ++y) {
      const Rational gap(abs_int(Integer(x - y)));
      EXPECT_EQ(d(z(x), z(y)), ExtReal(Rational(ceil(gap / 2)))) << x << " " << y;
    }
  }
}

TEST(StickGraph, PlaneMatchesExplicitGraphBellmanFord) {
  const auto s = make_scenario("z2-on-itself");
  const auto g = sticks_for(s, *s.fundamental, 1);
  const auto d = stick_pseudometric(g);
  const auto verts = oracle::box(2, -6, 6);
  const auto explicit_graph = oracle::stick_graph(*s.action, *s.fundamental, oracle::box_translations(2, -7, 7), verts,
                                                  [](const Point&, const Point&) { return Rational(1); });
  const auto from_origin = explicit_graph.from(lattice_point({0, 0}));
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& c = std::get<LatticePoint>(verts[i]).coords;
    if (abs_int(c[0]) + abs_int(c[1]) > 5) continue;
    EXPECT_EQ(d(lattice_point({0, 0}), verts[i]), oracle::to_ext(from_origin[i]));
  }
}

TEST(StickGraph, NeighborsAreTranslateMates) {
  const auto s = make_scenario("z-line");
  const auto g = sticks_for(s, *s.fundamental, 2);
  std::set<Point> got;
  for (const auto& e : g->neighbors(z(0))) {
    got.insert(e.to);
    EXPECT_EQ(e.weight, 1);
    EXPECT_EQ(e.kind, EdgeKind::stick);
  }
  EXPECT_EQ(got, (std::set<Point>{z(-2), z(-1), z(1), z(2)}));
}

TEST(StickGraph, RequiresPositiveSeparation) {
  const auto s = make_scenario("z-line");
  const auto w = translates_window(*s.action, *s.fundamental, 1);
  auto fs = verify_fundamental_set(s.action, *s.fundamental, w);
  const auto zero = d_f([](const Point&) { return Rational(0); });
  EXPECT_THROW(StickGraph(fs, zero), CapabilityError);
}

TEST(Islands, TwoZOnZPairsUp) {
  const auto s = make_scenario("2z-on-z");
  const PointSet f{z(0), z(1)};
  const auto g = sticks_for(s, f, 2);
  const auto w = translates_window(*s.action, f, 2);
  ASSERT_EQ(w.front(), z(-4));
  ASSERT_EQ(w.back(), z(5));
  const auto part = islands(*g, w);
  EXPECT_EQ(part.count(), 5u);
  for (long long k = -2; k <= 2; ++k) {
    EXPECT_EQ(part.island_of.at(z(2 * k)), part.island_of.at(z(2 * k + 1)));
    if (k < 2) {
      EXPECT_NE(part.island_of.at(z(2 * k)), part.island_of.at(z(2 * k + 2)));
    }
  }
  const auto cb = coset_bijection_check(*g, w);
  EXPECT_TRUE(cb.decidable);
  EXPECT_TRUE(cb.pass);
  EXPECT_EQ(cb.cosets, 5u);
  const auto d = stick_pseudometric(g);
  EXPECT_EQ(d(z(0), z(1)), ExtReal(2));
  EXPECT_TRUE(d(z(0), z(2)).is_infinite());
}

TEST(Islands, FreeGroupPointsAreIslands) {
  const auto s = make_scenario("free-group-cayley");
  const auto g = sticks_for(s, *s.fundamental, 2);
  EXPECT_TRUE(g->neighbors(WordPoint{}).empty());
  const auto w = translates_window(*s.action, *s.fundamental, 2);
  EXPECT_EQ(islands(*g, w).count(), w.size());
  EXPECT_TRUE(coset_bijection_check(*g, w).pass);
}

TEST(Lebesgue, ZLineAndPlane) {
  const auto line = make_scenario("z-line");
  const auto gl = sticks_for(line, *line.fundamental, 2);
  const auto leb = lebesgue_number(*gl, translates_window(*line.action, *line.fundamental, 2));
  ASSERT_TRUE(leb.epsilon.has_value());
  EXPECT_EQ(*leb.epsilon, 1);
  const auto two = make_scenario("2z-on-z");
  const PointSet f{z(0), z(1)};
  const auto g2 = sticks_for(two, f, 2);
  const auto w2 = translates_window(*two.action, f, 2);
  ASSERT_TRUE(lebesgue_number(*g2, w2).epsilon.has_value());
  EXPECT_EQ(*lebesgue_number(*g2, w2).epsilon, 1);
}

TEST(StickPathBound, HoldsForSettledPaths) {
  const auto s = make_scenario("z2-on-itself");
  const auto g = sticks_for(s, *s.fundamental, 1);
  const auto r = stick_search(*g, lattice_point({0, 0}), SearchLimits{Rational(6)});
  EXPECT_EQ(r.status, SearchStatus::cutoff_reached);
  EXPECT_TRUE(stick_path_bound_holds(r, Rational(1)));
  SearchResult forged = r;
  forged.settled.begin()->second.hops = 50;
  forged.settled.begin()->second.dist = 1;
  EXPECT_FALSE(stick_path_bound_holds(forged, Rational(1)));
}

TEST(StickMetric, StatusReporting) {
  const auto s = make_scenario("2z-on-z");
  const auto g = sticks_for(s, {z(0), z(1)}, 2);
  EXPECT_EQ(stick_metric(*g, z(0), z(1)).value, ExtReal(2));
  EXPECT_EQ(stick_metric(*g, z(0), z(1)).hops, 1u);
  EXPECT_TRUE(stick_metric(*g, z(0), z(2)).value.is_infinite());
  EXPECT_EQ(stick_metric(*g, z(0), z(1), ExtReal(1)).status, StickDistance::Status::at_least_cap);
  const auto line = make_scenario("z-line");
  const auto gl = sticks_for(line, *line.fundamental, 2);
  EXPECT_EQ(stick_metric(*gl, z(0), z(500), ExtReal::infinity(), std::nullopt, 20).status,
            StickDistance::Status::inconclusive);
}
