#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace propmet;

namespace {

struct RandomGraph {
  std::size_t n;
  std::vector<oracle::WEdge> edges;
  std::vector<std::vector<Edge>> adj;
};

RandomGraph random_graph(oracle::Gen& gen, std::size_t n, std::size_t m) {
  RandomGraph g{n, {}, std::vector<std::vector<Edge>>(n)};
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = gen.index(n), b = gen.index(n);
    if (a == b) continue;
    const Rational w(gen.integer(0, 6), gen.integer(1, 3));
    g.edges.push_back({a, b, w});
    g.adj[a].push_back({label_point(b), w});
    g.adj[b].push_back({label_point(a), w});
  }
  return g;
}

}  // namespace

TEST(ShortestPaths, AgreesWithBellmanFord) {
  oracle::Gen gen(101);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_graph(gen, 2 + gen.index(15), gen.index(40));
    const auto neighbors = [&g](const Point& p) { return g.adj[std::get<LabelPoint>(p).index]; };
    const std::size_t s = gen.index(g.n);
    const auto r = shortest_paths(label_point(s), neighbors, SearchLimits{});
    const auto expected = oracle::bellman_ford(g.n, g.edges, s);
    EXPECT_EQ(r.status, SearchStatus::exhausted);
    for (std::size_t v = 0; v < g.n; ++v) {
      auto it = r.settled.find(label_point(v));
      ASSERT_EQ(it != r.settled.end(), expected[v].has_value());
      if (expected[v]) {
        EXPECT_EQ(it->second.dist, *expected[v]);
        const auto path = settled_path(r, label_point(v));
        EXPECT_EQ(path.size(), it->second.hops + 1);
      }
    }
  }
}

TEST(ShortestPaths, CutoffSettlesExactlyTheOpenBall) {
  oracle::Gen gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_graph(gen, 12, 30);
    const auto neighbors = [&g](const Point& p) { return g.adj[std::get<LabelPoint>(p).index]; };
    const Rational cutoff(gen.integer(1, 8), 2);
    const auto r = shortest_paths(label_point(0), neighbors, SearchLimits{cutoff});
    const auto expected = oracle::bellman_ford(g.n, g.edges, 0);
    for (std::size_t v = 0; v < g.n; ++v) {
      const bool inside = expected[v] && *expected[v] < cutoff;
      EXPECT_EQ(r.settled.count(label_point(v)) == 1, inside);
    }
  }
}

TEST(ShortestPaths, BudgetAndNegativeWeights) {
  auto line = [](const Point& p) {
    const long long v = static_cast<long long>(std::get<LatticePoint>(p).coords[0]);
    return std::vector<Edge>{{lattice_point({v + 1}), Rational(1)}, {lattice_point({v - 1}), Rational(1)}};
  };
  EXPECT_EQ(shortest_paths(lattice_point({0}), line, SearchLimits{std::nullopt, 50}).status,
            SearchStatus::budget_exceeded);
  auto negative = [](const Point&) { return std::vector<Edge>{{label_point(1), Rational(-1)}}; };
  EXPECT_THROW(shortest_paths(label_point(0), negative, SearchLimits{}), UsageError);
}

TEST(SearchCache, CachedDistanceMatchesPlainSearch) {
  auto line = [](const Point& p) {
    const long long v = static_cast<long long>(std::get<LatticePoint>(p).coords[0]);
    return std::vector<Edge>{{lattice_point({v + 1}), Rational(1, 3)},
                             {lattice_point({v - 1}), Rational(1, 3)},
                             {lattice_point({v + 3}), Rational(5, 6)},
                             {lattice_point({v - 3}), Rational(5, 6)}};
  };
  SearchCache cache([&](const Point& x, const Rational& cutoff, const Point* y) {
    return shortest_paths(x, line, SearchLimits{cutoff}, y);
  });
  oracle::Gen gen(4);
  for (int i = 0; i < 100; ++i) {
    const Point x = lattice_point({gen.integer(-20, 20)}), y = lattice_point({gen.integer(-20, 20)});
    const auto direct = shortest_paths(x, line, SearchLimits{}, &y);
    EXPECT_EQ(cached_distance(cache, x, y, Rational(1), [](const Rational&) { return true; }),
              ExtReal(direct.settled.at(y).dist));
  }
}

TEST(Metrics, DiscreteAndTable) {
  const auto s = make_scenario("c3-finite");
  const auto d = discrete_metric(s.action);
  EXPECT_EQ(d(label_point(0), label_point(0)), ExtReal(0));
  EXPECT_EQ(d(label_point(0), label_point(2)), ExtReal(1));
  ASSERT_TRUE(d.graph.has_value());
  const auto t = table_metric(s.table);
  EXPECT_EQ(t(label_point(0), label_point(2)), ExtReal(3));
  EXPECT_EQ(*t.separation, 1);
  EXPECT_THROW(t(label_point(0), label_point(7)), UsageError);
  EXPECT_THROW(table_metric({{0, 1}}), UsageError);
}

TEST(Metrics, CombineOperations) {
  const auto s = make_scenario("c3-finite");
  const auto t = table_metric(s.table);
  const auto disc = discrete_metric(s.action);
  const Point a = label_point(0), c = label_point(2);
  EXPECT_EQ(combine(CombineOp::sup, {t, disc})(a, c), ExtReal(3));
  EXPECT_EQ(combine(CombineOp::sum, {t, disc})(a, c), ExtReal(4));
  EXPECT_EQ(combine(CombineOp::scale, {t}, Rational(1, 3))(a, c), ExtReal(1));
  EXPECT_EQ(combine(CombineOp::cap, {t})(a, c), ExtReal(1));
  EXPECT_THROW(combine(CombineOp::scale, {t}, Rational(0)), UsageError);
  EXPECT_THROW(combine(CombineOp::cap, {t, disc}), UsageError);
  const auto f = d_f([](const Point& p) { return Rational(static_cast<long long>(std::get<LabelPoint>(p).index)); });
  EXPECT_EQ(f(a, c), ExtReal(2));
}

TEST(CheckAxioms, TriangleViolationReportsTriple) {
  const auto bad = table_metric({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
  PointSet all{label_point(0), label_point(1), label_point(2)};
  const auto r = check_axioms(bad, all);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.violation, "triangle");
  ASSERT_EQ(r.witness.size(), 3u);
  const DistanceTable t = DistanceTable::build(bad, all);
  auto idx = [&](const Point& p) { return std::get<LabelPoint>(p).index; };
  EXPECT_GT(t.values[idx(r.witness[0])][idx(r.witness[2])],
            t.values[idx(r.witness[0])][idx(r.witness[1])] + t.values[idx(r.witness[1])][idx(r.witness[2])]);
}

TEST(CheckAxioms, AsymmetryAndNonzeroDiagonal) {
  PointSet all{label_point(0), label_point(1)};
  EXPECT_EQ(check_axioms(table_metric({{0, 1}, {2, 0}}), all).violation, "symmetry");
  EXPECT_EQ(check_axioms(table_metric({{1, 1}, {1, 0}}), all).violation, "zero");
}

TEST(CheckAxioms, RandomClosedTablesPass) {
  oracle::Gen gen(55);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + gen.index(7);
    const auto m = table_metric(gen.metric_table(n));
    PointSet all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(label_point(i));
    EXPECT_TRUE(check_axioms(m, all).pass);
    EXPECT_TRUE(check_axioms(m, all, Sampling{200, 9}).pass);
  }
}

TEST(CheckInvariance, DetectsNonInvariantMetric) {
  const auto s = make_scenario("c3-finite");
  const auto t = table_metric(s.table);
  PointSet all{label_point(0), label_point(1), label_point(2)};
  const auto r = check_invariance(t, *s.action, all, s.action->group().generators());
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(r.x.has_value());
  EXPECT_NE(r.before, r.after);
  EXPECT_TRUE(check_invariance(discrete_metric(s.action), *s.action, all, s.action->group().generators()).pass);
}

TEST(EnumerateBall, NeedsGraphOracle) {
  const auto f = d_f([](const Point&) { return Rational(0); });
  EXPECT_THROW(enumerate_ball(f, label_point(0), ExtReal(1)), CapabilityError);
  EXPECT_THROW(enumerate_ball(f, label_point(0), ExtReal::infinity()), UsageError);
  EXPECT_TRUE(enumerate_ball(f, label_point(0), ExtReal(0)).points.empty());
}
