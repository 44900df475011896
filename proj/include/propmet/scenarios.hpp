#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "propmet/action.hpp"
#include "propmet/isogroup.hpp"

namespace propmet {

/// A built-in action together with its default pipeline inputs.
struct Scenario {
  std::string id;
  std::string description;
  std::shared_ptr<const Action> action;
  /// Default fundamental set; nullopt means the canonical orbit representatives.
  std::optional<PointSet> fundamental;
  /// "discrete" or "table".
  std::string base = "discrete";
  std::vector<std::vector<Rational>> table;
  /// Word-ball radius N of the window { g f : |g| <= N, f in F }.
  std::size_t window_radius = 2;
  /// Pairs whose final distances are listed in reports.
  std::vector<std::pair<Point, Point>> probes;
};

inline std::vector<std::string> scenario_ids() {
  return {"z-line",         "2z-on-z",          "two-lines",           "z2-on-itself",
          "c3-finite",      "free-group-cayley", "finite-metric-table", "trivial-action"};
}

/// The 4-point cycle: adjacent points at distance 1, opposite points at 2.
inline FiniteMetricSpace square_space() {
  std::vector<std::vector<Rational>> d(4, std::vector<Rational>(4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const std::size_t gap = (i + 4 - j) % 4;
      d[i][j] = gap == 0 ? 0 : (gap == 2 ? 2 : 1);
    }
  }
  return FiniteMetricSpace::make({"p0", "p1", "p2", "p3"}, std::move(d));
}

inline Scenario make_scenario(const std::string& id) {
  Scenario s;
  s.id = id;
  auto z = [](long long v) { return lattice_point({v}); };
  if (id == "z-line") {
    s.description = "Z acting on Z by translation";
    s.action = std::make_shared<const LatticeAction>(GroupDescriptor::integers(1));
    s.fundamental = PointSet{z(-1), z(0), z(1)};
    s.window_radius = 19;
    s.probes = {{z(0), z(5)}, {z(0), z(1)}, {z(-3), z(4)}};
  } else if (id == "2z-on-z") {
    s.description = "2Z acting on Z by translation";
    s.action = std::make_shared<const LatticeAction>(GroupDescriptor::lattice(1, {{Integer(2)}}));
    s.window_radius = 2;
    s.probes = {{z(0), z(2)}, {z(0), z(4)}, {z(0), z(1)}};
  } else if (id == "two-lines") {
    s.description = "Z acting on two copies of Z";
    s.action = std::make_shared<const LatticeAction>(GroupDescriptor::integers(1), 2);
    s.fundamental = PointSet{lattice_point({0}, 0), lattice_point({0}, 1)};
    s.window_radius = 4;
    s.probes = {{lattice_point({0}, 0), lattice_point({0}, 1)}, {lattice_point({0}, 0), lattice_point({3}, 1)}};
  } else if (id == "z2-on-itself") {
    s.description = "Z^2 acting on itself by translation";
    s.action = std::make_shared<const LatticeAction>(GroupDescriptor::integers(2));
    s.fundamental = PointSet{lattice_point({0, 0}), lattice_point({1, 0}), lattice_point({-1, 0}),
                             lattice_point({0, 1}), lattice_point({0, -1})};
    s.window_radius = 3;
    s.probes = {{lattice_point({0, 0}), lattice_point({3, 4})}, {lattice_point({0, 0}), lattice_point({1, 1})}};
  } else if (id == "c3-finite") {
    s.description = "C3 rotating {a,b,c}";
    auto g = GroupDescriptor::permutations(3, {Permutation{{1, 2, 0}}});
    s.action = std::make_shared<const PermutationAction>(std::move(g), std::vector<std::string>{"a", "b", "c"});
    s.fundamental = PointSet{label_point(0)};
    s.base = "table";
    s.table = {{0, 1, 3}, {1, 0, 2}, {3, 2, 0}};
    s.window_radius = 2;
    s.probes = {{label_point(0), label_point(1)}, {label_point(1), label_point(2)}, {label_point(0), label_point(2)}};
  } else if (id == "free-group-cayley") {
    s.description = "free group F2 acting on itself";
    s.action = std::make_shared<const FreeSelfAction>(GroupDescriptor::free_group(2));
    s.fundamental = PointSet{WordPoint{}};
    s.window_radius = 2;
    s.probes = {{WordPoint{}, WordPoint{GroupDescriptor::parse_word("a")}},
                {WordPoint{}, WordPoint{GroupDescriptor::parse_word("ab")}}};
  } else if (id == "finite-metric-table") {
    s.description = "isometry group of the 4-point square";
    const auto x = square_space();
    s.action = std::make_shared<const PermutationAction>(isometry_group(x), x.labels);
    s.base = "table";
    s.table = x.distances;
    s.window_radius = 1;
    s.probes = {{label_point(0), label_point(1)}, {label_point(0), label_point(2)}};
  } else if (id == "trivial-action") {
    s.description = "Z acting trivially on a point";
    s.action = std::make_shared<const TrivialAction>(GroupDescriptor::integers(1));
    s.window_radius = 0;
  } else {
    throw UsageError("unknown scenario '" + id + "'");
  }
  return s;
}

}  // namespace propmet
