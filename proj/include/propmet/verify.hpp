#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "propmet/action.hpp"
#include "propmet/pseudometric.hpp"
#include "propmet/shortest_path.hpp"

namespace propmet {

/// n x n value table of d on a window, evaluated once.
struct DistanceTable {
  PointSet points;
  std::vector<std::vector<ExtReal>> values;

  static DistanceTable build(const Pseudometric& d, const PointSet& window) {
    DistanceTable t;
    t.points = window;
    const std::size_t n = window.size();
    t.values.assign(n, std::vector<ExtReal>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) t.values[i][j] = d(window[i], window[j]);
    }
    return t;
  }
};

struct AxiomReport {
  bool pass = true;
  std::size_t triples_checked = 0;
  /// "zero", "symmetry" or "triangle"; empty on pass.
  std::string violation;
  std::vector<Point> witness;
};

/// Random sampling for checks that do not scan exhaustively. The seed is
/// recorded by callers so runs are reproducible.
struct Sampling {
  std::size_t count = 1000;
  std::uint64_t seed = 1;
};

/// d(x,x) = 0, symmetry and the triangle inequality on the window: a full
/// triple scan, or `sampling->count` random triples.
inline AxiomReport check_axioms(const DistanceTable& t, std::optional<Sampling> sampling = std::nullopt) {
  AxiomReport r;
  const std::size_t n = t.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (t.values[i][i] != ExtReal(0)) {
      r.pass = false;
      r.violation = "zero";
      r.witness = {t.points[i]};
      return r;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t.values[i][j] != t.values[j][i]) {
        r.pass = false;
        r.violation = "symmetry";
        r.witness = {t.points[i], t.points[j]};
        return r;
      }
    }
  }
  auto triangle = [&](std::size_t a, std::size_t b, std::size_t c) {
    ++r.triples_checked;
    if (t.values[a][c] > t.values[a][b] + t.values[b][c]) {
      r.pass = false;
      r.violation = "triangle";
      r.witness = {t.points[a], t.points[b], t.points[c]};
      return false;
    }
    return true;
  };
  if (n == 0) return r;
  if (sampling) {
    std::mt19937_64 rng(sampling->seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < sampling->count; ++s) {
      if (!triangle(pick(rng), pick(rng), pick(rng))) return r;
    }
    return r;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (!triangle(a, b, c)) return r;
      }
    }
  }
  return r;
}

inline AxiomReport check_axioms(const Pseudometric& d, const PointSet& window,
                                std::optional<Sampling> sampling = std::nullopt) {
  return check_axioms(DistanceTable::build(d, window), sampling);
}

/// A map of the space, e.g. the action of a group element or a non-group shift.
struct PointMap {
  std::string label;
  std::function<Point(const Point&)> apply;
};

inline std::vector<PointMap> generator_maps(const Action& action, const std::vector<GroupElement>& elements) {
  std::vector<PointMap> maps;
  for (const auto& g : elements) {
    maps.push_back({action.group().format(g), [&action, g](const Point& x) { return action.apply(g, x); }});
  }
  return maps;
}

struct InvarianceReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::string map_label;
  std::optional<Point> x, y;
  ExtReal before, after;
};

/// d(gx, gy) = d(x, y) for every map g and every unordered pair of the window.
/// For group generators this implies invariance under the whole group.
inline InvarianceReport check_invariance(const Pseudometric& d, const PointSet& window,
                                         const std::vector<PointMap>& maps) {
  InvarianceReport r;
  for (const auto& m : maps) {
    for (std::size_t i = 0; i < window.size(); ++i) {
      const Point gx = m.apply(window[i]);
      for (std::size_t j = i + 1; j < window.size(); ++j) {
        ++r.pairs_checked;
        const ExtReal before = d(window[i], window[j]);
        const ExtReal after = d(gx, m.apply(window[j]));
        if (before != after) {
          r.pass = false;
          r.map_label = m.label;
          r.x = window[i];
          r.y = window[j];
          r.before = before;
          r.after = after;
          return r;
        }
      }
    }
  }
  return r;
}

inline InvarianceReport check_invariance(const Pseudometric& d, const Action& action, const PointSet& window,
                                         const std::vector<GroupElement>& generators) {
  return check_invariance(d, window, generator_maps(action, generators));
}

struct BallResult {
  enum class Status { complete, budget_exceeded };
  Status status = Status::complete;
  /// Exactly { y : d(x,y) < R } when complete.
  PointSet points;
  std::size_t visited = 0;
};

/// Region growth over the metric's graph oracle up to the strict radius R.
/// Throws CapabilityError when the metric has no oracle or no positive edge
/// lower bound (termination would not be guaranteed).
inline BallResult enumerate_ball(const Pseudometric& d, const Point& x, const ExtReal& radius,
                                 std::size_t budget = 1'000'000) {
  if (radius.is_infinite()) throw UsageError("ball radius must be finite");
  BallResult out;
  if (radius == ExtReal(0)) return out;
  if (!d.graph) throw CapabilityError("metric '" + d.provenance + "' has no neighbour oracle; cannot enumerate balls");
  if (d.graph->edge_lower_bound <= 0) {
    throw CapabilityError("metric '" + d.provenance + "' has no positive edge-weight lower bound");
  }
  SearchLimits limits{radius.value(), budget};
  const auto& g = *d.graph;
  const Rational r = radius.value();
  const auto search = g.search_within ? g.search_within(x, r) : shortest_paths(x, g.neighbors, limits);
  out.visited = search.settled.size();
  if (search.status == SearchStatus::budget_exceeded) {
    out.status = BallResult::Status::budget_exceeded;
    return out;
  }
  for (const auto& [y, node] : search.settled) {
    if (d.graph->exact || d(x, y) < radius) out.points.push_back(y);
  }
  return out;
}

}  // namespace propmet
