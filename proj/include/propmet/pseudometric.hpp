#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "propmet/action.hpp"
#include "propmet/arith.hpp"
#include "propmet/shortest_path.hpp"

namespace propmet {

/// Properties a construction asserts about its output. They are claims only;
/// the verifiers in verify.hpp discharge them.
struct MetricClaims {
  bool invariant = false;
  bool proper = false;
  bool finite = false;
  bool compatible = false;
  bool orbitwise_proper = false;
};

/// Weighted neighbour oracle whose graph distance bounds the metric from below
/// (or equals it, when `exact`). Required for ball enumeration.
struct MetricGraph {
  std::function<std::vector<Edge>(const Point&)> neighbors;
  Rational edge_lower_bound;
  bool exact = true;
  /// Optional replacement for the plain search when the edge set depends on
  /// the radius (or results are worth caching): settles every vertex below the cutoff.
  std::function<SearchResult(const Point&, const Rational& cutoff)> search_within;
};

/// A pseudometric with values in [0, +inf], evaluated on demand.
struct Pseudometric {
  using Eval = std::function<ExtReal(const Point&, const Point&)>;

  std::string provenance;
  Eval eval;
  std::optional<MetricGraph> graph;
  /// Certified d(x,y) >= separation for all x != y.
  std::optional<Rational> separation;
  MetricClaims claims;

  ExtReal operator()(const Point& x, const Point& y) const { return eval(x, y); }
};

/// d(x,y) = 1 for x != y. Has a graph oracle only on finite spaces.
inline Pseudometric discrete_metric(std::shared_ptr<const Action> action) {
  Pseudometric d;
  d.provenance = "discrete";
  d.eval = [](const Point& x, const Point& y) { return x == y ? ExtReal(0) : ExtReal(1); };
  d.separation = Rational(1);
  d.claims = {.invariant = true, .proper = false, .finite = true, .compatible = true};
  if (auto all = action->all_points()) {
    d.graph = MetricGraph{[all = *all](const Point& x) {
                            std::vector<Edge> out;
                            for (const auto& y : all) {
                              if (y != x) out.push_back({y, Rational(1)});
                            }
                            return out;
                          },
                          Rational(1), true, {}};
    d.claims.proper = true;
  }
  return d;
}

/// d_f(x,y) = |f(x) - f(y)|.
inline Pseudometric d_f(std::function<Rational(const Point&)> f, std::string name = "f") {
  Pseudometric d;
  d.provenance = "d_f(" + name + ")";
  d.eval = [f = std::move(f)](const Point& x, const Point& y) {
    const Rational diff = f(x) - f(y);
    return ExtReal(diff < 0 ? Rational(-diff) : diff);
  };
  d.claims.finite = true;
  return d;
}

/// Distance table on a finite labelled space (LabelPoint indices).
inline Pseudometric table_metric(std::vector<std::vector<Rational>> table, std::string name = "table") {
  const std::size_t n = table.size();
  for (const auto& row : table) {
    if (row.size() != n) throw UsageError("distance table must be square");
    for (const auto& v : row) {
      if (v < 0) throw UsageError("distance table entries must be nonnegative");
    }
  }
  Pseudometric d;
  d.provenance = name;
  auto shared = std::make_shared<const std::vector<std::vector<Rational>>>(std::move(table));
  d.eval = [shared](const Point& x, const Point& y) {
    const auto* a = std::get_if<LabelPoint>(&x);
    const auto* b = std::get_if<LabelPoint>(&y);
    if (!a || !b || a->index >= shared->size() || b->index >= shared->size()) {
      throw UsageError("table metric evaluated outside its labels");
    }
    return ExtReal((*shared)[a->index][b->index]);
  };
  std::optional<Rational> sep;
  bool positive = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& v = (*shared)[i][j];
      if (v <= 0) positive = false;
      if (!sep || v < *sep) sep = v;
    }
  }
  if (positive && sep) d.separation = sep;
  d.claims.finite = true;
  d.claims.compatible = positive;
  return d;
}

enum class CombineOp { sup, sum, scale, cap };

/// Pointwise combination. `scale` multiplies the single input by `factor`;
/// `cap` is min(d, 1); sup and sum take any nonempty list.
inline Pseudometric combine(CombineOp op, std::vector<Pseudometric> ds, const Rational& factor = Rational(1)) {
  if (ds.empty()) throw UsageError("combine needs at least one pseudometric");
  if ((op == CombineOp::scale || op == CombineOp::cap) && ds.size() != 1) {
    throw UsageError("scale and cap take exactly one pseudometric");
  }
  if (op == CombineOp::scale && factor <= 0) throw UsageError("scale factor must be positive");

  Pseudometric out;
  auto parts = std::make_shared<const std::vector<Pseudometric>>(ds);
  std::string names;
  for (const auto& d : ds) names += (names.empty() ? "" : ", ") + d.provenance;

  auto all = [&](bool MetricClaims::*flag) {
    return std::all_of(ds.begin(), ds.end(), [&](const Pseudometric& d) { return d.claims.*flag; });
  };
  auto any_graph = [&]() -> std::optional<MetricGraph> {
    for (const auto& d : ds) {
      if (d.graph) {
        MetricGraph g = *d.graph;
        g.exact = g.exact && ds.size() == 1;
        return g;
      }
    }
    return std::nullopt;
  };
  auto max_separation = [&]() -> std::optional<Rational> {
    std::optional<Rational> s;
    for (const auto& d : ds) {
      if (d.separation && (!s || *d.separation > *s)) s = d.separation;
    }
    return s;
  };

  switch (op) {
    case CombineOp::sup:
      out.provenance = "sup(" + names + ")";
      out.eval = [parts](const Point& x, const Point& y) {
        ExtReal v(0);
        for (const auto& d : *parts) v = max(v, d(x, y));
        return v;
      };
      out.graph = any_graph();
      out.separation = max_separation();
      out.claims.invariant = all(&MetricClaims::invariant);
      out.claims.finite = all(&MetricClaims::finite);
      out.claims.compatible = std::any_of(ds.begin(), ds.end(), [](const Pseudometric& d) { return d.claims.compatible; });
      out.claims.proper = std::any_of(ds.begin(), ds.end(), [](const Pseudometric& d) { return d.claims.proper; });
      break;
    case CombineOp::sum:
      out.provenance = "sum(" + names + ")";
      out.eval = [parts](const Point& x, const Point& y) {
        ExtReal v(0);
        for (const auto& d : *parts) v += d(x, y);
        return v;
      };
      out.graph = any_graph();
      out.separation = max_separation();
      out.claims.invariant = all(&MetricClaims::invariant);
      out.claims.finite = all(&MetricClaims::finite);
      out.claims.compatible = std::any_of(ds.begin(), ds.end(), [](const Pseudometric& d) { return d.claims.compatible; });
      out.claims.proper = std::any_of(ds.begin(), ds.end(), [](const Pseudometric& d) { return d.claims.proper; });
      break;
    case CombineOp::scale: {
      const Pseudometric& d = ds.front();
      out.provenance = to_string(factor) + "*" + d.provenance;
      out.eval = [parts, factor](const Point& x, const Point& y) { return factor * (*parts)[0](x, y); };
      if (d.graph) {
        MetricGraph g = *d.graph;
        g.neighbors = [inner = d.graph->neighbors, factor](const Point& x) {
          auto edges = inner(x);
          for (auto& e : edges) e.weight *= factor;
          return edges;
        };
        g.edge_lower_bound *= factor;
        out.graph = std::move(g);
      }
      if (d.separation) out.separation = factor * *d.separation;
      out.claims = d.claims;
      break;
    }
    case CombineOp::cap: {
      const Pseudometric& d = ds.front();
      out.provenance = "min(" + d.provenance + ", 1)";
      out.eval = [parts](const Point& x, const Point& y) { return min((*parts)[0](x, y), ExtReal(1)); };
      if (d.separation) out.separation = std::min(*d.separation, Rational(1));
      out.claims = d.claims;
      out.claims.finite = true;
      out.claims.proper = false;
      break;
    }
  }
  return out;
}

}  // namespace propmet
