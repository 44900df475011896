#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "propmet/koszul.hpp"
#include "propmet/shortest_path.hpp"
#include "propmet/subgroup.hpp"
#include "propmet/union_find.hpp"
#include "propmet/verify.hpp"

namespace propmet {

/// The graph whose vertices are the points of X and whose edges ("sticks")
/// are the pairs lying in a common translate gF, weighted by a G-invariant
/// finite-valued base metric d. Edges are produced on demand.
class StickGraph {
 public:
  StickGraph(FundamentalSet fundamental, Pseudometric base)
      : fundamental_(std::move(fundamental)), base_(std::move(base)) {
    if (!base_.separation || *base_.separation <= 0) {
      throw CapabilityError("stick construction needs a base metric with a certified positive separation");
    }
    delta_ = *base_.separation;
    const auto gff = action().transporter(fundamental_.points, fundamental_.points);
    if (!gff.exact()) throw CapabilityError("transporter G_FF is not exact");
    self_transporter_ = gff.elements;
    g0_ = Subgroup::generated_by(action().group(), gff.elements);
  }

  const Action& action() const { return *fundamental_.action; }
  std::shared_ptr<const Action> action_ptr() const { return fundamental_.action; }
  const FundamentalSet& fundamental_set() const noexcept { return fundamental_; }
  const Pseudometric& base() const noexcept { return base_; }
  /// Lower bound on every edge weight.
  const Rational& delta() const noexcept { return delta_; }
  /// G_FF, whose generated subgroup G0 indexes the islands.
  const std::vector<GroupElement>& self_transporter() const noexcept { return self_transporter_; }
  const Subgroup& island_subgroup() const noexcept { return g0_; }

  /// { g : x in gF }.
  std::vector<GroupElement> translates_containing(const Point& x) const {
    const auto t = action().transporter(fundamental_.points, {x});
    if (!t.exact()) throw CapabilityError("transporter G_{F,{x}} is not exact");
    return t.elements;
  }

  /// Translate coordinate of x: the first g (in canonical order) with x in gF.
  GroupElement translate_coordinate(const Point& x) const {
    const auto ts = translates_containing(x);
    if (ts.empty()) throw VerificationError("F does not cover the space", action().format(x));
    return ts.front();
  }

  /// Union of gF \ {x} over the translates gF containing x, weighted by d.
  /// Results are memoized; the graph is otherwise immutable.
  std::vector<Edge> neighbors(const Point& x) const {
    {
      std::lock_guard lock(memo_->mutex);
      auto it = memo_->edges.find(x);
      if (it != memo_->edges.end()) return it->second;
    }
    auto out = compute_neighbors(x);
    std::lock_guard lock(memo_->mutex);
    if (memo_->edges.size() >= kMemoCapacity) memo_->edges.clear();
    memo_->edges.emplace(x, out);
    return out;
  }

  /// Island test through cosets of G0; throws CapabilityError when membership is undecidable.
  bool same_island(const Point& x, const Point& y) const {
    const auto& grp = action().group();
    return g0_.contains(grp.mul(grp.inv(translate_coordinate(x)), translate_coordinate(y)));
  }

 private:
  static constexpr std::size_t kMemoCapacity = 1 << 16;

  struct Memo {
    std::mutex mutex;
    std::map<Point, std::vector<Edge>> edges;
  };

  std::vector<Edge> compute_neighbors(const Point& x) const {
    std::map<Point, Rational> partners;
    for (const auto& g : translates_containing(x)) {
      for (const auto& f : fundamental_.points) {
        Point y = action().apply(g, f);
        if (y == x || partners.count(y)) continue;
        const ExtReal w = base_(x, y);
        if (w.is_infinite()) throw UsageError("base metric is infinite on a stick");
        partners.emplace(std::move(y), w.value());
      }
    }
    std::vector<Edge> out;
    out.reserve(partners.size());
    for (auto& [y, w] : partners) out.push_back(Edge{y, w, EdgeKind::stick});
    return out;
  }

  FundamentalSet fundamental_;
  Pseudometric base_;
  Rational delta_;
  std::vector<GroupElement> self_transporter_;
  Subgroup g0_;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// Single-source stick search with an optional strict cutoff.
inline SearchResult stick_search(const StickGraph& graph, const Point& x, SearchLimits limits,
                                 const Point* target = nullptr) {
  return shortest_paths(x, [&graph](const Point& u) { return graph.neighbors(u); }, limits, target);
}

struct StickDistance {
  enum class Status {
    exact,         ///< value is d'(x,y), possibly +inf (different islands)
    at_least_cap,  ///< d'(x,y) >= cap; value holds the cap
    inconclusive,  ///< budget ran out
  };
  Status status = Status::exact;
  ExtReal value;
  std::size_t hops = 0;
  /// False if some settled path broke hops - 1 <= 2 dist / epsilon.
  bool path_bound_ok = true;
};

/// True iff every settled path obeys the stick-path length bound
/// (n - 1) * eps <= 2 * length; such paths never have three consecutive
/// points in one translate when eps is a Lebesgue number.
inline bool stick_path_bound_holds(const SearchResult& r, const Rational& epsilon) {
  for (const auto& [p, node] : r.settled) {
    if (node.hops >= 1 && Rational(node.hops - 1) * epsilon > 2 * node.dist) return false;
  }
  return true;
}

/// Infimum of d-lengths of stick paths from x to y, by Dijkstra stopping at
/// the cap. An exhausted search proves the points lie on different islands.
inline StickDistance stick_metric(const StickGraph& graph, const Point& x, const Point& y,
                                  const ExtReal& cap = ExtReal::infinity(),
                                  std::optional<Rational> epsilon = std::nullopt, std::size_t budget = 1'000'000) {
  SearchLimits limits;
  limits.budget = budget;
  if (cap.is_finite()) limits.cutoff = cap.value();
  const auto r = stick_search(graph, x, limits, &y);
  StickDistance out;
  if (epsilon) out.path_bound_ok = stick_path_bound_holds(r, *epsilon);
  switch (r.status) {
    case SearchStatus::target_reached:
      out.value = r.settled.at(y).dist;
      out.hops = r.settled.at(y).hops;
      break;
    case SearchStatus::exhausted: out.value = ExtReal::infinity(); break;
    case SearchStatus::cutoff_reached:
      out.status = StickDistance::Status::at_least_cap;
      out.value = cap;
      break;
    case SearchStatus::budget_exceeded: out.status = StickDistance::Status::inconclusive; break;
  }
  return out;
}

/// d' as a pseudometric value. Different islands are detected through G0
/// membership when decidable, otherwise by exhausting the island.
inline Pseudometric stick_pseudometric(std::shared_ptr<const StickGraph> graph, std::size_t budget = 1'000'000) {
  Pseudometric d;
  d.provenance = "stick(" + graph->base().provenance + ")";
  auto cache = std::make_shared<SearchCache>([graph, budget](const Point& x, const Rational& cutoff, const Point* y) {
    return stick_search(*graph, x, SearchLimits{cutoff, budget}, y);
  });
  d.eval = [graph, cache](const Point& x, const Point& y) {
    if (x == y) return ExtReal(0);
    if (graph->island_subgroup().decidable() && !graph->same_island(x, y)) return ExtReal::infinity();
    return cached_distance(*cache, x, y, 8 * graph->delta(), [](const Rational&) { return true; });
  };
  d.graph = MetricGraph{[graph](const Point& u) { return graph->neighbors(u); }, graph->delta(), true, {}};
  d.separation = graph->delta();
  d.claims.invariant = graph->base().claims.invariant;
  d.claims.proper = true;
  d.claims.compatible = graph->base().claims.compatible;
  d.claims.orbitwise_proper = graph->base().claims.orbitwise_proper;
  return d;
}

struct LebesgueResult {
  std::optional<Rational> epsilon;
  /// A window point whose smallest candidate ball fits in no translate.
  std::optional<Point> witness;
};

/// Largest eps in { scale / 2^k : k = 0..precision } such that for every
/// window point x, B_d(x, eps) (within the window) lies in one translate gF.
inline LebesgueResult lebesgue_number(const Action& action, const PointSet& fundamental, const Pseudometric& d,
                                      const PointSet& window, const Rational& scale, unsigned precision = 8) {
  if (scale <= 0) throw UsageError("Lebesgue candidate scale must be positive");
  const auto table = DistanceTable::build(d, window);
  const PointSet f = normalized(fundamental);
  std::vector<std::vector<GroupElement>> holders(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    holders[i] = action.transporter(f, {window[i]}).elements;
  }
  LebesgueResult out;
  Rational eps = scale;
  for (unsigned k = 0; k <= precision; ++k, eps /= 2) {
    std::optional<Point> failing;
    for (std::size_t i = 0; i < window.size() && !failing; ++i) {
      bool fits = false;
      for (const auto& g : holders[i]) {
        const GroupElement gi = action.group().inv(g);
        bool inside = true;
        for (std::size_t j = 0; j < window.size() && inside; ++j) {
          if (table.values[i][j] < ExtReal(eps) && !contains(f, action.apply(gi, window[j]))) inside = false;
        }
        if (inside) {
          fits = true;
          break;
        }
      }
      if (!fits) failing = window[i];
    }
    if (!failing) {
      out.epsilon = eps;
      return out;
    }
    out.witness = failing;
  }
  return out;
}

inline LebesgueResult lebesgue_number(const StickGraph& graph, const PointSet& window, unsigned precision = 8) {
  return lebesgue_number(graph.action(), graph.fundamental_set().points, graph.base(), window, graph.delta(),
                         precision);
}

/// Islands seen from a window: connected components of the stick graph
/// restricted to the window grown by `closure_depth` layers of neighbours.
/// Island i is named by its smallest window point; ids follow window order.
struct IslandPartition {
  std::map<Point, std::size_t> island_of;
  std::vector<Point> names;
  std::size_t explored = 0;

  std::size_t count() const noexcept { return names.size(); }
};

inline IslandPartition islands(const StickGraph& graph, const PointSet& window, std::size_t closure_depth = 2,
                               std::size_t budget = 1'000'000) {
  std::map<Point, std::size_t> index;
  PointSet nodes;
  auto add = [&](const Point& p) {
    if (index.count(p)) return false;
    if (nodes.size() >= budget) throw BudgetError("island exploration", budget);
    index.emplace(p, nodes.size());
    nodes.push_back(p);
    return true;
  };
  for (const auto& p : window) add(p);
  PointSet frontier = window;
  for (std::size_t depth = 0; depth < closure_depth; ++depth) {
    PointSet next;
    for (const auto& p : frontier) {
      for (const auto& e : graph.neighbors(p)) {
        if (add(e.to)) next.push_back(e.to);
      }
    }
    frontier = std::move(next);
  }
  UnionFind uf(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& e : graph.neighbors(nodes[i])) {
      auto it = index.find(e.to);
      if (it != index.end()) uf.unite(i, it->second);
    }
  }
  IslandPartition out;
  out.explored = nodes.size();
  std::map<std::size_t, std::size_t> root_to_id;
  for (const auto& p : window) {
    const std::size_t root = uf.find(index.at(p));
    auto [it, fresh] = root_to_id.emplace(root, out.names.size());
    if (fresh) out.names.push_back(p);
    out.island_of.emplace(p, it->second);
  }
  return out;
}

struct CosetBijectionReport {
  bool decidable = true;
  bool pass = true;
  std::size_t islands = 0;
  std::size_t cosets = 0;
  std::optional<std::pair<Point, Point>> witness;
};

/// Same island <=> g_x^-1 g_y in G0, for all window pairs, where g_x is the
/// translate coordinate of x. When G0 membership is undecidable the report is
/// marked partial and carries the connectivity census only.
inline CosetBijectionReport coset_bijection_check(const StickGraph& graph, const PointSet& window,
                                                  std::size_t closure_depth = 2) {
  CosetBijectionReport rep;
  const auto part = islands(graph, window, closure_depth);
  rep.islands = part.count();
  if (!graph.island_subgroup().decidable()) {
    rep.decidable = false;
    return rep;
  }
  const auto& grp = graph.action().group();
  std::vector<GroupElement> coord;
  for (const auto& p : window) coord.push_back(graph.translate_coordinate(p));
  std::vector<GroupElement> coset_reps;
  for (const auto& g : coord) {
    const bool fresh = std::none_of(coset_reps.begin(), coset_reps.end(), [&](const GroupElement& r) {
      return graph.island_subgroup().contains(grp.mul(grp.inv(r), g));
    });
    if (fresh) coset_reps.push_back(g);
  }
  rep.cosets = coset_reps.size();
  for (std::size_t i = 0; i < window.size(); ++i) {
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      const bool connected = part.island_of.at(window[i]) == part.island_of.at(window[j]);
      const bool coset = graph.island_subgroup().contains(grp.mul(grp.inv(coord[i]), coord[j]));
      if (connected != coset) {
        rep.pass = false;
        rep.witness = std::make_pair(window[i], window[j]);
        return rep;
      }
    }
  }
  rep.pass = rep.islands == rep.cosets;
  return rep;
}

}  // namespace propmet
