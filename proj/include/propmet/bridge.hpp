#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "propmet/stick.hpp"
#include "propmet/subgroup.hpp"

namespace propmet {

/// Coset representatives g_0 = e, g_1, g_2, ... of G/G0 in word-ball order.
/// A bridge is {g x, g g_n x} with x in F and n != 0; its length is the
/// smallest such n. Immutable; extending the cap builds a new atlas.
class BridgeAtlas {
 public:
  static BridgeAtlas build(std::shared_ptr<const StickGraph> sticks, std::size_t weight_cap,
                           std::size_t budget = 1'000'000) {
    BridgeAtlas a;
    a.sticks_ = std::move(sticks);
    a.budget_ = budget;
    a.cosets_ = coset_enumeration(a.sticks_->action().group(), a.sticks_->island_subgroup(), weight_cap + 1, budget);
    return a;
  }

  const StickGraph& sticks() const noexcept { return *sticks_; }
  std::shared_ptr<const StickGraph> sticks_ptr() const noexcept { return sticks_; }
  const std::vector<GroupElement>& representatives() const noexcept { return cosets_.representatives; }
  /// True when every coset of G/G0 is represented.
  bool exhausted() const noexcept { return cosets_.exhausted; }
  /// Largest bridge index available.
  std::size_t weight_cap() const noexcept { return cosets_.representatives.size() - 1; }
  /// Multiplier on bridge lengths; 1 except for the tamper hook.
  const Rational& weight_scale() const noexcept { return scale_; }

  Rational bridge_weight(std::size_t n) const { return scale_ * Rational(n); }

  BridgeAtlas with_cap(std::size_t weight_cap) const {
    if (weight_cap <= this->weight_cap() || exhausted()) return *this;
    BridgeAtlas a = build(sticks_, weight_cap, budget_);
    a.scale_ = scale_;  // fresh memo: the partner lists depend on the cap
    return a;
  }

  /// Debug hook for negative controls: every bridge length is multiplied by `scale`.
  BridgeAtlas tampered(const Rational& scale) const {
    if (scale <= 0) throw UsageError("bridge weight scale must be positive");
    BridgeAtlas a = *this;
    a.scale_ = scale;
    return a;
  }

  /// Largest index n whose bridge weight is at most `bound`.
  std::size_t index_cap_for(const Rational& bound) const {
    const Integer n = floor(bound / scale_);
    return n < 0 ? 0 : static_cast<std::size_t>(n);
  }

  /// Bridge partners of y with index 1 <= n <= weight_cap: for each h with
  /// y = h f (f in F), the points h g_n f and h g_n^-1 f at weight n, keeping
  /// the smallest weight per partner.
  std::vector<Edge> bridge_neighbors(const Point& y, std::size_t weight_cap) const {
    if (weight_cap > this->weight_cap() && !exhausted()) {
      return with_cap(weight_cap).bridge_neighbors(y, weight_cap);
    }
    std::vector<Edge> out;
    for (const auto& [z, n] : partners(y)) {
      if (n <= weight_cap) out.push_back(Edge{z, bridge_weight(n), EdgeKind::bridge});
    }
    return out;
  }

  /// Stick edges plus bridges up to index `weight_cap`.
  std::vector<Edge> mixed_neighbors(const Point& y, std::size_t weight_cap) const {
    auto edges = sticks_->neighbors(y);
    auto bridges = bridge_neighbors(y, weight_cap);
    edges.insert(edges.end(), bridges.begin(), bridges.end());
    return edges;
  }

 private:
  using Partners = std::vector<std::pair<Point, std::size_t>>;

  struct Memo {
    std::mutex mutex;
    std::map<Point, Partners> partners;
  };

  /// All partners of y with their smallest index n <= weight_cap(), memoized.
  Partners partners(const Point& y) const {
    {
      std::lock_guard lock(memo_->mutex);
      auto it = memo_->partners.find(y);
      if (it != memo_->partners.end()) return it->second;
    }
    const auto& grp = sticks_->action().group();
    const auto& act = sticks_->action();
    std::map<Point, std::size_t> best;
    for (const auto& h : sticks_->translates_containing(y)) {
      const Point f = act.apply(grp.inv(h), y);
      for (std::size_t n = 1; n <= weight_cap(); ++n) {
        const auto& gn = cosets_.representatives[n];
        for (const auto& step : {gn, grp.inv(gn)}) {
          auto [it, fresh] = best.emplace(act.apply(grp.mul(h, step), f), n);
          if (!fresh && n < it->second) it->second = n;
        }
      }
    }
    Partners out(best.begin(), best.end());
    std::lock_guard lock(memo_->mutex);
    if (memo_->partners.size() >= (1u << 16)) memo_->partners.clear();
    memo_->partners.emplace(y, out);
    return out;
  }

  std::shared_ptr<const StickGraph> sticks_;
  CosetEnumeration cosets_;
  Rational scale_{1};
  std::size_t budget_ = 1'000'000;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// Dijkstra over the mixed graph with strict cutoff R.
inline SearchResult bridge_search(const BridgeAtlas& atlas, const Point& x, const Rational& radius,
                                  std::size_t budget = 1'000'000, const Point* target = nullptr) {
  const std::size_t cap = atlas.index_cap_for(radius);
  const BridgeAtlas wide = atlas.with_cap(cap);
  SearchLimits limits{radius, budget};
  return shortest_paths(x, [&wide, cap](const Point& u) { return wide.mixed_neighbors(u, cap); }, limits, target);
}

/// Bridge-count bounds on every settled path: at most R bridges and at most
/// 2R + 1 steps, counting each run of sticks as one island step.
inline bool bridge_path_bound_holds(const SearchResult& r, const Rational& radius) {
  for (const auto& [p, node] : r.settled) {
    if (Rational(node.bridges) > radius) return false;
    if (Rational(node.bridges + node.stick_runs) > 2 * radius + 1) return false;
  }
  return true;
}

struct BridgeDistance {
  enum class Status { exact, at_least_radius, inconclusive };
  Status status = Status::exact;
  ExtReal value;
  std::size_t bridges = 0;
};

/// d_B(x, y) if it is below R; otherwise reports R as a lower bound.
inline BridgeDistance bridge_metric(const BridgeAtlas& atlas, const Point& x, const Point& y, const Rational& radius,
                                    std::size_t budget = 1'000'000) {
  if (radius <= 0) throw UsageError("bridge_metric radius must be positive");
  const auto r = bridge_search(atlas, x, radius, budget, &y);
  BridgeDistance out;
  switch (r.status) {
    case SearchStatus::target_reached:
      out.value = r.settled.at(y).dist;
      out.bridges = r.settled.at(y).bridges;
      break;
    case SearchStatus::cutoff_reached:
    case SearchStatus::exhausted:
      // Exhaustion below R only means nothing else is within R (bridges beyond the cap are unseen).
      out.status = BridgeDistance::Status::at_least_radius;
      out.value = ExtReal(radius);
      break;
    case SearchStatus::budget_exceeded: out.status = BridgeDistance::Status::inconclusive; break;
  }
  return out;
}

/// d_B as a pseudometric, by cached target-directed searches. Every
/// island is reachable by a bridge, so the loop ends whenever d' is finite on islands.
inline Pseudometric bridge_pseudometric(std::shared_ptr<const BridgeAtlas> atlas, std::size_t budget = 1'000'000) {
  Pseudometric d;
  d.provenance = "bridge(" + atlas->sticks().base().provenance + ")";
  auto cache = std::make_shared<SearchCache>([atlas, budget](const Point& x, const Rational& cutoff, const Point* y) {
    return bridge_search(*atlas, x, cutoff, budget, y);
  });
  d.eval = [atlas, cache](const Point& x, const Point& y) {
    if (x == y) return ExtReal(0);
    // With finitely many cosets, a search that uses every bridge and still runs dry is final.
    auto final_if_exhausted = [atlas](const Rational& cutoff) {
      return atlas->exhausted() && atlas->index_cap_for(cutoff) >= atlas->weight_cap();
    };
    return cached_distance(*cache, x, y, Rational(8), final_if_exhausted);
  };
  const Rational lower = std::min(atlas->sticks().delta(), atlas->bridge_weight(1));
  MetricGraph g{[atlas](const Point& u) { return atlas->mixed_neighbors(u, atlas->weight_cap()); }, lower, true, {}};
  // Ball searches go through the cache so later evaluations from the same centre are lookups.
  g.search_within = [cache](const Point& x, const Rational& cutoff) { return cache->search(x, cutoff, nullptr)->result; };
  d.graph = std::move(g);
  d.separation = std::min(atlas->sticks().delta(), atlas->bridge_weight(1));
  d.claims.invariant = atlas->sticks().base().claims.invariant;
  d.claims.proper = true;
  d.claims.finite = true;
  d.claims.compatible = true;
  return d;
}

/// { y : d_B(x, y) < R } using bridges up to index floor(R / scale).
inline BallResult bridge_ball(const BridgeAtlas& atlas, const Point& x, const Rational& radius,
                              std::size_t budget = 1'000'000) {
  BallResult out;
  if (radius <= 0) return out;
  const auto r = bridge_search(atlas, x, radius, budget);
  out.visited = r.settled.size();
  if (r.status == SearchStatus::budget_exceeded) {
    out.status = BallResult::Status::budget_exceeded;
    return out;
  }
  for (const auto& [p, node] : r.settled) out.points.push_back(p);
  return out;
}

/// sup(base, d_B): the final invariant proper metric. Claims are set here and
/// checked by the pipeline verifiers.
inline Pseudometric assemble_proper_metric(const Pseudometric& base, const Pseudometric& bridge) {
  // Bridge first so the combined graph oracle is the d_B one (a lower bound for the sup).
  Pseudometric out = combine(CombineOp::sup, {bridge, base});
  out.provenance = "sup(" + base.provenance + ", " + bridge.provenance + ")";
  out.claims = {.invariant = true, .proper = true, .finite = true, .compatible = true, .orbitwise_proper = true};
  return out;
}

}  // namespace propmet
