#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "propmet/arith.hpp"
#include "propmet/errors.hpp"
#include "propmet/point.hpp"

namespace propmet {

enum class EdgeKind : std::uint8_t { plain, stick, bridge };

struct Edge {
  Point to;
  Rational weight;
  EdgeKind kind = EdgeKind::plain;
};

/// Settled vertex of a search. `hops` counts edges; `bridges` counts bridge
/// edges and `stick_runs` counts maximal runs of consecutive stick edges.
struct SettledNode {
  Rational dist;
  std::size_t hops = 0;
  std::size_t bridges = 0;
  std::size_t stick_runs = 0;
  EdgeKind last = EdgeKind::plain;
  std::optional<Point> parent;
};

struct SearchLimits {
  /// Vertices at distance >= cutoff are not settled.
  std::optional<Rational> cutoff;
  std::size_t budget = 1'000'000;
};

enum class SearchStatus {
  target_reached,
  cutoff_reached,   ///< every vertex below the cutoff is settled
  exhausted,        ///< the reachable component is finite and fully settled
  budget_exceeded,
};

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::map<Point, SettledNode> settled;
};

/// Dijkstra keyed lexicographically on (distance, hops, vertex), so the
/// settled path to each vertex is the fewest-hop shortest path and ties break
/// deterministically. Weights must be nonnegative.
template <class NeighborFn>
SearchResult shortest_paths(const Point& source, NeighborFn&& neighbors, const SearchLimits& limits,
                            const Point* target = nullptr) {
  using Key = std::tuple<Rational, std::size_t, Point>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      if (auto c = compare(std::get<0>(a), std::get<0>(b)); c != 0) return c < 0;
      if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
      return std::get<2>(a) < std::get<2>(b);
    }
  };
  SearchResult result;
  std::map<Point, SettledNode> tentative;
  std::set<Key, KeyLess> open;

  tentative.emplace(source, SettledNode{Rational(0), 0, 0, 0, EdgeKind::plain, std::nullopt});
  open.emplace(Rational(0), 0, source);

  while (!open.empty()) {
    auto it = open.begin();
    auto [dist, hops, u] = *it;
    open.erase(it);
    if (limits.cutoff && compare(dist, *limits.cutoff) >= 0) {
      result.status = SearchStatus::cutoff_reached;
      return result;
    }
    auto node = tentative.extract(u);
    const SettledNode& settled = result.settled.emplace(u, std::move(node.mapped())).first->second;
    if (target && u == *target) {
      result.status = SearchStatus::target_reached;
      return result;
    }
    if (result.settled.size() > limits.budget) {
      result.status = SearchStatus::budget_exceeded;
      return result;
    }
    for (auto& e : neighbors(u)) {
      if (is_negative(e.weight)) throw UsageError("negative edge weight");
      if (result.settled.count(e.to)) continue;
      SettledNode cand;
      cand.dist = dist + e.weight;
      cand.hops = hops + 1;
      cand.bridges = settled.bridges + (e.kind == EdgeKind::bridge ? 1 : 0);
      cand.stick_runs = settled.stick_runs + (e.kind == EdgeKind::stick && settled.last != EdgeKind::stick ? 1 : 0);
      cand.last = e.kind;
      cand.parent = u;
      auto found = tentative.find(e.to);
      if (found != tentative.end()) {
        const auto& cur = found->second;
        const auto c = compare(cur.dist, cand.dist);
        if (c < 0 || (c == 0 && cur.hops <= cand.hops)) continue;
        open.erase(Key{cur.dist, cur.hops, e.to});
        found->second = std::move(cand);
      } else {
        found = tentative.emplace(e.to, std::move(cand)).first;
      }
      open.emplace(found->second.dist, found->second.hops, e.to);
    }
  }
  result.status = SearchStatus::exhausted;
  return result;
}

/// Vertex sequence source..v recovered from parent links.
inline std::vector<Point> settled_path(const SearchResult& r, const Point& v) {
  std::vector<Point> path;
  std::optional<Point> cur = v;
  while (cur) {
    path.push_back(*cur);
    cur = r.settled.at(*cur).parent;
  }
  return {path.rbegin(), path.rend()};
}

/// Single-source searches memoized per source. Every settled distance is
/// exact; `horizon` is the distance below which the settled set is complete.
/// The largest search per source is kept. Queries may come from several threads.
class SearchCache {
 public:
  using SearchFn = std::function<SearchResult(const Point& source, const Rational& cutoff, const Point* target)>;

  struct Entry {
    ExtReal horizon;
    SearchResult result;
  };

  explicit SearchCache(SearchFn search, std::size_t capacity = 4096)
      : search_(std::move(search)), capacity_(capacity) {}

  std::shared_ptr<const Entry> lookup(const Point& x) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(x);
    return it == entries_.end() ? nullptr : it->second;
  }

  std::shared_ptr<const Entry> search(const Point& x, const Rational& cutoff, const Point* target) {
    Entry e;
    e.result = search_(x, cutoff, target);
    switch (e.result.status) {
      case SearchStatus::target_reached: e.horizon = e.result.settled.at(*target).dist; break;
      case SearchStatus::cutoff_reached: e.horizon = cutoff; break;
      case SearchStatus::exhausted: e.horizon = ExtReal::infinity(); break;
      case SearchStatus::budget_exceeded: e.horizon = ExtReal(0); break;
    }
    auto entry = std::make_shared<const Entry>(std::move(e));
    std::lock_guard lock(mutex_);
    if (entries_.size() >= capacity_) entries_.clear();
    auto& slot = entries_[x];
    if (!slot || slot->result.settled.size() < entry->result.settled.size()) slot = entry;
    return entry;
  }

 private:
  SearchFn search_;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::map<Point, std::shared_ptr<const Entry>> entries_;
};

/// Distance from x to y: cached settled sets from either endpoint first, then
/// a search from x aimed at y with a doubling cutoff. An exhausted search is
/// final when `exhausted_is_final(cutoff)` says so.
inline ExtReal cached_distance(SearchCache& cache, const Point& x, const Point& y, Rational cutoff,
                               const std::function<bool(const Rational&)>& exhausted_is_final,
                               int max_rounds = 64) {
  for (const auto& [from, to] : {std::pair{&x, &y}, std::pair{&y, &x}}) {
    if (auto e = cache.lookup(*from)) {
      auto it = e->result.settled.find(*to);
      if (it != e->result.settled.end()) return it->second.dist;
    }
  }
  for (int round = 0; round < max_rounds; ++round, cutoff *= 2) {
    const auto e = cache.search(x, cutoff, &y);
    switch (e->result.status) {
      case SearchStatus::target_reached: return e->result.settled.at(y).dist;
      case SearchStatus::budget_exceeded: throw BudgetError("shortest-path search", e->result.settled.size());
      case SearchStatus::exhausted:
        if (exhausted_is_final(cutoff)) return ExtReal::infinity();
        break;
      case SearchStatus::cutoff_reached: break;
    }
  }
  throw BudgetError("distance search widening", static_cast<std::size_t>(max_rounds));
}

}  // namespace propmet
