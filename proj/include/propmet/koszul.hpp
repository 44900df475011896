#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "propmet/action.hpp"
#include "propmet/pseudometric.hpp"

namespace propmet {

/// A finite set F with GF = X and finite transporters G_KF from finite K,
/// verified on an explicit window.
struct FundamentalSet {
  std::shared_ptr<const Action> action;
  PointSet points;  // sorted
  PointSet verified_window;

  bool contains(const Point& x) const { return propmet::contains(points, x); }
};

/// Checks a candidate F: the action restricted to F must be proper, every
/// window point must lie in a translate of F, and G_{window,F} must be exact
/// and finite. Throws VerificationError with a witness otherwise.
inline FundamentalSet verify_fundamental_set(std::shared_ptr<const Action> action, PointSet candidate,
                                             const PointSet& window) {
  if (candidate.empty()) throw UsageError("fundamental set must be nonempty");
  candidate = normalized(std::move(candidate));
  for (const auto& f : candidate) {
    if (!action->holds(f)) throw UsageError("fundamental set point does not belong to " + action->space_name());
  }
  const auto proper = check_proper(*action, candidate);
  if (proper.verdict == ProperReport::Verdict::not_proper) {
    throw VerificationError("action is not proper", proper.witness);
  }
  for (const auto& x : window) {
    if (action->transporter(candidate, {x}).elements.empty()) {
      throw VerificationError("fundamental set does not cover the window", "no translate of F contains " + action->format(x));
    }
  }
  const auto t = action->transporter(window, candidate);
  if (!t.exact()) {
    throw VerificationError("transporter from the window to F is not exact and finite",
                            t.witness.empty() ? to_string(t.completeness) : t.witness);
  }
  return FundamentalSet{std::move(action), std::move(candidate), window};
}

/// The first n orbit representatives (the scenario must have at most n orbits),
/// or a user-supplied F; verified either way.
inline FundamentalSet canonical_fundamental_set(std::shared_ptr<const Action> action, std::size_t n,
                                                const PointSet& window,
                                                std::optional<PointSet> user_supplied = std::nullopt) {
  if (user_supplied) return verify_fundamental_set(std::move(action), std::move(*user_supplied), window);
  auto reps = action->orbit_reps(n);
  if (!reps.exhausted) {
    throw UsageError("the action has more than " + std::to_string(n) +
                     " orbits; supply a fundamental set explicitly");
  }
  return verify_fundamental_set(std::move(action), std::move(reps.representatives), window);
}

/// Truncation of d to F: r(x) = d(x, X \ F) for x in F and 0 elsewhere, and
/// d'(x,y) = min{ d(x,y), r(x) + r(y) }.
struct KoszulIntermediate {
  Pseudometric base;
  FundamentalSet fundamental;
  std::map<Point, ExtReal> radius;
  /// False when some r(x) is only an upper bound found on the window.
  bool radius_exact = true;

  ExtReal r(const Point& x) const {
    auto it = radius.find(x);
    return it == radius.end() ? ExtReal(0) : it->second;
  }

  ExtReal truncated(const Point& x, const Point& y) const { return min(base(x, y), r(x) + r(y)); }

  Pseudometric truncated_metric() const {
    auto self = std::make_shared<const KoszulIntermediate>(*this);
    Pseudometric d;
    d.provenance = "truncate(" + base.provenance + ")";
    d.eval = [self](const Point& x, const Point& y) { return self->truncated(x, y); };
    d.claims.finite = base.claims.finite;
    return d;
  }
};

/// Computes r over window \ F. The minimum is exact when the window holds the
/// whole (finite) space or when it already equals d's certified separation;
/// otherwise it is an upper bound, which only shrinks d'.
inline KoszulIntermediate koszul_truncate(const Pseudometric& d, const FundamentalSet& f, PointSet window) {
  window = normalized(std::move(window));
  KoszulIntermediate k{d, f, {}, true};
  const auto all = f.action->all_points();
  bool whole_space = false;
  if (all) {
    whole_space = std::all_of(all->begin(), all->end(), [&](const Point& x) { return contains(window, x); });
  }
  for (const auto& x : f.points) {
    std::optional<ExtReal> best;
    for (const auto& y : window) {
      if (f.contains(y)) continue;
      const ExtReal v = d(x, y);
      if (!best || v < *best) best = v;
    }
    if (!best) {
      if (!whole_space) throw UsageError("window holds no point outside F; widen it to bound r(x)");
      best = ExtReal::infinity();
    }
    const bool exact = whole_space || (d.separation && best->is_finite() && best->value() == *d.separation);
    if (!exact) k.radius_exact = false;
    k.radius.emplace(x, *best);
  }
  return k;
}

/// d''(x,y) = sum over g in G_{{x,y},F} of d'(gx, gy): the counting-measure
/// average, restricted to the finite support of g -> d'(gx, gy).
inline ExtReal koszul_average(const KoszulIntermediate& k, const Action& action, const Point& x, const Point& y) {
  const auto support = action.transporter({x, y}, k.fundamental.points);
  if (!support.exact()) {
    throw CapabilityError("averaging needs an exact finite transporter, got " + to_string(support.completeness));
  }
  ExtReal sum(0);
  for (const auto& g : support.elements) sum += k.truncated(action.apply(g, x), action.apply(g, y));
  return sum;
}

inline Pseudometric koszul_metric(const KoszulIntermediate& k) {
  auto self = std::make_shared<const KoszulIntermediate>(k);
  Pseudometric d;
  d.provenance = "average(" + k.base.provenance + ")";
  d.eval = [self](const Point& x, const Point& y) {
    if (x == y) return ExtReal(0);
    return koszul_average(*self, *self->fundamental.action, x, y);
  };
  // Some g moves x into F; that summand alone is >= min(separation, r(gx)) >= separation.
  d.separation = k.base.separation;
  d.claims.invariant = true;
  d.claims.finite = k.base.claims.finite;
  d.claims.compatible = k.base.claims.compatible;
  return d;
}

/// d + |f(pi x) - f(pi y)| with f the orbit index, a proper function on the
/// countable discrete orbit space. Invariant when d is; balls meet finitely
/// many orbits.
inline Pseudometric orbitwise_augment(const Pseudometric& d, std::shared_ptr<const Action> action) {
  Pseudometric out;
  out.provenance = "augment(" + d.provenance + ")";
  out.eval = [d, action](const Point& x, const Point& y) {
    const Integer diff = action->orbit_index(x) - action->orbit_index(y);
    return d(x, y) + ExtReal(Rational(diff < 0 ? Integer(-diff) : diff));
  };
  if (d.graph) {
    out.graph = d.graph;
    out.graph->exact = false;
  }
  out.separation = d.separation;
  out.claims = d.claims;
  out.claims.orbitwise_proper = true;
  return out;
}

}  // namespace propmet
