#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "propmet/action.hpp"
#include "propmet/pseudometric.hpp"
#include "propmet/verify.hpp"

namespace propmet {

/// Labelled points with a symmetric rational distance table, positive off the diagonal.
struct FiniteMetricSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> distances;

  std::size_t size() const noexcept { return labels.size(); }

  static FiniteMetricSpace make(std::vector<std::string> labels, std::vector<std::vector<Rational>> distances) {
    FiniteMetricSpace x{std::move(labels), std::move(distances)};
    const std::size_t n = x.labels.size();
    if (x.distances.size() != n) throw UsageError("distance table size must match the label count");
    for (std::size_t i = 0; i < n; ++i) {
      if (x.distances[i].size() != n) throw UsageError("distance table must be square");
      if (x.distances[i][i] != 0) throw UsageError("distance table diagonal must be zero");
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && x.distances[i][j] <= 0) throw UsageError("distances between distinct points must be positive");
        if (x.distances[i][j] != x.distances[j][i]) throw UsageError("distance table must be symmetric");
      }
    }
    return x;
  }

  Pseudometric metric(std::string name = "table") const { return table_metric(distances, std::move(name)); }
};

/// All permutations preserving the distance table, by backtracking. A point
/// may only map to a point with the same sorted distance profile.
inline std::vector<Permutation> isometries(const FiniteMetricSpace& x, std::size_t cap = 9) {
  const std::size_t n = x.size();
  if (n > cap) throw BudgetError("isometry search over " + std::to_string(n) + " points", cap);
  std::vector<std::vector<Rational>> profile(n);
  for (std::size_t i = 0; i < n; ++i) {
    profile[i] = x.distances[i];
    std::sort(profile[i].begin(), profile[i].end());
  }
  std::vector<Permutation> out;
  std::vector<std::uint32_t> image(n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(Permutation{image});
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || profile[c] != profile[i]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = x.distances[image[j]][c] == x.distances[j][i];
      if (!ok) continue;
      used[c] = true;
      image[i] = static_cast<std::uint32_t>(c);
      self(self, i + 1);
      used[c] = false;
    }
  };
  extend(extend, 0);
  return out;
}

/// Iso(X) as a finite permutation group; generated by all of its elements,
/// so closure is checked rather than assumed.
inline GroupDescriptor isometry_group(const FiniteMetricSpace& x, std::size_t cap = 9) {
  auto isos = isometries(x, cap);
  auto g = GroupDescriptor::permutations(x.size(), isos);
  if (g.elements().size() != isos.size()) {
    throw VerificationError("isometries are not closed under composition",
                            std::to_string(g.elements().size()) + " != " + std::to_string(isos.size()));
  }
  return g;
}

struct IsometryActionReport {
  ProperReport proper;
  InvarianceReport invariance;
  bool group_closed = true;

  bool pass() const {
    return group_closed && invariance.pass && proper.verdict == ProperReport::Verdict::proper_certified;
  }
};

/// Properness of Iso(X) on X and invariance of d under every element of G
/// (not just generators), so an injected non-isometry is caught.
inline IsometryActionReport verify_proper_isometry_action(const FiniteMetricSpace& x, const GroupDescriptor& g) {
  IsometryActionReport rep;
  const auto action = std::make_shared<const PermutationAction>(g, x.labels);
  PointSet all;
  for (std::size_t i = 0; i < x.size(); ++i) all.push_back(label_point(i));
  rep.proper = check_proper(*action, all);
  const auto& elems = g.elements();
  for (const auto& a : elems) {
    if (!g.contains(g.inv(a))) rep.group_closed = false;
    for (const auto& b : elems) {
      if (!std::binary_search(elems.begin(), elems.end(), g.mul(a, b))) rep.group_closed = false;
    }
  }
  rep.invariance = check_invariance(x.metric(), *action, all, elems);
  return rep;
}

}  // namespace propmet
