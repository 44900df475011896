#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <cstddef>
#include <variant>
#include <vector>

#include "propmet/group.hpp"

namespace propmet {

/// Integer vector on one of possibly several copies ("sheets") of Z^k.
struct LatticePoint {
  std::size_t sheet = 0;
  IntVector coords;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Index into a finite labelled set.
struct LabelPoint {
  std::size_t index = 0;
  friend auto operator<=>(const LabelPoint&, const LabelPoint&) = default;
  friend bool operator==(const LabelPoint&, const LabelPoint&) = default;
};

/// Reduced word, for a free group acting on itself.
struct WordPoint {
  FreeWord word;
  friend auto operator<=>(const WordPoint&, const WordPoint&) = default;
  friend bool operator==(const WordPoint&, const WordPoint&) = default;
};

using Point = std::variant<LatticePoint, LabelPoint, WordPoint>;
using PointSet = std::vector<Point>;

inline Point lattice_point(std::initializer_list<long long> coords, std::size_t sheet = 0) {
  LatticePoint p;
  p.sheet = sheet;
  for (auto c : coords) p.coords.emplace_back(c);
  return p;
}

inline Point label_point(std::size_t i) { return LabelPoint{i}; }

/// Sorted, duplicate-free copy.
inline PointSet normalized(PointSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const PointSet& sorted_set, const Point& x) {
  return std::binary_search(sorted_set.begin(), sorted_set.end(), x);
}

}  // namespace propmet
