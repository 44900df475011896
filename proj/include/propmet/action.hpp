#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "propmet/group.hpp"
#include "propmet/point.hpp"

namespace propmet {

/// Transporter G_AB = { g : gA meets B } with a completeness certificate.
struct TransporterSet {
  enum class Completeness {
    exact,           ///< elements is the whole transporter
    bounded_search,  ///< elements is the transporter intersected with a word ball
    infinite,        ///< provably infinite; elements is a finite sample
  };

  std::vector<GroupElement> elements;  // sorted, unique
  Completeness completeness = Completeness::exact;
  std::size_t search_radius = 0;
  std::string witness;  // reason the set is infinite

  bool exact() const noexcept { return completeness == Completeness::exact; }
};

inline std::string to_string(TransporterSet::Completeness c) {
  switch (c) {
    case TransporterSet::Completeness::exact: return "exact";
    case TransporterSet::Completeness::bounded_search: return "bounded-search";
    case TransporterSet::Completeness::infinite: return "infinite";
  }
  return "?";
}

struct OrbitReps {
  PointSet representatives;
  bool exhausted = false;
};

/// A group acting on a countable discrete space. Subclasses are immutable
/// and supply exact closed-form transporters where they can; the fallback is
/// a bounded word-ball search.
class Action {
 public:
  explicit Action(GroupDescriptor group) : group_(std::move(group)) {}
  virtual ~Action() = default;
  Action(const Action&) = delete;
  Action& operator=(const Action&) = delete;

  const GroupDescriptor& group() const noexcept { return group_; }

  virtual std::string space_name() const = 0;
  /// True if x belongs to this action's space.
  virtual bool holds(const Point& x) const = 0;
  virtual Point apply(const GroupElement& g, const Point& x) const = 0;

  /// Index of the orbit of x in the deterministic orbit enumeration.
  virtual Integer orbit_index(const Point& x) const = 0;
  virtual OrbitReps orbit_reps(std::size_t n) const = 0;

  /// Every point, for finite spaces.
  virtual std::optional<PointSet> all_points() const { return std::nullopt; }

  virtual std::string format(const Point& x) const = 0;
  virtual Point parse(std::string_view text) const = 0;

  virtual TransporterSet transporter(const PointSet& a, const PointSet& b) const {
    return bounded_transporter(a, b, default_search_radius());
  }

  /// { g in word_ball(radius) : gA meets B }.
  TransporterSet bounded_transporter(const PointSet& a, const PointSet& b, std::size_t radius,
                                     std::size_t budget = 1'000'000) const {
    require_nonempty(a, b);
    const PointSet target = normalized(b);
    TransporterSet t;
    t.completeness = TransporterSet::Completeness::bounded_search;
    t.search_radius = radius;
    for (const auto& g : word_ball(group_, radius, budget)) {
      for (const auto& x : a) {
        if (contains(target, apply(g, x))) {
          t.elements.push_back(g);
          break;
        }
      }
    }
    std::sort(t.elements.begin(), t.elements.end());
    return t;
  }

  virtual std::size_t default_search_radius() const { return 6; }

  /// Applies g after checking that x is a point of this space.
  Point act(const GroupElement& g, const Point& x) const {
    if (!holds(x)) throw UsageError("point does not belong to " + space_name());
    return apply(g, x);
  }

 protected:
  void require_nonempty(const PointSet& a, const PointSet& b) const {
    if (a.empty() || b.empty()) throw UsageError("transporter needs nonempty sets");
    for (const auto& x : a) {
      if (!holds(x)) throw UsageError("point does not belong to " + space_name());
    }
    for (const auto& x : b) {
      if (!holds(x)) throw UsageError("point does not belong to " + space_name());
    }
  }

  GroupDescriptor group_;
};

namespace detail {

inline std::string sheet_suffix(std::size_t sheet, std::optional<std::size_t> sheets) {
  if (sheets && *sheets <= 26) return "_" + std::string(1, static_cast<char>('a' + sheet));
  return "_" + std::to_string(sheet);
}

inline IntVector parse_coords(std::string_view text) {
  IntVector out;
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') throw UsageError("unbalanced parentheses in point '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    try {
      out.emplace_back(std::string(piece));
    } catch (const std::exception&) {
      throw UsageError("bad integer coordinate '" + std::string(piece) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// A full-rank lattice G in Z^k translating each of `sheets` copies of Z^k
/// (nullopt sheets = countably many, indexed by N).
class LatticeAction final : public Action {
 public:
  LatticeAction(GroupDescriptor group, std::optional<std::size_t> sheets = 1)
      : Action(std::move(group)), sheets_(sheets) {
    if (group_.family() != GroupFamily::lattice) throw UsageError("LatticeAction needs a lattice group");
    if (sheets_ && *sheets_ == 0) throw UsageError("LatticeAction needs at least one sheet");
    covolume_ = group_.lattice_basis().determinant();
  }

  std::optional<std::size_t> sheets() const noexcept { return sheets_; }
  std::size_t dim() const noexcept { return group_.rank(); }

  std::string space_name() const override {
    std::string base = "Z^" + std::to_string(dim());
    if (!sheets_) return base + " x N";
    if (*sheets_ == 1) return base;
    return std::to_string(*sheets_) + " copies of " + base;
  }

  bool holds(const Point& x) const override {
    const auto* p = std::get_if<LatticePoint>(&x);
    return p && p->coords.size() == dim() && (!sheets_ || p->sheet < *sheets_);
  }

  Point apply(const GroupElement& g, const Point& x) const override {
    const auto* v = std::get_if<ZVector>(&g);
    const auto* p = std::get_if<LatticePoint>(&x);
    if (!v || !p || v->coords.size() != dim() || p->coords.size() != dim()) {
      throw UsageError("lattice action applied to a mismatched element or point");
    }
    LatticePoint out = *p;
    for (std::size_t i = 0; i < dim(); ++i) out.coords[i] += v->coords[i];
    return out;
  }

  TransporterSet transporter(const PointSet& a, const PointSet& b) const override {
    require_nonempty(a, b);
    TransporterSet t;
    for (const auto& xa : a) {
      const auto& pa = std::get<LatticePoint>(xa);
      for (const auto& xb : b) {
        const auto& pb = std::get<LatticePoint>(xb);
        if (pa.sheet != pb.sheet) continue;
        IntVector diff(dim());
        for (std::size_t i = 0; i < dim(); ++i) diff[i] = pb.coords[i] - pa.coords[i];
        if (group_.lattice_basis().contains(diff)) t.elements.push_back(ZVector{std::move(diff)});
      }
    }
    std::sort(t.elements.begin(), t.elements.end());
    t.elements.erase(std::unique(t.elements.begin(), t.elements.end()), t.elements.end());
    return t;
  }

  Integer orbit_index(const Point& x) const override {
    if (!holds(x)) throw UsageError("point does not belong to " + space_name());
    const auto& p = std::get<LatticePoint>(x);
    const IntVector r = group_.lattice_basis().reduce(p.coords);
    const auto& basis = group_.lattice_basis().basis();
    Integer idx = 0;
    for (std::size_t i = dim(); i-- > 0;) idx = idx * basis[i][i] + r[i];
    return Integer(p.sheet) * covolume_ + idx;
  }

  OrbitReps orbit_reps(std::size_t n) const override {
    OrbitReps out;
    const auto& basis = group_.lattice_basis().basis();
    std::optional<Integer> total;
    if (sheets_) total = Integer(*sheets_) * covolume_;
    for (std::size_t k = 0; k < n; ++k) {
      if (total && Integer(k) >= *total) break;
      Integer idx(k);
      LatticePoint p;
      p.sheet = static_cast<std::size_t>(idx / covolume_);
      idx %= covolume_;
      p.coords.resize(dim());
      for (std::size_t i = 0; i < dim(); ++i) {
        p.coords[i] = idx % basis[i][i];
        idx /= basis[i][i];
      }
      out.representatives.push_back(std::move(p));
    }
    out.exhausted = total && Integer(out.representatives.size()) == *total;
    return out;
  }

  std::string format(const Point& x) const override {
    const auto& p = std::get<LatticePoint>(x);
    std::string s;
    if (p.coords.size() == 1) {
      s = p.coords[0].str();
    } else {
      s = "(";
      for (std::size_t i = 0; i < p.coords.size(); ++i) s += (i ? "," : "") + p.coords[i].str();
      s += ")";
    }
    if (sheets_ && *sheets_ == 1) return s;
    return s + detail::sheet_suffix(p.sheet, sheets_);
  }

  Point parse(std::string_view text) const override {
    LatticePoint p;
    const auto us = text.rfind('_');
    if (!sheets_ || *sheets_ > 1) {
      if (us == std::string_view::npos) throw UsageError("point '" + std::string(text) + "' needs a sheet suffix");
      const auto suffix = text.substr(us + 1);
      if (sheets_ && *sheets_ <= 26 && suffix.size() == 1 && suffix[0] >= 'a' && suffix[0] <= 'z') {
        p.sheet = static_cast<std::size_t>(suffix[0] - 'a');
      } else {
        try {
          p.sheet = std::stoul(std::string(suffix));
        } catch (const std::exception&) {
          throw UsageError("bad sheet suffix in '" + std::string(text) + "'");
        }
      }
      text = text.substr(0, us);
    }
    p.coords = detail::parse_coords(text);
    Point out = p;
    if (!holds(out)) throw UsageError("point '" + std::string(text) + "' does not belong to " + space_name());
    return out;
  }

 private:
  std::optional<std::size_t> sheets_;
  Integer covolume_;
};

/// A permutation group acting on a finite labelled set.
class PermutationAction final : public Action {
 public:
  PermutationAction(GroupDescriptor group, std::vector<std::string> labels)
      : Action(std::move(group)), labels_(std::move(labels)) {
    if (group_.family() != GroupFamily::permutation) throw UsageError("PermutationAction needs a permutation group");
    if (labels_.size() != group_.rank()) throw UsageError("label count must equal the permutation degree");
    // Orbits: smallest index of each orbit, numbered in increasing order.
    orbit_of_.assign(labels_.size(), labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (orbit_of_[i] != labels_.size()) continue;
      const std::size_t id = reps_.size();
      reps_.push_back(i);
      for (const auto& g : group_.elements()) orbit_of_[std::get<Permutation>(g).images[i]] = id;
    }
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string space_name() const override { return std::to_string(labels_.size()) + "-point set"; }

  bool holds(const Point& x) const override {
    const auto* p = std::get_if<LabelPoint>(&x);
    return p && p->index < labels_.size();
  }

  Point apply(const GroupElement& g, const Point& x) const override {
    const auto* perm = std::get_if<Permutation>(&g);
    const auto* p = std::get_if<LabelPoint>(&x);
    if (!perm || !p || perm->images.size() != labels_.size() || p->index >= labels_.size()) {
      throw UsageError("permutation action applied to a mismatched element or point");
    }
    return LabelPoint{perm->images[p->index]};
  }

  TransporterSet transporter(const PointSet& a, const PointSet& b) const override {
    require_nonempty(a, b);
    const PointSet target = normalized(b);
    TransporterSet t;
    for (const auto& g : group_.elements()) {
      for (const auto& x : a) {
        if (contains(target, apply(g, x))) {
          t.elements.push_back(g);
          break;
        }
      }
    }
    return t;  // elements() is already sorted
  }

  Integer orbit_index(const Point& x) const override {
    if (!holds(x)) throw UsageError("point does not belong to " + space_name());
    return Integer(orbit_of_[std::get<LabelPoint>(x).index]);
  }

  OrbitReps orbit_reps(std::size_t n) const override {
    OrbitReps out;
    for (std::size_t i = 0; i < reps_.size() && i < n; ++i) out.representatives.push_back(LabelPoint{reps_[i]});
    out.exhausted = out.representatives.size() == reps_.size();
    return out;
  }

  std::optional<PointSet> all_points() const override {
    PointSet all;
    for (std::size_t i = 0; i < labels_.size(); ++i) all.push_back(LabelPoint{i});
    return all;
  }

  std::string format(const Point& x) const override { return labels_.at(std::get<LabelPoint>(x).index); }

  Point parse(std::string_view text) const override {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == text) return LabelPoint{i};
    }
    throw UsageError("unknown label '" + std::string(text) + "'");
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> orbit_of_;
  std::vector<std::size_t> reps_;
};

/// A free group acting on itself by left multiplication.
class FreeSelfAction final : public Action {
 public:
  explicit FreeSelfAction(GroupDescriptor group) : Action(std::move(group)) {
    if (group_.family() != GroupFamily::free) throw UsageError("FreeSelfAction needs a free group");
  }

  std::string space_name() const override { return "F_" + std::to_string(group_.rank()); }

  bool holds(const Point& x) const override {
    const auto* p = std::get_if<WordPoint>(&x);
    return p && group_.same_family(p->word) && free_reduce(p->word.letters) == p->word;
  }

  Point apply(const GroupElement& g, const Point& x) const override {
    const auto* w = std::get_if<WordPoint>(&x);
    if (!w) throw UsageError("free action applied to a non-word point");
    return WordPoint{std::get<FreeWord>(group_.mul(g, w->word))};
  }

  TransporterSet transporter(const PointSet& a, const PointSet& b) const override {
    require_nonempty(a, b);
    TransporterSet t;
    for (const auto& xa : a) {
      for (const auto& xb : b) {
        t.elements.push_back(group_.mul(std::get<WordPoint>(xb).word, group_.inv(std::get<WordPoint>(xa).word)));
      }
    }
    std::sort(t.elements.begin(), t.elements.end());
    t.elements.erase(std::unique(t.elements.begin(), t.elements.end()), t.elements.end());
    return t;
  }

  Integer orbit_index(const Point& x) const override {
    if (!holds(x)) throw UsageError("point does not belong to " + space_name());
    return 0;
  }

  OrbitReps orbit_reps(std::size_t n) const override {
    OrbitReps out;
    if (n > 0) out.representatives.push_back(WordPoint{});
    out.exhausted = n > 0;
    return out;
  }

  std::string format(const Point& x) const override {
    return GroupDescriptor::format_word(std::get<WordPoint>(x).word);
  }

  Point parse(std::string_view text) const override {
    Point p = WordPoint{GroupDescriptor::parse_word(text)};
    if (!holds(p)) throw UsageError("word '" + std::string(text) + "' uses letters outside the group");
    return p;
  }
};

/// Every group element fixes the single point "p". Proper only for finite groups.
class TrivialAction final : public Action {
 public:
  explicit TrivialAction(GroupDescriptor group) : Action(std::move(group)) {}

  std::string space_name() const override { return "{p}"; }
  bool holds(const Point& x) const override {
    const auto* p = std::get_if<LabelPoint>(&x);
    return p && p->index == 0;
  }
  Point apply(const GroupElement& g, const Point& x) const override {
    if (!group_.same_family(g)) throw UsageError("trivial action applied to a mismatched element");
    return x;
  }

  TransporterSet transporter(const PointSet& a, const PointSet& b) const override {
    require_nonempty(a, b);
    TransporterSet t;
    if (group_.is_finite()) {
      t.elements = group_.elements();
      return t;
    }
    t.completeness = TransporterSet::Completeness::infinite;
    t.elements = word_ball(group_, 1);
    std::sort(t.elements.begin(), t.elements.end());
    t.witness = "every element of the infinite group " + to_string(group_.family()) +
                " fixes p, so the transporter is the whole group";
    return t;
  }

  Integer orbit_index(const Point&) const override { return 0; }
  OrbitReps orbit_reps(std::size_t n) const override {
    OrbitReps out;
    if (n > 0) out.representatives.push_back(LabelPoint{0});
    out.exhausted = n > 0;
    return out;
  }
  std::optional<PointSet> all_points() const override { return PointSet{LabelPoint{0}}; }
  std::string format(const Point&) const override { return "p"; }
  Point parse(std::string_view text) const override {
    if (text != "p") throw UsageError("the only point is 'p'");
    return LabelPoint{0};
  }
};

/// { g f : g in word_ball(radius), f in seed }, sorted.
inline PointSet translates_window(const Action& action, const PointSet& seed, std::size_t radius,
                                  std::size_t budget = 1'000'000) {
  PointSet out;
  for (const auto& g : word_ball(action.group(), radius, budget)) {
    for (const auto& f : seed) out.push_back(action.apply(g, f));
  }
  return normalized(std::move(out));
}

// ---------------------------------------------------------------------------
// Properness.

struct TransporterEntry {
  std::string from;
  std::string to;
  std::size_t cardinality = 0;
  TransporterSet::Completeness completeness = TransporterSet::Completeness::exact;
};

struct ProperReport {
  enum class Verdict { proper_certified, proper_on_window, not_proper, inconclusive };

  Verdict verdict = Verdict::proper_certified;
  std::vector<TransporterEntry> singleton_pairs;
  TransporterEntry whole_window;
  std::size_t max_singleton_cardinality = 0;
  std::string witness;
};

inline std::string to_string(ProperReport::Verdict v) {
  switch (v) {
    case ProperReport::Verdict::proper_certified: return "proper-certified";
    case ProperReport::Verdict::proper_on_window: return "proper-on-window";
    case ProperReport::Verdict::not_proper: return "not-proper";
    case ProperReport::Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Properness through transporters: every singleton pair of the window and
/// the window against itself. Bounded searches count as "proper-on-window"
/// only when doubling the search radius finds nothing new.
inline ProperReport check_proper(const Action& action, const PointSet& window) {
  if (window.empty()) throw UsageError("check_proper needs a nonempty window");
  ProperReport report;
  bool all_exact = true;
  bool stabilized = true;

  auto examine = [&](const PointSet& a, const PointSet& b, TransporterEntry& entry) -> bool {
    TransporterSet t;
    try {
      t = action.transporter(a, b);
    } catch (const BudgetError& e) {
      report.verdict = ProperReport::Verdict::inconclusive;
      report.witness = e.what();
      return false;
    }
    entry.cardinality = t.elements.size();
    entry.completeness = t.completeness;
    if (t.completeness == TransporterSet::Completeness::infinite) {
      report.verdict = ProperReport::Verdict::not_proper;
      report.witness = "transporter from {" + entry.from + "} to {" + entry.to + "} is infinite: " + t.witness;
      return false;
    }
    if (t.completeness == TransporterSet::Completeness::bounded_search) {
      all_exact = false;
      const auto wider = action.bounded_transporter(a, b, 2 * t.search_radius);
      if (wider.elements != t.elements) stabilized = false;
    }
    return true;
  };

  for (const auto& x : window) {
    for (const auto& y : window) {
      TransporterEntry e{action.format(x), action.format(y)};
      if (!examine({x}, {y}, e)) return report;
      report.max_singleton_cardinality = std::max(report.max_singleton_cardinality, e.cardinality);
      report.singleton_pairs.push_back(std::move(e));
    }
  }
  report.whole_window = TransporterEntry{"window", "window"};
  if (!examine(window, window, report.whole_window)) return report;

  if (all_exact) {
    report.verdict = ProperReport::Verdict::proper_certified;
  } else if (stabilized) {
    report.verdict = ProperReport::Verdict::proper_on_window;
  } else {
    report.verdict = ProperReport::Verdict::inconclusive;
    report.witness = "bounded transporter search did not stabilize";
  }
  return report;
}

}  // namespace propmet
