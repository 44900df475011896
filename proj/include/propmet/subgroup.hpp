#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "propmet/group.hpp"

namespace propmet {

/// Subgroup H of a GroupDescriptor, given by generators, with exact membership
/// where the family allows it:
///  - lattice: Hermite normal form of the generators;
///  - permutation: full element closure;
///  - free: only the trivial subgroup and the whole group are decided.
class Subgroup {
 public:
  enum class FreeKind { trivial, whole, undecided };

  static Subgroup generated_by(const GroupDescriptor& group, std::vector<GroupElement> generators) {
    Subgroup h;
    h.group_ = group;
    for (const auto& g : generators) {
      if (!group.contains(g)) throw UsageError("subgroup generator " + group.format(g) + " is not in the group");
    }
    switch (group.family()) {
      case GroupFamily::lattice: {
        std::vector<IntVector> vs;
        for (const auto& g : generators) vs.push_back(std::get<ZVector>(g).coords);
        h.lattice_ = IntLattice::span(group.rank(), vs);
        break;
      }
      case GroupFamily::permutation: {
        std::vector<Permutation> ps;
        for (const auto& g : generators) ps.push_back(std::get<Permutation>(g));
        const auto sub = GroupDescriptor::permutations(group.rank(), std::move(ps));
        h.elements_ = sub.elements();
        break;
      }
      case GroupFamily::free: {
        std::set<int> letters;
        bool all_identity = true;
        for (const auto& g : generators) {
          const auto& w = std::get<FreeWord>(g).letters;
          if (!w.empty()) all_identity = false;
          if (w.size() == 1) letters.insert(w[0] < 0 ? -w[0] : w[0]);
        }
        if (all_identity) {
          h.free_kind_ = FreeKind::trivial;
        } else if (letters.size() == group.rank()) {
          h.free_kind_ = FreeKind::whole;
        } else {
          h.free_kind_ = FreeKind::undecided;
        }
        break;
      }
    }
    h.generators_ = std::move(generators);
    return h;
  }

  const GroupDescriptor& group() const noexcept { return group_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }

  /// Whether membership is decidable for this subgroup.
  bool decidable() const noexcept {
    return group_.family() != GroupFamily::free || free_kind_ != FreeKind::undecided;
  }

  bool contains(const GroupElement& g) const {
    if (!group_.same_family(g)) throw UsageError("membership query with an element of another family");
    switch (group_.family()) {
      case GroupFamily::lattice: return lattice_.contains(std::get<ZVector>(g).coords);
      case GroupFamily::permutation: return std::binary_search(elements_.begin(), elements_.end(), g);
      case GroupFamily::free:
        switch (free_kind_) {
          case FreeKind::trivial: return std::get<FreeWord>(g).letters.empty();
          case FreeKind::whole: return true;
          case FreeKind::undecided:
            throw CapabilityError(
                "membership in a proper nontrivial subgroup of a free group is not supported; "
                "use the stick-graph connectivity island test instead");
        }
    }
    return false;
  }

  /// [G : H], or nullopt when the index is infinite.
  std::optional<Integer> index() const {
    switch (group_.family()) {
      case GroupFamily::lattice:
        if (!lattice_.full_rank()) return std::nullopt;
        return lattice_.determinant() / group_.lattice_basis().determinant();
      case GroupFamily::permutation: return Integer(group_.elements().size() / elements_.size());
      case GroupFamily::free:
        if (free_kind_ == FreeKind::whole) return Integer(1);
        if (free_kind_ == FreeKind::trivial) return std::nullopt;
        throw CapabilityError("index of a proper nontrivial free subgroup is not supported");
    }
    return std::nullopt;
  }

 private:
  GroupDescriptor group_;
  std::vector<GroupElement> generators_;
  IntLattice lattice_;
  std::vector<GroupElement> elements_;
  FreeKind free_kind_ = FreeKind::undecided;
};

inline bool subgroup_membership(const Subgroup& h, const GroupElement& g) { return h.contains(g); }

struct CosetEnumeration {
  std::vector<GroupElement> representatives;
  /// True when every coset of G/H is listed.
  bool exhausted = false;
};

/// First `count` left-coset representatives of G/H in word-ball order; each is
/// the first element of its coset met, so the first one is the identity.
inline CosetEnumeration coset_enumeration(const GroupDescriptor& group, const Subgroup& h,
                                          std::size_t count, std::size_t budget = 1'000'000) {
  if (!h.decidable()) {
    // Raises the capability error with the standard message.
    (void)h.contains(group.identity());
  }
  CosetEnumeration out;
  const std::optional<Integer> index = h.index();
  auto known_complete = [&] { return index && Integer(out.representatives.size()) == *index; };

  WordBallWalker walk(group, budget);
  for (;;) {
    for (const auto& g : walk.layer()) {
      if (out.representatives.size() >= count) break;
      const bool fresh = std::none_of(out.representatives.begin(), out.representatives.end(),
                                      [&](const GroupElement& r) { return h.contains(group.mul(group.inv(r), g)); });
      if (fresh) out.representatives.push_back(g);
    }
    if (known_complete()) {
      out.exhausted = true;
      return out;
    }
    if (out.representatives.size() >= count) return out;
    if (!walk.advance()) {
      out.exhausted = true;
      return out;
    }
  }
}

}  // namespace propmet
