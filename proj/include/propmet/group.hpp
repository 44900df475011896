#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "propmet/arith.hpp"
#include "propmet/errors.hpp"
#include "propmet/lattice.hpp"

namespace propmet {

/// Element of a lattice group: an integer vector.
struct ZVector {
  IntVector coords;
  friend auto operator<=>(const ZVector&, const ZVector&) = default;
  friend bool operator==(const ZVector&, const ZVector&) = default;
};

/// Bijection of {0..m-1} as an image array.
struct Permutation {
  std::vector<std::uint32_t> images;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Freely reduced word; letter +(i+1) is generator i, -(i+1) its inverse.
struct FreeWord {
  std::vector<int> letters;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
};

using GroupElement = std::variant<ZVector, Permutation, FreeWord>;

enum class GroupFamily { lattice, permutation, free };

inline std::string to_string(GroupFamily f) {
  switch (f) {
    case GroupFamily::lattice: return "lattice";
    case GroupFamily::permutation: return "permutation";
    case GroupFamily::free: return "free";
  }
  return "?";
}

inline FreeWord free_reduce(std::vector<int> letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return FreeWord{std::move(out)};
}

inline bool is_bijection(const std::vector<std::uint32_t>& images) {
  std::vector<bool> hit(images.size(), false);
  for (auto i : images) {
    if (i >= images.size() || hit[i]) return false;
    hit[i] = true;
  }
  return true;
}

/// A finitely generated group from one of the built-in families, together with
/// an ordered generating set. Immutable after construction.
class GroupDescriptor {
 public:
  /// Lattice subgroup of Z^dim generated by `generators`; must have full rank.
  static GroupDescriptor lattice(std::size_t dim, std::vector<IntVector> generators) {
    GroupDescriptor g;
    g.family_ = GroupFamily::lattice;
    g.rank_ = dim;
    g.lattice_ = IntLattice::span(dim, generators);
    if (!g.lattice_.full_rank()) {
      throw UsageError("lattice group generators must span a full-rank lattice in Z^" +
                       std::to_string(dim));
    }
    for (auto& v : generators) g.generators_.push_back(ZVector{std::move(v)});
    return g;
  }

  /// Z^k with the standard basis.
  static GroupDescriptor integers(std::size_t k) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < k; ++i) {
      IntVector e(k, 0);
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    return lattice(k, std::move(gens));
  }

  /// Permutation group on {0..degree-1}; the element set is closed up front.
  static GroupDescriptor permutations(std::size_t degree, std::vector<Permutation> generators,
                                      std::size_t budget = 1'000'000) {
    GroupDescriptor g;
    g.family_ = GroupFamily::permutation;
    g.rank_ = degree;
    for (auto& p : generators) {
      if (p.images.size() != degree || !is_bijection(p.images)) {
        throw UsageError("permutation generator is not a bijection of {0.." +
                         std::to_string(degree) + "-1}");
      }
      g.generators_.push_back(std::move(p));
    }
    // Closure by BFS over the generators (finite group: positive powers suffice).
    std::set<GroupElement> seen{g.identity()};
    std::vector<GroupElement> frontier{g.identity()};
    while (!frontier.empty()) {
      std::vector<GroupElement> next;
      for (const auto& x : frontier) {
        for (const auto& s : g.generators_) {
          GroupElement y = g.mul(x, s);
          if (seen.insert(y).second) {
            if (seen.size() > budget) throw BudgetError("permutation group closure", budget);
            next.push_back(std::move(y));
          }
        }
      }
      frontier = std::move(next);
    }
    g.elements_ = std::vector<GroupElement>(seen.begin(), seen.end());
    return g;
  }

  /// Free group on `rank` generators a, b, c, ...
  static GroupDescriptor free_group(std::size_t rank) {
    if (rank == 0 || rank > 26) throw UsageError("free group rank must be in 1..26");
    GroupDescriptor g;
    g.family_ = GroupFamily::free;
    g.rank_ = rank;
    for (std::size_t i = 0; i < rank; ++i) g.generators_.push_back(FreeWord{{static_cast<int>(i) + 1}});
    return g;
  }

  GroupFamily family() const noexcept { return family_; }
  /// Ambient dimension (lattice), degree (permutation) or rank (free).
  std::size_t rank() const noexcept { return rank_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  const IntLattice& lattice_basis() const noexcept { return lattice_; }

  bool is_finite() const noexcept { return family_ == GroupFamily::permutation; }
  /// All elements in canonical order (permutation family only).
  const std::vector<GroupElement>& elements() const {
    if (!is_finite()) throw CapabilityError("element list requested for an infinite group");
    return elements_;
  }
  std::optional<Integer> order() const {
    if (!is_finite()) return std::nullopt;
    return Integer(elements_.size());
  }

  GroupElement identity() const {
    switch (family_) {
      case GroupFamily::lattice: return ZVector{IntVector(rank_, 0)};
      case GroupFamily::permutation: {
        Permutation p;
        p.images.resize(rank_);
        for (std::size_t i = 0; i < rank_; ++i) p.images[i] = static_cast<std::uint32_t>(i);
        return p;
      }
      case GroupFamily::free: return FreeWord{};
    }
    return FreeWord{};
  }

  /// True iff g has this group's family and shape (not membership in the subgroup it generates).
  bool same_family(const GroupElement& g) const {
    switch (family_) {
      case GroupFamily::lattice: {
        auto* v = std::get_if<ZVector>(&g);
        return v && v->coords.size() == rank_;
      }
      case GroupFamily::permutation: {
        auto* p = std::get_if<Permutation>(&g);
        return p && p->images.size() == rank_;
      }
      case GroupFamily::free: {
        auto* w = std::get_if<FreeWord>(&g);
        if (!w) return false;
        return std::all_of(w->letters.begin(), w->letters.end(), [&](int l) {
          return l != 0 && static_cast<std::size_t>(l < 0 ? -l : l) <= rank_;
        });
      }
    }
    return false;
  }

  /// Membership in the group itself (relevant for lattice groups like 2Z inside Z).
  bool contains(const GroupElement& g) const {
    if (!same_family(g)) return false;
    switch (family_) {
      case GroupFamily::lattice: return lattice_.contains(std::get<ZVector>(g).coords);
      case GroupFamily::permutation:
        return std::binary_search(elements_.begin(), elements_.end(), g);
      case GroupFamily::free: return true;
    }
    return false;
  }

  GroupElement mul(const GroupElement& g, const GroupElement& h) const {
    require(g);
    require(h);
    switch (family_) {
      case GroupFamily::lattice: {
        const auto& a = std::get<ZVector>(g).coords;
        const auto& b = std::get<ZVector>(h).coords;
        IntVector c(rank_);
        for (std::size_t i = 0; i < rank_; ++i) c[i] = a[i] + b[i];
        return ZVector{std::move(c)};
      }
      case GroupFamily::permutation: {
        // (g h)(i) = g(h(i)), so apply(gh, x) = apply(g, apply(h, x)).
        const auto& a = std::get<Permutation>(g).images;
        const auto& b = std::get<Permutation>(h).images;
        Permutation c;
        c.images.resize(rank_);
        for (std::size_t i = 0; i < rank_; ++i) c.images[i] = a[b[i]];
        return c;
      }
      case GroupFamily::free: {
        std::vector<int> l = std::get<FreeWord>(g).letters;
        const auto& r = std::get<FreeWord>(h).letters;
        l.insert(l.end(), r.begin(), r.end());
        return free_reduce(std::move(l));
      }
    }
    return g;
  }

  GroupElement inv(const GroupElement& g) const {
    require(g);
    switch (family_) {
      case GroupFamily::lattice: {
        IntVector c = std::get<ZVector>(g).coords;
        for (auto& e : c) e = -e;
        return ZVector{std::move(c)};
      }
      case GroupFamily::permutation: {
        const auto& a = std::get<Permutation>(g).images;
        Permutation c;
        c.images.resize(rank_);
        for (std::size_t i = 0; i < rank_; ++i) c.images[a[i]] = static_cast<std::uint32_t>(i);
        return c;
      }
      case GroupFamily::free: {
        std::vector<int> l(std::get<FreeWord>(g).letters.rbegin(), std::get<FreeWord>(g).letters.rend());
        for (auto& x : l) x = -x;
        return FreeWord{std::move(l)};
      }
    }
    return g;
  }

  /// Generators interleaved with their inverses: s0, s0^-1, s1, s1^-1, ...
  /// An inverse equal to its generator (an involution) is listed once.
  std::vector<GroupElement> symmetric_generators() const {
    std::vector<GroupElement> out;
    for (const auto& s : generators_) {
      out.push_back(s);
      GroupElement t = inv(s);
      if (t != s) out.push_back(std::move(t));
    }
    return out;
  }

  std::string format(const GroupElement& g) const {
    require(g);
    switch (family_) {
      case GroupFamily::lattice: {
        const auto& c = std::get<ZVector>(g).coords;
        if (c.size() == 1) return c[0].str();
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i].str();
        return s + ")";
      }
      case GroupFamily::permutation: {
        const auto& p = std::get<Permutation>(g).images;
        std::string s = "[";
        for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
        return s + "]";
      }
      case GroupFamily::free: return format_word(std::get<FreeWord>(g));
    }
    return "?";
  }

  /// Free words: letters a..z for generators, A..Z for inverses, "e" for identity.
  static std::string format_word(const FreeWord& w) {
    if (w.letters.empty()) return "e";
    std::string s;
    for (int l : w.letters) {
      s += l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' + (-l) - 1);
    }
    return s;
  }

  static FreeWord parse_word(std::string_view text) {
    if (text == "e") return FreeWord{};
    std::vector<int> letters;
    for (char c : text) {
      if (c >= 'a' && c <= 'z') {
        letters.push_back(c - 'a' + 1);
      } else if (c >= 'A' && c <= 'Z') {
        letters.push_back(-(c - 'A' + 1));
      } else {
        throw UsageError("bad free-group letter '" + std::string(1, c) + "'");
      }
    }
    return free_reduce(std::move(letters));
  }

 private:
  void require(const GroupElement& g) const {
    if (!same_family(g)) throw UsageError("group element does not belong to the " + to_string(family_) + " family");
  }

  GroupFamily family_ = GroupFamily::lattice;
  std::size_t rank_ = 0;
  std::vector<GroupElement> generators_;
  IntLattice lattice_;
  std::vector<GroupElement> elements_;
};

/// Breadth-first walk of the Cayley graph, one word-length layer at a time.
/// Elements appear in shortlex order of their first minimal word
/// (positive generator before its inverse).
class WordBallWalker {
 public:
  explicit WordBallWalker(const GroupDescriptor& group,
                          std::size_t budget = std::numeric_limits<std::size_t>::max())
      : group_(&group), letters_(group.symmetric_generators()), budget_(budget) {
    layer_.push_back(group.identity());
    seen_.insert(layer_.front());
  }

  /// Elements of word length exactly `radius()`.
  const std::vector<GroupElement>& layer() const noexcept { return layer_; }
  std::size_t radius() const noexcept { return radius_; }
  std::size_t visited() const noexcept { return seen_.size(); }
  bool exhausted() const noexcept { return layer_.empty(); }

  /// Advances to the next layer; returns false once no new elements appear.
  bool advance() {
    std::vector<GroupElement> next;
    for (const auto& w : layer_) {
      for (const auto& s : letters_) {
        GroupElement y = group_->mul(w, s);
        if (seen_.insert(y).second) {
          if (seen_.size() > budget_) throw BudgetError("word ball enumeration", budget_);
          next.push_back(std::move(y));
        }
      }
    }
    layer_ = std::move(next);
    ++radius_;
    return !layer_.empty();
  }

 private:
  const GroupDescriptor* group_;
  std::vector<GroupElement> letters_;
  std::vector<GroupElement> layer_;
  std::set<GroupElement> seen_;
  std::size_t radius_ = 0;
  std::size_t budget_;
};

/// Elements of word length <= radius in shortlex order, deduplicated.
inline std::vector<GroupElement> word_ball(const GroupDescriptor& group, std::size_t radius,
                                           std::size_t budget = 1'000'000) {
  WordBallWalker walk(group, budget);
  std::vector<GroupElement> out = walk.layer();
  for (std::size_t l = 0; l < radius; ++l) {
    if (!walk.advance()) break;
    out.insert(out.end(), walk.layer().begin(), walk.layer().end());
  }
  return out;
}

}  // namespace propmet
