#pragma once

// Permutation groups as explicit element sets.
//
// Elements live in one flat arena of image arrays; an open-addressing table of
// arena offsets gives O(1) membership. Breadth-first order is deterministic:
// elements are appended in discovery order, generators are tried in the order
// given.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loopforge/errors.hpp"
#include "loopforge/permutation.hpp"

namespace loopforge {

inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 21;

/// A set of permutations of one degree with constant-time lookup.
class PermutationSet {
 public:
  PermutationSet() = default;
  explicit PermutationSet(std::size_t degree) : degree_(degree) { slots_.assign(64, kEmpty); }

  [[nodiscard]] std::size_t degree() const { return degree_; }
  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] bool empty() const { return count_ == 0; }

  [[nodiscard]] std::span<const Point> images(std::size_t i) const {
    return {arena_.data() + i * degree_, degree_};
  }
  [[nodiscard]] Permutation at(std::size_t i) const {
    auto im = images(i);
    return Permutation::adopt(std::vector<Point>(im.begin(), im.end()));
  }

  [[nodiscard]] bool contains(std::span<const Point> im) const { return find(im) != kEmpty; }
  [[nodiscard]] bool contains(const Permutation& p) const {
    return p.degree() == degree_ && contains(p.images());
  }

  /// Appends unless present; returns true when added.
  bool insert(std::span<const Point> im) {
    if (im.size() != degree_) {
      throw DimensionMismatch("permutation of degree " + std::to_string(im.size()) +
                              " added to set of degree " + std::to_string(degree_));
    }
    if (2 * (count_ + 1) > slots_.size()) grow();
    std::size_t slot = probe(im);
    if (slots_[slot] != kEmpty) return false;
    slots_[slot] = static_cast<std::uint32_t>(count_);
    arena_.insert(arena_.end(), im.begin(), im.end());
    ++count_;
    return true;
  }
  bool insert(const Permutation& p) { return insert(p.images()); }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffU;

  [[nodiscard]] static std::size_t hash(std::span<const Point> im) {
    std::string_view bytes(reinterpret_cast<const char*>(im.data()), im.size() * sizeof(Point));
    return std::hash<std::string_view>{}(bytes);
  }

  [[nodiscard]] std::size_t probe(std::span<const Point> im) const {
    const std::size_t mask = slots_.size() - 1;
    std::size_t slot = hash(im) & mask;
    while (slots_[slot] != kEmpty) {
      auto other = images(slots_[slot]);
      if (std::equal(other.begin(), other.end(), im.begin())) return slot;
      slot = (slot + 1) & mask;
    }
    return slot;
  }

  [[nodiscard]] std::uint32_t find(std::span<const Point> im) const {
    if (im.size() != degree_ || slots_.empty()) return kEmpty;
    return slots_[probe(im)];
  }

  void grow() {
    std::vector<std::uint32_t> old(slots_.size() * 2, kEmpty);
    slots_.swap(old);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t slot = hash(images(i)) & mask;
      while (slots_[slot] != kEmpty) slot = (slot + 1) & mask;
      slots_[slot] = static_cast<std::uint32_t>(i);
    }
  }

  std::size_t degree_ = 0;
  std::size_t count_ = 0;
  std::vector<Point> arena_;
  std::vector<std::uint32_t> slots_;
};

/// The group generated by `generators`, enumerated up to a cap.
struct GroupClosure {
  std::vector<Permutation> generators;
  PermutationSet elements;
  bool truncated = false;

  [[nodiscard]] std::size_t degree() const { return elements.degree(); }
  [[nodiscard]] std::size_t size() const { return elements.size(); }
  [[nodiscard]] bool contains(const Permutation& p) const { return elements.contains(p); }
  [[nodiscard]] Permutation element(std::size_t i) const { return elements.at(i); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < elements.size(); ++i) f(elements.images(i));
  }
};

/// Breadth-first closure of `gens` under composition. Stops with
/// `truncated = true` once `cap` elements have been found and another is due.
[[nodiscard]] inline GroupClosure closure(std::span<const Permutation> gens,
                                          std::size_t cap = kDefaultClosureCap) {
  if (gens.empty()) throw OutOfRange("closure needs at least one generator");
  const std::size_t degree = gens.front().degree();
  GroupClosure g;
  g.elements = PermutationSet(degree);
  PermutationSet distinct(degree);
  for (const auto& p : gens) {
    if (p.degree() != degree) throw DimensionMismatch("generators have different degrees");
    g.generators.push_back(p);
    if (!p.is_identity()) distinct.insert(p);
  }
  std::vector<Permutation> work;
  for (std::size_t i = 0; i < distinct.size(); ++i) work.push_back(distinct.at(i));

  g.elements.insert(Permutation::identity(degree));
  std::vector<Point> next(degree);
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    for (const auto& s : work) {
      auto cur = g.elements.images(i);
      for (std::size_t k = 0; k < degree; ++k) next[k] = s[cur[k]];
      if (g.elements.contains(next)) continue;
      if (g.elements.size() >= cap) {
        g.truncated = true;
        return g;
      }
      g.elements.insert(next);
    }
  }
  return g;
}

[[nodiscard]] inline GroupClosure closure(std::initializer_list<Permutation> gens,
                                          std::size_t cap = kDefaultClosureCap) {
  return closure(std::span<const Permutation>(gens.begin(), gens.size()), cap);
}

namespace detail {

inline void require_complete(const GroupClosure& g, std::string_view what) {
  if (g.truncated) throw CapExceeded(std::string(what) + ": group enumeration was truncated");
}

}  // namespace detail

/// Wraps a subset known to be closed as a group, after checking that it is:
/// generators are picked greedily until their closure covers the subset, and
/// the closure must not leave it.
[[nodiscard]] inline GroupClosure subgroup_from_elements(const PermutationSet& subset) {
  if (subset.empty()) throw OutOfRange("empty subset is not a subgroup");
  const std::size_t degree = subset.degree();
  std::vector<Permutation> gens{Permutation::identity(degree)};
  GroupClosure current = closure(gens, subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (current.elements.contains(subset.images(i))) continue;
    if (gens.size() == 1 && gens.front().is_identity()) gens.clear();
    gens.push_back(subset.at(i));
    current = closure(gens, subset.size());
    if (current.truncated) throw Error("subset is not closed under composition");
  }
  if (current.size() != subset.size()) throw Error("subset is not closed under composition");
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (!subset.contains(current.elements.images(i))) {
      throw Error("subset is not closed under composition");
    }
  }
  return current;
}

/// Elements fixing point 0 (the loop identity).
[[nodiscard]] inline GroupClosure stabilizer_of_identity(const GroupClosure& g) {
  detail::require_complete(g, "stabilizer_of_identity");
  PermutationSet fixed(g.degree());
  g.for_each([&](std::span<const Point> im) {
    if (im[0] == 0) fixed.insert(im);
  });
  return subgroup_from_elements(fixed);
}

/// h is normal in g. Uses generators: conjugating each generator of h by each
/// generator of g must land in h.
[[nodiscard]] inline bool is_normal_in(const GroupClosure& h, const GroupClosure& g) {
  detail::require_complete(h, "is_normal_in");
  detail::require_complete(g, "is_normal_in");
  for (const auto& s : g.generators) {
    for (const auto& t : h.generators) {
      if (!h.contains(conjugate(s, t))) return false;
    }
  }
  return true;
}

[[nodiscard]] inline bool is_subset(const GroupClosure& h, const GroupClosure& g) {
  detail::require_complete(h, "is_subset");
  detail::require_complete(g, "is_subset");
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!g.elements.contains(h.elements.images(i))) return false;
  }
  return true;
}

[[nodiscard]] inline bool same_elements(const GroupClosure& a, const GroupClosure& b) {
  return a.size() == b.size() && is_subset(a, b);
}

[[nodiscard]] inline GroupClosure intersection(const GroupClosure& h, const GroupClosure& k) {
  detail::require_complete(h, "intersection");
  detail::require_complete(k, "intersection");
  const GroupClosure& small = h.size() <= k.size() ? h : k;
  const GroupClosure& large = h.size() <= k.size() ? k : h;
  PermutationSet common(h.degree());
  small.for_each([&](std::span<const Point> im) {
    if (large.elements.contains(im)) common.insert(im);
  });
  return subgroup_from_elements(common);
}

/// p g p^-1, element by element; generators are conjugated too.
[[nodiscard]] inline GroupClosure conjugate_by(const Permutation& p, const GroupClosure& g) {
  detail::require_complete(g, "conjugate_by");
  GroupClosure out;
  out.elements = PermutationSet(g.degree());
  const Permutation pinv = invert(p);
  std::vector<Point> im(g.degree());
  g.for_each([&](std::span<const Point> x) {
    for (std::size_t k = 0; k < im.size(); ++k) im[k] = p[x[pinv[k]]];
    out.elements.insert(im);
  });
  for (const auto& s : g.generators) out.generators.push_back(conjugate(p, s));
  return out;
}

/// Every generator has order at most 2 and every pair commutes, which makes
/// the generated group elementary abelian.
[[nodiscard]] inline bool is_elem_abelian_2(std::span<const Permutation> gens) {
  for (const auto& g : gens) {
    if (!compose(g, g).is_identity()) return false;
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (compose(gens[i], gens[j]) != compose(gens[j], gens[i])) return false;
    }
  }
  return true;
}

}  // namespace loopforge
