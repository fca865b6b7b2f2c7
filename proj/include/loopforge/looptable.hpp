#pragma once

// Finite loops given by explicit Cayley tables.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loopforge/cdcore.hpp"
#include "loopforge/errors.hpp"

namespace loopforge {

inline constexpr unsigned kMaxTableDimension = 12;

/// Largest loop the isomorphism and automorphism searches accept.
inline constexpr std::size_t kSearchSizeCap = 32;

class CayleyTable {
 public:
  CayleyTable() = default;

  /// Row-major entries; `entries[a * size + b]` is the index of a*b.
  CayleyTable(std::size_t size, std::vector<std::uint32_t> entries, std::size_t identity = 0)
      : size_(size), identity_(identity), entries_(std::move(entries)) {
    if (entries_.size() != size * size) throw OutOfRange("table needs size*size entries");
    if (size == 0 || identity >= size) throw OutOfRange("identity outside table");
    for (auto v : entries_) {
      if (v >= size) throw OutOfRange("table entry outside [0, size)");
    }
  }

  static CayleyTable from_rows(const std::vector<std::vector<std::size_t>>& rows,
                               std::size_t identity = 0) {
    std::vector<std::uint32_t> entries;
    entries.reserve(rows.size() * rows.size());
    for (const auto& row : rows) {
      if (row.size() != rows.size()) throw OutOfRange("table must be square");
      for (auto v : row) entries.push_back(static_cast<std::uint32_t>(v));
    }
    return {rows.size(), std::move(entries), identity};
  }

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::size_t identity() const { return identity_; }
  [[nodiscard]] std::size_t operator()(std::size_t a, std::size_t b) const {
    return entries_[a * size_ + b];
  }
  [[nodiscard]] std::span<const std::uint32_t> row(std::size_t a) const {
    return {entries_.data() + a * size_, size_};
  }

  /// Set for tables built by cd_table(); element labels follow format().
  [[nodiscard]] std::optional<unsigned> cd_dimension() const { return cd_dimension_; }
  void set_cd_dimension(unsigned n) { cd_dimension_ = n; }

  [[nodiscard]] std::string label(std::size_t k) const {
    if (cd_dimension_) return format(from_index(*cd_dimension_, k));
    return std::to_string(k);
  }

 private:
  std::size_t size_ = 0;
  std::size_t identity_ = 0;
  std::vector<std::uint32_t> entries_;
  std::optional<unsigned> cd_dimension_;
};

/// Multiplication table of Q_n over element indices.
[[nodiscard]] inline CayleyTable cd_table(unsigned n) {
  if (n > kMaxTableDimension) {
    throw OutOfRange("cd_table supports n <= " + std::to_string(kMaxTableDimension) + ", got " +
                     std::to_string(n));
  }
  const SignTable signs(n);
  const std::size_t half = std::size_t{1} << n;
  const std::size_t m = 2 * half;
  std::vector<std::uint32_t> entries(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto u = static_cast<ExpVector>(a % half);
      const auto v = static_cast<ExpVector>(b % half);
      const bool neg = (a >= half) ^ (b >= half) ^ signs.negative(u, v);
      entries[a * m + b] = static_cast<std::uint32_t>((neg ? half : 0) + (u ^ v));
    }
  }
  CayleyTable t(m, std::move(entries), 0);
  t.set_cd_dimension(n);
  return t;
}

struct LoopVerdict {
  bool valid = true;
  std::string reason;
  std::optional<std::size_t> row;
  std::optional<std::size_t> column;
};

/// Latin-square and two-sided identity check; reports the first violation.
[[nodiscard]] inline LoopVerdict validate_loop(const CayleyTable& t) {
  const std::size_t m = t.size();
  const std::size_t e = t.identity();
  for (std::size_t x = 0; x < m; ++x) {
    if (t(e, x) != x || t(x, e) != x) {
      return {false, "identity fails on element " + std::to_string(x), x, std::nullopt};
    }
  }
  std::vector<bool> seen(m);
  for (std::size_t a = 0; a < m; ++a) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t b = 0; b < m; ++b) {
      if (seen[t(a, b)]) return {false, "row " + std::to_string(a) + " repeats an entry", a, b};
      seen[t(a, b)] = true;
    }
  }
  for (std::size_t b = 0; b < m; ++b) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t a = 0; a < m; ++a) {
      if (seen[t(a, b)]) {
        return {false, "column " + std::to_string(b) + " repeats an entry", a, b};
      }
      seen[t(a, b)] = true;
    }
  }
  return {};
}

/// Sorted element indices of a subloop of some ambient table.
struct Subloop {
  std::vector<std::size_t> elements;

  [[nodiscard]] std::size_t size() const { return elements.size(); }
  [[nodiscard]] bool contains(std::size_t x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }
  friend bool operator==(const Subloop&, const Subloop&) = default;
  friend auto operator<=>(const Subloop& a, const Subloop& b) { return a.elements <=> b.elements; }
};

/// Least subset containing `gens` and the identity that is closed under the
/// product. In a finite loop such a subset is automatically a subloop.
[[nodiscard]] inline Subloop generate_subloop(const CayleyTable& t,
                                              std::span<const std::size_t> gens) {
  std::vector<bool> in(t.size(), false);
  std::vector<std::size_t> members;
  auto add = [&](std::size_t x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  add(t.identity());
  for (auto g : gens) {
    if (g >= t.size()) throw OutOfRange("generator outside table");
    add(g);
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::size_t a = members[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const std::size_t b = members[j];
      add(t(a, b));
      add(t(b, a));
    }
  }
  std::sort(members.begin(), members.end());
  return {members};
}

[[nodiscard]] inline Subloop generate_subloop(const CayleyTable& t,
                                              std::initializer_list<std::size_t> gens) {
  return generate_subloop(t, std::span<const std::size_t>(gens.begin(), gens.size()));
}

enum class PairClass { R2, C4, H8 };

[[nodiscard]] inline const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::R2: return "R2";
    case PairClass::C4: return "C4";
    case PairClass::H8: return "H8";
  }
  return "?";
}

/// Isomorphism type of the group generated by two elements of Q_n.
[[nodiscard]] inline PairClass classify_pair(const LoopElement& x, const LoopElement& y) {
  detail::require_same_dimension(x, y);
  if (x.is_real() && y.is_real()) return PairClass::R2;
  if (x.is_real() || y.is_real() || x.exps() == y.exps()) return PairClass::C4;
  return PairClass::H8;
}

/// The subloop as a table of its own, indexed by position in `s.elements`.
[[nodiscard]] inline CayleyTable subloop_table(const CayleyTable& t, const Subloop& s) {
  const std::size_t k = s.size();
  std::vector<std::size_t> pos(t.size(), k);
  for (std::size_t i = 0; i < k; ++i) pos[s.elements[i]] = i;
  std::vector<std::uint32_t> entries(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t p = pos[t(s.elements[i], s.elements[j])];
      if (p == k) throw Error("subset is not closed under the product");
      entries[i * k + j] = static_cast<std::uint32_t>(p);
    }
  }
  if (pos[t.identity()] == k) throw Error("subloop does not contain the identity");
  return {k, std::move(entries), pos[t.identity()]};
}

/// images[x] is the image of source element x.
struct LoopMap {
  std::vector<std::size_t> images;

  friend bool operator==(const LoopMap&, const LoopMap&) = default;
};

[[nodiscard]] inline bool is_homomorphism(const CayleyTable& a, const CayleyTable& b,
                                          const LoopMap& f) {
  if (f.images.size() != a.size()) return false;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      if (f.images[a(x, y)] != b(f.images[x], f.images[y])) return false;
    }
  }
  return true;
}

[[nodiscard]] inline bool is_automorphism(const CayleyTable& t, const LoopMap& f) {
  if (f.images.size() != t.size()) return false;
  std::vector<bool> hit(t.size(), false);
  for (auto v : f.images) {
    if (v >= t.size() || hit[v]) return false;
    hit[v] = true;
  }
  return is_homomorphism(t, t, f);
}

namespace detail {

/// Order under left-nested powers x, x*x, (x*x)*x, ...; 0 if none is the identity.
inline std::size_t power_order(const CayleyTable& t, std::size_t x) {
  std::size_t p = x;
  for (std::size_t k = 1; k <= t.size(); ++k) {
    if (p == t.identity()) return k;
    p = t(p, x);
  }
  return 0;
}

/// Greedy generating sequence: the smallest index outside the current subloop.
inline std::vector<std::size_t> generating_sequence(const CayleyTable& t) {
  std::vector<std::size_t> gens;
  Subloop current = generate_subloop(t, std::span<const std::size_t>{});
  for (std::size_t x = 0; x < t.size() && current.size() < t.size(); ++x) {
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = generate_subloop(t, gens);
  }
  return gens;
}

/// Backtracking search for isomorphisms a -> b. Images of the generating
/// sequence of `a` are chosen one at a time; after each choice the partial map
/// is pushed through every product of already-mapped elements, and the branch
/// dies on the first inconsistency or collision.
class IsoSearch {
 public:
  IsoSearch(const CayleyTable& a, const CayleyTable& b) : a_(a), b_(b) {}

  /// Calls `visit` on each isomorphism in deterministic order; stops early
  /// when `visit` returns false.
  template <class Visit>
  void run(Visit&& visit) {
    if (a_.size() != b_.size()) return;
    if (a_.size() > kSearchSizeCap) {
      throw CapExceeded("isomorphism search is limited to loops of order " +
                        std::to_string(kSearchSizeCap));
    }
    const std::size_t m = a_.size();
    gens_ = generating_sequence(a_);
    order_a_.resize(m);
    order_b_.resize(m);
    for (std::size_t x = 0; x < m; ++x) {
      order_a_[x] = power_order(a_, x);
      order_b_[x] = power_order(b_, x);
    }
    map_.assign(m, kUnset);
    used_.assign(m, false);
    known_.clear();
    if (!assign(a_.identity(), b_.identity())) return;
    stop_ = false;
    descend(0, visit);
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  template <class Visit>
  void descend(std::size_t level, Visit& visit) {
    if (stop_) return;
    if (level == gens_.size()) {
      if (known_.size() == a_.size()) {
        if (!visit(LoopMap{map_})) stop_ = true;
      }
      return;
    }
    const std::size_t g = gens_[level];
    for (std::size_t c = 0; c < b_.size() && !stop_; ++c) {
      if (used_[c] || order_b_[c] != order_a_[g]) continue;
      bool compatible = true;
      for (std::size_t prev = 0; prev < level && compatible; ++prev) {
        const std::size_t h = gens_[prev];
        const bool comm_a = a_(g, h) == a_(h, g);
        const bool comm_b = b_(c, map_[h]) == b_(map_[h], c);
        compatible = comm_a == comm_b;
      }
      if (!compatible) continue;
      const std::size_t mark = known_.size();
      if (assign(g, c)) descend(level + 1, visit);
      undo(mark);
    }
  }

  // Maps x -> y and closes the partial map under products. Returns false on
  // an inconsistency; the caller undoes to its mark either way.
  bool assign(std::size_t x, std::size_t y) {
    if (map_[x] != kUnset) return map_[x] == y;
    if (used_[y]) return false;
    const std::size_t start = known_.size();
    set(x, y);
    for (std::size_t i = start; i < known_.size(); ++i) {
      const std::size_t p = known_[i];
      for (std::size_t j = 0; j <= i; ++j) {
        const std::size_t q = known_[j];
        if (!extend(a_(p, q), b_(map_[p], map_[q]))) return false;
        if (!extend(a_(q, p), b_(map_[q], map_[p]))) return false;
      }
    }
    return true;
  }

  bool extend(std::size_t x, std::size_t y) {
    if (map_[x] != kUnset) return map_[x] == y;
    if (used_[y]) return false;
    set(x, y);
    return true;
  }

  void set(std::size_t x, std::size_t y) {
    map_[x] = y;
    used_[y] = true;
    known_.push_back(x);
  }

  void undo(std::size_t mark) {
    while (known_.size() > mark) {
      const std::size_t x = known_.back();
      known_.pop_back();
      used_[map_[x]] = false;
      map_[x] = kUnset;
    }
  }

  const CayleyTable& a_;
  const CayleyTable& b_;
  std::vector<std::size_t> gens_;
  std::vector<std::size_t> order_a_;
  std::vector<std::size_t> order_b_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
  std::vector<std::size_t> known_;
  bool stop_ = false;
};

}  // namespace detail

/// A witness isomorphism a -> b, or nullopt when the loops are not isomorphic.
[[nodiscard]] inline std::optional<LoopMap> isomorphic(const CayleyTable& a, const CayleyTable& b) {
  std::optional<LoopMap> found;
  detail::IsoSearch search(a, b);
  search.run([&](LoopMap f) {
    found = std::move(f);
    return false;
  });
  return found;
}

/// Every automorphism of t, in search order.
[[nodiscard]] inline std::vector<LoopMap> automorphism_group(const CayleyTable& t) {
  if (t.cd_dimension() && *t.cd_dimension() > 4) {
    throw CapExceeded("automorphism search is limited to n <= 4");
  }
  std::vector<LoopMap> all;
  detail::IsoSearch search(t, t);
  search.run([&](LoopMap f) {
    all.push_back(std::move(f));
    return true;
  });
  return all;
}

/// The 16-element subloop +-<a, b, c> of Q_n as a table of its own, for
/// independent exponent vectors a, b, c. Element t + 8s is (-1)^s times the
/// positive element whose exponent vector combines the basis by the bits of t.
[[nodiscard]] inline CayleyTable span_table(const SignTable& signs, ExpVector a, ExpVector b,
                                            ExpVector c) {
  const ExpVector basis[3] = {a, b, c};
  ExpVector exps[8];
  for (unsigned t = 0; t < 8; ++t) {
    exps[t] = 0;
    for (unsigned j = 0; j < 3; ++j) {
      if ((t >> j) & 1U) exps[t] ^= basis[j];
    }
  }
  for (unsigned t = 1; t < 8; ++t) {
    if (exps[t] == 0) throw OutOfRange("span_table needs independent exponent vectors");
  }
  std::vector<std::uint32_t> entries(256);
  for (unsigned p = 0; p < 16; ++p) {
    for (unsigned r = 0; r < 16; ++r) {
      const unsigned tp = p & 7U;
      const unsigned tr = r & 7U;
      const bool neg = ((p >> 3) ^ (r >> 3)) ^ (signs.negative(exps[tp], exps[tr]) ? 1U : 0U);
      entries[p * 16 + r] = (neg ? 8U : 0U) + (tp ^ tr);
    }
  }
  return {16, std::move(entries), 0};
}

enum class Subloop16Class { O16, QuasiO16 };

[[nodiscard]] inline const char* to_string(Subloop16Class c) {
  return c == Subloop16Class::O16 ? "O16" : "QuasiO16";
}

/// O16 when the subloop is isomorphic to the octonion loop Q_3.
[[nodiscard]] inline Subloop16Class classify_subloop16(const CayleyTable& t, const Subloop& s) {
  if (s.size() != 16) {
    throw OutOfRange("classify_subloop16 needs a subloop of order 16, got " +
                     std::to_string(s.size()));
  }
  static const CayleyTable octonions = cd_table(3);
  return isomorphic(subloop_table(t, s), octonions) ? Subloop16Class::O16
                                                    : Subloop16Class::QuasiO16;
}

namespace detail {

using Marks = std::vector<bool>;

inline Marks left_coset(const CayleyTable& t, std::size_t x, const Subloop& s) {
  Marks out(t.size(), false);
  for (auto a : s.elements) out[t(x, a)] = true;
  return out;
}

inline Marks right_coset(const CayleyTable& t, const Subloop& s, std::size_t x) {
  Marks out(t.size(), false);
  for (auto a : s.elements) out[t(a, x)] = true;
  return out;
}

}  // namespace detail

/// xS = Sx, (xS)y = x(Sy) and x(yS) = (xy)S for all x, y.
[[nodiscard]] inline bool is_normal(const CayleyTable& t, const Subloop& s) {
  const std::size_t m = t.size();
  detail::Marks lhs(m);
  detail::Marks rhs(m);
  for (std::size_t x = 0; x < m; ++x) {
    if (detail::left_coset(t, x, s) != detail::right_coset(t, s, x)) return false;
    for (std::size_t y = 0; y < m; ++y) {
      std::fill(lhs.begin(), lhs.end(), false);
      std::fill(rhs.begin(), rhs.end(), false);
      for (auto a : s.elements) {
        lhs[t(t(x, a), y)] = true;
        rhs[t(x, t(a, y))] = true;
      }
      if (lhs != rhs) return false;
      std::fill(lhs.begin(), lhs.end(), false);
      std::fill(rhs.begin(), rhs.end(), false);
      for (auto a : s.elements) {
        lhs[t(x, t(y, a))] = true;
        rhs[t(t(x, y), a)] = true;
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

/// Every subloop, found by extending known subloops one element at a time
/// starting from {1}. Sorted.
[[nodiscard]] inline std::vector<Subloop> all_subloops(const CayleyTable& t) {
  std::vector<Subloop> found{generate_subloop(t, std::span<const std::size_t>{})};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t x = 0; x < t.size(); ++x) {
      if (found[i].contains(x)) continue;
      std::vector<std::size_t> gens = found[i].elements;
      gens.push_back(x);
      Subloop s = generate_subloop(t, gens);
      if (std::find(found.begin(), found.end(), s) == found.end()) found.push_back(std::move(s));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

[[nodiscard]] inline bool is_hamiltonian(const CayleyTable& t) {
  for (const auto& s : all_subloops(t)) {
    if (!is_normal(t, s)) return false;
  }
  return true;
}

/// Elements that commute and associate with everything, in all positions.
[[nodiscard]] inline Subloop center(const CayleyTable& t) {
  const std::size_t m = t.size();
  Subloop z;
  for (std::size_t a = 0; a < m; ++a) {
    bool central = true;
    for (std::size_t x = 0; x < m && central; ++x) {
      if (t(a, x) != t(x, a)) central = false;
      for (std::size_t y = 0; y < m && central; ++y) {
        central = t(a, t(x, y)) == t(t(a, x), y) && t(t(x, a), y) == t(x, t(a, y)) &&
                  t(t(x, y), a) == t(x, t(y, a));
      }
    }
    if (central) z.elements.push_back(a);
  }
  return z;
}

/// Table of Q/{1,-1} on the 2^n sign classes, class c = {c, c + 2^n}. Throws
/// when the input is not laid out like cd_table() output.
[[nodiscard]] inline CayleyTable quotient_by_signs(const CayleyTable& t) {
  const std::size_t m = t.size();
  if (m < 2 || (m & (m - 1)) != 0 || t.identity() != 0) {
    throw Error("quotient_by_signs needs a Cayley-Dickson table");
  }
  const std::size_t half = m / 2;
  for (std::size_t x = 0; x < m; ++x) {
    if (t(half, x) != t(x, half) || t(half, x) % half != x % half || t(half, x) == x) {
      throw Error("quotient_by_signs: element " + std::to_string(half) + " is not -1");
    }
  }
  std::vector<std::uint32_t> entries(half * half);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto c = static_cast<std::uint32_t>(t(a, b) % half);
      auto& slot = entries[(a % half) * half + (b % half)];
      if (a < half && b < half) {
        slot = c;
      } else if (slot != c) {
        throw Error("quotient_by_signs: product of sign classes is not well defined");
      }
    }
  }
  return {half, std::move(entries), 0};
}

[[nodiscard]] inline bool is_associative(const CayleyTable& t) {
  const std::size_t m = t.size();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      for (std::size_t z = 0; z < m; ++z) {
        if (t(t(x, y), z) != t(x, t(y, z))) return false;
      }
    }
  }
  return true;
}

[[nodiscard]] inline bool is_commutative(const CayleyTable& t) {
  for (std::size_t x = 0; x < t.size(); ++x) {
    for (std::size_t y = 0; y < x; ++y) {
      if (t(x, y) != t(y, x)) return false;
    }
  }
  return true;
}

/// Associative, commutative and x*x = 1 for every x.
[[nodiscard]] inline bool is_elementary_abelian_2_group(const CayleyTable& t) {
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (t(x, x) != t.identity()) return false;
  }
  return is_commutative(t) && is_associative(t);
}

struct IdentityPredicates {
  bool moufang = false;
  bool diassociative = false;
  bool inverse_property = false;
  bool power_assoc = false;
};

namespace detail {

inline bool associative_on(const CayleyTable& t, const Subloop& s) {
  for (auto x : s.elements) {
    for (auto y : s.elements) {
      for (auto z : s.elements) {
        if (t(t(x, y), z) != t(x, t(y, z))) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

[[nodiscard]] inline IdentityPredicates identity_predicates(const CayleyTable& t) {
  const std::size_t m = t.size();
  const std::size_t e = t.identity();
  IdentityPredicates r;

  r.moufang = true;
  for (std::size_t x = 0; x < m && r.moufang; ++x) {
    for (std::size_t y = 0; y < m && r.moufang; ++y) {
      for (std::size_t z = 0; z < m && r.moufang; ++z) {
        r.moufang = t(x, t(y, t(x, z))) == t(t(t(x, y), x), z);
      }
    }
  }

  std::vector<Subloop> seen;
  r.diassociative = true;
  for (std::size_t x = 0; x < m && r.diassociative; ++x) {
    for (std::size_t y = x; y < m && r.diassociative; ++y) {
      Subloop s = generate_subloop(t, {x, y});
      if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
      r.diassociative = detail::associative_on(t, s);
      seen.push_back(std::move(s));
    }
  }

  r.power_assoc = true;
  for (std::size_t x = 0; x < m && r.power_assoc; ++x) {
    r.power_assoc = detail::associative_on(t, generate_subloop(t, {x}));
  }

  // x^l x = 1 and x x^r = 1 define the candidate inverse maps.
  r.inverse_property = true;
  for (std::size_t x = 0; x < m && r.inverse_property; ++x) {
    std::size_t left = m;
    std::size_t right = m;
    for (std::size_t k = 0; k < m; ++k) {
      if (t(k, x) == e) left = k;
      if (t(x, k) == e) right = k;
    }
    if (left == m || right == m) {
      r.inverse_property = false;
      break;
    }
    for (std::size_t y = 0; y < m && r.inverse_property; ++y) {
      r.inverse_property = t(left, t(x, y)) == y && t(t(y, x), right) == y;
    }
  }
  return r;
}

}  // namespace loopforge
