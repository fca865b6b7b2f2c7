#pragma once

// Translations, inner mappings and the multiplication groups of Q_n.
//
// Two ways to obtain a group:
//   exhaustive  breadth-first closure of the permutation generators;
//   rank        the inner part is a space of flips, so it is a GF(2) span.
//               The multiplication group is then the set L_Q * V, which is
//               certified by checking that every generator maps each coset
//               L_z V into another coset. That makes |Mlt| = |Q| * 2^rank
//               exact without enumeration.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/cdcore.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/gf2.hpp"
#include "loopforge/permgroup.hpp"
#include "loopforge/permutation.hpp"

namespace loopforge {

/// Largest n with permutations on Q_n handled here (degree 2^13).
inline constexpr unsigned kMaxGroupDimension = 12;

enum class Mode { exhaustive, rank };
enum class Side { left, right };

[[nodiscard]] inline const char* to_string(Mode m) {
  return m == Mode::exhaustive ? "exhaustive" : "rank";
}
[[nodiscard]] inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// Q_n with index-level arithmetic over a memoized sign table.
class CDLoop {
 public:
  explicit CDLoop(unsigned n) : n_(check(n)), signs_(n) {}

  [[nodiscard]] unsigned n() const { return n_; }
  [[nodiscard]] std::size_t order() const { return std::size_t{2} << n_; }
  /// Number of sign classes {x, -x}.
  [[nodiscard]] std::size_t classes() const { return std::size_t{1} << n_; }
  [[nodiscard]] const SignTable& signs() const { return signs_; }

  [[nodiscard]] std::size_t mul(std::size_t a, std::size_t b) const {
    const std::size_t h = classes();
    const auto u = static_cast<ExpVector>(a & (h - 1));
    const auto v = static_cast<ExpVector>(b & (h - 1));
    const bool neg = (((a ^ b) & h) != 0) ^ signs_.negative(u, v);
    return (neg ? h : 0) | (u ^ v);
  }
  [[nodiscard]] std::size_t negate(std::size_t a) const { return a ^ classes(); }
  [[nodiscard]] std::size_t inverse(std::size_t a) const {
    return (a & (classes() - 1)) == 0 ? a : negate(a);
  }
  [[nodiscard]] std::size_t generator(unsigned j) const {
    return index_of(LoopElement::generator(n_, j));
  }
  [[nodiscard]] LoopElement element(std::size_t k) const { return from_index(n_, k); }

  [[nodiscard]] Permutation left(std::size_t x) const {
    std::vector<Point> im(order());
    for (std::size_t k = 0; k < im.size(); ++k) im[k] = static_cast<Point>(mul(x, k));
    return Permutation::adopt(std::move(im));
  }
  [[nodiscard]] Permutation right(std::size_t x) const {
    std::vector<Point> im(order());
    for (std::size_t k = 0; k < im.size(); ++k) im[k] = static_cast<Point>(mul(k, x));
    return Permutation::adopt(std::move(im));
  }
  [[nodiscard]] Permutation translation(Side side, std::size_t x) const {
    return side == Side::left ? left(x) : right(x);
  }

  /// T_x = L_x^-1 R_x
  [[nodiscard]] Permutation T(std::size_t x) const { return compose(invert(left(x)), right(x)); }
  /// L_{x,y} = L_{yx}^-1 L_y L_x
  [[nodiscard]] Permutation Lxy(std::size_t x, std::size_t y) const {
    return compose(invert(left(mul(y, x))), compose(left(y), left(x)));
  }
  /// R_{x,y} = R_{xy}^-1 R_y R_x
  [[nodiscard]] Permutation Rxy(std::size_t x, std::size_t y) const {
    return compose(invert(right(mul(x, y))), compose(right(y), right(x)));
  }

  /// J: x -> x^-1
  [[nodiscard]] Permutation mirror() const {
    std::vector<Point> im(order());
    for (std::size_t k = 0; k < im.size(); ++k) im[k] = static_cast<Point>(inverse(k));
    return Permutation::adopt(std::move(im));
  }

 private:
  static unsigned check(unsigned n) {
    if (n > kMaxGroupDimension) {
      throw OutOfRange("group computations support n <= " + std::to_string(kMaxGroupDimension) +
                       ", got " + std::to_string(n));
    }
    return n;
  }

  unsigned n_;
  SignTable signs_;
};

// Element-level entry points. They build one permutation at a time and need
// no precomputed table.

namespace detail {

inline Permutation translation_of(const LoopElement& x, bool left) {
  const unsigned n = x.dimension();
  if (n > kMaxGroupDimension) throw OutOfRange("translation of Q_" + std::to_string(n));
  std::vector<Point> im(loop_order(n));
  for (std::size_t k = 0; k < im.size(); ++k) {
    const LoopElement y = from_index(n, k);
    im[k] = static_cast<Point>(index_of(left ? mul(x, y) : mul(y, x)));
  }
  return Permutation::adopt(std::move(im));
}

}  // namespace detail

[[nodiscard]] inline Permutation left_translation(const LoopElement& x) {
  return detail::translation_of(x, true);
}
[[nodiscard]] inline Permutation right_translation(const LoopElement& x) {
  return detail::translation_of(x, false);
}
[[nodiscard]] inline Permutation inner_T(const LoopElement& x) {
  return compose(invert(left_translation(x)), right_translation(x));
}
[[nodiscard]] inline Permutation inner_L(const LoopElement& x, const LoopElement& y) {
  return compose(invert(left_translation(mul(y, x))),
                 compose(left_translation(y), left_translation(x)));
}
[[nodiscard]] inline Permutation inner_R(const LoopElement& x, const LoopElement& y) {
  return compose(invert(right_translation(mul(x, y))),
                 compose(right_translation(y), right_translation(x)));
}

// Closed forms: T_x(z) = [x,z] z, L_{x,y}(z) = [y,x,z] z, R_{x,y}(z) = [z,x,y] z.

[[nodiscard]] inline FlipVector inner_T_formula(const SignTable& s, ExpVector x) {
  FlipVector v(std::size_t{1} << s.dimension());
  for (std::size_t z = 0; z < v.size(); ++z) {
    if (commutator(s, x, static_cast<ExpVector>(z)) < 0) v.set(z);
  }
  return v;
}

[[nodiscard]] inline FlipVector inner_L_formula(const SignTable& s, ExpVector x, ExpVector y) {
  FlipVector v(std::size_t{1} << s.dimension());
  for (std::size_t z = 0; z < v.size(); ++z) {
    if (associator(s, y, x, static_cast<ExpVector>(z)) < 0) v.set(z);
  }
  return v;
}

[[nodiscard]] inline FlipVector inner_R_formula(const SignTable& s, ExpVector x, ExpVector y) {
  FlipVector v(std::size_t{1} << s.dimension());
  for (std::size_t z = 0; z < v.size(); ++z) {
    if (associator(s, static_cast<ExpVector>(z), x, y) < 0) v.set(z);
  }
  return v;
}

[[nodiscard]] inline Permutation mirror_conjugator(unsigned n) { return CDLoop(n).mirror(); }

/// A group order, kept as 2^log2 when it is a power of two so that orders
/// beyond 64 bits stay exact.
class GroupOrder {
 public:
  GroupOrder() = default;

  static GroupOrder pow2(unsigned k) {
    GroupOrder g;
    g.log2_ = k;
    return g;
  }
  static GroupOrder count(std::uint64_t v) {
    GroupOrder g;
    if (v != 0 && std::has_single_bit(v)) {
      g.log2_ = static_cast<unsigned>(std::countr_zero(v));
    } else {
      g.other_ = v;
    }
    return g;
  }

  [[nodiscard]] bool power_of_two() const { return !other_.has_value(); }
  [[nodiscard]] unsigned log2() const { return log2_; }

  /// The integer value when it is below 2^63.
  [[nodiscard]] std::optional<std::uint64_t> value() const {
    if (other_) return other_;
    if (log2_ >= 63) return std::nullopt;
    return std::uint64_t{1} << log2_;
  }

  [[nodiscard]] std::string exponent_form() const {
    return power_of_two() ? "2^" + std::to_string(log2_) : std::to_string(*other_);
  }

  /// "1024 (2^10)", or "2^69" when too large for an integer.
  [[nodiscard]] std::string to_string() const {
    if (!power_of_two()) return std::to_string(*other_);
    if (auto v = value()) return std::to_string(*v) + " (" + exponent_form() + ")";
    return exponent_form();
  }

  friend GroupOrder operator*(const GroupOrder& a, const GroupOrder& b) {
    if (a.power_of_two() && b.power_of_two()) return pow2(a.log2_ + b.log2_);
    const auto x = a.value();
    const auto y = b.value();
    if (!x || !y) throw OutOfRange("group order product overflows");
    return count(*x * *y);
  }
  friend bool operator==(const GroupOrder&, const GroupOrder&) = default;

 private:
  unsigned log2_ = 0;
  std::optional<std::uint64_t> other_;
};

/// A group obtained by either route. Exhaustive handles carry the element
/// set; rank handles carry the flip basis of the inner part.
struct GroupHandle {
  std::string name;
  Mode mode = Mode::exhaustive;
  GroupOrder order;
  std::shared_ptr<const GroupClosure> closure;
  GF2Basis basis;
  bool truncated = false;
};

/// Generators of Inn(Q_n) in flip-vector form, built from the definitions
/// L_x^-1 R_x, L_{yx}^-1 L_y L_x and R_{xy}^-1 R_y R_x and then decomposed.
/// Indexed by sign classes: T[x], Lxy[x * classes + y]. Signs are irrelevant
/// because L_{-1} = R_{-1} is central.
struct InnerGenerators {
  unsigned n = 0;
  std::vector<FlipVector> T;
  std::vector<FlipVector> Lxy;
  std::vector<FlipVector> Rxy;
  /// First generator whose permutation is not a flip, if any.
  std::optional<std::string> not_flip;

  [[nodiscard]] std::size_t classes() const { return std::size_t{1} << n; }
  [[nodiscard]] const FlipVector& L(std::size_t x, std::size_t y) const {
    return Lxy[x * classes() + y];
  }
  [[nodiscard]] const FlipVector& R(std::size_t x, std::size_t y) const {
    return Rxy[x * classes() + y];
  }
};

namespace detail {

inline FlipVector decompose_or_note(const Permutation& p, std::optional<std::string>& note,
                                    const std::string& what) {
  try {
    return flip_decompose(p);
  } catch (const NotFlipMap& e) {
    if (!note) note = what + ": " + e.what();
    return FlipVector(p.degree() / 2);
  }
}

inline std::string label(const CDLoop& q, std::size_t k) { return format(q.element(k)); }

}  // namespace detail

[[nodiscard]] inline InnerGenerators inner_generators(const CDLoop& q) {
  InnerGenerators g;
  g.n = q.n();
  const std::size_t h = q.classes();
  std::vector<Permutation> left(h);
  std::vector<Permutation> right(h);
  std::vector<Permutation> left_inv(h);
  std::vector<Permutation> right_inv(h);
  for (std::size_t x = 0; x < h; ++x) {
    left[x] = q.left(x);
    right[x] = q.right(x);
    left_inv[x] = invert(left[x]);
    right_inv[x] = invert(right[x]);
  }
  // X_{-w}^-1 = X_w^-1 L_{-1}, so inverses of the positive representatives suffice.
  const Permutation minus = q.left(q.negate(0));
  auto left_inverse = [&](std::size_t w) {
    return w < h ? left_inv[w] : compose(left_inv[w - h], minus);
  };
  auto right_inverse = [&](std::size_t w) {
    return w < h ? right_inv[w] : compose(right_inv[w - h], minus);
  };
  g.T.reserve(h);
  for (std::size_t x = 0; x < h; ++x) {
    g.T.push_back(detail::decompose_or_note(compose(left_inv[x], right[x]), g.not_flip,
                                            "T_" + detail::label(q, x)));
  }
  g.Lxy.reserve(h * h);
  g.Rxy.reserve(h * h);
  for (std::size_t x = 0; x < h; ++x) {
    for (std::size_t y = 0; y < h; ++y) {
      const Permutation lyx = compose(left[y], left[x]);
      g.Lxy.push_back(detail::decompose_or_note(
          compose(left_inverse(q.mul(y, x)), lyx), g.not_flip,
          "L_{" + detail::label(q, x) + "," + detail::label(q, y) + "}"));
      const Permutation ryx = compose(right[y], right[x]);
      g.Rxy.push_back(detail::decompose_or_note(
          compose(right_inverse(q.mul(x, y)), ryx), g.not_flip,
          "R_{" + detail::label(q, x) + "," + detail::label(q, y) + "}"));
    }
  }
  return g;
}

/// Outcome of the coset argument for a multiplication group.
struct RankStructure {
  Side transversal_side = Side::left;
  GF2Basis inner;
  /// Each generator of the inner part fixes 1 and is a flip.
  bool inner_flips = true;
  /// gamma * X_z lies in X_{gamma(z)} * span for every generator gamma and z.
  bool cosets_closed = true;
  /// L_{-1} commutes with every generator.
  bool minus_one_central = true;
  std::optional<std::string> witness;
  std::size_t generator_count = 0;
  std::size_t coset_products = 0;

  [[nodiscard]] bool valid() const { return inner_flips && cosets_closed && minus_one_central; }
  [[nodiscard]] GroupOrder inner_order() const { return GroupOrder::pow2(inner.rank()); }
};

namespace detail {

/// Multiplication-group generators, one per sign class and side.
inline std::vector<Permutation> class_generators(const CDLoop& q, bool left, bool right) {
  std::vector<Permutation> gens;
  for (std::size_t x = 0; x < q.classes(); ++x) {
    if (left) gens.push_back(q.left(x));
    if (right) gens.push_back(q.right(x));
  }
  return gens;
}

/// Certifies Mlt-type group = X_Q * span(inner) where X is the transversal
/// side. Every generator is either a class representative or that times
/// L_{-1}, and L_{-1} is central, so class representatives suffice for both
/// the generators and the coset labels.
inline RankStructure rank_structure(const CDLoop& q, std::span<const FlipVector> inner_gens,
                                    std::span<const Permutation> gens, Side side) {
  RankStructure r;
  r.transversal_side = side;
  r.generator_count = gens.size();
  r.inner = GF2Basis(q.classes());
  for (const auto& v : inner_gens) {
    if (v.test(0)) {
      r.inner_flips = false;
      if (!r.witness) r.witness = "an inner generator moves 1";
    }
    r.inner.insert(v);
  }
  const Permutation minus = q.left(q.negate(0));
  for (const auto& g : gens) {
    if (compose(g, minus) != compose(minus, g)) {
      r.minus_one_central = false;
      if (!r.witness) r.witness = "L_{-1} does not commute with " + to_string(g);
    }
  }
  std::vector<Permutation> coset(q.classes());
  std::vector<Permutation> coset_inv(q.order());
  for (std::size_t z = 0; z < q.classes(); ++z) coset[z] = q.translation(side, z);
  for (std::size_t w = 0; w < q.order(); ++w) coset_inv[w] = invert(q.translation(side, w));
  for (std::size_t gi = 0; gi < gens.size() && r.cosets_closed; ++gi) {
    for (std::size_t z = 0; z < q.classes(); ++z) {
      const Permutation gz = compose(gens[gi], coset[z]);
      const std::size_t w = gz[0];
      ++r.coset_products;
      std::optional<std::string> note;
      const FlipVector f = decompose_or_note(compose(coset_inv[w], gz), note, "coset");
      if (note || f.test(0) || !r.inner.contains(f)) {
        r.cosets_closed = false;
        r.witness = "generator " + std::to_string(gi) + " times translation by " + label(q, z) +
                    " leaves the coset set";
        break;
      }
    }
  }
  return r;
}

}  // namespace detail

/// Rank route for Mlt (two-sided) or Mlt_l / Mlt_r.
[[nodiscard]] inline RankStructure rank_structure_mlt(const CDLoop& q, const InnerGenerators& ig) {
  std::vector<FlipVector> inner = ig.T;
  inner.insert(inner.end(), ig.Lxy.begin(), ig.Lxy.end());
  const auto gens = detail::class_generators(q, true, true);
  RankStructure r = detail::rank_structure(q, inner, gens, Side::left);
  if (ig.not_flip) {
    r.inner_flips = false;
    r.witness = *ig.not_flip;
  }
  return r;
}

[[nodiscard]] inline RankStructure rank_structure_onesided(const CDLoop& q,
                                                           const InnerGenerators& ig, Side side) {
  const auto& inner = side == Side::left ? ig.Lxy : ig.Rxy;
  const auto gens = detail::class_generators(q, side == Side::left, side == Side::right);
  RankStructure r = detail::rank_structure(q, inner, gens, side);
  if (ig.not_flip) {
    r.inner_flips = false;
    r.witness = *ig.not_flip;
  }
  return r;
}

/// All L_x and R_x (or one side), in index order, for closures.
[[nodiscard]] inline std::vector<Permutation> mlt_generators(const CDLoop& q, bool left,
                                                             bool right) {
  std::vector<Permutation> gens;
  for (std::size_t x = 0; x < q.order(); ++x) {
    if (left) gens.push_back(q.left(x));
    if (right) gens.push_back(q.right(x));
  }
  return gens;
}

namespace detail {

inline GroupHandle from_closure(std::string name, GroupClosure g) {
  GroupHandle h;
  h.name = std::move(name);
  h.mode = Mode::exhaustive;
  h.truncated = g.truncated;
  h.order = GroupOrder::count(g.size());
  h.closure = std::make_shared<const GroupClosure>(std::move(g));
  return h;
}

inline GroupHandle stabilizer_handle(std::string name, const GroupHandle& mlt) {
  if (mlt.truncated) {
    GroupHandle h;
    h.name = std::move(name);
    h.truncated = true;
    return h;
  }
  GroupHandle h = from_closure(std::move(name), stabilizer_of_identity(*mlt.closure));
  h.basis = GF2Basis(mlt.closure->degree() / 2);
  return h;
}

}  // namespace detail

[[nodiscard]] inline GroupHandle mlt_group(const CDLoop& q, Mode mode,
                                           std::size_t cap = kDefaultClosureCap) {
  if (mode == Mode::exhaustive) {
    return detail::from_closure("Mlt", closure(mlt_generators(q, true, true), cap));
  }
  const RankStructure r = rank_structure_mlt(q, inner_generators(q));
  if (!r.valid()) throw Error("rank structure of Mlt failed: " + r.witness.value_or(""));
  GroupHandle h;
  h.name = "Mlt";
  h.mode = Mode::rank;
  h.basis = r.inner;
  h.order = GroupOrder::pow2(q.n() + 1) * r.inner_order();
  return h;
}

[[nodiscard]] inline GroupHandle inn_group(const CDLoop& q, Mode mode,
                                           std::size_t cap = kDefaultClosureCap) {
  if (mode == Mode::exhaustive) return detail::stabilizer_handle("Inn", mlt_group(q, mode, cap));
  const RankStructure r = rank_structure_mlt(q, inner_generators(q));
  if (!r.valid()) throw Error("rank structure of Mlt failed: " + r.witness.value_or(""));
  GroupHandle h;
  h.name = "Inn";
  h.mode = Mode::rank;
  h.basis = r.inner;
  h.order = r.inner_order();
  return h;
}

[[nodiscard]] inline GroupHandle onesided_mlt(const CDLoop& q, Side side, Mode mode,
                                              std::size_t cap = kDefaultClosureCap) {
  const std::string name = side == Side::left ? "Mlt_l" : "Mlt_r";
  if (mode == Mode::exhaustive) {
    return detail::from_closure(
        name, closure(mlt_generators(q, side == Side::left, side == Side::right), cap));
  }
  const RankStructure r = rank_structure_onesided(q, inner_generators(q), side);
  if (!r.valid()) throw Error("rank structure of " + name + " failed: " + r.witness.value_or(""));
  GroupHandle h;
  h.name = name;
  h.mode = Mode::rank;
  h.basis = r.inner;
  h.order = GroupOrder::pow2(q.n() + 1) * r.inner_order();
  return h;
}

[[nodiscard]] inline GroupHandle onesided_inn(const CDLoop& q, Side side, Mode mode,
                                              std::size_t cap = kDefaultClosureCap) {
  const std::string name = side == Side::left ? "Inn_l" : "Inn_r";
  if (mode == Mode::exhaustive) {
    return detail::stabilizer_handle(name, onesided_mlt(q, side, mode, cap));
  }
  const RankStructure r = rank_structure_onesided(q, inner_generators(q), side);
  if (!r.valid()) throw Error("rank structure of " + name + " failed: " + r.witness.value_or(""));
  GroupHandle h;
  h.name = name;
  h.mode = Mode::rank;
  h.basis = r.inner;
  h.order = r.inner_order();
  return h;
}

/// The generators g_{k,n} and the sets s_{k,m} they are built from.
struct KConstruction {
  unsigned n = 0;
  /// sets[m - 2][k - 1] = s_{k,m} as sorted exponent vectors.
  std::vector<std::vector<std::vector<ExpVector>>> sets;
  /// g_{1,n}, ..., g_{n,n}
  std::vector<Permutation> generators;

  bool involutions = false;
  bool commuting = false;
  /// g_{k,n}(1) lies in the class of i_k.
  bool hits_generators = false;
  /// The 2^n subset products send 1 into 2^n distinct sign classes.
  bool transversal = false;
  std::optional<std::string> witness;
  GroupOrder order;

  [[nodiscard]] const std::vector<ExpVector>& set(unsigned k, unsigned m) const {
    return sets.at(m - 2).at(k - 1);
  }
  [[nodiscard]] bool valid() const {
    return involutions && commuting && hits_generators && transversal;
  }
};

namespace detail {

inline std::vector<ExpVector> sorted(std::vector<ExpVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

/// s_{1,2} = {1, i_2}, s_{2,2} = {1, i_1 i_2}; s_{k,m} = s_{k,m-1} and its
/// translate by i_m; s_{m,m} = even-weight products. g_{k,n} = (prod T_x) L_{i_k}.
[[nodiscard]] inline KConstruction build_K(const CDLoop& q) {
  const unsigned n = q.n();
  if (n < 2) throw OutOfRange("build_K needs n >= 2");
  KConstruction kc;
  kc.n = n;
  kc.sets.push_back({{0b00, 0b10}, {0b00, 0b11}});
  for (unsigned m = 3; m <= n; ++m) {
    const ExpVector im = ExpVector{1} << (m - 1);
    std::vector<std::vector<ExpVector>> level;
    for (const auto& prev : kc.sets.back()) {
      std::vector<ExpVector> s = prev;
      for (auto x : prev) s.push_back(x ^ im);
      level.push_back(detail::sorted(std::move(s)));
    }
    std::vector<ExpVector> even;
    for (ExpVector x = 0; x < (ExpVector{1} << m); ++x) {
      if (std::popcount(x) % 2 == 0) even.push_back(x);
    }
    level.push_back(std::move(even));
    kc.sets.push_back(std::move(level));
  }

  for (unsigned k = 1; k <= n; ++k) {
    Permutation g = Permutation::identity(q.order());
    for (auto x : kc.set(k, n)) g = compose(q.T(x), g);
    kc.generators.push_back(compose(g, q.left(q.generator(k))));
  }

  kc.involutions = true;
  for (unsigned k = 0; k < n && kc.involutions; ++k) {
    if (!compose(kc.generators[k], kc.generators[k]).is_identity()) {
      kc.involutions = false;
      kc.witness = "g_" + std::to_string(k + 1) + " has order " +
                   std::to_string(perm_order(kc.generators[k]));
    }
  }
  kc.commuting = true;
  for (unsigned j = 0; j < n && kc.commuting; ++j) {
    for (unsigned k = j + 1; k < n; ++k) {
      if (compose(kc.generators[j], kc.generators[k]) !=
          compose(kc.generators[k], kc.generators[j])) {
        kc.commuting = false;
        if (!kc.witness) {
          kc.witness = "g_" + std::to_string(j + 1) + " and g_" + std::to_string(k + 1) +
                       " do not commute";
        }
        break;
      }
    }
  }
  kc.hits_generators = true;
  for (unsigned k = 1; k <= n; ++k) {
    if ((kc.generators[k - 1][0] & (q.classes() - 1)) != (std::size_t{1} << (k - 1))) {
      kc.hits_generators = false;
      if (!kc.witness) kc.witness = "g_" + std::to_string(k) + "(1) is not +-i" + std::to_string(k);
    }
  }
  // Gray-code walk over subset products; step t toggles generator ctz(t).
  std::vector<bool> seen(q.classes(), false);
  seen[0] = true;
  kc.transversal = true;
  Permutation p = Permutation::identity(q.order());
  for (std::size_t t = 1; t < q.classes(); ++t) {
    p = compose(kc.generators[static_cast<std::size_t>(std::countr_zero(t))], p);
    const std::size_t c = p[0] & (q.classes() - 1);
    if (seen[c]) {
      kc.transversal = false;
      if (!kc.witness) kc.witness = "two products send 1 into class " + detail::label(q, c);
      break;
    }
    seen[c] = true;
  }
  if (kc.valid()) kc.order = GroupOrder::pow2(n);
  return kc;
}

/// N = Inn x Z in flip form: the span of the inner part plus L_{-1}, and the
/// explicit basis N* = {L_{-1} T_e} + {T_x T_e : x not in +-{1, e}}.
struct NConstruction {
  GF2Basis span;
  GF2Basis star;
  std::vector<FlipVector> star_vectors;
  bool star_spans_same = false;
  GroupOrder order;
};

[[nodiscard]] inline NConstruction build_N(const CDLoop& q, const GF2Basis& inner) {
  if (q.n() < 2) throw OutOfRange("build_N needs n >= 2");
  NConstruction nc;
  const std::size_t e = std::size_t{1} << (q.n() - 1);
  const FlipVector minus = flip_decompose(q.left(q.negate(0)));
  const FlipVector te = flip_decompose(q.T(e));
  nc.span = gf2_insert(inner, minus);
  nc.star = GF2Basis(q.classes());
  nc.star_vectors.push_back(minus ^ te);
  for (std::size_t x = 1; x < q.classes(); ++x) {
    if (x == e) continue;
    nc.star_vectors.push_back(flip_decompose(q.T(x)) ^ te);
  }
  for (const auto& v : nc.star_vectors) nc.star.insert(v);
  nc.star_spans_same = nc.star.spans_same(nc.span);
  nc.order = GroupOrder::pow2(nc.span.rank());
  return nc;
}

/// Verdicts for G = N x| K.
struct DecompositionCertificate {
  std::string group;
  Mode mode = Mode::exhaustive;
  GroupOrder g_order;
  GroupOrder n_order;
  GroupOrder k_order;
  bool k_valid = false;
  bool k_in_g = false;
  bool n_normal = false;
  bool intersection_trivial = false;
  bool order_product = false;
  /// Exhaustive or rank structure could not be established (cap).
  bool incomplete = false;
  std::optional<std::string> witness;

  [[nodiscard]] bool valid() const {
    return !incomplete && k_valid && k_in_g && n_normal && intersection_trivial && order_product;
  }
};

namespace detail {

inline void note(DecompositionCertificate& c, std::string why) {
  if (!c.witness) c.witness = std::move(why);
}

inline DecompositionCertificate certify_exhaustive(const CDLoop& q, std::string name,
                                                   const GroupHandle& g, const KConstruction& kc,
                                                   std::size_t cap) {
  DecompositionCertificate c;
  c.group = std::move(name);
  c.mode = Mode::exhaustive;
  c.k_valid = kc.valid();
  if (!c.k_valid) note(c, "K: " + kc.witness.value_or("construction failed"));
  if (g.truncated) {
    c.incomplete = true;
    note(c, c.group + " closure truncated");
    return c;
  }
  const GroupClosure& G = *g.closure;
  const GroupClosure inn = stabilizer_of_identity(G);
  std::vector<Permutation> ngens = inn.generators;
  ngens.push_back(q.left(q.negate(0)));
  const GroupClosure N = closure(ngens, cap);
  const GroupClosure K = closure(kc.generators, cap);
  if (N.truncated || K.truncated) {
    c.incomplete = true;
    note(c, "N or K closure truncated");
    return c;
  }
  c.g_order = GroupOrder::count(G.size());
  c.n_order = GroupOrder::count(N.size());
  c.k_order = GroupOrder::count(K.size());
  c.k_in_g = is_subset(K, G);
  if (!c.k_in_g) {
    for (const auto& k : kc.generators) {
      if (!G.contains(k)) {
        note(c, "K generator " + to_string(k) + " is not in " + c.group);
        break;
      }
    }
  }
  c.n_normal = is_subset(N, G) && is_normal_in(N, G);
  if (!c.n_normal) note(c, "N is not a normal subgroup of " + c.group);
  c.intersection_trivial = intersection(N, K).size() == 1;
  if (!c.intersection_trivial) note(c, "N and K intersect nontrivially");
  c.order_product = c.n_order * c.k_order == c.g_order;
  if (!c.order_product) note(c, "|N||K| != |G|");
  return c;
}

inline DecompositionCertificate certify_rank(const CDLoop& q, std::string name,
                                             const RankStructure& r,
                                             std::span<const Permutation> gens,
                                             const KConstruction& kc) {
  DecompositionCertificate c;
  c.group = std::move(name);
  c.mode = Mode::rank;
  c.k_valid = kc.valid();
  if (!c.k_valid) note(c, "K: " + kc.witness.value_or("construction failed"));
  if (!r.valid()) {
    c.incomplete = true;
    note(c, "rank structure: " + r.witness.value_or("failed"));
    return c;
  }
  const GroupOrder g_order = GroupOrder::pow2(q.n() + 1) * r.inner_order();
  const GF2Basis nspan = gf2_insert(r.inner, flip_decompose(q.left(q.negate(0))));
  c.g_order = g_order;
  c.n_order = GroupOrder::pow2(nspan.rank());
  c.k_order = kc.order;

  // K <= G: each generator lies in some coset X_w * span.
  c.k_in_g = true;
  for (std::size_t k = 0; k < kc.generators.size(); ++k) {
    const Permutation& gk = kc.generators[k];
    std::optional<std::string> bad;
    const FlipVector f = decompose_or_note(
        compose(invert(q.translation(r.transversal_side, gk[0])), gk), bad, "K");
    if (bad || f.test(0) || !r.inner.contains(f)) {
      c.k_in_g = false;
      note(c, "g_" + std::to_string(k + 1) + " is not in " + c.group);
      break;
    }
  }

  // N normal: conjugating each basis vector by each generator stays in N.
  c.n_normal = true;
  for (const auto& g : gens) {
    const Permutation ginv = invert(g);
    for (const auto& row : nspan.rows()) {
      std::optional<std::string> bad;
      const FlipVector v =
          decompose_or_note(compose(compose(g, flip_permutation(row)), ginv), bad, "conj");
      if (bad || !nspan.contains(v)) {
        c.n_normal = false;
        note(c, "conjugate of an N basis vector leaves N");
        break;
      }
    }
    if (!c.n_normal) break;
  }

  // Every element of N sends 1 to +-1, and the transversal property of K
  // leaves the identity as the only such element of K.
  c.intersection_trivial = kc.transversal && kc.involutions && kc.commuting;
  if (!c.intersection_trivial) note(c, "K transversal property fails");
  c.order_product = c.k_valid && c.n_order * c.k_order == c.g_order;
  if (!c.order_product) note(c, "|N||K| != |G|");
  return c;
}

}  // namespace detail

[[nodiscard]] inline DecompositionCertificate verify_semidirect(
    const CDLoop& q, Mode mode, std::size_t cap = kDefaultClosureCap) {
  const KConstruction kc = build_K(q);
  if (mode == Mode::exhaustive) {
    return detail::certify_exhaustive(q, "Mlt", mlt_group(q, mode, cap), kc, cap);
  }
  const RankStructure r = rank_structure_mlt(q, inner_generators(q));
  const auto gens = detail::class_generators(q, true, true);
  return detail::certify_rank(q, "Mlt", r, gens, kc);
}

[[nodiscard]] inline DecompositionCertificate verify_semidirect_onesided(
    const CDLoop& q, Mode mode, std::size_t cap = kDefaultClosureCap) {
  const KConstruction kc = build_K(q);
  if (mode == Mode::exhaustive) {
    return detail::certify_exhaustive(q, "Mlt_l", onesided_mlt(q, Side::left, mode, cap), kc,
                                      cap);
  }
  const RankStructure r = rank_structure_onesided(q, inner_generators(q), Side::left);
  const auto gens = detail::class_generators(q, true, false);
  return detail::certify_rank(q, "Mlt_l", r, gens, kc);
}

/// h = prod over x in Q_{n-2}/{+-1} of L_{x, i_{n-1}}.
[[nodiscard]] inline Permutation h_mapping(const CDLoop& q) {
  if (q.n() < 4) throw OutOfRange("h_mapping needs n >= 4");
  const std::size_t inm1 = q.generator(q.n() - 1);
  Permutation h = Permutation::identity(q.order());
  for (std::size_t x = 0; x < (std::size_t{1} << (q.n() - 2)); ++x) {
    h = compose(q.Lxy(x, inm1), h);
  }
  return h;
}

/// The flip of every class outside Q_{n-1}.
[[nodiscard]] inline FlipVector h_expected(unsigned n) {
  FlipVector v(std::size_t{1} << n);
  for (std::size_t c = v.size() / 2; c < v.size(); ++c) v.set(c);
  return v;
}

/// First pair (a, b) with f(ab) != f(a) f(b).
[[nodiscard]] inline std::optional<std::pair<std::size_t, std::size_t>> homomorphism_failure(
    const CDLoop& q, const Permutation& f) {
  for (std::size_t a = 0; a < q.order(); ++a) {
    for (std::size_t b = 0; b < q.order(); ++b) {
      if (f[q.mul(a, b)] != q.mul(f[a], f[b])) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

struct NonAutomorphicWitness {
  std::string mapping;
  std::size_t a = 0;
  std::size_t b = 0;
};

/// An inner mapping that is not an automorphism. Starts from T_{i_1}; if that
/// happens to be an automorphism, T_y T_x T_{i_1} with x, y off the canonical
/// generators is tried, for every admissible x, y.
[[nodiscard]] inline std::optional<NonAutomorphicWitness> non_automorphic_witness(
    const CDLoop& q) {
  if (q.n() < 1) return std::nullopt;
  const std::size_t i1 = q.generator(1);
  const Permutation f = q.T(i1);
  if (auto bad = homomorphism_failure(q, f)) {
    return NonAutomorphicWitness{"T_" + detail::label(q, i1), bad->first, bad->second};
  }
  auto canonical = [&](std::size_t c) { return c == 0 || std::has_single_bit(c); };
  for (std::size_t x = 1; x < q.classes(); ++x) {
    if (canonical(x)) continue;
    for (std::size_t y = 1; y < q.classes(); ++y) {
      if (canonical(y) || y == x) continue;
      const Permutation g = compose(compose(q.T(y), q.T(x)), f);
      if (auto bad = homomorphism_failure(q, g)) {
        return NonAutomorphicWitness{"T_" + detail::label(q, y) + " T_" + detail::label(q, x) +
                                         " T_" + detail::label(q, i1),
                                     bad->first, bad->second};
      }
    }
  }
  return std::nullopt;
}

}  // namespace loopforge
