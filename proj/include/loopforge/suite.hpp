#pragma once

// Mechanical verification of the structure theorems for Q_n.
//
// Every check runs over its full quantifier range (all sign classes, pairs,
// triples) for the supported n. The only sampled quantity is "every element of
// Mlt" in rank mode, where the group is too large to list; there the
// generators plus seeded random words in them are tested.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "loopforge/cdcore.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/gf2.hpp"
#include "loopforge/looptable.hpp"
#include "loopforge/mltgroups.hpp"
#include "loopforge/permgroup.hpp"

namespace loopforge {

inline constexpr unsigned kMaxSuiteDimension = 8;

/// Exhaustive mode is the default up to this n.
inline constexpr unsigned kAutoExhaustiveLimit = 4;

enum class Status { pass, fail, skipped };

[[nodiscard]] inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

struct CheckRecord {
  std::string name;
  std::string anchor;
  Status status = Status::pass;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  std::optional<std::string> witness;
  double ms = 0;
};

struct VerificationReport {
  unsigned n = 0;
  Mode mode = Mode::exhaustive;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  /// 0 all pass, 1 any failure, 2 otherwise when something was skipped.
  [[nodiscard]] int exit_code() const {
    bool skipped = false;
    for (const auto& c : checks) {
      if (c.status == Status::fail) return 1;
      skipped = skipped || c.status == Status::skipped;
    }
    return skipped ? 2 : 0;
  }

  [[nodiscard]] const CheckRecord* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

struct SuiteOptions {
  std::optional<Mode> mode;
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultClosureCap;
  unsigned threads = 1;
  /// Random products of generators tested in rank mode.
  std::size_t samples = 100000;
};

[[nodiscard]] inline Mode resolve_mode(std::optional<Mode> requested, unsigned n) {
  if (requested) return *requested;
  return n <= kAutoExhaustiveLimit ? Mode::exhaustive : Mode::rank;
}

[[nodiscard]] inline nlohmann::ordered_json order_json(const GroupOrder& g) {
  nlohmann::ordered_json j;
  if (auto v = g.value()) {
    j["value"] = *v;
  } else {
    j["value"] = nullptr;
  }
  j["pow2"] = g.exponent_form();
  return j;
}

namespace detail {

template <class T>
class Lazy {
 public:
  template <class Make>
  const T& get(Make&& make) {
    std::call_once(once_, [&] { value_.emplace(make()); });
    return *value_;
  }

 private:
  std::once_flag once_;
  std::optional<T> value_;
};

/// Parity, order and the L_x * flip factorization over a set of permutations.
struct ElementStats {
  std::size_t count = 0;
  std::size_t odd = 0;
  std::size_t bad_order = 0;
  std::size_t not_factored = 0;
  std::uint64_t max_order = 1;
  std::optional<std::string> odd_witness;
  std::optional<std::string> order_witness;
  std::optional<std::string> factor_witness;

  void add(std::span<const Point> im, const std::vector<Permutation>& left_inv, std::size_t half,
           std::vector<std::uint8_t>& seen) {
    ++count;
    std::fill(seen.begin(), seen.end(), 0);
    std::size_t transpositions = 0;
    std::uint64_t order = 1;
    bool lengths_ok = true;
    for (std::size_t s = 0; s < im.size(); ++s) {
      if (seen[s]) continue;
      std::size_t len = 0;
      for (std::size_t k = s; !seen[k]; k = im[k]) {
        seen[k] = 1;
        ++len;
      }
      transpositions += len - 1;
      order = std::lcm(order, std::uint64_t{len});
      lengths_ok = lengths_ok && (len == 1 || len == 2 || len == 4);
    }
    max_order = std::max(max_order, order);
    if (transpositions % 2 != 0) {
      ++odd;
      if (!odd_witness) odd_witness = describe(im);
    }
    if (!lengths_ok) {
      ++bad_order;
      if (!order_witness) order_witness = describe(im);
    }
    const Permutation& linv = left_inv[im[0]];
    for (std::size_t k = 0; k < im.size(); ++k) {
      const std::size_t h = linv[im[k]];
      if (h != k && h != (k ^ half)) {
        ++not_factored;
        if (!factor_witness) factor_witness = describe(im);
        break;
      }
    }
  }

  static std::string describe(std::span<const Point> im) {
    return to_string(Permutation::adopt(std::vector<Point>(im.begin(), im.end())));
  }
};

class SuiteContext {
 public:
  SuiteContext(unsigned n, Mode mode, const SuiteOptions& opt)
      : q(n), mode(mode), options(opt) {}

  CDLoop q;
  Mode mode;
  SuiteOptions options;

  [[nodiscard]] bool exhaustive() const { return mode == Mode::exhaustive; }
  [[nodiscard]] std::size_t h() const { return q.classes(); }
  [[nodiscard]] ExpVector top() const { return ExpVector{1} << (q.n() - 1); }

  const InnerGenerators& inner() {
    return inner_.get([&] { return inner_generators(q); });
  }
  const RankStructure& rank_mlt() {
    return rank_mlt_.get([&] { return rank_structure_mlt(q, inner()); });
  }
  const RankStructure& rank_side(Side side) {
    auto& slot = side == Side::left ? rank_left_ : rank_right_;
    return slot.get([&] { return rank_structure_onesided(q, inner(), side); });
  }
  const KConstruction& K() {
    return k_.get([&] { return build_K(q); });
  }
  /// T_x for every class x, as permutations.
  const std::vector<Permutation>& T() {
    return t_.get([&] {
      std::vector<Permutation> out;
      for (std::size_t x = 0; x < h(); ++x) out.push_back(q.T(x));
      return out;
    });
  }
  const std::vector<Permutation>& left_inverses() {
    return left_inv_.get([&] {
      std::vector<Permutation> out;
      for (std::size_t x = 0; x < q.order(); ++x) out.push_back(invert(q.left(x)));
      return out;
    });
  }

  const GroupHandle& mlt() {
    return mlt_.get([&] {
      return detail::from_closure("Mlt", closure(mlt_generators(q, true, true), options.cap));
    });
  }
  const GroupHandle& mlt_side(Side side) {
    auto& slot = side == Side::left ? mlt_left_ : mlt_right_;
    return slot.get([&] {
      return detail::from_closure(
          side == Side::left ? "Mlt_l" : "Mlt_r",
          closure(mlt_generators(q, side == Side::left, side == Side::right), options.cap));
    });
  }
  const GroupHandle& inn() {
    return inn_.get([&] { return stabilizer_handle("Inn", mlt()); });
  }
  const GroupHandle& inn_side(Side side) {
    auto& slot = side == Side::left ? inn_left_ : inn_right_;
    return slot.get([&] {
      return stabilizer_handle(side == Side::left ? "Inn_l" : "Inn_r", mlt_side(side));
    });
  }

  /// Throws CapExceeded when the handle's enumeration was cut short.
  static const GroupClosure& require(const GroupHandle& g) {
    if (g.truncated || !g.closure) {
      throw CapExceeded(g.name + " closure exceeded the element cap");
    }
    return *g.closure;
  }

  const ElementStats& mlt_elements() {
    return mlt_stats_.get([&] {
      const GroupClosure& G = require(mlt());
      ElementStats st;
      std::vector<std::uint8_t> seen(q.order());
      G.for_each([&](std::span<const Point> im) { st.add(im, left_inverses(), h(), seen); });
      return st;
    });
  }

  /// Generators L_x, R_x plus seeded random words in them.
  const ElementStats& mlt_samples() {
    return sample_stats_.get([&] {
      const auto gens = mlt_generators(q, true, true);
      ElementStats st;
      std::vector<std::uint8_t> seen(q.order());
      for (const auto& g : gens) st.add(g.images(), left_inverses(), h(), seen);
      std::mt19937_64 rng(options.seed);
      std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
      std::uniform_int_distribution<std::size_t> length(1, 32);
      for (std::size_t s = 0; s < options.samples; ++s) {
        Permutation p = gens[pick(rng)];
        for (std::size_t len = length(rng); len > 1; --len) p = compose(gens[pick(rng)], p);
        st.add(p.images(), left_inverses(), h(), seen);
      }
      return st;
    });
  }

  /// O16 / QuasiO16 for the subloop +-<a, b, c>, cached by its sign pattern.
  Subloop16Class classify_span(ExpVector a, ExpVector b, ExpVector c) {
    const CayleyTable t = span_table(q.signs(), a, b, c);
    std::uint64_t key = 0;
    for (unsigned p = 0; p < 8; ++p) {
      for (unsigned r = 0; r < 8; ++r) {
        if (t(p, r) >= 8) key |= std::uint64_t{1} << (p * 8 + r);
      }
    }
    {
      std::lock_guard lock(classes_mutex_);
      if (auto it = span_classes_.find(key); it != span_classes_.end()) return it->second;
    }
    static const CayleyTable octonions = cd_table(3);
    const Subloop16Class c16 =
        isomorphic(t, octonions) ? Subloop16Class::O16 : Subloop16Class::QuasiO16;
    std::lock_guard lock(classes_mutex_);
    span_classes_.emplace(key, c16);
    return c16;
  }

 private:
  static GroupHandle stabilizer_handle(std::string name, const GroupHandle& g) {
    return detail::stabilizer_handle(std::move(name), g);
  }

  Lazy<InnerGenerators> inner_;
  Lazy<RankStructure> rank_mlt_;
  Lazy<RankStructure> rank_left_;
  Lazy<RankStructure> rank_right_;
  Lazy<KConstruction> k_;
  Lazy<std::vector<Permutation>> t_;
  Lazy<std::vector<Permutation>> left_inv_;
  Lazy<GroupHandle> mlt_;
  Lazy<GroupHandle> mlt_left_;
  Lazy<GroupHandle> mlt_right_;
  Lazy<GroupHandle> inn_;
  Lazy<GroupHandle> inn_left_;
  Lazy<GroupHandle> inn_right_;
  Lazy<ElementStats> mlt_stats_;
  Lazy<ElementStats> sample_stats_;
  std::mutex classes_mutex_;
  std::map<std::uint64_t, Subloop16Class> span_classes_;
};

/// Collects the verdict of one check: the first failure wins the witness.
class Verdict {
 public:
  explicit Verdict(CheckRecord& r) : r_(r) {}

  void require(bool ok, const std::string& why) {
    if (ok) return;
    r_.status = Status::fail;
    if (!r_.witness) r_.witness = why;
  }
  nlohmann::ordered_json& values() { return r_.values; }

 private:
  CheckRecord& r_;
};

inline std::string lbl(const CDLoop& q, std::size_t k) { return format(q.element(k)); }

inline FlipVector unit(std::size_t size, std::initializer_list<std::size_t> classes) {
  FlipVector v(size);
  for (auto c : classes) v.flip(c);
  return v;
}

// ---- individual checks ------------------------------------------------------

inline void check_even(SuiteContext& c, Verdict& v) {
  const ElementStats& st = c.exhaustive() ? c.mlt_elements() : c.mlt_samples();
  v.values()["coverage"] = c.exhaustive() ? "all elements" : "generators and random products";
  v.values()["tested"] = st.count;
  if (!c.exhaustive()) v.values()["seed"] = c.options.seed;
  v.values()["odd"] = st.odd;
  v.require(st.odd == 0, "odd permutation " + st.odd_witness.value_or(""));
}

inline void check_orders(SuiteContext& c, Verdict& v) {
  const ElementStats& st = c.exhaustive() ? c.mlt_elements() : c.mlt_samples();
  v.values()["coverage"] = c.exhaustive() ? "all elements" : "generators and random products";
  v.values()["tested"] = st.count;
  v.values()["max_order"] = st.max_order;
  v.values()["bad_order"] = st.bad_order;
  v.values()["not_translation_times_flip"] = st.not_factored;
  v.require(st.bad_order == 0, "element of order outside {1,2,4}: " + st.order_witness.value_or(""));
  v.require(st.not_factored == 0,
            "element is not L_x times a flip: " + st.factor_witness.value_or(""));
}

inline void check_associator_symmetry(SuiteContext& c, Verdict& v) {
  const auto h = static_cast<ExpVector>(c.h());
  std::size_t bad = 0;
  for (ExpVector x = 0; x < h; ++x) {
    for (ExpVector y = 0; y < h; ++y) {
      for (ExpVector z = 0; z < h; ++z) {
        if (associator(c.q.signs(), x, y, z) != associator(c.q.signs(), z, y, x)) {
          if (bad++ == 0) {
            v.require(false, "[x,y,z] != [z,y,x] at " + lbl(c.q, x) + ", " + lbl(c.q, y) + ", " +
                                 lbl(c.q, z));
          }
        }
      }
    }
  }
  v.values()["triples"] = std::uint64_t{h} * h * h;
  v.values()["violations"] = bad;
}

inline void check_inner_formulas(SuiteContext& c, Verdict& v) {
  const InnerGenerators& ig = c.inner();
  v.require(!ig.not_flip, ig.not_flip.value_or(""));
  const auto h = static_cast<ExpVector>(c.h());
  std::size_t bad = 0;
  for (ExpVector x = 0; x < h; ++x) {
    if (ig.T[x] != inner_T_formula(c.q.signs(), x)) {
      ++bad;
      v.require(false, "T_" + lbl(c.q, x) + " differs from [x,z]z");
    }
    for (ExpVector y = 0; y < h; ++y) {
      if (ig.L(x, y) != inner_L_formula(c.q.signs(), x, y)) {
        ++bad;
        v.require(false, "L_{" + lbl(c.q, x) + "," + lbl(c.q, y) + "} differs from [y,x,z]z");
      }
      if (ig.R(x, y) != inner_R_formula(c.q.signs(), x, y)) {
        ++bad;
        v.require(false, "R_{" + lbl(c.q, x) + "," + lbl(c.q, y) + "} differs from [z,x,y]z");
      }
    }
  }
  v.values()["maps"] = std::uint64_t{h} + 2ULL * h * h;
  v.values()["violations"] = bad;
}

inline void check_flip_forms(SuiteContext& c, Verdict& v) {
  const InnerGenerators& ig = c.inner();
  const std::size_t h = c.h();
  const std::size_t e = c.top();
  FlipVector all(h);
  for (std::size_t z = 0; z < h; ++z) all.set(z);
  std::size_t bad = 0;
  std::size_t tested = 0;
  auto fail = [&](const std::string& what) {
    ++bad;
    v.require(false, what);
  };
  for (std::size_t x = 1; x < h; ++x) {
    ++tested;
    if (ig.T[x] != (all ^ unit(h, {0, x}))) fail("T_" + lbl(c.q, x) + " is not the flip off +-{1,x}");
    for (std::size_t y = 1; y < h; ++y) {
      if (y == x) continue;
      ++tested;
      if ((ig.T[x] ^ ig.T[y]) != unit(h, {x, y})) {
        fail("T_y T_x is not (x,-x)(y,-y) for " + lbl(c.q, x) + ", " + lbl(c.q, y));
      }
    }
  }
  for (std::size_t x = 1; x < h; ++x) {
    if (x == e) continue;
    ++tested;
    FlipVector fixed(h);
    for (auto z : {std::size_t{0}, x, e, x ^ e}) fixed.set(z);
    if (ig.L(x, e) != (all ^ fixed)) fail("L_{x,e} is not the flip off +-{1,x,e,xe} for x=" + lbl(c.q, x));
    for (std::size_t y = 1; y < h; ++y) {
      if (y == x || y == e) continue;
      ++tested;
      if ((ig.L(x, e) ^ ig.L(y, e)) != unit(h, {x, y, x ^ e, y ^ e})) {
        fail("L_{y,e} L_{x,e} has the wrong form for " + lbl(c.q, x) + ", " + lbl(c.q, y));
      }
    }
  }
  v.values()["instances"] = tested;
  v.values()["violations"] = bad;
}

inline void check_left_right_inner(SuiteContext& c, Verdict& v) {
  const InnerGenerators& ig = c.inner();
  v.require(!ig.not_flip, ig.not_flip.value_or(""));
  std::size_t bad = 0;
  for (std::size_t x = 0; x < c.h(); ++x) {
    for (std::size_t y = 0; y < c.h(); ++y) {
      if (ig.L(x, y) != ig.R(x, y)) {
        if (bad++ == 0) {
          v.require(false, "L_{x,y} != R_{x,y} at " + lbl(c.q, x) + ", " + lbl(c.q, y));
        }
      }
    }
  }
  v.values()["pairs"] = c.h() * c.h();
  v.values()["violations"] = bad;
}

inline void check_inn_structure(SuiteContext& c, Verdict& v) {
  const RankStructure& r = c.rank_mlt();
  const unsigned expected = static_cast<unsigned>(c.h()) - 2;
  v.values()["rank"] = r.inner.rank();
  v.values()["expected_rank"] = expected;
  v.values()["rank_order"] = order_json(r.inner_order());
  v.require(r.inner_flips, "inner generators: " + r.witness.value_or("not flips"));
  v.require(r.inner.rank() == expected, "flip rank is not 2^n - 2");
  if (c.exhaustive()) {
    const GroupClosure& inn = SuiteContext::require(c.inn());
    std::size_t not_flip = 0;
    std::size_t moves_one = 0;
    std::size_t outside_span = 0;
    inn.for_each([&](std::span<const Point> im) {
      const Permutation p = Permutation::adopt(std::vector<Point>(im.begin(), im.end()));
      try {
        const FlipVector f = flip_decompose(p);
        if (f.test(0)) ++moves_one;
        if (!r.inner.contains(f)) ++outside_span;
      } catch (const NotFlipMap&) {
        ++not_flip;
      }
    });
    v.values()["order"] = order_json(GroupOrder::count(inn.size()));
    v.values()["elements_not_flips"] = not_flip;
    v.require(not_flip == 0 && moves_one == 0, "an element of Inn is not a flip fixing +-1");
    v.require(outside_span == 0, "an element of Inn lies outside the generator span");
    v.require(GroupOrder::count(inn.size()) == r.inner_order(),
              "enumerated |Inn| differs from 2^rank");
  }
}

inline void check_mlt_order(SuiteContext& c, Verdict& v) {
  const RankStructure& r = c.rank_mlt();
  const GroupOrder rank_order = GroupOrder::pow2(c.q.n() + 1) * r.inner_order();
  const GroupOrder expected = GroupOrder::pow2(static_cast<unsigned>(c.h()) + c.q.n() - 1);
  v.values()["rank_order"] = order_json(rank_order);
  v.values()["expected"] = order_json(expected);
  v.values()["coset_products"] = r.coset_products;
  v.require(r.valid(), "coset argument failed: " + r.witness.value_or(""));
  v.require(rank_order == expected, "|Q| * 2^rank differs from 2^(2^n + n - 1)");
  if (c.exhaustive()) {
    const GroupClosure& G = SuiteContext::require(c.mlt());
    const GroupClosure& inn = SuiteContext::require(c.inn());
    const GroupOrder order = GroupOrder::count(G.size());
    v.values()["order"] = order_json(order);
    v.values()["inn_order"] = order_json(GroupOrder::count(inn.size()));
    v.require(order == GroupOrder::count(c.q.order()) * GroupOrder::count(inn.size()),
              "|Mlt| != |Q||Inn|");
    v.require(order == rank_order, "enumerated |Mlt| differs from the rank route");
  }
}

inline void check_non_automorphic(SuiteContext& c, Verdict& v) {
  if (c.q.n() <= 2) {
    // Q_n is a group here, so every inner mapping must be an automorphism.
    const GF2Basis& b = c.rank_mlt().inner;
    std::size_t failures = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << b.rank()); ++mask) {
      FlipVector f(c.h());
      for (std::size_t i = 0; i < b.rank(); ++i) {
        if ((mask >> i) & 1U) f ^= b.rows()[i];
      }
      if (homomorphism_failure(c.q, flip_permutation(f))) ++failures;
    }
    v.values()["automorphic"] = failures == 0;
    v.require(failures == 0, "an inner mapping of an associative Q_n is not an automorphism");
    return;
  }
  const auto w = non_automorphic_witness(c.q);
  v.values()["automorphic"] = !w.has_value();
  v.require(w.has_value(), "no inner mapping failing the homomorphism test was found");
  if (w) {
    v.values()["mapping"] = w->mapping;
    v.values()["a"] = lbl(c.q, w->a);
    v.values()["b"] = lbl(c.q, w->b);
  }
}

inline void check_small_lemma(SuiteContext& c, Verdict& v) {
  const auto& g = c.K().generators;
  std::size_t pairs = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    v.require(perm_order(g[j]) == 2, "K generator is not an involution");
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (j == k) continue;
      ++pairs;
      const bool order_two = perm_order(compose(g[j], g[k])) == 2;
      const bool commute = compose(g[j], g[k]) == compose(g[k], g[j]);
      v.require(order_two == commute, "|g_j g_k| = 2 and commuting disagree");
    }
  }
  const bool abelian = is_elem_abelian_2(g);
  v.values()["pairs"] = pairs;
  v.values()["elementary_abelian"] = abelian;
  v.require(abelian, "K generators do not generate an elementary abelian 2-group");
}

inline void check_small_product(SuiteContext& c, Verdict& v) {
  const CDLoop& q = c.q;
  const auto& T = c.T();
  const std::size_t half = c.h();
  auto cls = [&](std::size_t a) { return a & (half - 1); };
  std::size_t instances = 0;
  std::size_t bad = 0;
  std::size_t members_disagree = 0;
  for (unsigned j = 1; j <= q.n(); ++j) {
    for (unsigned k = 1; k <= q.n(); ++k) {
      if (j == k) continue;
      const std::size_t ij = q.generator(j);
      const std::size_t ik = q.generator(k);
      const Permutation Lj = q.left(ij);
      const Permutation Lk = q.left(ik);
      for (std::size_t x = 0; x < half; ++x) {
        ++instances;
        const std::size_t jx = q.mul(ij, x);
        const std::size_t kx = q.mul(ik, x);
        const std::size_t jkx = q.mul(ij, kx);
        const std::size_t kjx = q.mul(ik, jx);
        const bool s_plus = jkx == kjx;
        std::vector<bool> on(q.order(), false);
        for (auto a : {x, jx, kx, jkx}) on[a] = on[q.negate(a)] = true;
        auto restrict = [&](const Permutation& L) {
          std::vector<Point> im(q.order());
          for (std::size_t a = 0; a < im.size(); ++a) im[a] = on[a] ? L[a] : static_cast<Point>(a);
          return Permutation::from_images(std::move(im));
        };
        const Permutation pjk = restrict(Lj);
        const Permutation pkj = restrict(Lk);
        const Permutation qjk = compose(compose(T[cls(kx)], T[cls(x)]), pjk);
        const Permutation members[2] = {
            s_plus ? compose(T[cls(jx)], T[cls(x)]) : compose(T[cls(jkx)], T[cls(x)]),
            s_plus ? compose(T[cls(jkx)], T[cls(kx)]) : compose(T[cls(kx)], T[cls(jx)])};
        bool verdicts[2];
        for (int m = 0; m < 2; ++m) {
          const Permutation tp = compose(members[m], pkj);
          verdicts[m] = perm_order(qjk) == 2 && perm_order(tp) == 2 &&
                        perm_order(compose(qjk, tp)) == 2;
        }
        if (verdicts[0] != verdicts[1]) ++members_disagree;
        if (!verdicts[0] || !verdicts[1]) {
          ++bad;
          v.require(false, "orders differ from 2 at j=" + std::to_string(j) + ", k=" +
                               std::to_string(k) + ", x=" + lbl(q, x));
        }
      }
    }
  }
  v.values()["interpretation"] = "restriction acts as L_{i_j} on the 8 points, identity elsewhere";
  v.values()["instances"] = instances;
  v.values()["members_disagree"] = members_disagree;
  v.values()["violations"] = bad;
}

inline void check_new_elt(SuiteContext& c, Verdict& v) {
  const CDLoop& q = c.q;
  const std::size_t in = q.generator(q.n());
  const std::size_t half = c.h();
  const std::size_t sub = half / 2;
  std::size_t instances = 0;
  std::size_t bad = 0;
  for (unsigned k = 1; k < q.n(); ++k) {
    const std::size_t ik = q.generator(k);
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t xc = 0; xc < sub; ++xc) {
        const std::size_t x = xc + s * half;
        ++instances;
        if (q.mul(ik, q.mul(in, x)) != q.negate(q.mul(in, q.mul(ik, x)))) {
          if (bad++ == 0) v.require(false, "fails at k=" + std::to_string(k) + ", x=" + lbl(q, x));
        }
      }
    }
  }
  v.values()["instances"] = instances;
  v.values()["violations"] = bad;
}

inline void check_ind(SuiteContext& c, Verdict& v) {
  const CDLoop& q = c.q;
  const std::size_t in = q.generator(q.n());
  const std::size_t half = c.h();
  const std::size_t sub = half / 2;
  std::size_t instances = 0;
  std::size_t bad = 0;
  for (unsigned j = 1; j < q.n(); ++j) {
    for (unsigned k = 1; k < q.n(); ++k) {
      if (j == k) continue;
      const std::size_t ij = q.generator(j);
      const std::size_t ik = q.generator(k);
      for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t xc = 0; xc < sub; ++xc) {
          const std::size_t x = xc + s * half;
          ++instances;
          const std::size_t lhs0 = q.mul(ij, q.mul(ik, x));
          const std::size_t rhs0 = q.mul(ik, q.mul(ij, x));
          const bool sign_flip = lhs0 != rhs0;
          const std::size_t xn = q.mul(x, in);
          const std::size_t lhs = q.mul(ij, q.mul(ik, xn));
          const std::size_t rhs = q.mul(ik, q.mul(ij, xn));
          if ((lhs0 & (half - 1)) != (rhs0 & (half - 1)) ||
              lhs != (sign_flip ? q.negate(rhs) : rhs)) {
            if (bad++ == 0) {
              v.require(false, "fails at j=" + std::to_string(j) + ", k=" + std::to_string(k) +
                                   ", x=" + lbl(q, x));
            }
          }
        }
      }
    }
  }
  v.values()["instances"] = instances;
  v.values()["violations"] = bad;
}

inline void check_k(SuiteContext& c, Verdict& v) {
  const KConstruction& kc = c.K();
  v.values()["generators"] = kc.generators.size();
  v.values()["involutions"] = kc.involutions;
  v.values()["commuting"] = kc.commuting;
  v.values()["transversal"] = kc.transversal;
  v.values()["order"] = order_json(kc.order);
  v.require(kc.valid(), kc.witness.value_or("K construction failed"));
  for (unsigned k = 1; k <= c.q.n(); ++k) {
    v.require(kc.set(k, c.q.n()).size() == c.h() / 2, "|s_{k,n}| != 2^(n-1)");
  }
  if (c.exhaustive()) {
    const GroupClosure K = closure(kc.generators, c.options.cap);
    if (K.truncated) throw CapExceeded("K closure exceeded the element cap");
    v.values()["enumerated_order"] = K.size();
    v.require(K.size() == c.h(), "enumerated |K| != 2^n");
  }
}

inline void check_n(SuiteContext& c, Verdict& v) {
  const RankStructure& r = c.rank_mlt();
  const NConstruction nc = build_N(c.q, r.inner);
  const unsigned expected = static_cast<unsigned>(c.h()) - 1;
  v.values()["rank"] = nc.span.rank();
  v.values()["star_rank"] = nc.star.rank();
  v.values()["order"] = order_json(nc.order);
  v.require(nc.span.rank() == expected, "rank of N is not 2^n - 1");
  v.require(nc.star.rank() == expected, "N* is not independent of size 2^n - 1");
  v.require(nc.star_spans_same, "N* does not span N");
  v.require(nc.order == GroupOrder::pow2(1) * r.inner_order(), "|N| != 2|Inn|");
  if (c.exhaustive()) {
    const GroupClosure& inn = SuiteContext::require(c.inn());
    std::vector<Permutation> gens = inn.generators;
    const Permutation minus = c.q.left(c.q.negate(0));
    gens.push_back(minus);
    const GroupClosure N = closure(gens, c.options.cap);
    if (N.truncated) throw CapExceeded("N closure exceeded the element cap");
    std::size_t outside = 0;
    N.for_each([&](std::span<const Point> im) {
      const Permutation p = Permutation::adopt(std::vector<Point>(im.begin(), im.end()));
      if (!inn.contains(p) && !inn.contains(compose(minus, p))) ++outside;
    });
    v.values()["enumerated_order"] = N.size();
    v.require(N.size() == 2 * inn.size(), "enumerated |N| != 2|Inn|");
    v.require(outside == 0, "N is not Inn u (-Inn)");
  }
}

inline void put_certificate(Verdict& v, const DecompositionCertificate& cert) {
  v.values()["group"] = cert.group;
  v.values()["G"] = order_json(cert.g_order);
  v.values()["N"] = order_json(cert.n_order);
  v.values()["K"] = order_json(cert.k_order);
  v.values()["k_valid"] = cert.k_valid;
  v.values()["k_in_g"] = cert.k_in_g;
  v.values()["n_normal"] = cert.n_normal;
  v.values()["intersection_trivial"] = cert.intersection_trivial;
  v.values()["order_product"] = cert.order_product;
  if (cert.incomplete) throw CapExceeded(cert.witness.value_or("certificate incomplete"));
  v.require(cert.valid(), cert.witness.value_or("certificate invalid"));
}

inline void check_semidirect(SuiteContext& c, Verdict& v) {
  if (c.exhaustive()) {
    put_certificate(v, certify_exhaustive(c.q, "Mlt", c.mlt(), c.K(), c.options.cap));
  } else {
    const auto gens = class_generators(c.q, true, true);
    put_certificate(v, certify_rank(c.q, "Mlt", c.rank_mlt(), gens, c.K()));
  }
}

inline void check_semidirect_left(SuiteContext& c, Verdict& v) {
  if (c.exhaustive()) {
    put_certificate(v,
                    certify_exhaustive(c.q, "Mlt_l", c.mlt_side(Side::left), c.K(), c.options.cap));
  } else {
    const auto gens = class_generators(c.q, true, false);
    put_certificate(v, certify_rank(c.q, "Mlt_l", c.rank_side(Side::left), gens, c.K()));
  }
}

inline void check_inn_left_right(SuiteContext& c, Verdict& v) {
  const RankStructure& l = c.rank_side(Side::left);
  const RankStructure& r = c.rank_side(Side::right);
  v.values()["left_rank"] = l.inner.rank();
  v.values()["right_rank"] = r.inner.rank();
  v.require(l.inner.spans_same(r.inner), "Inn_l and Inn_r spans differ");
  if (c.exhaustive()) {
    const GroupClosure& il = SuiteContext::require(c.inn_side(Side::left));
    const GroupClosure& ir = SuiteContext::require(c.inn_side(Side::right));
    v.values()["left_order"] = il.size();
    v.values()["right_order"] = ir.size();
    v.require(same_elements(il, ir), "Inn_l and Inn_r differ as permutation sets");
  }
}

inline void check_onesided_orders(SuiteContext& c, Verdict& v) {
  const unsigned n = c.q.n();
  const GroupOrder inn_expected = GroupOrder::pow2((1U << (n - 1)) - 1);
  const GroupOrder mlt_expected = GroupOrder::pow2(n + 1) * inn_expected;
  v.values()["inn_expected"] = order_json(inn_expected);
  v.values()["mlt_expected"] = order_json(mlt_expected);
  for (Side side : {Side::left, Side::right}) {
    const std::string s = to_string(side);
    const RankStructure& r = c.rank_side(side);
    const GroupOrder mlt_rank = GroupOrder::pow2(n + 1) * r.inner_order();
    v.values()["inn_" + s] = order_json(r.inner_order());
    v.values()["mlt_" + s] = order_json(mlt_rank);
    v.require(r.valid(), "coset argument failed on the " + s + ": " + r.witness.value_or(""));
    v.require(r.inner_order() == inn_expected,
              "|Inn_" + s.substr(0, 1) + "| differs from 2^(2^(n-1)-1)");
    v.require(mlt_rank == mlt_expected, "|Mlt_" + s.substr(0, 1) + "| differs from |Q||Inn_l|");
    if (c.exhaustive()) {
      const GroupClosure& G = SuiteContext::require(c.mlt_side(side));
      const GroupClosure& I = SuiteContext::require(c.inn_side(side));
      v.values()["enumerated_inn_" + s] = I.size();
      v.values()["enumerated_mlt_" + s] = G.size();
      v.require(GroupOrder::count(I.size()) == r.inner_order(),
                "enumerated |Inn_" + s.substr(0, 1) + "| differs from the rank route");
      v.require(GroupOrder::count(G.size()) == mlt_rank,
                "enumerated |Mlt_" + s.substr(0, 1) + "| differs from the rank route");
    }
  }
}

inline void check_mirror(SuiteContext& c, Verdict& v) {
  const CDLoop& q = c.q;
  const Permutation J = q.mirror();
  v.require(compose(J, J).is_identity(), "J is not an involution");
  std::size_t bad = 0;
  for (std::size_t a = 0; a < q.order(); ++a) {
    if (conjugate(J, q.left(a)) != q.right(q.inverse(a))) {
      if (bad++ == 0) v.require(false, "J L_a J != R_{a^-1} at a=" + lbl(q, a));
    }
  }
  v.values()["translations"] = q.order();
  v.values()["violations"] = bad;
  if (c.exhaustive()) {
    const GroupClosure& ml = SuiteContext::require(c.mlt_side(Side::left));
    const GroupClosure& mr = SuiteContext::require(c.mlt_side(Side::right));
    const bool same = same_elements(conjugate_by(J, ml), mr);
    v.values()["conjugate_sets_equal"] = same;
    v.require(same, "J Mlt_l J != Mlt_r as sets");
  }
}

inline void check_doubled_associators(SuiteContext& c, Verdict& v) {
  const SignTable& s = c.q.signs();
  const ExpVector e = c.top();
  auto cm = [&](ExpVector a, ExpVector b) { return commutator(s, a, b); };
  auto as = [&](ExpVector a, ExpVector b, ExpVector d) { return associator(s, a, b, d); };
  std::size_t bad = 0;
  std::size_t instances = 0;
  static constexpr const char* kNames = "abcdefg";
  for (ExpVector x = 0; x < e; ++x) {
    for (ExpVector y = 0; y < e; ++y) {
      for (ExpVector z = 0; z < e; ++z) {
        const int lhs[7] = {as(x, y, z | e),     as(x, y | e, z),     as(x, y | e, z | e),
                            as(x | e, y, z),     as(x | e, y, z | e), as(x | e, y | e, z),
                            as(x | e, y | e, z | e)};
        const int rhs[7] = {cm(x, y) * as(z, y, x),
                            cm(x, z) * as(y, x, z) * as(y, z, x),
                            cm(x, y) * cm(x, z) * as(z, x, y) * as(x, z, y),
                            cm(y, z) * as(x, y, z),
                            cm(y, x) * cm(y, z) * as(z, y, x),
                            cm(z, x) * cm(z, y) * as(y, x, z) * as(y, z, x),
                            cm(x, y) * cm(x, z) * cm(y, z) * as(z, x, y) * as(x, z, y)};
        for (int i = 0; i < 7; ++i) {
          ++instances;
          if (lhs[i] != rhs[i]) {
            if (bad++ == 0) {
              v.require(false, std::string("identity (") + kNames[i] + ") fails at " +
                                   lbl(c.q, x) + ", " + lbl(c.q, y) + ", " + lbl(c.q, z));
            }
          }
        }
      }
    }
  }
  v.values()["instances"] = instances;
  v.values()["violations"] = bad;
}

inline void check_xe(SuiteContext& c, Verdict& v) {
  const InnerGenerators& ig = c.inner();
  const std::size_t h = c.h();
  const std::size_t e = c.top();
  std::size_t bad = 0;
  for (std::size_t x = 0; x < h; ++x) {
    if (ig.L(x, e) != ig.L(x ^ e, e)) {
      if (bad++ == 0) v.require(false, "L_{x,e} != L_{xe,e} at x=" + lbl(c.q, x));
    }
  }
  std::size_t sign_bad = 0;
  for (std::size_t x = 0; x < h; ++x) {
    for (std::size_t y = 0; y < h; ++y) {
      const FlipVector& f = ig.L(x, y);
      const bool comm = commutator(c.q.signs(), static_cast<ExpVector>(x & (e - 1)),
                                   static_cast<ExpVector>(y & (e - 1))) < 0;
      for (std::size_t z = 0; z < h; ++z) {
        if ((f.test(z) != f.test(z ^ e)) != comm) {
          if (sign_bad++ == 0) {
            v.require(false, "L_{x,y}(z) and L_{x,y}(ze) violate the [x',y'] relation at " +
                                 lbl(c.q, x) + ", " + lbl(c.q, y) + ", " + lbl(c.q, z));
          }
        }
      }
    }
  }
  v.values()["interpretation"] = "sign of L_{x,y} at z = [x',y'] * sign at ze, x' = x mod e";
  v.values()["triples"] = h * h * h;
  v.values()["violations"] = bad + sign_bad;
}

inline void check_ik_assoc(SuiteContext& c, Verdict& v) {
  const unsigned n = c.q.n();
  if (n < 4) {
    v.values()["vacuous"] = "statement requires n >= 4";
    return;
  }
  const SignTable& s = c.q.signs();
  const ExpVector e = c.top();
  std::size_t instances = 0;
  std::size_t bad = 0;
  std::size_t quasi = 0;
  std::size_t octo = 0;
  std::size_t literal_exceptions = 0;
  std::optional<std::string> quasi_example;
  auto fail = [&](const std::string& what) {
    if (bad++ == 0) v.require(false, what);
  };
  for (unsigned k = 1; k < n; ++k) {
    const ExpVector ik = ExpVector{1} << (k - 1);
    const ExpVector qk = ExpVector{1} << k;
    for (ExpVector x = 0; x < qk; ++x) {
      for (ExpVector z = 0; z < qk; ++z) {
        const ExpVector y = z | e;
        ++instances;
        const int a1 = associator(s, ik, x, y);
        const int a2 = associator(s, x, ik, y);
        const std::string where = "k=" + std::to_string(k) + ", x=" + lbl(c.q, x) +
                                  ", y=" + lbl(c.q, y);
        if (a1 != a2) fail("[i_k,x,y] != [x,i_k,y] at " + where);
        const bool special = y == e || y == (ik | e) || y == (x | e) || y == ((x ^ ik) | e);
        if (x == 0 || x == ik) {
          if (a1 != 1) fail("associator is not 1 inside a group at " + where);
          if (special) ++literal_exceptions;
          continue;
        }
        if (a1 != (special ? -1 : 1)) fail("associator sign differs at " + where);
        const Subloop16Class cls = c.classify_span(ik, x, y);
        if (cls == Subloop16Class::QuasiO16) {
          ++quasi;
          if (!quasi_example) {
            quasi_example = "<" + lbl(c.q, ik) + ", " + lbl(c.q, x) + ", " + lbl(c.q, y) + ">";
          }
        } else {
          ++octo;
        }
        if (cls != (special ? Subloop16Class::O16 : Subloop16Class::QuasiO16)) {
          fail("isomorphism class differs at " + where);
        }
      }
    }
  }
  v.values()["instances"] = instances;
  v.values()["O16"] = octo;
  v.values()["QuasiO16"] = quasi;
  if (quasi_example) v.values()["quasi_example"] = *quasi_example;
  v.values()["x_in_group_with_associator_1"] = literal_exceptions;
  v.values()["violations"] = bad;
  v.require(quasi > 0, "no QuasiO16 subloop found");
}

inline void check_h(SuiteContext& c, Verdict& v) {
  if (c.q.n() < 4) {
    v.values()["vacuous"] = "statement requires n >= 4";
    return;
  }
  const Permutation h = h_mapping(c.q);
  v.require(compose(h, h).is_identity(), "h is not an involution");
  try {
    const FlipVector f = flip_decompose(h);
    v.values()["flipped_classes"] = f.weight();
    v.require(f == h_expected(c.q.n()), "h does not flip exactly the classes outside Q_{n-1}");
  } catch (const NotFlipMap& e) {
    v.require(false, std::string("h is not a flip: ") + e.what());
  }
}

inline void check_center(SuiteContext& c, Verdict& v) {
  const CDLoop& q = c.q;
  const auto gens = mlt_generators(q, true, true);
  // A map commuting with every L_x is R_c with c = f(1), so testing each R_c
  // against the generators finds the whole center.
  std::vector<std::string> central;
  for (std::size_t cand = 0; cand < q.order(); ++cand) {
    const Permutation rc = q.right(cand);
    bool ok = true;
    for (const auto& g : gens) {
      if (compose(rc, g) != compose(g, rc)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      central.push_back(lbl(q, cand));
      v.require(rc == q.left(cand), "central R_c is not L_c for c=" + lbl(q, cand));
    }
  }
  // Z(Q_n) from the sign calculus.
  std::vector<std::string> zq;
  const auto h = static_cast<ExpVector>(c.h());
  for (ExpVector a = 0; a < h; ++a) {
    bool ok = true;
    for (ExpVector x = 0; x < h && ok; ++x) {
      ok = commutator(q.signs(), a, x) == 1;
      for (ExpVector y = 0; y < h && ok; ++y) {
        ok = associator(q.signs(), a, x, y) == 1 && associator(q.signs(), x, a, y) == 1 &&
             associator(q.signs(), x, y, a) == 1;
      }
    }
    if (ok) {
      zq.push_back(lbl(q, a));
      zq.push_back(lbl(q, q.negate(a)));
    }
  }
  std::sort(central.begin(), central.end());
  std::sort(zq.begin(), zq.end());
  v.values()["center_of_mlt"] = central;
  v.values()["center_of_loop"] = zq;
  v.require(central == zq, "Z(Mlt) differs from {L_x : x in Z(Q)}");
  if (q.n() >= 2) v.require(zq.size() == 2, "Z(Q_n) is not {1,-1}");
}

inline void check_subloop16(SuiteContext& c, Verdict& v) {
  const unsigned n = c.q.n();
  if (n < 3) {
    v.values()["vacuous"] = "Q_n has no subloop of order 16";
    return;
  }
  const auto h = static_cast<ExpVector>(c.h());
  const ExpVector e = c.top();
  std::set<std::vector<ExpVector>> seen;
  std::size_t octo = 0;
  std::size_t quasi = 0;
  std::size_t with_e_quasi = 0;
  std::optional<std::string> example;
  for (ExpVector a = 1; a < h; ++a) {
    for (ExpVector b = a + 1; b < h; ++b) {
      for (ExpVector d = b + 1; d < h; ++d) {
        if ((a ^ b) == d) continue;
        std::vector<ExpVector> span{0, a, b, a ^ b, d, a ^ d, b ^ d, a ^ b ^ d};
        std::sort(span.begin(), span.end());
        if (span[1] != a) continue;  // visit each subspace from its two smallest members
        if (span[2] != b) continue;
        if (!seen.insert(span).second) continue;
        const Subloop16Class cls = c.classify_span(a, b, d);
        const bool has_e = std::binary_search(span.begin(), span.end(), e);
        if (cls == Subloop16Class::O16) {
          ++octo;
        } else {
          ++quasi;
          if (has_e) ++with_e_quasi;
          if (!example) example = "<" + lbl(c.q, a) + ", " + lbl(c.q, b) + ", " + lbl(c.q, d) + ">";
        }
      }
    }
  }
  v.values()["subloops"] = seen.size();
  v.values()["O16"] = octo;
  v.values()["QuasiO16"] = quasi;
  if (example) v.values()["quasi_example"] = *example;
  v.require(with_e_quasi == 0, "a 16-element subloop containing e is not O16");
  v.require((quasi > 0) == (n >= 4), "QuasiO16 occurrence does not match n >= 4");
}

inline void check_doubling_consistency(SuiteContext& c, Verdict& v) {
  const auto h = static_cast<ExpVector>(c.h());
  std::size_t bad = 0;
  for (ExpVector x = 0; x < h; ++x) {
    for (ExpVector y = 0; y < h; ++y) {
      if (product_sign_recursive(x, y, c.q.n()) != c.q.signs().negative(x, y)) {
        if (bad++ == 0) v.require(false, "sign differs at " + lbl(c.q, x) + ", " + lbl(c.q, y));
      }
    }
  }
  v.values()["pairs"] = std::uint64_t{h} * h;
  v.values()["violations"] = bad;
}

inline void check_quotient(SuiteContext& c, Verdict& v) {
  const CayleyTable quotient = quotient_by_signs(cd_table(c.q.n()));
  v.values()["order"] = quotient.size();
  v.require(quotient.size() == c.h(), "quotient order is not 2^n");
  v.require(is_elementary_abelian_2_group(quotient), "quotient is not elementary abelian");
}

struct CheckSpec {
  const char* name;
  const char* anchor;
  void (*run)(SuiteContext&, Verdict&);
};

inline const std::vector<CheckSpec>& check_specs() {
  static const std::vector<CheckSpec> specs = {
      {"mlt_even_permutations", "elements of Mlt(Q_n) are even permutations", check_even},
      {"mlt_element_orders", "|f| in {1,2,4} for f in Mlt(Q_n)", check_orders},
      {"associator_symmetry", "[x,y,z] = [z,y,x]", check_associator_symmetry},
      {"inner_map_formulas", "T_x(z) = [x,z]z, L_{x,y}(z) = [y,x,z]z, R_{x,y}(z) = [z,x,y]z",
       check_inner_formulas},
      {"flip_forms", "T_y T_x = (x,-x)(y,-y); L_{y,e} L_{x,e} = (x,-x)(y,-y)(xe,-xe)(ye,-ye)",
       check_flip_forms},
      {"left_right_inner_equal", "L_{x,y} = R_{x,y}", check_left_right_inner},
      {"inn_structure", "Inn(Q_n) is elementary abelian of order 2^(2^n-2), made of flips",
       check_inn_structure},
      {"mlt_order", "|Mlt(Q)| = |Q||Inn(Q)|", check_mlt_order},
      {"non_automorphic", "nonassociative Q_n are not automorphic", check_non_automorphic},
      {"small_generators_lemma", "|g_j g_k| = 2 iff g_j g_k = g_k g_j", check_small_lemma},
      {"small_product_orders", "|q_{j,k}(x)| = |t p_{k,j}(x)| = |q_{j,k}(x) t p_{k,j}(x)| = 2",
       check_small_product},
      {"new_elt_identity", "i_k(i_n x) = -i_n(i_k x)", check_new_elt},
      {"ind_identity", "i_j(i_k(x i_n)) = s i_k(i_j(x i_n))", check_ind},
      {"k_construction", "K is elementary abelian of order 2^n", check_k},
      {"n_construction", "N = Inn x Z has basis N* of size 2^n - 1", check_n},
      {"semidirect_mlt", "Mlt(Q_n) = (Inn(Q_n) x Z(Q_n)) x| K", check_semidirect},
      {"inn_left_right_equal", "Inn_l(Q_n) = Inn_r(Q_n)", check_inn_left_right},
      {"onesided_orders", "|Inn_l(Q_n)| = 2^(2^(n-1)-1), |Mlt_l| = |Q||Inn_l|",
       check_onesided_orders},
      {"semidirect_mlt_left", "Mlt_l(Q_n) = (Inn_l(Q_n) x Z(Q_n)) x| K", check_semidirect_left},
      {"mirror_conjugation", "J L_a J = R_{a^-1}, so Mlt_l and Mlt_r are isomorphic",
       check_mirror},
      {"doubled_associators", "associator identities for doubled elements",
       check_doubled_associators},
      {"left_inner_e_symmetry", "L_{x,e} = L_{xe,e} and L_{x,y}(z) = [x',y'] L_{x,y}(ze)",
       check_xe},
      {"ik_associator_classification", "[i_k,x,y] = [x,i_k,y] and <i_k,x,y> is O16 or QuasiO16",
       check_ik_assoc},
      {"h_mapping", "prod L_{x,i_{n-1}} flips exactly the classes outside Q_{n-1}", check_h},
      {"center_of_mlt", "Z(Mlt(Q)) = {L_x : x in Z(Q)}", check_center},
      {"subloop16_classification", "16-element subloops are O16 or QuasiO16; with e, O16",
       check_subloop16},
      {"mul_doubling_consistency", "recursive doubling signs equal the memoized table",
       check_doubling_consistency},
      {"quotient_elementary_abelian", "Q_n/{1,-1} is elementary abelian of order 2^n",
       check_quotient},
  };
  return specs;
}

}  // namespace detail

/// Names of the checks in report order.
[[nodiscard]] inline std::vector<std::string> theorem_suite_checks() {
  std::vector<std::string> out;
  for (const auto& s : detail::check_specs()) out.emplace_back(s.name);
  return out;
}

/// Runs every check for Q_n. Failures and skipped checks are report entries;
/// exceptions only signal invalid arguments.
[[nodiscard]] inline VerificationReport theorem_suite(unsigned n, const SuiteOptions& options = {}) {
  if (n < 2 || n > kMaxSuiteDimension) {
    throw OutOfRange("theorem_suite supports 2 <= n <= " + std::to_string(kMaxSuiteDimension) +
                     ", got " + std::to_string(n));
  }
  if (options.cap == 0) throw OutOfRange("closure cap must be at least 1");
  VerificationReport report;
  report.n = n;
  report.mode = resolve_mode(options.mode, n);
  report.seed = options.seed;

  detail::SuiteContext ctx(n, report.mode, options);
  const auto& specs = detail::check_specs();
  report.checks.resize(specs.size());

  auto run_one = [&](std::size_t i) {
    CheckRecord& rec = report.checks[i];
    rec.name = specs[i].name;
    rec.anchor = specs[i].anchor;
    const auto start = std::chrono::steady_clock::now();
    detail::Verdict verdict(rec);
    try {
      specs[i].run(ctx, verdict);
    } catch (const CapExceeded& e) {
      rec.status = Status::skipped;
      rec.witness = e.what();
    } catch (const std::exception& e) {
      rec.status = Status::fail;
      rec.witness = std::string("exception: ") + e.what();
    }
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                 .count();
  };

  const unsigned threads = std::max(1U, options.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) run_one(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return report;
}

}  // namespace loopforge
