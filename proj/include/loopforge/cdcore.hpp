#pragma once

// Signed basis elements of the Cayley-Dickson algebras and their products.
//
// An element of Q_n is stored as a sign bit and an n-bit exponent vector:
// bit j-1 of the vector is the exponent of the canonical generator i_j, so
// the element is +/- the left-nested product ((i_a i_b) i_c)... of the
// generators whose bits are set. i_n is the unit added by the last doubling.
// The pair form (x, b) of the doubling rules corresponds to the low n-1 bits
// (x) and the top bit (b); (x, 1) is x * i_n.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loopforge/errors.hpp"

namespace loopforge {

inline constexpr unsigned kMaxDimension = 16;

/// Largest n for which SignTable stores every product sign.
inline constexpr unsigned kMaxMemoizedDimension = 12;

using ExpVector = std::uint32_t;

/// One element of the Cayley-Dickson loop Q_n.
class LoopElement {
 public:
  constexpr LoopElement() = default;

  LoopElement(unsigned n, ExpVector exps, bool negative = false)
      : exps_(exps), n_(n), negative_(negative) {
    if (n > kMaxDimension) {
      throw OutOfRange("dimension " + std::to_string(n) + " exceeds " +
                       std::to_string(kMaxDimension));
    }
    if ((exps >> n) != 0) {
      throw OutOfRange("exponent vector has bits above dimension " + std::to_string(n));
    }
  }

  static LoopElement one(unsigned n) { return {n, 0, false}; }
  static LoopElement minus_one(unsigned n) { return {n, 0, true}; }

  /// The canonical generator i_j, 1 <= j <= n.
  static LoopElement generator(unsigned n, unsigned j) {
    if (j == 0 || j > n) {
      throw OutOfRange("generator i" + std::to_string(j) + " is not in Q_" + std::to_string(n));
    }
    return {n, ExpVector{1} << (j - 1), false};
  }

  [[nodiscard]] constexpr unsigned dimension() const { return n_; }
  [[nodiscard]] constexpr ExpVector exps() const { return exps_; }
  [[nodiscard]] constexpr bool negative() const { return negative_; }
  [[nodiscard]] constexpr bool is_real() const { return exps_ == 0; }

  [[nodiscard]] LoopElement operator-() const { return {n_, exps_, !negative_}; }

  friend constexpr bool operator==(const LoopElement&, const LoopElement&) = default;

 private:
  ExpVector exps_ = 0;
  unsigned n_ = 0;
  bool negative_ = false;
};

namespace detail {

inline void require_same_dimension(const LoopElement& x, const LoopElement& y) {
  if (x.dimension() != y.dimension()) {
    throw DimensionMismatch("elements of Q_" + std::to_string(x.dimension()) + " and Q_" +
                            std::to_string(y.dimension()));
  }
}

}  // namespace detail

/// Sign of i_u * i_v relative to i_{u xor v}, evaluated with the four
/// doubling rules one level at a time. The result does not depend on n
/// beyond the highest set bit, because Q_{n-1} embeds in Q_n as (x, 0).
///
/// Returns true when the product carries a minus sign.
[[nodiscard]] inline bool product_sign_recursive(ExpVector u, ExpVector v, unsigned n) {
  bool neg = false;
  for (unsigned level = n; level > 0; --level) {
    const ExpVector top = ExpVector{1} << (level - 1);
    const ExpVector low = top - 1;
    const bool ut = (u & top) != 0;
    const bool vt = (v & top) != 0;
    const ExpVector a = u & low;
    const ExpVector b = v & low;
    if (!ut && !vt) {
      // (x,0)(y,0) = (xy,0)
      u = a;
      v = b;
    } else if (!ut && vt) {
      // (x,0)(y,1) = (yx,1)
      u = b;
      v = a;
    } else if (ut && !vt) {
      // (x,1)(y,0) = (xy*,1); y* = -y unless y is real
      neg ^= (b != 0);
      u = a;
      v = b;
    } else {
      // (x,1)(y,1) = (-y*x,0)
      neg ^= true;
      neg ^= (b != 0);
      u = b;
      v = a;
    }
  }
  return neg;
}

/// Product signs of Q_n, memoized as a bit matrix for n <= 12 and computed on
/// demand above that.
class SignTable {
 public:
  explicit SignTable(unsigned n) : n_(n) {
    if (n > kMaxDimension) {
      throw OutOfRange("dimension " + std::to_string(n) + " exceeds " +
                       std::to_string(kMaxDimension));
    }
    if (n <= kMaxMemoizedDimension) build();
  }

  [[nodiscard]] unsigned dimension() const { return n_; }
  [[nodiscard]] bool memoized() const { return !bits_.empty(); }

  /// True when i_u * i_v = -i_{u xor v}.
  [[nodiscard]] bool negative(ExpVector u, ExpVector v) const {
    if (bits_.empty()) return product_sign_recursive(u, v, n_);
    const std::size_t pos = (std::size_t{u} << n_) | v;
    return ((bits_[pos >> 6] >> (pos & 63)) & 1U) != 0;
  }

  /// +1 or -1.
  [[nodiscard]] int sigma(ExpVector u, ExpVector v) const { return negative(u, v) ? -1 : 1; }

 private:
  // Fills the table level by level: entries with max(u, v) in [t, 2t) are
  // derived from the already filled block below t.
  void build() {
    const std::size_t side = std::size_t{1} << n_;
    bits_.assign(std::max<std::size_t>(1, (side * side + 63) / 64), 0);
    auto set = [&](ExpVector u, ExpVector v, bool neg) {
      const std::size_t pos = (std::size_t{u} << n_) | v;
      if (neg) bits_[pos >> 6] |= std::uint64_t{1} << (pos & 63);
    };
    for (unsigned level = 1; level <= n_; ++level) {
      const ExpVector t = ExpVector{1} << (level - 1);
      for (ExpVector u = 0; u < 2 * t; ++u) {
        for (ExpVector v = 0; v < 2 * t; ++v) {
          if (u < t && v < t) continue;
          const ExpVector a = u & (t - 1);
          const ExpVector b = v & (t - 1);
          const bool ut = u >= t;
          const bool vt = v >= t;
          bool neg = false;
          if (!ut) {
            neg = stored(b, a);
          } else if (!vt) {
            neg = stored(a, b) ^ (b != 0);
          } else {
            neg = !(stored(b, a) ^ (b != 0));
          }
          set(u, v, neg);
        }
      }
    }
  }

  [[nodiscard]] bool stored(ExpVector u, ExpVector v) const {
    const std::size_t pos = (std::size_t{u} << n_) | v;
    return ((bits_[pos >> 6] >> (pos & 63)) & 1U) != 0;
  }

  unsigned n_;
  std::vector<std::uint64_t> bits_;
};

[[nodiscard]] inline LoopElement mul(const LoopElement& x, const LoopElement& y) {
  detail::require_same_dimension(x, y);
  const bool neg = x.negative() ^ y.negative() ^
                   product_sign_recursive(x.exps(), y.exps(), x.dimension());
  return {x.dimension(), x.exps() ^ y.exps(), neg};
}

/// Product through a memoized table; must agree with mul().
[[nodiscard]] inline LoopElement mul(const SignTable& signs, const LoopElement& x,
                                     const LoopElement& y) {
  detail::require_same_dimension(x, y);
  if (signs.dimension() != x.dimension()) {
    throw DimensionMismatch("sign table of Q_" + std::to_string(signs.dimension()) +
                            " used for Q_" + std::to_string(x.dimension()));
  }
  const bool neg = x.negative() ^ y.negative() ^ signs.negative(x.exps(), y.exps());
  return {x.dimension(), x.exps() ^ y.exps(), neg};
}

[[nodiscard]] inline LoopElement conj(const LoopElement& x) { return x.is_real() ? x : -x; }

[[nodiscard]] inline LoopElement inv(const LoopElement& x) { return conj(x); }

[[nodiscard]] inline int elt_order(const LoopElement& x) {
  if (!x.is_real()) return 4;
  return x.negative() ? 2 : 1;
}

/// s in {+1, -1} with xy = s * (yx).
[[nodiscard]] inline int commutator(const LoopElement& x, const LoopElement& y) {
  detail::require_same_dimension(x, y);
  const unsigned n = x.dimension();
  const bool neg = product_sign_recursive(x.exps(), y.exps(), n) ^
                   product_sign_recursive(y.exps(), x.exps(), n);
  return neg ? -1 : 1;
}

/// s in {+1, -1} with (xy)z = s * (x(yz)).
[[nodiscard]] inline int associator(const LoopElement& x, const LoopElement& y,
                                    const LoopElement& z) {
  detail::require_same_dimension(x, y);
  detail::require_same_dimension(y, z);
  const unsigned n = x.dimension();
  const ExpVector u = x.exps();
  const ExpVector v = y.exps();
  const ExpVector w = z.exps();
  const bool left = product_sign_recursive(u, v, n) ^ product_sign_recursive(u ^ v, w, n);
  const bool right = product_sign_recursive(v, w, n) ^ product_sign_recursive(u, v ^ w, n);
  return (left ^ right) ? -1 : 1;
}

/// Table-backed commutator and associator used by the hot verification loops.
[[nodiscard]] inline int commutator(const SignTable& s, ExpVector u, ExpVector v) {
  return (s.negative(u, v) ^ s.negative(v, u)) ? -1 : 1;
}

[[nodiscard]] inline int associator(const SignTable& s, ExpVector u, ExpVector v, ExpVector w) {
  const bool left = s.negative(u, v) ^ s.negative(u ^ v, w);
  const bool right = s.negative(v, w) ^ s.negative(u, v ^ w);
  return (left ^ right) ? -1 : 1;
}

// Index encoding: sign * 2^n + integer(exps).

[[nodiscard]] inline std::size_t loop_order(unsigned n) { return std::size_t{2} << n; }

[[nodiscard]] inline std::size_t index_of(const LoopElement& x) {
  return (x.negative() ? (std::size_t{1} << x.dimension()) : 0) + x.exps();
}

[[nodiscard]] inline LoopElement from_index(unsigned n, std::size_t k) {
  if (n > kMaxDimension) {
    throw OutOfRange("dimension " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxDimension));
  }
  if (k >= loop_order(n)) {
    throw OutOfRange("index " + std::to_string(k) + " outside Q_" + std::to_string(n));
  }
  const std::size_t half = std::size_t{1} << n;
  return {n, static_cast<ExpVector>(k % half), k >= half};
}

[[nodiscard]] inline std::string format(const LoopElement& x) {
  std::string out = x.negative() ? "-" : "";
  if (x.is_real()) return out + "1";
  for (unsigned j = 1; j <= x.dimension(); ++j) {
    if ((x.exps() >> (j - 1)) & 1U) out += "i" + std::to_string(j);
  }
  return out;
}

/// Parses `[-]1` or `[-]i<j>(i<k>)*` with strictly increasing subscripts in 1..n.
[[nodiscard]] inline LoopElement parse(unsigned n, std::string_view text) {
  const std::string original(text);
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("cannot parse '" + original + "' as an element of Q_" + std::to_string(n) +
                      ": " + why);
  };
  if (n > kMaxDimension) throw fail("dimension too large");
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text == "1") return {n, 0, negative};
  if (text.empty()) throw fail("empty element");

  ExpVector exps = 0;
  unsigned last = 0;
  while (!text.empty()) {
    if (text.front() != 'i') throw fail("expected 'i'");
    text.remove_prefix(1);
    unsigned j = 0;
    std::size_t digits = 0;
    while (digits < text.size() && text[digits] >= '0' && text[digits] <= '9') {
      j = j * 10 + static_cast<unsigned>(text[digits] - '0');
      if (j > 1000) throw fail("subscript too large");
      ++digits;
    }
    if (digits == 0) throw fail("missing subscript");
    text.remove_prefix(digits);
    if (j == 0 || j > n) throw fail("subscript " + std::to_string(j) + " out of range");
    if (j <= last) throw fail("subscripts must be strictly increasing");
    exps |= ExpVector{1} << (j - 1);
    last = j;
  }
  return {n, exps, negative};
}

}  // namespace loopforge
