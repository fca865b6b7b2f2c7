#pragma once

// Flip vectors and GF(2) row reduction.
//
// A flip permutation on Q_n sends every element x to x or -x. Composition of
// flips is XOR of their vectors over the 2^n sign classes, so a group of flips
// is an F_2 vector space and its order is 2^rank.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loopforge/errors.hpp"
#include "loopforge/permutation.hpp"

namespace loopforge {

class FlipVector {
 public:
  FlipVector() = default;
  explicit FlipVector(std::size_t classes) : size_(classes), words_((classes + 63) / 64, 0) {}

  [[nodiscard]] std::size_t size() const { return size_; }

  [[nodiscard]] bool test(std::size_t c) const { return (words_[c >> 6] >> (c & 63)) & 1U; }
  void set(std::size_t c, bool value = true) {
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    if (value) {
      words_[c >> 6] |= bit;
    } else {
      words_[c >> 6] &= ~bit;
    }
  }
  void flip(std::size_t c) { words_[c >> 6] ^= std::uint64_t{1} << (c & 63); }

  FlipVector& operator^=(const FlipVector& other) {
    check_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }
  friend FlipVector operator^(FlipVector a, const FlipVector& b) { return a ^= b; }

  [[nodiscard]] std::size_t weight() const {
    std::size_t w = 0;
    for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
  }
  [[nodiscard]] bool none() const {
    for (auto word : words_) {
      if (word) return false;
    }
    return true;
  }

  /// Lowest set class, or nullopt for the zero vector.
  [[nodiscard]] std::optional<std::size_t> lowest() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return std::nullopt;
  }

  [[nodiscard]] std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < size_; ++c) {
      if (test(c)) out.push_back(c);
    }
    return out;
  }

  [[nodiscard]] std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const FlipVector&, const FlipVector&) = default;

  void check_size(const FlipVector& other) const {
    if (other.size_ != size_) {
      throw DimensionMismatch("flip vectors of length " + std::to_string(size_) + " and " +
                              std::to_string(other.size_));
    }
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Bit string with class 0 (= {1, -1}) leftmost.
[[nodiscard]] inline std::string to_string(const FlipVector& v) {
  std::string out(v.size(), '0');
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v.test(c)) out[c] = '1';
  }
  return out;
}

[[nodiscard]] inline FlipVector parse_flip_vector(std::string_view bits) {
  FlipVector v(bits.size());
  for (std::size_t c = 0; c < bits.size(); ++c) {
    if (bits[c] == '1') {
      v.set(c);
    } else if (bits[c] != '0') {
      throw ParseError("flip vector must contain only 0 and 1");
    }
  }
  return v;
}

/// Sign-class vector of a flip permutation on 2^(n+1) points (x and -x differ by 2^n).
[[nodiscard]] inline FlipVector flip_decompose(const Permutation& p) {
  const std::size_t m = p.degree();
  if (m % 2 != 0) throw NotFlipMap("odd degree " + std::to_string(m));
  const std::size_t half = m / 2;
  FlipVector v(half);
  for (std::size_t c = 0; c < half; ++c) {
    const std::size_t pos = p[c];
    const std::size_t neg = p[c + half];
    if (pos == c && neg == c + half) continue;
    if (pos == c + half && neg == c) {
      v.set(c);
      continue;
    }
    throw NotFlipMap("point " + std::to_string(c) + " maps to " + std::to_string(pos) +
                     ", outside its sign class");
  }
  return v;
}

[[nodiscard]] inline Permutation flip_permutation(const FlipVector& v) {
  const std::size_t half = v.size();
  std::vector<Point> images(2 * half);
  for (std::size_t c = 0; c < half; ++c) {
    const bool f = v.test(c);
    images[c] = static_cast<Point>(f ? c + half : c);
    images[c + half] = static_cast<Point>(f ? c : c + half);
  }
  return Permutation::adopt(std::move(images));
}

/// Row-reduced basis of a subspace of F_2^length. Each row has a distinct
/// pivot (its lowest set bit) and no other row has that bit set.
class GF2Basis {
 public:
  GF2Basis() = default;
  explicit GF2Basis(std::size_t length) : length_(length) {}

  [[nodiscard]] std::size_t length() const { return length_; }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] const std::vector<FlipVector>& rows() const { return rows_; }

  /// v reduced against the basis; zero iff v lies in the span.
  [[nodiscard]] FlipVector reduce(FlipVector v) const {
    check(v);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v.test(pivots_[i])) v ^= rows_[i];
    }
    return v;
  }

  [[nodiscard]] bool contains(const FlipVector& v) const { return reduce(v).none(); }

  /// Adds v to the span; returns false when it was already there.
  bool insert(const FlipVector& v) {
    FlipVector r = reduce(v);
    auto pivot = r.lowest();
    if (!pivot) return false;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].test(*pivot)) rows_[i] ^= r;
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(*pivot);
    return true;
  }

  /// Same subspace, regardless of the order rows were inserted.
  [[nodiscard]] bool spans_same(const GF2Basis& other) const {
    if (other.rank() != rank()) return false;
    for (const auto& row : other.rows_) {
      if (!contains(row)) return false;
    }
    return true;
  }

 private:
  void check(const FlipVector& v) const {
    if (v.size() != length_) {
      throw DimensionMismatch("vector of length " + std::to_string(v.size()) +
                              " inserted into basis of length " + std::to_string(length_));
    }
  }

  std::size_t length_ = 0;
  std::vector<FlipVector> rows_;
  std::vector<std::size_t> pivots_;
};

[[nodiscard]] inline GF2Basis gf2_insert(GF2Basis basis, const FlipVector& v) {
  basis.insert(v);
  return basis;
}

[[nodiscard]] inline std::size_t gf2_rank(std::span<const FlipVector> vectors) {
  if (vectors.empty()) return 0;
  GF2Basis basis(vectors.front().size());
  for (const auto& v : vectors) basis.insert(v);
  return basis.rank();
}

}  // namespace loopforge
