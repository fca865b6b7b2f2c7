#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "loopforge/errors.hpp"

namespace loopforge {

using Point = std::uint16_t;

inline constexpr std::size_t kMaxPermutationDegree = std::size_t{1} << 16;

/// A bijection on {0, ..., degree-1}, stored as its image array.
///
/// Composition follows function notation: (p * q)(k) = p(q(k)), so q acts first.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t degree) {
    check_degree(degree);
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), Point{0});
    return p;
  }

  /// Throws OutOfRange unless `images` is a bijection.
  static Permutation from_images(std::span<const std::size_t> images) {
    check_degree(images.size());
    Permutation p;
    p.images_.reserve(images.size());
    for (std::size_t v : images) p.images_.push_back(static_cast<Point>(v));
    std::vector<bool> seen(images.size(), false);
    for (std::size_t v : images) {
      if (v >= images.size() || seen[v]) throw OutOfRange("image array is not a bijection");
      seen[v] = true;
    }
    return p;
  }

  static Permutation from_images(std::vector<Point> images) {
    check_degree(images.size());
    std::vector<bool> seen(images.size(), false);
    for (Point v : images) {
      if (v >= images.size() || seen[v]) throw OutOfRange("image array is not a bijection");
      seen[v] = true;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  /// Trusted constructor for images produced by the library itself.
  static Permutation adopt(std::vector<Point> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  [[nodiscard]] std::size_t degree() const { return images_.size(); }
  [[nodiscard]] Point operator()(std::size_t k) const { return images_[k]; }
  [[nodiscard]] Point operator[](std::size_t k) const { return images_[k]; }
  [[nodiscard]] std::span<const Point> images() const { return images_; }

  [[nodiscard]] bool is_identity() const {
    for (std::size_t k = 0; k < images_.size(); ++k) {
      if (images_[k] != k) return false;
    }
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  static void check_degree(std::size_t degree) {
    if (degree > kMaxPermutationDegree) {
      throw OutOfRange("permutation degree " + std::to_string(degree) + " is too large");
    }
  }

  std::vector<Point> images_;
};

/// p after q.
[[nodiscard]] inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw DimensionMismatch("composing permutations of degree " + std::to_string(p.degree()) +
                            " and " + std::to_string(q.degree()));
  }
  std::vector<Point> out(p.degree());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p[q[k]];
  return Permutation::adopt(std::move(out));
}

[[nodiscard]] inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

[[nodiscard]] inline Permutation invert(const Permutation& p) {
  std::vector<Point> out(p.degree());
  for (std::size_t k = 0; k < out.size(); ++k) out[p[k]] = static_cast<Point>(k);
  return Permutation::adopt(std::move(out));
}

/// p q p^-1
[[nodiscard]] inline Permutation conjugate(const Permutation& p, const Permutation& q) {
  return compose(compose(p, q), invert(p));
}

/// Cycle lengths, including fixed points, in order of smallest member.
[[nodiscard]] inline std::vector<std::size_t> cycle_type(const Permutation& p) {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t k = start; !seen[k]; k = p[k]) {
      seen[k] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

enum class Parity { even, odd };

[[nodiscard]] inline Parity parity(const Permutation& p) {
  std::size_t transpositions = 0;
  for (std::size_t len : cycle_type(p)) transpositions += len - 1;
  return transpositions % 2 == 0 ? Parity::even : Parity::odd;
}

[[nodiscard]] inline std::uint64_t perm_order(const Permutation& p) {
  std::uint64_t order = 1;
  for (std::size_t len : cycle_type(p)) order = std::lcm(order, std::uint64_t{len});
  return order;
}

// Text form: "[3 2 1 0]".

[[nodiscard]] inline std::string to_string(const Permutation& p) {
  std::string out = "[";
  for (std::size_t k = 0; k < p.degree(); ++k) {
    if (k) out += ' ';
    out += std::to_string(p[k]);
  }
  out += ']';
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << to_string(p); }

[[nodiscard]] inline Permutation parse_permutation(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r");
  std::size_t last = text.find_last_not_of(" \t\r");
  if (first == std::string_view::npos || text[first] != '[' || text[last] != ']') {
    throw ParseError("permutation must be written as [a b c ...]");
  }
  std::istringstream in(std::string(text.substr(first + 1, last - first - 1)));
  std::vector<std::size_t> images;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(token, &used);
    } catch (const std::exception&) {
      throw ParseError("bad permutation entry '" + token + "'");
    }
    if (used != token.size()) throw ParseError("bad permutation entry '" + token + "'");
    images.push_back(value);
  }
  try {
    return Permutation::from_images(images);
  } catch (const OutOfRange& e) {
    throw ParseError(e.what());
  }
}

/// One permutation per line; blank lines and lines starting with '#' are ignored.
[[nodiscard]] inline std::vector<Permutation> read_generators(std::istream& in) {
  std::vector<Permutation> gens;
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    gens.push_back(parse_permutation(line));
  }
  return gens;
}

inline void write_generators(std::ostream& out, std::span<const Permutation> gens) {
  for (const auto& g : gens) out << to_string(g) << '\n';
}

}  // namespace loopforge
