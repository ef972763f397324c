#ifndef HURWITZ_PERMUTATION_HPP
#define HURWITZ_PERMUTATION_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/error.hpp"

namespace hurwitz {

/// A point of the letter set {0, ..., d-1}. Text I/O is 1-based.
using Point = std::uint32_t;

/**
 * A bijection of {0, ..., d-1} in one-line notation: images()[x] is the
 * image of x. Permutations act on the right, so compose(p, q) applies p
 * first and then q.
 *
 * The ordering is lexicographic on the one-line notation and is the total
 * order used for every canonical representative in the library.
 */
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point x : images_) {
      if (x >= images_.size() || seen[x])
        throw Error(Errc::NotABijection, "one-line notation is not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    return Permutation(std::move(images), unchecked{});
  }

  std::size_t degree() const noexcept { return images_.size(); }
  std::span<const Point> images() const noexcept { return images_; }

  Point operator()(Point x) const { return images_[x]; }

  bool is_identity() const noexcept {
    for (std::size_t x = 0; x < images_.size(); ++x)
      if (images_[x] != x) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<Point>(x);
    return Permutation(std::move(inv), unchecked{});
  }

  /// Order of the cyclic group generated by this permutation.
  std::size_t order() const {
    std::size_t result = 1;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (seen[start]) continue;
      std::size_t len = 0;
      for (Point x = static_cast<Point>(start); !seen[x]; x = images_[x]) {
        seen[x] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  /// Disjoint-cycle notation, 1-based, cycles starting at their smallest
  /// point and ordered by it. The identity prints as "()".
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (seen[start] || images_[start] == start) continue;
      out += '(';
      Point x = static_cast<Point>(start);
      bool first = true;
      while (!seen[x]) {
        seen[x] = true;
        if (!first) out += ' ';
        out += std::to_string(x + 1);
        first = false;
        x = images_[x];
      }
      out += ')';
    }
    return out.empty() ? std::string("()") : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Permutation& p) {
    return os << p.to_cycles();
  }

 private:
  struct unchecked {};
  Permutation(std::vector<Point> images, unchecked) : images_(std::move(images)) {}

  friend Permutation compose(const Permutation& p, const Permutation& q);

  std::vector<Point> images_;
};

inline void require_same_degree(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(Errc::DegreeMismatch,
                "degrees " + std::to_string(a) + " and " + std::to_string(b) + " differ");
}

/// x(pq) = (xp)q.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  require_same_degree(p.degree(), q.degree());
  std::vector<Point> images(p.degree());
  for (std::size_t x = 0; x < images.size(); ++x) images[x] = q(p(static_cast<Point>(x)));
  return Permutation(std::move(images), Permutation::unchecked{});
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

/// sigma * p * sigma^-1.
inline Permutation conjugate(const Permutation& p, const Permutation& sigma) {
  return compose(compose(sigma, p), sigma.inverse());
}

/// a * b * a^-1 * b^-1.
inline Permutation commutator(const Permutation& a, const Permutation& b) {
  return a * b * a.inverse() * b.inverse();
}

/// Parses disjoint-cycle notation over 1-based points, e.g. "(1 2 3)(4,5)".
/// "id" and "()" denote the identity.
inline Permutation parse_permutation(std::string_view text, std::size_t degree) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  std::string compact;
  for (char c : text)
    if (!is_space(c)) compact += c;
  if (compact == "id" || compact == "()") return Permutation::identity(degree);
  if (compact.empty()) throw Error(Errc::SyntaxError, "empty permutation text");

  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    if (text[i] != '(')
      throw Error(Errc::SyntaxError, "expected '(' at offset " + std::to_string(i));
    ++i;
    std::vector<Point> cycle;
    bool closed = false;
    bool pending_comma = false;
    while (i < text.size()) {
      char c = text[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        unsigned long long value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          value = value * 10 + static_cast<unsigned>(text[i] - '0');
          if (value > degree + 1ULL) value = degree + 1ULL;  // saturate; range-checked below
          ++i;
        }
        if (value < 1 || value > degree)
          throw Error(Errc::PointOutOfRange,
                      "point " + std::to_string(value) + " outside 1.." + std::to_string(degree));
        Point p = static_cast<Point>(value - 1);
        if (used[p]) throw Error(Errc::RepeatedPoint, "point " + std::to_string(value) + " repeated");
        used[p] = true;
        cycle.push_back(p);
        pending_comma = false;
      } else if (is_space(c)) {
        ++i;
      } else if (c == ',') {
        if (cycle.empty() || pending_comma)
          throw Error(Errc::SyntaxError, "unexpected ',' at offset " + std::to_string(i));
        pending_comma = true;
        ++i;
      } else if (c == ')') {
        if (cycle.empty() || pending_comma)
          throw Error(Errc::SyntaxError, "empty cycle or dangling ',' at offset " + std::to_string(i));
        ++i;
        closed = true;
        break;
      } else {
        throw Error(Errc::SyntaxError, std::string("unexpected character '") + c + "'");
      }
    }
    if (!closed) throw Error(Errc::SyntaxError, "unbalanced parentheses");
    for (std::size_t k = 0; k < cycle.size(); ++k) images[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return Permutation(std::move(images));
}

/// Cycles of p including fixed points, each sorted, ordered by smallest point.
inline std::vector<std::vector<Point>> cyclic_orbits(const Permutation& p) {
  std::vector<std::vector<Point>> orbits;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::vector<Point> orbit;
    for (Point x = static_cast<Point>(start); !seen[x]; x = p(x)) {
      seen[x] = true;
      orbit.push_back(x);
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

/// Cycle lengths in non-increasing order (a partition of the degree).
inline std::vector<std::size_t> cycle_type(const Permutation& p) {
  std::vector<std::size_t> lengths;
  for (const auto& orbit : cyclic_orbits(p)) lengths.push_back(orbit.size());
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

}  // namespace hurwitz

template <>
struct std::hash<hurwitz::Permutation> {
  std::size_t operator()(const hurwitz::Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (hurwitz::Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

#endif  // HURWITZ_PERMUTATION_HPP
