#ifndef HURWITZ_PERM_GROUP_HPP
#define HURWITZ_PERM_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "hurwitz/error.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz {

inline constexpr std::size_t kDefaultOrderCap = 1'000'000;
inline constexpr std::size_t kDefaultSymSearchBound = 10;

/**
 * A finite subgroup of S(Lambda) with every element materialized.
 *
 * Elements are kept sorted in the global permutation order, so index_of is
 * a binary search and element lists compare deterministically. The marked
 * point lambda_0 travels with the group and selects the pointed stabilizer
 * N(lambda_0) downstream.
 */
class PermGroup {
 public:
  PermGroup() = default;

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  Point marked_point() const noexcept { return marked_point_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  Permutation identity() const { return Permutation::identity(degree_); }

  bool contains(const Permutation& p) const {
    return p.degree() == degree_ && std::binary_search(elements_.begin(), elements_.end(), p);
  }

  std::optional<std::size_t> index_of(const Permutation& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  PermGroup with_marked_point(Point lambda) const {
    if (lambda >= degree_)
      throw Error(Errc::PointOutOfRange, "marked point " + std::to_string(lambda + 1) + " outside Lambda");
    PermGroup copy = *this;
    copy.marked_point_ = lambda;
    return copy;
  }

  /// Builds a group from a list already known to be closed. Checked.
  static PermGroup from_elements(std::size_t degree, std::vector<Permutation> elements,
                                 std::vector<Permutation> generators = {}, Point marked_point = 0) {
    for (const auto& e : elements) require_same_degree(e.degree(), degree);
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    PermGroup g;
    g.degree_ = degree;
    g.elements_ = std::move(elements);
    g.generators_ = generators.empty() ? g.elements_ : std::move(generators);
    g.marked_point_ = marked_point;
    if (!g.contains(g.identity())) throw Error(Errc::NotASubgroup, "identity missing");
    for (const auto& a : g.elements_) {
      if (!g.contains(a.inverse())) throw Error(Errc::NotASubgroup, "not closed under inverse");
      for (const auto& b : g.elements_)
        if (!g.contains(a * b)) throw Error(Errc::NotASubgroup, "not closed under composition");
    }
    return g;
  }

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  Point marked_point_ = 0;

  friend PermGroup make_unchecked_group(std::size_t, std::vector<Permutation>, std::vector<Permutation>, Point);
};

inline PermGroup make_unchecked_group(std::size_t degree, std::vector<Permutation> sorted_elements,
                                      std::vector<Permutation> generators, Point marked_point) {
  PermGroup g;
  g.degree_ = degree;
  g.elements_ = std::move(sorted_elements);
  g.generators_ = std::move(generators);
  g.marked_point_ = marked_point;
  return g;
}

/// Breadth-first closure of the generators under right multiplication.
inline PermGroup generate_group(std::span<const Permutation> gens, std::size_t cap = kDefaultOrderCap) {
  if (gens.empty()) throw Error(Errc::SchemaError, "generator list is empty");
  const std::size_t d = gens.front().degree();
  for (const auto& g : gens) require_same_degree(g.degree(), d);

  std::unordered_set<Permutation> seen;
  std::deque<Permutation> queue;
  auto id = Permutation::identity(d);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Permutation cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Permutation next = cur * g;
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw Error(Errc::OrderCapExceeded, "group order exceeds cap " + std::to_string(cap));
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<Permutation> elements(seen.begin(), seen.end());
  std::sort(elements.begin(), elements.end());
  return make_unchecked_group(d, std::move(elements), std::vector<Permutation>(gens.begin(), gens.end()), 0);
}

inline PermGroup generate_group(std::initializer_list<Permutation> gens, std::size_t cap = kDefaultOrderCap) {
  std::vector<Permutation> v(gens);
  return generate_group(std::span<const Permutation>(v), cap);
}

/// Orbit of a point under the listed permutations, sorted.
inline std::vector<Point> orbit_of(Point start, std::span<const Permutation> perms, std::size_t degree) {
  std::vector<bool> seen(degree, false);
  std::vector<Point> orbit{start};
  seen[start] = true;
  for (std::size_t k = 0; k < orbit.size(); ++k)
    for (const auto& p : perms) {
      Point y = p(orbit[k]);
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

inline bool is_transitive(const PermGroup& g) {
  if (g.degree() == 0) return false;
  return orbit_of(0, g.generators(), g.degree()).size() == g.degree();
}

inline PermGroup point_stabilizer(const PermGroup& h, Point lambda) {
  if (lambda >= h.degree())
    throw Error(Errc::PointOutOfRange, "point " + std::to_string(lambda + 1) + " outside Lambda");
  std::vector<Permutation> fixing;
  for (const auto& e : h.elements())
    if (e(lambda) == lambda) fixing.push_back(e);
  std::vector<Permutation> gens = fixing;
  return make_unchecked_group(h.degree(), std::move(fixing), std::move(gens), lambda);
}

namespace detail {

// Backtracking over S_d, assigning tau(0), tau(1), ... in order. `keep` sees
// the partial assignment (-1 = unassigned) and returns false to prune;
// `complete` receives every full permutation that survived.
template <class Keep, class Complete>
void search_sym(std::size_t d, Keep&& keep, Complete&& complete) {
  std::vector<std::int64_t> image(d, -1);
  std::vector<bool> used(d, false);
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == d) {
      std::vector<Point> imgs(d);
      for (std::size_t x = 0; x < d; ++x) imgs[x] = static_cast<Point>(image[x]);
      complete(Permutation(std::move(imgs)));
      return;
    }
    for (std::size_t y = 0; y < d; ++y) {
      if (used[y]) continue;
      image[depth] = static_cast<std::int64_t>(y);
      used[y] = true;
      if (keep(image, depth)) self(self, depth + 1);
      used[y] = false;
      image[depth] = -1;
    }
  };
  rec(rec, 0);
}

inline void check_sym_bound(const PermGroup& g, std::size_t bound) {
  if (g.degree() > bound)
    throw Error(Errc::DegreeTooLargeForSymSearch,
                "degree " + std::to_string(g.degree()) + " exceeds search bound " + std::to_string(bound));
}

}  // namespace detail

/// {sigma in S_d : sigma g = g sigma for all generators g}.
inline PermGroup centralizer_in_sym(const PermGroup& g, std::size_t bound = kDefaultSymSearchBound) {
  detail::check_sym_bound(g, bound);
  const auto& gens = g.generators();
  std::vector<Permutation> found;
  // tau commutes with x iff (lambda x) tau = (lambda tau) x wherever both sides are assigned.
  auto keep = [&](const std::vector<std::int64_t>& image, std::size_t depth) {
    for (const auto& x : gens)
      for (std::size_t lambda = 0; lambda <= depth; ++lambda) {
        Point lx = x(static_cast<Point>(lambda));
        if (lx > depth) continue;
        if (image[lx] != static_cast<std::int64_t>(x(static_cast<Point>(image[lambda])))) return false;
      }
    return true;
  };
  detail::search_sym(g.degree(), keep, [&](Permutation p) { found.push_back(std::move(p)); });
  std::sort(found.begin(), found.end());
  std::vector<Permutation> gens_out = found;
  return make_unchecked_group(g.degree(), std::move(found), std::move(gens_out), g.marked_point());
}

/// {sigma in S_d : sigma G sigma^-1 = G}.
inline PermGroup normalizer_in_sym(const PermGroup& g, std::size_t bound = kDefaultSymSearchBound) {
  detail::check_sym_bound(g, bound);
  const auto& gens = g.generators();
  const auto& elems = g.elements();
  std::vector<Permutation> found;
  // tau^-1 x tau maps lambda tau to (lambda x) tau; some element of G must
  // agree with every such assigned pair.
  auto keep = [&](const std::vector<std::int64_t>& image, std::size_t depth) {
    for (const auto& x : gens) {
      bool ok = false;
      for (const auto& h : elems) {
        bool match = true;
        for (std::size_t lambda = 0; lambda <= depth && match; ++lambda) {
          Point lx = x(static_cast<Point>(lambda));
          if (lx > depth) continue;
          if (static_cast<std::int64_t>(h(static_cast<Point>(image[lambda]))) != image[lx]) match = false;
        }
        if (match) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  };
  detail::search_sym(g.degree(), keep, [&](Permutation tau) {
    for (const auto& x : gens)
      if (!g.contains(conjugate(x, tau.inverse()))) return;
    found.push_back(std::move(tau));
  });
  std::sort(found.begin(), found.end());
  std::vector<Permutation> gens_out = found;
  return make_unchecked_group(g.degree(), std::move(found), std::move(gens_out), g.marked_point());
}

/// A conjugacy class: members sorted, representative = smallest member.
struct ConjClass {
  Permutation representative;
  std::vector<Permutation> members;

  friend bool operator==(const ConjClass&, const ConjClass&) = default;
};

/// Classes ordered by representative.
inline std::vector<ConjClass> conjugacy_classes(const PermGroup& g) {
  std::vector<ConjClass> classes;
  std::vector<bool> assigned(g.order(), false);
  const auto& elems = g.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (assigned[i]) continue;
    std::vector<Permutation> members;
    for (const auto& h : elems) members.push_back(conjugate(elems[i], h));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (const auto& m : members) assigned[*g.index_of(m)] = true;
    // elements are visited in sorted order, so elems[i] is the class minimum
    classes.push_back(ConjClass{elems[i], std::move(members)});
  }
  return classes;
}

/// Index into conjugacy_classes(g) for every element of g (by element index).
inline std::vector<std::size_t> class_index_table(const PermGroup& g, const std::vector<ConjClass>& classes) {
  std::vector<std::size_t> table(g.order(), 0);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const auto& m : classes[c].members) table[*g.index_of(m)] = c;
  return table;
}

/// Conjugacy classes of a group plus an element -> class lookup.
class ClassTable {
 public:
  explicit ClassTable(const PermGroup& g)
      : group_(g), classes_(conjugacy_classes(g)), index_(class_index_table(g, classes_)) {}

  const std::vector<ConjClass>& classes() const noexcept { return classes_; }
  std::size_t size() const noexcept { return classes_.size(); }

  std::optional<std::size_t> class_index(const Permutation& p) const {
    auto i = group_.index_of(p);
    if (!i) return std::nullopt;
    return index_[*i];
  }
  std::size_t class_index_of_element(std::size_t element_index) const { return index_[element_index]; }

 private:
  PermGroup group_;
  std::vector<ConjClass> classes_;
  std::vector<std::size_t> index_;
};

/// phi G phi^-1, with the marked point carried along to lambda_0 phi^-1.
inline PermGroup conjugate_group(const PermGroup& g, const Permutation& phi) {
  require_same_degree(g.degree(), phi.degree());
  std::vector<Permutation> elems;
  elems.reserve(g.order());
  for (const auto& e : g.elements()) elems.push_back(conjugate(e, phi));
  std::sort(elems.begin(), elems.end());
  std::vector<Permutation> gens;
  for (const auto& e : g.generators()) gens.push_back(conjugate(e, phi));
  return make_unchecked_group(g.degree(), std::move(elems), std::move(gens), phi.inverse()(g.marked_point()));
}

/// Smallest element of h mapping `from` to `to`, if any.
inline std::optional<Permutation> min_transporter(const PermGroup& h, Point from, Point to) {
  for (const auto& e : h.elements())
    if (e(from) == to) return e;
  return std::nullopt;
}

namespace detail {

/**
 * Index arithmetic over a materialized group: element indices, inverses and
 * (for small groups) a full multiplication table. Used by the tuple search,
 * where every product would otherwise allocate.
 */
class IndexedGroup {
 public:
  static constexpr std::size_t kTableLimit = 1024;

  explicit IndexedGroup(const PermGroup& g) : group_(&g), n_(g.order()) {
    const auto& e = g.elements();
    inverse_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) inverse_[i] = static_cast<std::uint32_t>(*g.index_of(e[i].inverse()));
    identity_ = static_cast<std::uint32_t>(*g.index_of(g.identity()));
    if (n_ <= kTableLimit) {
      table_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          table_[i * n_ + j] = static_cast<std::uint32_t>(*g.index_of(e[i] * e[j]));
    }
  }

  std::size_t size() const noexcept { return n_; }
  std::uint32_t identity() const noexcept { return identity_; }
  std::uint32_t inverse(std::uint32_t i) const noexcept { return inverse_[i]; }
  const Permutation& element(std::uint32_t i) const { return group_->elements()[i]; }

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
    if (!table_.empty()) return table_[i * n_ + j];
    return static_cast<std::uint32_t>(*group_->index_of(element(i) * element(j)));
  }

  std::uint32_t commutator(std::uint32_t a, std::uint32_t b) const {
    return mul(mul(mul(a, b), inverse(a)), inverse(b));
  }

  /// Order of the subgroup generated by the given element indices.
  std::size_t generated_order(std::span<const std::uint32_t> gens) const {
    std::vector<bool> in(n_, false);
    std::vector<std::uint32_t> found{identity_};
    in[identity_] = true;
    for (std::size_t k = 0; k < found.size(); ++k)
      for (auto g : gens) {
        auto next = mul(found[k], g);
        if (!in[next]) {
          in[next] = true;
          found.push_back(next);
        }
      }
    return found.size();
  }

 private:
  const PermGroup* group_;
  std::size_t n_;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> table_;
};

}  // namespace detail

}  // namespace hurwitz

#endif  // HURWITZ_PERM_GROUP_HPP
