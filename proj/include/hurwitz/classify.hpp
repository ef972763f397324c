#ifndef HURWITZ_CLASSIFY_HPP
#define HURWITZ_CLASSIFY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hurwitz/detail/parallel.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/nielsen.hpp"
#include "hurwitz/perm_group.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz {

/**
 * G together with the subgroups of S(Lambda) that act on its Hurwitz
 * spaces: the normalizer N = N_S(G), the centralizer Z = Z_S(G) and the
 * pointed normalizer N(lambda_0) = Stab_N(lambda_0).
 */
class SymmetryContext {
 public:
  explicit SymmetryContext(PermGroup g, std::size_t sym_bound = kDefaultSymSearchBound)
      : group_(std::move(g)),
        normalizer_(normalizer_in_sym(group_, sym_bound)),
        centralizer_(centralizer_in_sym(group_, sym_bound)),
        pointed_(point_stabilizer(normalizer_, group_.marked_point())),
        classes_(group_) {}

  const PermGroup& group() const noexcept { return group_; }
  const PermGroup& normalizer() const noexcept { return normalizer_; }
  const PermGroup& centralizer() const noexcept { return centralizer_; }
  const PermGroup& pointed_normalizer() const noexcept { return pointed_; }
  const ClassTable& classes() const noexcept { return classes_; }
  Point marked_point() const noexcept { return group_.marked_point(); }

  SymmetryContext with_marked_point(Point lambda) const {
    SymmetryContext copy = *this;
    copy.group_ = group_.with_marked_point(lambda);
    copy.pointed_ = point_stabilizer(normalizer_, lambda);
    return copy;
  }

 private:
  PermGroup group_;
  PermGroup normalizer_;
  PermGroup centralizer_;
  PermGroup pointed_;
  ClassTable classes_;
};

/// Entrywise e -> sigma e sigma^-1, i.e. m -> sigma m sigma^-1.
inline HurwitzTuple conjugate_tuple(const HurwitzTuple& t, const Permutation& sigma) {
  require_same_degree(t.degree(), sigma.degree());
  const Permutation inv = sigma.inverse();
  return t.map_entries([&](const Permutation& e) { return sigma * e * inv; });
}

/// A point of H^{Lambda,G}_{n,lambda_0} = H^G_n / N(lambda_0).
struct PointedClass {
  HurwitzTuple canonical;
  Point marked_point = 0;
  bool stabilizer_checked = false;

  friend bool operator==(const PointedClass& a, const PointedClass& b) {
    return a.marked_point == b.marked_point && a.canonical == b.canonical;
  }
  friend auto operator<=>(const PointedClass& a, const PointedClass& b) {
    if (auto c = a.marked_point <=> b.marked_point; c != 0) return c;
    return a.canonical <=> b.canonical;
  }
};

/// A class of covers up to covering isomorphism: an N_S(G)-conjugation orbit.
struct UnpointedClass {
  HurwitzTuple canonical;
  std::size_t orbit_size = 0;

  friend bool operator==(const UnpointedClass&, const UnpointedClass&) = default;
};

namespace detail {

inline std::vector<HurwitzTuple> conjugation_orbit(const HurwitzTuple& t, const PermGroup& by) {
  std::vector<HurwitzTuple> orbit;
  orbit.reserve(by.order());
  for (const auto& sigma : by.elements()) orbit.push_back(conjugate_tuple(t, sigma));
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

}  // namespace detail

/// The full N(lambda_0)-orbit of t; N(lambda_0) acts freely, so it has
/// exactly |N(lambda_0)| members.
inline std::vector<HurwitzTuple> pointed_orbit(const HurwitzTuple& t, const SymmetryContext& ctx) {
  auto orbit = detail::conjugation_orbit(t, ctx.pointed_normalizer());
  if (orbit.size() != ctx.pointed_normalizer().order())
    throw Error(Errc::FreeActionViolated, "N(lambda_0)-orbit of " + std::to_string(orbit.size()) +
                                              " tuples, expected " +
                                              std::to_string(ctx.pointed_normalizer().order()));
  return orbit;
}

inline PointedClass pointed_class(const HurwitzTuple& t, const SymmetryContext& ctx) {
  require_same_degree(t.degree(), ctx.group().degree());
  auto orbit = pointed_orbit(t, ctx);
  return PointedClass{std::move(orbit.front()), ctx.marked_point(), true};
}

/// The monodromy invariant's fiber under nu: every tuple in the class.
inline std::vector<HurwitzTuple> nu_fiber(const PointedClass& c, const SymmetryContext& ctx) {
  if (c.marked_point != ctx.marked_point()) return pointed_orbit(c.canonical, ctx.with_marked_point(c.marked_point));
  return pointed_orbit(c.canonical, ctx);
}

/// The unique sigma in N(lambda_0) with sigma t1 sigma^-1 = t2, if any.
inline std::optional<Permutation> are_pointed_equivalent(const HurwitzTuple& t1, const HurwitzTuple& t2,
                                                         const SymmetryContext& ctx) {
  require_same_degree(t1.degree(), ctx.group().degree());
  require_same_degree(t2.degree(), ctx.group().degree());
  std::optional<Permutation> witness;
  for (const auto& sigma : ctx.pointed_normalizer().elements()) {
    if (conjugate_tuple(t1, sigma) != t2) continue;
    if (witness) throw Error(Errc::FreeActionViolated, "two N(lambda_0) witnesses for one pointed equivalence");
    witness = sigma;
  }
  return witness;
}

struct CoverWitness {
  Permutation sigma;          // smallest witness
  std::size_t count = 0;      // number of witnesses in N_S(G)
  bool unique() const noexcept { return count == 1; }
};

/// Smallest sigma in N_S(G) with sigma t1 sigma^-1 = t2, with the number of
/// such sigma (a coset of the centralizer, so unique iff Z_S(G) = 1).
inline std::optional<CoverWitness> are_cover_equivalent(const HurwitzTuple& t1, const HurwitzTuple& t2,
                                                        const SymmetryContext& ctx) {
  require_same_degree(t1.degree(), ctx.group().degree());
  require_same_degree(t2.degree(), ctx.group().degree());
  std::optional<CoverWitness> result;
  for (const auto& sigma : ctx.normalizer().elements()) {
    if (conjugate_tuple(t1, sigma) != t2) continue;
    if (!result)
      result = CoverWitness{sigma, 1};
    else
      ++result->count;
  }
  return result;
}

inline UnpointedClass unpointed_class(const HurwitzTuple& t, const SymmetryContext& ctx) {
  require_same_degree(t.degree(), ctx.group().degree());
  auto orbit = detail::conjugation_orbit(t, ctx.normalizer());
  return UnpointedClass{std::move(orbit.front()), orbit.size()};
}

/// (t, G) -> (phi t phi^-1, phi G phi^-1).
inline std::pair<HurwitzTuple, PermGroup> relabel(const HurwitzTuple& t, const Permutation& phi, const PermGroup& g) {
  require_same_degree(t.degree(), phi.degree());
  require_same_degree(g.degree(), phi.degree());
  return {conjugate_tuple(t, phi), conjugate_group(g, phi)};
}

/**
 * Moves a pointed class from its marked point lambda_1 to `target`
 * (= lambda_0): with g in G the smallest element satisfying
 * lambda_1 = lambda_0 g, the class of m_1 goes to the class of g m_1 g^-1.
 */
inline PointedClass change_marked_point(const PointedClass& c, Point target, const SymmetryContext& ctx) {
  if (target >= ctx.group().degree())
    throw Error(Errc::PointOutOfRange, "marked point " + std::to_string(target + 1) + " outside Lambda");
  if (c.marked_point == target) return c;
  auto g = min_transporter(ctx.group(), target, c.marked_point);
  if (!g) throw Error(Errc::IntransitiveGroup, "marked points lie in different G-orbits");
  return pointed_class(conjugate_tuple(c.canonical, *g), ctx.with_marked_point(target));
}

struct TypeCensus {
  BranchingType type;
  std::size_t tuples = 0;
  std::size_t pointed = 0;
  std::size_t unpointed = 0;

  friend bool operator==(const TypeCensus&, const TypeCensus&) = default;
};

struct SpaceCensus {
  std::size_t tuples = 0;
  std::size_t pointed = 0;
  std::size_t unpointed = 0;
  std::vector<TypeCensus> by_type;

  friend bool operator==(const SpaceCensus&, const SpaceCensus&) = default;
};

/**
 * Everything count_space derives from one enumeration: the tuples, and for
 * each tuple its pointed and unpointed canonical forms (as indices into
 * the sorted class lists).
 */
struct SpaceData {
  std::vector<HurwitzTuple> tuples;
  std::vector<HurwitzTuple> pointed_classes;    // sorted canonical forms
  std::vector<HurwitzTuple> unpointed_classes;  // sorted canonical forms
  std::vector<std::size_t> pointed_of;          // per tuple
  std::vector<std::size_t> unpointed_of;        // per tuple
  std::vector<BranchingType> type_of;           // per tuple
  SpaceCensus census;
  EnumerationStats stats;
};

namespace detail {

inline std::size_t index_in(const std::vector<HurwitzTuple>& sorted, const HurwitzTuple& t) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace detail

/// True when N(lambda_0) maps the tuple set onto itself, so that
/// tuples = pointed * |N(lambda_0)| holds exactly.
inline bool is_pointed_stable(const SpaceData& data, const SymmetryContext& ctx) {
  std::vector<std::size_t> members(data.pointed_classes.size(), 0);
  for (auto p : data.pointed_of) ++members[p];
  return std::all_of(members.begin(), members.end(),
                     [&](std::size_t m) { return m == ctx.pointed_normalizer().order(); });
}

/// Builds SpaceData from an already enumerated (sorted) tuple list.
inline SpaceData classify_space(std::vector<HurwitzTuple> tuples, const SymmetryContext& ctx, bool expect_stable,
                                unsigned threads = 1) {
  SpaceData data;
  data.tuples = std::move(tuples);
  const std::size_t count = data.tuples.size();
  std::vector<HurwitzTuple> pointed(count), unpointed(count);
  data.type_of.resize(count);
  detail::parallel_for(count, threads, [&](std::size_t i) {
    pointed[i] = pointed_class(data.tuples[i], ctx).canonical;
    unpointed[i] = unpointed_class(data.tuples[i], ctx).canonical;
    data.type_of[i] = branching_type(data.tuples[i], ctx.classes());
  });

  data.pointed_classes = pointed;
  std::sort(data.pointed_classes.begin(), data.pointed_classes.end());
  data.pointed_classes.erase(std::unique(data.pointed_classes.begin(), data.pointed_classes.end()),
                             data.pointed_classes.end());
  data.unpointed_classes = unpointed;
  std::sort(data.unpointed_classes.begin(), data.unpointed_classes.end());
  data.unpointed_classes.erase(std::unique(data.unpointed_classes.begin(), data.unpointed_classes.end()),
                               data.unpointed_classes.end());
  data.pointed_of.resize(count);
  data.unpointed_of.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    data.pointed_of[i] = detail::index_in(data.pointed_classes, pointed[i]);
    data.unpointed_of[i] = detail::index_in(data.unpointed_classes, unpointed[i]);
  }

  auto& census = data.census;
  census.tuples = count;
  census.pointed = data.pointed_classes.size();
  census.unpointed = data.unpointed_classes.size();

  // Each class counts once per type it meets (the type of a class is not
  // well defined when N(lambda_0) permutes conjugacy classes of G).
  std::map<BranchingType, std::tuple<std::size_t, std::set<std::size_t>, std::set<std::size_t>>> per_type;
  for (std::size_t i = 0; i < count; ++i) {
    auto& [n, p, u] = per_type[data.type_of[i]];
    ++n;
    p.insert(data.pointed_of[i]);
    u.insert(data.unpointed_of[i]);
  }
  for (auto& [type, v] : per_type)
    census.by_type.push_back(TypeCensus{type, std::get<0>(v), std::get<1>(v).size(), std::get<2>(v).size()});

  // Every class met by an unfiltered enumeration must have its whole
  // nu-fiber present: tuples = pointed * |N(lambda_0)|.
  if (expect_stable && !is_pointed_stable(data, ctx))
    throw Error(Errc::InvariantViolated, "tuple count is not pointed count times |N(lambda_0)|");
  return data;
}

inline SpaceData count_space(const SymmetryContext& ctx, std::size_t genus, std::size_t n,
                             const std::optional<BranchingType>& filter = std::nullopt,
                             const EnumerationOptions& options = {}) {
  EnumerationStats stats;
  auto tuples = enumerate_tuples(ctx.group(), genus, n, filter, options, &stats);
  auto data = classify_space(std::move(tuples), ctx, !filter.has_value(), options.threads);
  data.stats = stats;
  return data;
}

}  // namespace hurwitz

#endif  // HURWITZ_CLASSIFY_HPP
