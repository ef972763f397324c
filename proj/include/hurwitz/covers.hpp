#ifndef HURWITZ_COVERS_HPP
#define HURWITZ_COVERS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/classify.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/nielsen.hpp"
#include "hurwitz/perm_group.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz {

/**
 * A tuple of G together with an explicit permutation action of each entry
 * on a domain {0, ..., N-1}. `action` has the same handle/branch layout as
 * `source`; its degree is the domain size.
 */
struct ActionTuple {
  HurwitzTuple source;
  HurwitzTuple action;
  bool connected = false;  // entries act transitively on the domain

  std::size_t domain_size() const noexcept { return action.degree(); }
};

inline ActionTuple make_action(HurwitzTuple source, HurwitzTuple action) {
  auto entries = action.entries();
  const std::size_t n = action.degree();
  bool connected = n > 0 && orbit_of(0, entries, n).size() == n;
  return ActionTuple{std::move(source), std::move(action), connected};
}

/// The tuple acting on Lambda itself.
inline ActionTuple natural_model(const HurwitzTuple& t) { return make_action(t, t); }

/// Right cosets H\G, ordered by their smallest element; coset_of[i] is the
/// coset of G's i-th element.
struct CosetSpace {
  std::vector<Permutation> representatives;  // smallest element of each coset
  std::vector<std::size_t> coset_of;
};

inline CosetSpace right_cosets(const PermGroup& g, const PermGroup& h) {
  require_same_degree(g.degree(), h.degree());
  for (const auto& x : h.elements())
    if (!g.contains(x)) throw Error(Errc::NotASubgroup, x.to_cycles() + " lies outside G");
  if (!h.contains(g.identity())) throw Error(Errc::NotASubgroup, "H lacks the identity");
  for (const auto& x : h.elements())
    for (const auto& y : h.elements())
      if (!h.contains(x * y)) throw Error(Errc::NotASubgroup, "H is not closed under composition");

  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  CosetSpace cs;
  cs.coset_of.assign(g.order(), unset);
  const auto& elems = g.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (cs.coset_of[i] != unset) continue;
    const std::size_t id = cs.representatives.size();
    cs.representatives.push_back(elems[i]);  // first in sorted order = smallest
    for (const auto& x : h.elements()) cs.coset_of[*g.index_of(x * elems[i])] = id;
  }
  return cs;
}

/// Entries acting on H\G by right translation Hx -> Hxg.
inline ActionTuple coset_model(const HurwitzTuple& t, const PermGroup& g, const PermGroup& h) {
  require_same_degree(t.degree(), g.degree());
  const CosetSpace cs = right_cosets(g, h);
  auto act = [&](const Permutation& e) {
    if (!g.contains(e)) throw Error(Errc::NotInGroup, e.to_cycles() + " is not an element of G");
    std::vector<Point> images(cs.representatives.size());
    for (std::size_t c = 0; c < images.size(); ++c)
      images[c] = static_cast<Point>(cs.coset_of[*g.index_of(cs.representatives[c] * e)]);
    return Permutation(std::move(images));
  };
  return make_action(t, t.map_entries(act));
}

/// Entries acting on G (in sorted order) by right translation h -> hg.
inline ActionTuple regular_model(const HurwitzTuple& t, const PermGroup& g) {
  require_same_degree(t.degree(), g.degree());
  auto act = [&](const Permutation& e) {
    if (!g.contains(e)) throw Error(Errc::NotInGroup, e.to_cycles() + " is not an element of G");
    std::vector<Point> images(g.order());
    for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<Point>(*g.index_of(g.elements()[i] * e));
    return Permutation(std::move(images));
  };
  return make_action(t, t.map_entries(act));
}

/**
 * A bijection mu of the domains with mu(x e_A) = mu(x) e_B for every pair of
 * corresponding entries, returned as a permutation of {0..N-1} with
 * images()[x] = mu(x). Each orbit of A is anchored at its smallest point;
 * the images of the rest of the orbit are forced, so the search only
 * branches over the anchor images.
 */
inline std::optional<Permutation> actions_isomorphic(const ActionTuple& a, const ActionTuple& b) {
  if (a.domain_size() != b.domain_size())
    throw Error(Errc::DomainSizeMismatch,
                std::to_string(a.domain_size()) + " vs " + std::to_string(b.domain_size()) + " points");
  const auto ea = a.action.entries();
  const auto eb = b.action.entries();
  if (ea.size() != eb.size() || a.action.genus() != b.action.genus())
    throw Error(Errc::DomainSizeMismatch, "entry counts differ");
  const std::size_t n = a.domain_size();
  constexpr std::int64_t unset = -1;
  std::vector<std::int64_t> mu(n, unset);
  std::vector<bool> used(n, false);

  // Propagates from anchor x -> y; returns the newly assigned points, or
  // nullopt on a conflict (after rolling back).
  auto propagate = [&](Point x, Point y) -> std::optional<std::vector<Point>> {
    std::vector<Point> assigned;
    auto rollback = [&] {
      for (Point p : assigned) {
        used[static_cast<std::size_t>(mu[p])] = false;
        mu[p] = unset;
      }
    };
    if (used[y]) return std::nullopt;
    mu[x] = y;
    used[y] = true;
    assigned.push_back(x);
    for (std::size_t k = 0; k < assigned.size(); ++k) {
      Point p = assigned[k];
      for (std::size_t e = 0; e < ea.size(); ++e) {
        Point px = ea[e](p);
        Point qy = eb[e](static_cast<Point>(mu[p]));
        if (mu[px] == unset) {
          if (used[qy]) {
            rollback();
            return std::nullopt;
          }
          mu[px] = qy;
          used[qy] = true;
          assigned.push_back(px);
        } else if (mu[px] != qy) {
          rollback();
          return std::nullopt;
        }
      }
    }
    return assigned;
  };

  std::function<bool()> search = [&]() -> bool {
    auto it = std::find(mu.begin(), mu.end(), unset);
    if (it == mu.end()) return true;
    Point x = static_cast<Point>(it - mu.begin());
    for (Point y = 0; y < n; ++y) {
      if (used[y]) continue;
      auto assigned = propagate(x, y);
      if (!assigned) continue;
      if (search()) return true;
      for (Point p : *assigned) {
        used[static_cast<std::size_t>(mu[p])] = false;
        mu[p] = unset;
      }
    }
    return false;
  };

  if (!search()) return std::nullopt;
  std::vector<Point> images(n);
  for (std::size_t x = 0; x < n; ++x) images[x] = static_cast<Point>(mu[x]);
  return Permutation(std::move(images));
}

/// Per branch point: cycle lengths of g_j (non-increasing). These are the
/// ramification indices of the points over b_j.
inline std::vector<std::vector<std::size_t>> ramification_profile(const HurwitzTuple& t) {
  std::vector<std::vector<std::size_t>> profiles;
  profiles.reserve(t.branch_count());
  for (const auto& g : t.branches) profiles.push_back(cycle_type(g));
  return profiles;
}

/// Riemann-Hurwitz for a connected action tuple:
/// 2 g_X - 2 = N (2 g_Y - 2) + sum_j sum_orbits (k - 1).
inline std::int64_t genus_of_action(const ActionTuple& model) {
  if (!model.connected) throw Error(Errc::DisconnectedCover, "action is not transitive; genus refused");
  const auto n = static_cast<std::int64_t>(model.domain_size());
  const auto base_genus = static_cast<std::int64_t>(model.action.genus());
  std::int64_t rhs = n * (2 * base_genus - 2);
  for (const auto& g : model.action.branches) rhs += n - static_cast<std::int64_t>(cyclic_orbits(g).size());
  if (rhs % 2 != 0) throw Error(Errc::ParityViolation, "2g - 2 = " + std::to_string(rhs) + " is odd");
  const std::int64_t genus = (rhs + 2) / 2;
  if (genus < 0) throw Error(Errc::ParityViolation, "negative genus " + std::to_string(genus));
  return genus;
}

enum class CoverModel { induced, galois, coset };

/// Genus of the cover X = Lambda x^G C (induced), of the Galois cover C, or
/// of C/H (coset; `subgroup` required).
inline std::int64_t fiber_genus(const HurwitzTuple& t, const PermGroup& g, CoverModel model,
                                const PermGroup* subgroup = nullptr) {
  switch (model) {
    case CoverModel::induced:
      return genus_of_action(natural_model(t));
    case CoverModel::galois:
      return genus_of_action(regular_model(t, g));
    case CoverModel::coset:
      if (!subgroup) throw Error(Errc::NotASubgroup, "coset model needs a subgroup");
      return genus_of_action(coset_model(t, g, *subgroup));
  }
  return 0;
}

struct CoverReport {
  std::size_t degree = 0;
  std::size_t base_genus = 0;
  std::vector<std::vector<std::size_t>> profiles;
  std::vector<std::size_t> ramification_points;  // points over each b_j
  std::int64_t fiber_genus = 0;                  // X = Lambda x^G C
  std::int64_t galois_genus = 0;                 // C
  BranchingType branching_type;
  // debug: q = |G(lambda, w)| = e_j / k per orbit of g_j on Lambda
  std::vector<std::vector<std::size_t>> stabilizer_orders;

  friend bool operator==(const CoverReport&, const CoverReport&) = default;
};

inline CoverReport cover_report(const HurwitzTuple& t, const SymmetryContext& ctx) {
  CoverReport r;
  r.degree = t.degree();
  r.base_genus = t.genus();
  r.profiles = ramification_profile(t);
  for (const auto& g : t.branches) {
    auto orbits = cyclic_orbits(g);
    r.ramification_points.push_back(orbits.size());
    std::vector<std::size_t> q;
    for (const auto& o : orbits) q.push_back(g.order() / o.size());
    std::sort(q.begin(), q.end());  // label-free, like the profiles
    r.stabilizer_orders.push_back(std::move(q));
  }
  r.fiber_genus = fiber_genus(t, ctx.group(), CoverModel::induced);
  r.galois_genus = fiber_genus(t, ctx.group(), CoverModel::galois);
  r.branching_type = branching_type(t, ctx.classes());
  return r;
}

/**
 * Report for the fiber of the universal family over a pointed class,
 * computed from the canonical representative and cross-checked against the
 * next member of its nu-fiber. The branching type is the canonical
 * representative's: N(lambda_0) may permute the conjugacy classes of G.
 */
inline CoverReport universal_fiber_report(const PointedClass& c, const SymmetryContext& ctx) {
  CoverReport r = cover_report(c.canonical, ctx);
  auto fiber = nu_fiber(c, ctx);
  if (fiber.size() > 1) {
    CoverReport other = cover_report(fiber[1], ctx);
    other.branching_type = r.branching_type;
    if (other != r) throw Error(Errc::InvariantViolated, "cover report differs across the nu-fiber");
  }
  return r;
}

}  // namespace hurwitz

#endif  // HURWITZ_COVERS_HPP
