#ifndef HURWITZ_BRAID_HPP
#define HURWITZ_BRAID_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hurwitz/classify.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/nielsen.hpp"

namespace hurwitz {

inline constexpr std::size_t kDefaultOrbitCap = 10'000'000;

enum class Direction { forward, inverse };

struct Move {
  std::size_t index = 1;  // 1-based: acts on branch entries index and index+1
  Direction direction = Direction::forward;
};

using MoveWord = std::vector<Move>;

/// Which elementary twist is called "forward". The two conventions are
/// mirror images and generate the same orbits.
enum class MoveConvention { standard, mirrored };

/**
 * Elementary braid move on the branch segment; handles are untouched.
 *   forward: (g_i, g_{i+1}) -> (g_i g_{i+1} g_i^-1, g_i)
 *   inverse: (g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^-1 g_i g_{i+1})
 */
inline HurwitzTuple hurwitz_move(const HurwitzTuple& t, std::size_t index, Direction direction,
                                 MoveConvention convention = MoveConvention::standard) {
  if (index < 1 || index >= t.branch_count())
    throw Error(Errc::IndexOutOfRange, "move index " + std::to_string(index) + " outside 1.." +
                                           std::to_string(t.branch_count() == 0 ? 0 : t.branch_count() - 1));
  if (convention == MoveConvention::mirrored)
    direction = direction == Direction::forward ? Direction::inverse : Direction::forward;
  HurwitzTuple out = t;
  const Permutation& a = t.branches[index - 1];
  const Permutation& b = t.branches[index];
  if (direction == Direction::forward) {
    out.branches[index - 1] = a * b * a.inverse();
    out.branches[index] = a;
  } else {
    out.branches[index - 1] = b;
    out.branches[index] = b.inverse() * a * b;
  }
  return out;
}

inline HurwitzTuple apply_word(HurwitzTuple t, const MoveWord& word,
                               MoveConvention convention = MoveConvention::standard) {
  for (const auto& m : word) t = hurwitz_move(t, m.index, m.direction, convention);
  return t;
}

struct HurwitzTupleHash {
  std::size_t operator()(const HurwitzTuple& t) const noexcept {
    std::hash<Permutation> h;
    std::size_t seed = 0;
    auto mix = [&](const Permutation& p) { seed ^= h(p) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); };
    for (const auto& [a, b] : t.handles) {
      mix(a);
      mix(b);
    }
    for (const auto& g : t.branches) mix(g);
    return seed;
  }
};

struct OrbitOptions {
  std::size_t orbit_cap = kDefaultOrbitCap;
  MoveConvention convention = MoveConvention::standard;
  bool forward_only = false;  // closure under forward moves alone
};

/// Closure of {t} under all elementary moves, breadth first; sorted.
inline std::vector<HurwitzTuple> braid_orbit(const HurwitzTuple& t, const OrbitOptions& options = {}) {
  std::unordered_set<HurwitzTuple, HurwitzTupleHash> visited{t};
  std::deque<HurwitzTuple> queue{t};
  const std::size_t moves = t.branch_count() == 0 ? 0 : t.branch_count() - 1;
  auto push = [&](HurwitzTuple&& next) {
    if (visited.insert(next).second) {
      if (visited.size() > options.orbit_cap)
        throw Error(Errc::OrbitCapExceeded, "orbit exceeds " + std::to_string(options.orbit_cap) + " tuples");
      queue.push_back(std::move(next));
    }
  };
  while (!queue.empty()) {
    HurwitzTuple cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 1; i <= moves; ++i) {
      push(hurwitz_move(cur, i, Direction::forward, options.convention));
      if (!options.forward_only) push(hurwitz_move(cur, i, Direction::inverse, options.convention));
    }
  }
  std::vector<HurwitzTuple> orbit(visited.begin(), visited.end());
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

enum class Level { tuples, pointed, unpointed };

/// Orbit partition of a space at one level. Orbits are listed in the
/// order of their smallest member.
struct ComponentSummary {
  Level level = Level::tuples;
  bool exact = true;  // false for base genus >= 1: only branch moves are used
  std::vector<std::size_t> orbit_sizes;
  std::vector<std::size_t> orbit_of;  // per element of the level's sorted set

  std::string label() const {
    return exact ? "exact" : "refinement (lower bound on merging; component count reported is an upper bound)";
  }
};

/// Tuple-level braid orbits of a sorted tuple list: orbit id per tuple,
/// ids numbered in order of first appearance.
inline std::vector<std::size_t> tuple_orbit_ids(const std::vector<HurwitzTuple>& tuples,
                                                const OrbitOptions& options = {}) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> ids(tuples.size(), unset);
  std::size_t next = 0;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (ids[i] != unset) continue;
    for (const auto& member : braid_orbit(tuples[i], options)) {
      auto it = std::lower_bound(tuples.begin(), tuples.end(), member);
      if (it == tuples.end() || *it != member)
        throw Error(Errc::InvariantViolated, "braid orbit leaves the enumerated space");
      ids[static_cast<std::size_t>(it - tuples.begin())] = next;
    }
    ++next;
  }
  return ids;
}

namespace detail {

inline ComponentSummary summarize(Level level, bool exact, std::vector<std::size_t> ids) {
  ComponentSummary s;
  s.level = level;
  s.exact = exact;
  // renumber by first appearance so the listing follows the sorted element order
  std::map<std::size_t, std::size_t> renumber;
  for (auto& id : ids) {
    auto [it, fresh] = renumber.emplace(id, renumber.size());
    id = it->second;
  }
  s.orbit_sizes.assign(renumber.size(), 0);
  for (auto id : ids) ++s.orbit_sizes[id];
  s.orbit_of = std::move(ids);
  return s;
}

// Class-level orbits: two classes share an orbit iff some member tuples do.
inline std::vector<std::size_t> descend(const std::vector<std::size_t>& tuple_ids,
                                        const std::vector<std::size_t>& class_of, std::size_t class_count) {
  std::vector<std::size_t> parent(class_count);
  for (std::size_t i = 0; i < class_count; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::size_t, std::size_t> first_class_of_orbit;
  for (std::size_t i = 0; i < tuple_ids.size(); ++i) {
    auto [it, fresh] = first_class_of_orbit.emplace(tuple_ids[i], class_of[i]);
    if (!fresh) {
      auto a = find(it->second), b = find(class_of[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> ids(class_count);
  for (std::size_t c = 0; c < class_count; ++c) ids[c] = find(c);
  return ids;
}

}  // namespace detail

/// Components at the requested level from precomputed tuple orbit ids.
inline ComponentSummary components_from(const SpaceData& data, const std::vector<std::size_t>& tuple_ids,
                                        Level level, std::size_t genus) {
  const bool exact = genus == 0;
  switch (level) {
    case Level::tuples:
      return detail::summarize(level, exact, tuple_ids);
    case Level::pointed:
      return detail::summarize(level, exact,
                               detail::descend(tuple_ids, data.pointed_of, data.pointed_classes.size()));
    case Level::unpointed:
      return detail::summarize(level, exact,
                               detail::descend(tuple_ids, data.unpointed_of, data.unpointed_classes.size()));
  }
  return {};
}

/// Connected components of H^G_n, H^{Lambda,G}_{n,lambda_0} or the
/// unpointed space, as braid-move orbits.
inline ComponentSummary components(const SymmetryContext& ctx, std::size_t genus, std::size_t n,
                                   const std::optional<BranchingType>& filter, Level level,
                                   const EnumerationOptions& enumeration = {}, const OrbitOptions& orbits = {}) {
  auto data = count_space(ctx, genus, n, filter, enumeration);
  return components_from(data, tuple_orbit_ids(data.tuples, orbits), level, genus);
}

}  // namespace hurwitz

#endif  // HURWITZ_BRAID_HPP
