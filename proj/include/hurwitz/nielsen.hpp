#ifndef HURWITZ_NIELSEN_HPP
#define HURWITZ_NIELSEN_HPP

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "hurwitz/error.hpp"
#include "hurwitz/perm_group.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz {

inline constexpr std::uint64_t kDefaultWorkCap = 100'000'000;

/**
 * Monodromy datum (a_1, b_1, ..., a_g, b_g; g_1, ..., g_n) of a cover of a
 * genus-g curve branched in n points, subject to
 *
 *   [a_1, b_1] ... [a_g, b_g] g_1 ... g_n = 1,   g_j != 1.
 *
 * Handles and branches are stored separately so genus-0 code never touches
 * the surface relation. Ordering compares the concatenated one-line
 * notations (handles first); group_order is a cache and takes no part in it.
 */
struct HurwitzTuple {
  using Handle = std::pair<Permutation, Permutation>;

  std::vector<Handle> handles;
  std::vector<Permutation> branches;
  std::size_t group_order = 0;  // |<entries>|, 0 when not computed

  HurwitzTuple() = default;
  HurwitzTuple(std::vector<Handle> h, std::vector<Permutation> b) : handles(std::move(h)), branches(std::move(b)) {
    check_degrees();
  }
  explicit HurwitzTuple(std::vector<Permutation> b) : branches(std::move(b)) { check_degrees(); }

  std::size_t genus() const noexcept { return handles.size(); }
  std::size_t branch_count() const noexcept { return branches.size(); }
  std::size_t degree() const noexcept {
    if (!branches.empty()) return branches.front().degree();
    return handles.empty() ? 0 : handles.front().first.degree();
  }

  /// a_1, b_1, ..., a_g, b_g, g_1, ..., g_n.
  std::vector<Permutation> entries() const {
    std::vector<Permutation> out;
    out.reserve(2 * handles.size() + branches.size());
    for (const auto& [a, b] : handles) {
      out.push_back(a);
      out.push_back(b);
    }
    out.insert(out.end(), branches.begin(), branches.end());
    return out;
  }

  /// Applies f to every entry, keeping the handle/branch layout.
  template <class F>
  HurwitzTuple map_entries(F&& f) const {
    HurwitzTuple out;
    out.handles.reserve(handles.size());
    for (const auto& [a, b] : handles) out.handles.emplace_back(f(a), f(b));
    out.branches.reserve(branches.size());
    for (const auto& g : branches) out.branches.push_back(f(g));
    out.group_order = group_order;
    return out;
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (const auto& e : entries()) out.push_back(e.to_cycles());
    return out;
  }

  friend bool operator==(const HurwitzTuple& x, const HurwitzTuple& y) {
    return x.handles == y.handles && x.branches == y.branches;
  }
  friend std::strong_ordering operator<=>(const HurwitzTuple& x, const HurwitzTuple& y) {
    if (auto c = x.handles <=> y.handles; c != 0) return c;
    return x.branches <=> y.branches;
  }

 private:
  void check_degrees() const {
    const std::size_t d = degree();
    for (const auto& [a, b] : handles) {
      require_same_degree(a.degree(), d);
      require_same_degree(b.degree(), d);
    }
    for (const auto& g : branches) require_same_degree(g.degree(), d);
  }
};

inline std::ostream& operator<<(std::ostream& os, const HurwitzTuple& t) {
  os << '[';
  bool first = true;
  for (const auto& s : t.to_strings()) {
    if (!first) os << "; ";
    os << s;
    first = false;
  }
  return os << ']';
}

/// Parses "e_1; e_2; ...; e_k" where the first 2g entries are handle pairs.
inline HurwitzTuple parse_tuple(std::string_view text, std::size_t degree, std::size_t genus) {
  std::vector<Permutation> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find(';', start);
    if (stop == std::string_view::npos) stop = text.size();
    entries.push_back(parse_permutation(text.substr(start, stop - start), degree));
    start = stop + 1;
  }
  if (entries.size() <= 2 * genus)
    throw Error(Errc::SyntaxError, "tuple needs 2g handle entries followed by at least one branch entry");
  HurwitzTuple t;
  for (std::size_t i = 0; i < genus; ++i) t.handles.emplace_back(entries[2 * i], entries[2 * i + 1]);
  t.branches.assign(entries.begin() + static_cast<std::ptrdiff_t>(2 * genus), entries.end());
  return t;
}

/// [a_1,b_1] ... [a_g,b_g] g_1 ... g_n.
inline Permutation relation_product(const HurwitzTuple& t) {
  Permutation prod = Permutation::identity(t.degree());
  for (const auto& [a, b] : t.handles) prod = prod * commutator(a, b);
  for (const auto& g : t.branches) prod = prod * g;
  return prod;
}

struct ValidationReport {
  bool relation_holds = false;
  bool no_trivial_branch = false;
  bool generates_group = false;  // <entries> = G, i.e. m is onto
  bool group_transitive = false;

  bool valid() const noexcept { return relation_holds && no_trivial_branch && generates_group && group_transitive; }
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

inline ValidationReport validate_tuple(const HurwitzTuple& t, const PermGroup& g) {
  require_same_degree(t.degree(), g.degree());
  ValidationReport r;
  r.relation_holds = relation_product(t).is_identity();
  r.no_trivial_branch =
      !t.branches.empty() && std::none_of(t.branches.begin(), t.branches.end(), [](const Permutation& p) {
        return p.is_identity();
      });
  auto entries = t.entries();
  bool inside = std::all_of(entries.begin(), entries.end(), [&](const Permutation& p) { return g.contains(p); });
  // Inside G, generation reduces to comparing orders.
  r.generates_group = inside && generate_group(std::span<const Permutation>(entries), g.order()).order() == g.order();
  r.group_transitive = is_transitive(g);
  return r;
}

/**
 * n_1 O_1 + ... + n_k O_k: conjugacy classes of G (by canonical, i.e.
 * minimal, representative) with multiplicities. Entries are sorted by
 * representative and every multiplicity is positive.
 */
struct BranchingType {
  std::vector<std::pair<Permutation, std::size_t>> entries;

  std::size_t total() const noexcept {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.second;
    return n;
  }

  std::vector<std::pair<std::string, std::size_t>> to_strings() const {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& [rep, mult] : entries) out.emplace_back(rep.to_cycles(), mult);
    return out;
  }

  friend bool operator==(const BranchingType&, const BranchingType&) = default;
  friend auto operator<=>(const BranchingType&, const BranchingType&) = default;
};

/// Maps arbitrary class members to canonical representatives and merges duplicates.
inline BranchingType resolve_branching_type(const ClassTable& classes,
                                            const std::vector<std::pair<Permutation, std::size_t>>& raw) {
  std::vector<std::size_t> mult(classes.size(), 0);
  for (const auto& [p, m] : raw) {
    auto c = classes.class_index(p);
    if (!c) throw Error(Errc::NotInGroup, p.to_cycles() + " is not an element of G");
    mult[*c] += m;
  }
  BranchingType type;
  for (std::size_t c = 0; c < mult.size(); ++c)
    if (mult[c] > 0) type.entries.emplace_back(classes.classes()[c].representative, mult[c]);
  return type;
}

inline BranchingType branching_type(const HurwitzTuple& t, const ClassTable& classes) {
  std::vector<std::pair<Permutation, std::size_t>> raw;
  for (const auto& g : t.branches) raw.emplace_back(g, 1);
  return resolve_branching_type(classes, raw);
}

inline BranchingType branching_type(const HurwitzTuple& t, const PermGroup& g) {
  require_same_degree(t.degree(), g.degree());
  return branching_type(t, ClassTable(g));
}

struct EnumerationOptions {
  std::uint64_t work_cap = kDefaultWorkCap;
  unsigned threads = 1;
};

struct EnumerationStats {
  std::uint64_t nodes_visited = 0;
};

namespace detail {

/**
 * Depth-first search over entry positions 0 .. 2g+n-2; the last branch is
 * solved from the relation. Elements are visited in sorted order, so the
 * emission order is the global tuple order.
 */
class TupleSearch {
 public:
  TupleSearch(const PermGroup& g, std::size_t genus, std::size_t n, const std::optional<BranchingType>& filter,
              std::uint64_t work_cap, std::atomic<std::uint64_t>& nodes)
      : group_(g), indexed_(g), genus_(genus), n_(n), work_cap_(work_cap), nodes_(nodes) {
    if (n == 0) throw Error(Errc::SchemaError, "branch count must be at least 1");
    if (!is_transitive(g)) throw Error(Errc::IntransitiveGroup, "G is not transitive on Lambda");
    if (filter) {
      if (filter->total() != n)
        throw Error(Errc::TypeMultiplicityMismatch, "branching type multiplicities do not sum to n");
      ClassTable classes(g);
      BranchingType canonical = resolve_branching_type(classes, filter->entries);
      remaining_.assign(classes.size(), 0);
      for (const auto& [rep, mult] : canonical.entries) remaining_[*classes.class_index(rep)] = mult;
      class_of_.resize(g.order());
      for (std::size_t i = 0; i < g.order(); ++i) class_of_[i] = classes.class_index_of_element(i);
    }
    free_positions_ = 2 * genus + n - 1;
    current_.assign(2 * genus + n, 0);
  }

  std::size_t free_positions() const noexcept { return free_positions_; }

  /// Candidates for position 0 (the partition key for parallel workers).
  std::vector<std::uint32_t> first_candidates() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t e = 0; e < indexed_.size(); ++e)
      if (admissible(0, e)) out.push_back(e);
    return out;
  }

  /// Runs the subtree with position 0 fixed to `first`, or the whole
  /// (trivial) tree when there are no free positions.
  template <class Emit>
  void run(std::optional<std::uint32_t> first, Emit&& emit) {
    if (free_positions_ == 0) {
      finish(indexed_.identity(), emit);
      return;
    }
    place(0, *first, indexed_.identity(), emit);
  }

 private:
  bool is_branch(std::size_t pos) const noexcept { return pos >= 2 * genus_; }

  bool admissible(std::size_t pos, std::uint32_t e) const {
    if (!is_branch(pos)) return true;
    if (e == indexed_.identity()) return false;
    return remaining_.empty() || remaining_[class_of_[e]] > 0;
  }

  void count_node() {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > work_cap_)
      throw Error(Errc::WorkCapExceeded, "search visited more than " + std::to_string(work_cap_) + " nodes");
  }

  // `prod` is the relation product of all completed factors before `pos`.
  template <class Emit>
  void place(std::size_t pos, std::uint32_t e, std::uint32_t prod, Emit& emit) {
    count_node();
    current_[pos] = e;
    if (is_branch(pos) && !remaining_.empty()) --remaining_[class_of_[e]];
    std::uint32_t next_prod = prod;
    if (is_branch(pos))
      next_prod = indexed_.mul(prod, e);
    else if (pos % 2 == 1)
      next_prod = indexed_.mul(prod, indexed_.commutator(current_[pos - 1], e));

    if (pos + 1 == free_positions_) {
      finish(next_prod, emit);
    } else {
      for (std::uint32_t f = 0; f < indexed_.size(); ++f)
        if (admissible(pos + 1, f)) place(pos + 1, f, next_prod, emit);
    }
    if (is_branch(pos) && !remaining_.empty()) ++remaining_[class_of_[e]];
  }

  template <class Emit>
  void finish(std::uint32_t prod, Emit& emit) {
    const std::uint32_t last = indexed_.inverse(prod);
    if (!admissible(free_positions_, last)) return;
    if (!remaining_.empty()) {
      // the solved entry must use up exactly the one remaining slot
      if (remaining_[class_of_[last]] != 1) return;
    }
    current_.back() = last;
    if (indexed_.generated_order(current_) != indexed_.size()) return;
    emit(materialize());
  }

  HurwitzTuple materialize() const {
    HurwitzTuple t;
    for (std::size_t i = 0; i < genus_; ++i)
      t.handles.emplace_back(indexed_.element(current_[2 * i]), indexed_.element(current_[2 * i + 1]));
    for (std::size_t j = 0; j < n_; ++j) t.branches.push_back(indexed_.element(current_[2 * genus_ + j]));
    t.group_order = group_.order();
    return t;
  }

  const PermGroup& group_;
  IndexedGroup indexed_;
  std::size_t genus_;
  std::size_t n_;
  std::uint64_t work_cap_;
  std::atomic<std::uint64_t>& nodes_;
  std::size_t free_positions_ = 0;
  std::vector<std::size_t> remaining_;  // per class; empty = no filter
  std::vector<std::size_t> class_of_;
  std::vector<std::uint32_t> current_;
};

}  // namespace detail

/// Streams every point of H^G_n (optionally of one branching type) to
/// `visit`, in the global tuple order. Single-threaded.
template <class Visitor>
EnumerationStats for_each_tuple(const PermGroup& g, std::size_t genus, std::size_t n,
                                const std::optional<BranchingType>& filter, Visitor&& visit,
                                const EnumerationOptions& options = {}) {
  std::atomic<std::uint64_t> nodes{0};
  detail::TupleSearch search(g, genus, n, filter, options.work_cap, nodes);
  auto emit = [&](HurwitzTuple&& t) { visit(std::move(t)); };
  if (search.free_positions() == 0) {
    search.run(std::nullopt, emit);
  } else {
    for (auto first : search.first_candidates()) search.run(first, emit);
  }
  return EnumerationStats{nodes.load()};
}

/**
 * Materializes H^G_n as a sorted vector. With options.threads > 1 the
 * search tree is split by the value of the first entry; the per-subtree
 * results are concatenated in first-entry order, which is already the
 * global order, so the output does not depend on the thread count.
 */
inline std::vector<HurwitzTuple> enumerate_tuples(const PermGroup& g, std::size_t genus, std::size_t n,
                                                  const std::optional<BranchingType>& filter = std::nullopt,
                                                  const EnumerationOptions& options = {},
                                                  EnumerationStats* stats = nullptr) {
  std::vector<HurwitzTuple> out;
  if (options.threads <= 1) {
    auto s = for_each_tuple(
        g, genus, n, filter, [&](HurwitzTuple&& t) { out.push_back(std::move(t)); }, options);
    if (stats) *stats = s;
    return out;
  }

  std::atomic<std::uint64_t> nodes{0};
  detail::TupleSearch probe(g, genus, n, filter, options.work_cap, nodes);
  if (probe.free_positions() == 0) {
    probe.run(std::nullopt, [&](HurwitzTuple&& t) { out.push_back(std::move(t)); });
    if (stats) *stats = EnumerationStats{nodes.load()};
    return out;
  }
  const auto firsts = probe.first_candidates();
  std::vector<std::vector<HurwitzTuple>> slots(firsts.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      detail::TupleSearch search(g, genus, n, filter, options.work_cap, nodes);
      for (std::size_t k = next.fetch_add(1); k < firsts.size(); k = next.fetch_add(1)) {
        auto& slot = slots[k];
        search.run(firsts[k], [&](HurwitzTuple&& t) { slot.push_back(std::move(t)); });
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(firsts.size());
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = std::min<unsigned>(options.threads, static_cast<unsigned>(firsts.size()));
  for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (auto& slot : slots)
    for (auto& t : slot) out.push_back(std::move(t));
  if (stats) *stats = EnumerationStats{nodes.load()};
  return out;
}

}  // namespace hurwitz

#endif  // HURWITZ_NIELSEN_HPP
