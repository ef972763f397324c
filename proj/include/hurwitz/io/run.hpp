#ifndef HURWITZ_IO_RUN_HPP
#define HURWITZ_IO_RUN_HPP

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <vector>

#include "hurwitz/braid.hpp"
#include "hurwitz/classify.hpp"
#include "hurwitz/covers.hpp"
#include "hurwitz/detail/parallel.hpp"
#include "hurwitz/io/cache.hpp"
#include "hurwitz/io/job.hpp"
#include "hurwitz/io/report.hpp"

namespace hurwitz::io {

struct RunOptions {
  bool census = true;
  bool components = true;
  bool fibers = true;
  unsigned threads = 1;
  std::optional<std::filesystem::path> cache_dir;  // nullopt = no cache
  std::ostream* warnings = &std::cerr;
};

namespace detail {

inline TypeStrings type_strings(const BranchingType& t) { return t.to_strings(); }

}  // namespace detail

/// Runs one job end to end: enumerate (or load from cache), classify, and
/// emit the requested report sections.
inline ReportDocument run_job(const JobSpec& spec, const RunOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  ReportDocument doc;
  doc.spec = spec;
  doc.meta.threads = options.threads;

  const SymmetryContext ctx(spec.group);
  doc.meta.normalizer_order = ctx.normalizer().order();
  doc.meta.pointed_normalizer_order = ctx.pointed_normalizer().order();
  doc.meta.centralizer_order = ctx.centralizer().order();

  std::optional<Cache> cache;
  if (options.cache_dir) cache.emplace(*options.cache_dir, options.warnings);

  std::optional<CachedSpace> cached;
  if (cache) cached = cache->load(spec);
  doc.meta.cache_hit = cached.has_value();

  std::vector<HurwitzTuple> tuples;
  if (cached) {
    tuples = cached->tuples;
  } else {
    EnumerationStats stats;
    tuples = enumerate_tuples(spec.group, spec.base_genus, spec.branch_points, spec.branching_type,
                              EnumerationOptions{spec.caps.work, options.threads}, &stats);
    doc.meta.nodes_visited = stats.nodes_visited;
  }

  SpaceData data = classify_space(std::move(tuples), ctx, !spec.branching_type.has_value(), options.threads);

  std::optional<std::vector<std::size_t>> orbit_ids;
  if (cached && cached->orbit_ids) orbit_ids = cached->orbit_ids;
  if (options.components && !orbit_ids)
    orbit_ids = tuple_orbit_ids(data.tuples, OrbitOptions{spec.caps.orbit, MoveConvention::standard, false});

  if (cache && (!cached || (orbit_ids && !cached->orbit_ids))) cache->store(spec, CachedSpace{data.tuples, orbit_ids});

  if (options.census) {
    CensusSection c;
    c.tuples = data.census.tuples;
    c.pointed = data.census.pointed;
    c.unpointed = data.census.unpointed;
    for (const auto& t : data.census.by_type)
      c.by_type.push_back(TypeCount{detail::type_strings(t.type), t.tuples, t.pointed, t.unpointed});
    doc.census = std::move(c);
  }

  if (options.components) {
    ComponentsSection c;
    auto tuples_level = components_from(data, *orbit_ids, Level::tuples, spec.base_genus);
    c.exact = tuples_level.exact;
    c.label = tuples_level.label();
    c.orbit_sizes = tuples_level.orbit_sizes;
    c.pointed_orbit_sizes = components_from(data, *orbit_ids, Level::pointed, spec.base_genus).orbit_sizes;
    c.unpointed_orbit_sizes = components_from(data, *orbit_ids, Level::unpointed, spec.base_genus).orbit_sizes;
    doc.components = std::move(c);
  }

  if (options.fibers) {
    std::vector<ClassRecord> records(data.pointed_classes.size());
    hurwitz::detail::parallel_for(records.size(), options.threads, [&](std::size_t i) {
      PointedClass cls{data.pointed_classes[i], ctx.marked_point(), true};
      CoverReport r = universal_fiber_report(cls, ctx);
      records[i] = ClassRecord{cls.canonical.to_strings(), detail::type_strings(r.branching_type), r.profiles,
                               r.fiber_genus, r.galois_genus};
    });
    doc.classes = std::move(records);
  }

  doc.meta.elapsed_us = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count());
  return doc;
}

/// Process exit code for a library error: 2 input, 3 cap, 4 internal.
inline int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::input: return 2;
    case ErrorCategory::cap: return 3;
    case ErrorCategory::internal: return 4;
  }
  return 4;
}

}  // namespace hurwitz::io

#endif  // HURWITZ_IO_RUN_HPP
