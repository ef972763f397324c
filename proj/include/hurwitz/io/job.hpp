#ifndef HURWITZ_IO_JOB_HPP
#define HURWITZ_IO_JOB_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hurwitz/braid.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/nielsen.hpp"
#include "hurwitz/perm_group.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz::io {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

struct Caps {
  std::uint64_t work = kDefaultWorkCap;
  std::uint64_t orbit = kDefaultOrbitCap;
  std::uint64_t order = kDefaultOrderCap;

  friend bool operator==(const Caps&, const Caps&) = default;
};

/**
 * One Hurwitz-space job: the group G <= S_d by generators, the base genus g,
 * the branch count n, the marked point (0-based here, 1-based on disk), an
 * optional branching type and the resource caps.
 */
struct JobSpec {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::size_t base_genus = 0;
  std::size_t branch_points = 0;
  Point marked_point = 0;
  std::optional<BranchingType> branching_type;  // canonical class representatives
  Caps caps;

  PermGroup group;  // derived from generators; carries marked_point

  friend bool operator==(const JobSpec& a, const JobSpec& b) {
    return a.degree == b.degree && a.generators == b.generators && a.base_genus == b.base_genus &&
           a.branch_points == b.branch_points && a.marked_point == b.marked_point &&
           a.branching_type == b.branching_type && a.caps == b.caps;
  }
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& what) { throw Error(Errc::SchemaError, what); }

inline std::uint64_t read_count(const json& doc, const char* key, std::uint64_t min_value) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) schema_error(std::string("'") + key + "' must be an integer");
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u < min_value) schema_error(std::string("'") + key + "' must be at least " + std::to_string(min_value));
    return u;
  }
  auto s = v.get<std::int64_t>();
  if (s < 0 || static_cast<std::uint64_t>(s) < min_value)
    schema_error(std::string("'") + key + "' must be at least " + std::to_string(min_value));
  return static_cast<std::uint64_t>(s);
}

inline Permutation read_permutation(const json& v, std::size_t degree) {
  if (!v.is_string()) schema_error("permutations must be cycle-notation strings");
  try {
    return parse_permutation(v.get<std::string>(), degree);
  } catch (const Error& e) {
    schema_error(std::string("bad permutation '") + v.get<std::string>() + "': " + e.what());
  }
}

}  // namespace detail

/// Validates a parsed document and applies defaults (marked point 1, default caps).
inline JobSpec job_from_json(const json& doc) {
  using detail::schema_error;
  if (!doc.is_object()) schema_error("job must be a JSON object");
  static const std::set<std::string> known{"format_version", "degree",        "generators", "base_genus",
                                           "branch_points",  "marked_point",  "branching_type", "caps"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) schema_error("unknown field '" + key + "'");
  for (const char* key : {"degree", "generators", "base_genus", "branch_points"})
    if (!doc.contains(key)) schema_error(std::string("missing field '") + key + "'");
  if (doc.contains("format_version") && detail::read_count(doc, "format_version", 0) != kFormatVersion)
    schema_error("unsupported format_version");

  JobSpec spec;
  spec.degree = detail::read_count(doc, "degree", 1);
  spec.base_genus = detail::read_count(doc, "base_genus", 0);
  spec.branch_points = detail::read_count(doc, "branch_points", 1);
  if (doc.contains("marked_point")) {
    auto m = detail::read_count(doc, "marked_point", 1);
    if (m > spec.degree) schema_error("'marked_point' exceeds degree");
    spec.marked_point = static_cast<Point>(m - 1);
  }
  if (doc.contains("caps")) {
    const json& caps = doc.at("caps");
    if (!caps.is_object()) schema_error("'caps' must be an object");
    for (const auto& [key, value] : caps.items())
      if (key != "work" && key != "orbit" && key != "order") schema_error("unknown cap '" + key + "'");
    if (caps.contains("work")) spec.caps.work = detail::read_count(caps, "work", 1);
    if (caps.contains("orbit")) spec.caps.orbit = detail::read_count(caps, "orbit", 1);
    if (caps.contains("order")) spec.caps.order = detail::read_count(caps, "order", 1);
  }

  const json& gens = doc.at("generators");
  if (!gens.is_array() || gens.empty()) schema_error("'generators' must be a non-empty array");
  for (const auto& g : gens) spec.generators.push_back(detail::read_permutation(g, spec.degree));

  spec.group = generate_group(std::span<const Permutation>(spec.generators), spec.caps.order)
                   .with_marked_point(spec.marked_point);
  if (!is_transitive(spec.group)) throw Error(Errc::IntransitiveGroup, "generators do not act transitively");

  if (doc.contains("branching_type")) {
    const json& type = doc.at("branching_type");
    if (!type.is_array()) schema_error("'branching_type' must be an array");
    std::vector<std::pair<Permutation, std::size_t>> raw;
    std::size_t total = 0;
    for (const auto& entry : type) {
      if (!entry.is_array() || entry.size() != 2 || !entry[1].is_number_integer())
        schema_error("branching_type entries are [cycle-string, multiplicity]");
      auto mult = entry[1].get<std::int64_t>();
      if (mult < 1) schema_error("branching_type multiplicities must be positive");
      raw.emplace_back(detail::read_permutation(entry[0], spec.degree), static_cast<std::size_t>(mult));
      total += static_cast<std::size_t>(mult);
    }
    if (total != spec.branch_points)
      throw Error(Errc::TypeMultiplicityMismatch, "branching_type multiplicities sum to " + std::to_string(total) +
                                                      ", branch_points is " + std::to_string(spec.branch_points));
    try {
      spec.branching_type = resolve_branching_type(ClassTable(spec.group), raw);
    } catch (const Error& e) {
      schema_error(std::string("branching_type: ") + e.what());
    }
    if (spec.branching_type->entries.front().first.is_identity())
      schema_error("branching_type may not contain the identity class");
  }
  return spec;
}

inline JobSpec parse_job(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaError, std::string("malformed JSON: ") + e.what());
  }
  return job_from_json(doc);
}

/// The normalized spec document (generators in canonical cycle notation,
/// branching type by canonical class representatives).
inline json to_json(const JobSpec& spec) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["degree"] = spec.degree;
  json gens = json::array();
  for (const auto& g : spec.generators) gens.push_back(g.to_cycles());
  doc["generators"] = gens;
  doc["base_genus"] = spec.base_genus;
  doc["branch_points"] = spec.branch_points;
  doc["marked_point"] = spec.marked_point + 1;
  if (spec.branching_type) {
    json type = json::array();
    for (const auto& [rep, mult] : spec.branching_type->to_strings()) type.push_back(json::array({rep, mult}));
    doc["branching_type"] = type;
  }
  doc["caps"] = {{"work", spec.caps.work}, {"orbit", spec.caps.orbit}, {"order", spec.caps.order}};
  return doc;
}

/**
 * Content-addressed cache key over (format version, degree, sorted distinct
 * generators in one-line form, genus, n, marked point, branching type).
 * Caps are excluded: they change whether a run finishes, not its result.
 */
inline std::string cache_key(const JobSpec& spec) {
  std::vector<Permutation> gens = spec.generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::string material = "hurwitz|v" + std::to_string(kFormatVersion) + "|d=" + std::to_string(spec.degree) + "|gens=";
  for (const auto& g : gens) {
    material += '[';
    for (Point x : g.images()) material += std::to_string(x) + ',';
    material += ']';
  }
  material += "|g=" + std::to_string(spec.base_genus) + "|n=" + std::to_string(spec.branch_points) +
              "|m=" + std::to_string(spec.marked_point) + "|type=";
  if (spec.branching_type)
    for (const auto& [rep, mult] : spec.branching_type->entries) {
      for (Point x : rep.images()) material += std::to_string(x) + ',';
      material += 'x' + std::to_string(mult) + ';';
    }

  // FNV-1a, 64 bit
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : material) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return "v" + std::to_string(kFormatVersion) + "-" + hex;
}

}  // namespace hurwitz::io

#endif  // HURWITZ_IO_JOB_HPP
