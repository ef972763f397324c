#ifndef HURWITZ_IO_REPORT_HPP
#define HURWITZ_IO_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hurwitz/error.hpp"
#include "hurwitz/io/job.hpp"

namespace hurwitz::io {

using TypeStrings = std::vector<std::pair<std::string, std::size_t>>;

struct TypeCount {
  TypeStrings type;
  std::size_t tuples = 0;
  std::size_t pointed = 0;
  std::size_t unpointed = 0;
  friend bool operator==(const TypeCount&, const TypeCount&) = default;
};

struct CensusSection {
  std::size_t tuples = 0;
  std::size_t pointed = 0;
  std::size_t unpointed = 0;
  std::vector<TypeCount> by_type;
  friend bool operator==(const CensusSection&, const CensusSection&) = default;
};

struct ComponentsSection {
  bool exact = true;
  std::string label;
  std::vector<std::size_t> orbit_sizes;  // tuple level
  std::vector<std::size_t> pointed_orbit_sizes;
  std::vector<std::size_t> unpointed_orbit_sizes;
  friend bool operator==(const ComponentsSection&, const ComponentsSection&) = default;
};

struct ClassRecord {
  std::vector<std::string> canonical;
  TypeStrings type;
  std::vector<std::vector<std::size_t>> profiles;
  std::int64_t genus_induced = 0;
  std::int64_t genus_galois = 0;
  friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

struct ReportMeta {
  std::uint64_t elapsed_us = 0;
  std::uint64_t nodes_visited = 0;
  bool cache_hit = false;
  unsigned threads = 1;
  std::size_t normalizer_order = 0;
  std::size_t pointed_normalizer_order = 0;
  std::size_t centralizer_order = 0;
  friend bool operator==(const ReportMeta&, const ReportMeta&) = default;
};

struct ReportDocument {
  int format_version = kFormatVersion;
  JobSpec spec;
  std::optional<CensusSection> census;
  std::optional<ComponentsSection> components;
  std::optional<std::vector<ClassRecord>> classes;
  ReportMeta meta;
  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

namespace detail {

inline json type_json(const TypeStrings& t) {
  json out = json::array();
  for (const auto& [rep, mult] : t) out.push_back(json::array({rep, mult}));
  return out;
}

inline TypeStrings type_from(const json& j) {
  TypeStrings out;
  for (const auto& e : j) out.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::size_t>());
  return out;
}

}  // namespace detail

/// Everything except "meta": the part that must be byte-identical across
/// runs, thread counts and cache states.
inline json payload_json(const ReportDocument& doc) {
  json out;
  out["format_version"] = doc.format_version;
  out["spec"] = to_json(doc.spec);
  if (doc.census) {
    json by_type = json::array();
    for (const auto& t : doc.census->by_type)
      by_type.push_back(
          {{"type", detail::type_json(t.type)}, {"tuples", t.tuples}, {"pointed", t.pointed}, {"unpointed", t.unpointed}});
    out["census"] = {{"tuples", doc.census->tuples},
                     {"pointed", doc.census->pointed},
                     {"unpointed", doc.census->unpointed},
                     {"by_type", by_type}};
  }
  if (doc.components) {
    const auto& c = *doc.components;
    out["components"] = {{"exact", c.exact},
                         {"label", c.label},
                         {"orbit_sizes", c.orbit_sizes},
                         {"pointed_orbit_sizes", c.pointed_orbit_sizes},
                         {"unpointed_orbit_sizes", c.unpointed_orbit_sizes}};
  }
  if (doc.classes) {
    json classes = json::array();
    for (const auto& r : *doc.classes)
      classes.push_back({{"canonical", r.canonical},
                         {"type", detail::type_json(r.type)},
                         {"profiles", r.profiles},
                         {"genus_induced", r.genus_induced},
                         {"genus_galois", r.genus_galois}});
    out["classes"] = classes;
  }
  return out;
}

inline json to_json(const ReportDocument& doc) {
  json out = payload_json(doc);
  const auto& m = doc.meta;
  out["meta"] = {{"elapsed_us", m.elapsed_us},
                 {"nodes_visited", m.nodes_visited},
                 {"cache_hit", m.cache_hit},
                 {"threads", m.threads},
                 {"normalizer_order", m.normalizer_order},
                 {"pointed_normalizer_order", m.pointed_normalizer_order},
                 {"centralizer_order", m.centralizer_order}};
  return out;
}

inline ReportDocument report_from_json(const json& j) {
  try {
    ReportDocument doc;
    doc.format_version = j.at("format_version").get<int>();
    if (doc.format_version != kFormatVersion) throw Error(Errc::SchemaError, "unsupported report format_version");
    doc.spec = job_from_json(j.at("spec"));
    if (j.contains("census")) {
      const auto& c = j.at("census");
      CensusSection s;
      s.tuples = c.at("tuples").get<std::size_t>();
      s.pointed = c.at("pointed").get<std::size_t>();
      s.unpointed = c.at("unpointed").get<std::size_t>();
      for (const auto& t : c.at("by_type"))
        s.by_type.push_back(TypeCount{detail::type_from(t.at("type")), t.at("tuples").get<std::size_t>(),
                                      t.at("pointed").get<std::size_t>(), t.at("unpointed").get<std::size_t>()});
      doc.census = std::move(s);
    }
    if (j.contains("components")) {
      const auto& c = j.at("components");
      doc.components = ComponentsSection{c.at("exact").get<bool>(), c.at("label").get<std::string>(),
                                         c.at("orbit_sizes").get<std::vector<std::size_t>>(),
                                         c.at("pointed_orbit_sizes").get<std::vector<std::size_t>>(),
                                         c.at("unpointed_orbit_sizes").get<std::vector<std::size_t>>()};
    }
    if (j.contains("classes")) {
      std::vector<ClassRecord> records;
      for (const auto& r : j.at("classes"))
        records.push_back(ClassRecord{r.at("canonical").get<std::vector<std::string>>(), detail::type_from(r.at("type")),
                                      r.at("profiles").get<std::vector<std::vector<std::size_t>>>(),
                                      r.at("genus_induced").get<std::int64_t>(), r.at("genus_galois").get<std::int64_t>()});
      doc.classes = std::move(records);
    }
    if (j.contains("meta")) {
      const auto& m = j.at("meta");
      doc.meta = ReportMeta{m.at("elapsed_us").get<std::uint64_t>(),
                            m.at("nodes_visited").get<std::uint64_t>(),
                            m.at("cache_hit").get<bool>(),
                            m.at("threads").get<unsigned>(),
                            m.at("normalizer_order").get<std::size_t>(),
                            m.at("pointed_normalizer_order").get<std::size_t>(),
                            m.at("centralizer_order").get<std::size_t>()};
    }
    return doc;
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("malformed report: ") + e.what());
  }
}

}  // namespace hurwitz::io

#endif  // HURWITZ_IO_REPORT_HPP
