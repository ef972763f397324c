#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "hurwitz/io/job.hpp"
#include "hurwitz/io/report.hpp"
#include "hurwitz/io/run.hpp"
#include "support.hpp"

using namespace hurwitz;
using namespace hurwitz::io;
namespace fs = std::filesystem;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvariantViolated;
}

const char* kC2 = R"J({"degree":2,"generators":["(1 2)"],"base_genus":0,"branch_points":4})J";
const char* kS3 =
    R"J({"format_version":1,"degree":3,"generators":["(1 2)","(1 2 3)"],"base_genus":0,"branch_points":4,
        "marked_point":1,"branching_type":[["(1 3)",4]]})J";
const char* kV4 = R"J({"degree":4,"generators":["(1 2)(3 4)","(1 3)(2 4)"],"base_genus":0,"branch_points":3})J";

// Scratch directory removed on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hurwitz-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

json patched(const char* base, const std::function<void(json&)>& edit) {
  auto doc = json::parse(base);
  edit(doc);
  return doc;
}

TEST(Job, MinimalDefaults) {
  auto spec = parse_job(kC2);
  EXPECT_EQ(spec.degree, 2u);
  EXPECT_EQ(spec.marked_point, 0u);
  EXPECT_FALSE(spec.branching_type.has_value());
  EXPECT_EQ(spec.caps, Caps{});
  EXPECT_EQ(spec.group.order(), 2u);
}

TEST(Job, TypeResolvedToClass) {
  auto spec = parse_job(kS3);
  ASSERT_TRUE(spec.branching_type.has_value());
  EXPECT_EQ(spec.branching_type->to_strings(), (std::vector<std::pair<std::string, std::size_t>>{{"(2 3)", 4}}));
}

TEST(Job, Errors) {
  EXPECT_EQ(code_of([] { parse_job(R"J({"degree":3,"generators":["(1 2)"],"base_genus":0,"branch_points":2})J"); }),
            Errc::IntransitiveGroup);
  EXPECT_EQ(code_of([] { parse_job("{not json"); }), Errc::SchemaError);
  EXPECT_EQ(code_of([] { parse_job("[]"); }), Errc::SchemaError);
  auto bad = [](const std::function<void(json&)>& edit) {
    return code_of([&] { job_from_json(patched(kS3, edit)); });
  };
  EXPECT_EQ(bad([](json& j) { j["extra"] = 1; }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["format_version"] = 2; }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j.erase("degree"); }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["degree"] = "3"; }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["base_genus"] = -1; }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["branch_points"] = 0; }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["generators"] = json::array({"(1 4)"}); }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["generators"] = json::array(); }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["marked_point"] = 4; }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["marked_point"] = 0; }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["branching_type"] = json::array({json::array({"(1 2)", 3})}); }),
            Errc::TypeMultiplicityMismatch);
  EXPECT_EQ(bad([](json& j) { j["branching_type"] = json::array({json::array({"()", 4})}); }), Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["branching_type"] = json::array({json::array({"(1 2)", 0})}); }),
            Errc::SchemaError);
  EXPECT_EQ(bad([](json& j) { j["caps"] = {{"work", 5}, {"bogus", 1}}; }), Errc::SchemaError);
}

TEST(Job, CapsAndOrderCap) {
  auto spec = job_from_json(patched(kS3, [](json& j) { j["caps"] = {{"work", 10}, {"orbit", 20}, {"order", 30}}; }));
  EXPECT_EQ(spec.caps.work, 10u);
  EXPECT_EQ(spec.caps.orbit, 20u);
  EXPECT_EQ(spec.caps.order, 30u);
  EXPECT_EQ(code_of([] { job_from_json(patched(kS3, [](json& j) { j["caps"] = {{"order", 3}}; })); }),
            Errc::OrderCapExceeded);
}

TEST(Job, JsonRoundTrip) {
  for (const char* text : {kC2, kS3, kV4}) {
    auto spec = parse_job(text);
    auto again = job_from_json(to_json(spec));
    EXPECT_EQ(again, spec);
    EXPECT_EQ(to_json(again).dump(), to_json(spec).dump());
  }
}

TEST(CacheKey, Examples) {
  auto a = parse_job(kS3);
  EXPECT_EQ(cache_key(a), cache_key(parse_job(kS3)));
  auto moved = job_from_json(patched(kS3, [](json& j) { j["marked_point"] = 2; }));
  EXPECT_NE(cache_key(a), cache_key(moved));
  auto reordered = job_from_json(patched(kS3, [](json& j) { j["generators"] = {"(1 2 3)", "(1 2)"}; }));
  EXPECT_EQ(cache_key(a), cache_key(reordered));
  auto capped = job_from_json(patched(kS3, [](json& j) { j["caps"] = {{"work", 123456}}; }));
  EXPECT_EQ(cache_key(a), cache_key(capped));
}

TEST(CacheKey, EveryFieldMatters) {
  auto base = cache_key(parse_job(kS3));
  std::vector<std::function<void(json&)>> edits = {
      [](json& j) { j["branch_points"] = 5; j["branching_type"] = json::array({json::array({"(1 2)", 4}), json::array({"(1 2 3)", 1})}); },
      [](json& j) { j["base_genus"] = 1; },
      [](json& j) { j.erase("branching_type"); },
      [](json& j) { j["branching_type"] = json::array({json::array({"(1 2)", 2}), json::array({"(1 2 3)", 2})}); },
      [](json& j) { j["generators"] = {"(1 2)", "(1 3)"}; },
      [](json& j) { j["degree"] = 4; j["generators"] = {"(1 2)", "(1 2 3 4)"}; },
  };
  for (const auto& e : edits) EXPECT_NE(cache_key(job_from_json(patched(kS3, e))), base);
  EXPECT_EQ(base.rfind("v1-", 0), 0u);
  EXPECT_EQ(base.size(), 19u);
}

RunOptions quiet(std::ostream& sink, std::optional<fs::path> dir = std::nullopt, unsigned threads = 1) {
  RunOptions o;
  o.threads = threads;
  o.cache_dir = std::move(dir);
  o.warnings = &sink;
  return o;
}

TEST(Run, Examples) {
  std::ostringstream sink;
  auto c2 = run_job(parse_job(kC2), quiet(sink));
  ASSERT_TRUE(c2.census && c2.components && c2.classes);
  EXPECT_EQ(c2.census->tuples, 1u);
  EXPECT_EQ(c2.components->orbit_sizes, (std::vector<std::size_t>{1}));
  EXPECT_EQ(c2.classes->at(0).genus_induced, 1);

  auto s3 = run_job(parse_job(kS3), quiet(sink));
  EXPECT_EQ(std::tie(s3.census->tuples, s3.census->pointed, s3.census->unpointed), std::make_tuple(24u, 12u, 4u));
  ASSERT_EQ(s3.classes->size(), 12u);
  for (const auto& r : *s3.classes) {
    EXPECT_EQ(r.genus_induced, 0);
    EXPECT_EQ(r.genus_galois, 1);
  }

  auto v4 = run_job(parse_job(kV4), quiet(sink));
  EXPECT_EQ(std::tie(v4.census->tuples, v4.census->pointed, v4.census->unpointed), std::make_tuple(6u, 1u, 1u));
  EXPECT_EQ(v4.classes->at(0).genus_induced, 0);
}

TEST(Run, SectionsOnRequest) {
  std::ostringstream sink;
  auto o = quiet(sink);
  o.components = false;
  o.fibers = false;
  auto doc = run_job(parse_job(kS3), o);
  EXPECT_TRUE(doc.census.has_value());
  EXPECT_FALSE(doc.components.has_value());
  EXPECT_FALSE(doc.classes.has_value());
  EXPECT_FALSE(payload_json(doc).contains("components"));
}

TEST(Run, CapsReported) {
  std::ostringstream sink;
  auto spec = job_from_json(patched(kS3, [](json& j) { j["caps"] = {{"work", 3}}; }));
  EXPECT_EQ(code_of([&] { run_job(spec, quiet(sink)); }), Errc::WorkCapExceeded);
  auto orbit = job_from_json(patched(kV4, [](json& j) { j["caps"] = {{"orbit", 2}}; }));
  EXPECT_EQ(code_of([&] { run_job(orbit, quiet(sink)); }), Errc::OrbitCapExceeded);
  EXPECT_EQ(exit_code_for(Error(Errc::WorkCapExceeded, "")), 3);
  EXPECT_EQ(exit_code_for(Error(Errc::SchemaError, "")), 2);
  EXPECT_EQ(exit_code_for(Error(Errc::FreeActionViolated, "")), 4);
}

TEST(Report, RoundTrip) {
  std::ostringstream sink;
  for (const char* text : {kC2, kS3, kV4}) {
    auto doc = run_job(parse_job(text), quiet(sink));
    auto back = report_from_json(json::parse(to_json(doc).dump()));
    EXPECT_EQ(back, doc);
    EXPECT_EQ(to_json(back).dump(), to_json(doc).dump());
  }
  EXPECT_EQ(code_of([] { report_from_json(json::parse(R"J({"format_version":1})J")); }), Errc::SchemaError);
}

TEST(Report, ConsistentTotals) {
  std::ostringstream sink;
  auto doc = run_job(parse_job(kS3), quiet(sink));
  EXPECT_EQ(doc.classes->size(), doc.census->pointed);
  for (const auto& r : *doc.classes) {
    bool listed = false;
    for (const auto& t : doc.census->by_type) listed = listed || t.type == r.type;
    EXPECT_TRUE(listed);
  }
}

TEST(Determinism, ThreadsAndRuns) {
  std::ostringstream sink;
  for (const auto& c : testing_support::matrix()) {
    json doc = {{"degree", c.degree}, {"generators", c.generators}, {"base_genus", c.genus}, {"branch_points", c.n}};
    auto spec = job_from_json(doc);
    auto a = payload_json(run_job(spec, quiet(sink, std::nullopt, 1))).dump();
    auto b = payload_json(run_job(spec, quiet(sink, std::nullopt, 1))).dump();
    auto c4 = payload_json(run_job(spec, quiet(sink, std::nullopt, 4))).dump();
    EXPECT_EQ(a, b) << c.name;
    EXPECT_EQ(a, c4) << c.name;
  }
}

TEST(Cache, HitEqualsColdRun) {
  TempDir dir;
  std::ostringstream sink;
  auto spec = parse_job(kS3);
  auto cold = run_job(spec, quiet(sink));
  auto first = run_job(spec, quiet(sink, dir.path));
  EXPECT_FALSE(first.meta.cache_hit);
  EXPECT_TRUE(fs::exists(dir.path / (cache_key(spec) + ".json")));
  auto second = run_job(spec, quiet(sink, dir.path));
  EXPECT_TRUE(second.meta.cache_hit);
  EXPECT_EQ(payload_json(second).dump(), payload_json(cold).dump());
  EXPECT_EQ(payload_json(first).dump(), payload_json(cold).dump());
  EXPECT_TRUE(sink.str().empty());
}

TEST(Cache, CensusOnlyEntryUpgradedWithOrbits) {
  TempDir dir;
  std::ostringstream sink;
  auto spec = parse_job(kV4);
  auto o = quiet(sink, dir.path);
  o.components = false;
  run_job(spec, o);
  Cache cache(dir.path);
  ASSERT_TRUE(cache.load(spec).has_value());
  EXPECT_FALSE(cache.load(spec)->orbit_ids.has_value());
  auto full = run_job(spec, quiet(sink, dir.path));
  EXPECT_TRUE(full.meta.cache_hit);
  EXPECT_TRUE(cache.load(spec)->orbit_ids.has_value());
  EXPECT_EQ(payload_json(full).dump(), payload_json(run_job(spec, quiet(sink))).dump());
}

class CacheCorruption : public ::testing::TestWithParam<std::function<void(std::string&)>> {};

TEST_P(CacheCorruption, DiscardedWithWarning) {
  TempDir dir;
  std::ostringstream sink;
  auto spec = parse_job(kS3);
  auto cold = run_job(spec, quiet(sink, dir.path));
  const auto entry = dir.path / (cache_key(spec) + ".json");
  std::string text;
  {
    std::ifstream in(entry);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  GetParam()(text);
  {
    std::ofstream out(entry, std::ios::trunc);
    out << text;
  }
  auto again = run_job(spec, quiet(sink, dir.path));
  EXPECT_FALSE(again.meta.cache_hit);
  EXPECT_NE(sink.str().find("warning"), std::string::npos);
  EXPECT_EQ(payload_json(again).dump(), payload_json(cold).dump());
  // recomputed and republished
  std::ostringstream quiet_sink;
  EXPECT_TRUE(run_job(spec, quiet(quiet_sink, dir.path)).meta.cache_hit);
  EXPECT_TRUE(quiet_sink.str().empty());
}

void edit_json(std::string& text, const std::function<void(json&)>& f) {
  auto j = json::parse(text);
  f(j);
  text = j.dump();
}

INSTANTIATE_TEST_SUITE_P(
    Kinds, CacheCorruption,
    ::testing::Values([](std::string& t) { t = t.substr(0, t.size() / 2); },
                      [](std::string& t) { t = "garbage"; },
                      [](std::string& t) { edit_json(t, [](json& j) { j["key"] = "v1-0000000000000000"; }); },
                      [](std::string& t) { edit_json(t, [](json& j) { j["tuples"].erase(0); }); },
                      [](std::string& t) {
                        // swap the first entry's one-line images: breaks the relation
                        edit_json(t, [](json& j) { std::swap(j["tuples"][0], j["tuples"][1]); });
                      },
                      [](std::string& t) { edit_json(t, [](json& j) { j["tuples"][0] = 7; }); },
                      [](std::string& t) { edit_json(t, [](json& j) { j["orbit_ids"] = json::array({0}); }); },
                      [](std::string& t) { edit_json(t, [](json& j) { j["orbit_ids"][0] = 99; }); },
                      [](std::string& t) { edit_json(t, [](json& j) { j["format_version"] = 9; }); }));

TEST(Cache, UnwritableDirectoryOnlyWarns) {
  TempDir dir;
  auto blocker = dir.path / "file";
  { std::ofstream(blocker) << "x"; }
  std::ostringstream sink;
  auto doc = run_job(parse_job(kC2), quiet(sink, blocker / "sub"));
  EXPECT_EQ(doc.census->tuples, 1u);
  EXPECT_NE(sink.str().find("warning"), std::string::npos);
}

}  // namespace
