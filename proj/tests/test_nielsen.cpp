#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "support.hpp"

using namespace hurwitz;

namespace {

Permutation p(const char* text, std::size_t d) { return parse_permutation(text, d); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvariantViolated;
}

PermGroup c2() { return generate_group({p("(1 2)", 2)}); }
PermGroup s3() { return generate_group({p("(1 2)", 3), p("(1 2 3)", 3)}); }
PermGroup v4() { return generate_group({p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)}); }

BranchingType transpositions(std::size_t n) { return resolve_branching_type(ClassTable(s3()), {{p("(1 2)", 3), n}}); }

TEST(Validate, Examples) {
  auto ok = validate_tuple(HurwitzTuple({p("(1 2)", 2), p("(1 2)", 2)}), c2());
  EXPECT_TRUE(ok.relation_holds && ok.no_trivial_branch && ok.generates_group && ok.group_transitive);
  auto bad = validate_tuple(HurwitzTuple({p("(1 2)", 3), p("(1 3)", 3)}), s3());
  EXPECT_FALSE(bad.relation_holds);
  EXPECT_FALSE(bad.valid());
}

TEST(Validate, EachFlag) {
  auto trivial = validate_tuple(HurwitzTuple({p("(1 2)", 2), Permutation::identity(2), p("(1 2)", 2)}), c2());
  EXPECT_TRUE(trivial.relation_holds);
  EXPECT_FALSE(trivial.no_trivial_branch);
  auto small = validate_tuple(HurwitzTuple({p("(1 2)", 3), p("(1 2)", 3)}), s3());
  EXPECT_TRUE(small.relation_holds);
  EXPECT_FALSE(small.generates_group);
  auto intrans = validate_tuple(HurwitzTuple({p("(1 2)", 3), p("(1 2)", 3)}), generate_group({p("(1 2)", 3)}));
  EXPECT_FALSE(intrans.group_transitive);
}

TEST(ParseTuple, HandlesFirst) {
  auto t = parse_tuple("(1 2); (); (1 2);(1 2)", 2, 1);
  EXPECT_EQ(t.genus(), 1u);
  EXPECT_EQ(t.branch_count(), 2u);
  EXPECT_EQ(t.handles[0].first, p("(1 2)", 2));
  EXPECT_TRUE(t.handles[0].second.is_identity());
  EXPECT_EQ(code_of([] { parse_tuple("(1 2);(1 2)", 2, 1); }), Errc::SyntaxError);
  EXPECT_EQ(code_of([] { parse_tuple("(1 2);;(1 2)", 2, 0); }), Errc::SyntaxError);
}

TEST(HurwitzTuple, DegreeChecked) {
  EXPECT_EQ(code_of([] { HurwitzTuple({p("(1 2)", 2), p("(1 2)", 3)}); }), Errc::DegreeMismatch);
}

TEST(Enumerate, C2FourPoints) {
  auto ts = enumerate_tuples(c2(), 0, 4);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0], HurwitzTuple(std::vector<Permutation>(4, p("(1 2)", 2))));
  EXPECT_TRUE(enumerate_tuples(c2(), 0, 3).empty());  // parity
}

TEST(Enumerate, S3Transpositions) { EXPECT_EQ(enumerate_tuples(s3(), 0, 4, transpositions(4)).size(), 24u); }

TEST(Enumerate, C2GenusOne) {
  auto ts = enumerate_tuples(c2(), 1, 2);
  EXPECT_EQ(ts.size(), 4u);
  for (const auto& t : ts) {
    EXPECT_EQ(t.branches[0], p("(1 2)", 2));
    EXPECT_EQ(t.branches[1], p("(1 2)", 2));
  }
}

TEST(Enumerate, SingleBranchPoint) {
  // n = 1 in genus 0 forces g_1 = 1: empty
  EXPECT_TRUE(enumerate_tuples(s3(), 0, 1).empty());
  // genus 1, n = 1: g_1 is a nontrivial commutator generating with a, b
  auto ts = enumerate_tuples(s3(), 1, 1);
  for (const auto& t : ts) EXPECT_TRUE(validate_tuple(t, s3()).valid());
  EXPECT_EQ(ts.size(), oracle::tuples(testing_support::to_oracle(s3()), 3, 1, 1).size());
  EXPECT_FALSE(ts.empty());
}

TEST(Enumerate, Errors) {
  EXPECT_EQ(code_of([] { enumerate_tuples(generate_group({p("(1 2)", 3)}), 0, 2); }), Errc::IntransitiveGroup);
  EXPECT_EQ(code_of([] { enumerate_tuples(s3(), 0, 3, transpositions(4)); }), Errc::TypeMultiplicityMismatch);
  EXPECT_EQ(code_of([] { enumerate_tuples(s3(), 0, 0); }), Errc::SchemaError);
  EXPECT_EQ(code_of([] { enumerate_tuples(s3(), 0, 6, std::nullopt, EnumerationOptions{50, 1}); }),
            Errc::WorkCapExceeded);
  EXPECT_EQ(code_of([] { enumerate_tuples(s3(), 0, 6, std::nullopt, EnumerationOptions{50, 4}); }),
            Errc::WorkCapExceeded);
}

TEST(Enumerate, SortedAndThreadIndependent) {
  for (unsigned threads : {2u, 3u, 8u}) {
    auto one = enumerate_tuples(v4(), 0, 5);
    auto many = enumerate_tuples(v4(), 0, 5, std::nullopt, EnumerationOptions{kDefaultWorkCap, threads});
    EXPECT_EQ(one, many);
    EXPECT_TRUE(std::is_sorted(one.begin(), one.end()));
  }
}

TEST(Enumerate, StreamingMatchesMaterialized) {
  std::vector<HurwitzTuple> streamed;
  for_each_tuple(s3(), 0, 4, std::nullopt, [&](HurwitzTuple&& t) { streamed.push_back(std::move(t)); });
  EXPECT_EQ(streamed, enumerate_tuples(s3(), 0, 4));
}

TEST(BranchingType, Examples) {
  auto t1 = HurwitzTuple(std::vector<Permutation>(4, p("(1 2)", 2)));
  EXPECT_EQ(branching_type(t1, c2()).to_strings(), (std::vector<std::pair<std::string, std::size_t>>{{"(1 2)", 4}}));
  auto t2 = HurwitzTuple({p("(1 2)", 3), p("(2 3)", 3), p("(1 2)", 3), p("(2 3)", 3)});
  EXPECT_EQ(branching_type(t2, s3()).to_strings(), (std::vector<std::pair<std::string, std::size_t>>{{"(2 3)", 4}}));
  auto t3 = HurwitzTuple({p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4), p("(1 4)(2 3)", 4)});
  auto type = branching_type(t3, v4());
  EXPECT_EQ(type.entries.size(), 3u);
  for (const auto& [rep, m] : type.entries) EXPECT_EQ(m, 1u);
}

TEST(BranchingType, ResolveMergesAndRejects) {
  auto type = resolve_branching_type(ClassTable(s3()), {{p("(1 2)", 3), 2}, {p("(1 3)", 3), 2}});
  EXPECT_EQ(type, transpositions(4));
  EXPECT_EQ(code_of([] { resolve_branching_type(ClassTable(generate_group({p("(1 2 3)", 3)})), {{p("(1 2)", 3), 1}}); }),
            Errc::NotInGroup);
}

// Random small transitive groups: enumeration equals the brute-force set,
// with and without a type filter, whenever |G|^(2g+n) stays small.
TEST(EnumerateProperty, MatchesBruteForce) {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 25; ++trial) {
    const std::size_t d = 3 + rng() % 3;
    auto g = generate_group({testing_support::random_perm(d, rng), testing_support::random_perm(d, rng)});
    if (!is_transitive(g) || g.order() > 24) continue;
    const std::size_t genus = rng() % 4 == 0 ? 1 : 0;
    const std::size_t n = 2 + rng() % 3;
    if (std::pow(static_cast<double>(g.order()), static_cast<double>(2 * genus + n)) > 2e5) continue;
    ++checked;
    auto og = testing_support::to_oracle(g);
    auto brute = oracle::tuples(og, static_cast<int>(d), static_cast<int>(genus), static_cast<int>(n));
    auto mine = enumerate_tuples(g, genus, n);
    std::vector<oracle::Tuple> converted;
    for (const auto& t : mine) converted.push_back(testing_support::to_oracle(t));
    ASSERT_EQ(converted, brute) << "d=" << d << " |G|=" << g.order() << " g=" << genus << " n=" << n;

    // filter by the type of the first tuple, if any
    if (mine.empty()) continue;
    auto type = branching_type(mine.front(), g);
    std::vector<std::pair<std::string, int>> raw;
    for (const auto& [rep, m] : type.entries) raw.emplace_back(rep.to_cycles(), static_cast<int>(m));
    auto brute_typed = oracle::tuples(og, static_cast<int>(d), static_cast<int>(genus), static_cast<int>(n), raw);
    std::vector<oracle::Tuple> typed;
    for (const auto& t : enumerate_tuples(g, genus, n, type)) typed.push_back(testing_support::to_oracle(t));
    EXPECT_EQ(typed, brute_typed);
  }
  EXPECT_GE(checked, 10);
}

}  // namespace
