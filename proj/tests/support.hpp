// Shared fixtures: the small-group test matrix and conversions between the
// library's types and the oracle's plain vectors.
#ifndef HURWITZ_TESTS_SUPPORT_HPP
#define HURWITZ_TESTS_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/hurwitz.hpp"
#include "oracle/brute_force.hpp"

namespace testing_support {

struct Config {
  std::string name;
  std::size_t degree;
  std::vector<std::string> generators;
  std::size_t genus;
  std::size_t n;
  std::vector<std::pair<std::string, std::size_t>> type;  // empty = unfiltered
};

inline std::vector<Config> matrix() {
  return {
      {"C2_g0_n2", 2, {"(1 2)"}, 0, 2, {}},
      {"C2_g0_n4", 2, {"(1 2)"}, 0, 4, {}},
      {"C2_g0_n6", 2, {"(1 2)"}, 0, 6, {}},
      {"C2_g1_n2", 2, {"(1 2)"}, 1, 2, {}},
      {"S3_g0_n3", 3, {"(1 2)", "(1 2 3)"}, 0, 3, {}},
      {"S3_g0_n4", 3, {"(1 2)", "(1 2 3)"}, 0, 4, {}},
      {"C3_g0_n2", 3, {"(1 2 3)"}, 0, 2, {}},
      {"C3_g0_n3", 3, {"(1 2 3)"}, 0, 3, {}},
      {"V4_g0_n3", 4, {"(1 2)(3 4)", "(1 3)(2 4)"}, 0, 3, {}},
      {"V4_g0_n4", 4, {"(1 2)(3 4)", "(1 3)(2 4)"}, 0, 4, {}},
  };
}

inline hurwitz::PermGroup group_of(const Config& c) {
  std::vector<hurwitz::Permutation> gens;
  for (const auto& s : c.generators) gens.push_back(hurwitz::parse_permutation(s, c.degree));
  return hurwitz::generate_group(std::span<const hurwitz::Permutation>(gens));
}

inline std::optional<hurwitz::BranchingType> filter_of(const Config& c, const hurwitz::PermGroup& g) {
  if (c.type.empty()) return std::nullopt;
  std::vector<std::pair<hurwitz::Permutation, std::size_t>> raw;
  for (const auto& [rep, m] : c.type) raw.emplace_back(hurwitz::parse_permutation(rep, c.degree), m);
  return hurwitz::resolve_branching_type(hurwitz::ClassTable(g), raw);
}

inline oracle::Perm to_oracle(const hurwitz::Permutation& p) {
  return oracle::Perm(p.images().begin(), p.images().end());
}

inline oracle::Tuple to_oracle(const hurwitz::HurwitzTuple& t) {
  oracle::Tuple out;
  for (const auto& e : t.entries()) out.push_back(to_oracle(e));
  return out;
}

inline hurwitz::Permutation from_oracle(const oracle::Perm& p) {
  return hurwitz::Permutation(std::vector<hurwitz::Point>(p.begin(), p.end()));
}

inline oracle::Group to_oracle(const hurwitz::PermGroup& g) {
  oracle::Group out;
  for (const auto& e : g.elements()) out.push_back(to_oracle(e));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<oracle::Tuple> oracle_tuples(const Config& c) {
  std::vector<std::pair<std::string, int>> type;
  for (const auto& [rep, m] : c.type) type.emplace_back(rep, static_cast<int>(m));
  auto g = oracle::group(c.generators, static_cast<int>(c.degree));
  return oracle::tuples(g, static_cast<int>(c.degree), static_cast<int>(c.genus), static_cast<int>(c.n), type);
}

inline hurwitz::Permutation random_perm(std::size_t d, std::mt19937& rng) {
  std::vector<hurwitz::Point> images(d);
  std::iota(images.begin(), images.end(), 0u);
  std::shuffle(images.begin(), images.end(), rng);
  return hurwitz::Permutation(std::move(images));
}

}  // namespace testing_support

#endif  // HURWITZ_TESTS_SUPPORT_HPP
