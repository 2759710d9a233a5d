#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "permgrid/error.hpp"
#include "permgrid/permutation.hpp"

using namespace permgrid;

namespace {

std::vector<Permutation> all_up_to(std::size_t n) {
  std::vector<Permutation> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto level = all_permutations(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

} // namespace

TEST_CASE("parse accepts comma and compact forms") {
  CHECK(Permutation::parse("3,9,1,8,6,7,4,5,2") == Permutation::parse("391867452"));
  CHECK(Permutation::parse(" 2, 1 ").to_string() == "2,1");
  CHECK(Permutation::parse("").empty());
  CHECK(Permutation::parse("()").empty());
  CHECK(Permutation::parse("10,9,8,7,6,5,4,3,1,2,14,13,12,11").size() == 14);
  CHECK_THROWS_AS(Permutation::parse("1234567891"), ParseError); // >9 digits needs commas
  CHECK_THROWS_AS(Permutation::parse("1,1"), ParseError);
  CHECK_THROWS_AS(Permutation::parse("13"), ParseError);
  CHECK_THROWS_AS(Permutation::parse("1,,2"), ParseError);
  CHECK_THROWS_AS(Permutation::parse("a1"), ParseError);
  CHECK_THROWS_AS(Permutation({2, 3}), PreconditionError);
}

TEST_CASE("contains: worked examples") {
  const auto pi = Permutation::parse("391867452");
  CHECK(contains(pi, Permutation::parse("51342")));
  auto occ = find_occurrence(pi, Permutation::parse("51342"));
  REQUIRE(occ.size() == 5);
  std::vector<int> vals;
  for (int i : occ) vals.push_back(pi.at(i));
  CHECK(pattern_of(vals) == Permutation::parse("51342"));

  const auto skew_merged = Permutation::parse("917456328");
  CHECK_FALSE(contains(skew_merged, Permutation::parse("2143")));
  CHECK_FALSE(oracle::contains(skew_merged, Permutation::parse("2143")));
  CHECK_FALSE(contains(skew_merged, Permutation::parse("3412")));

  CHECK(contains(pi, pi));
  CHECK(contains(pi, Permutation{}));
  CHECK(contains(Permutation{}, Permutation{}));
  CHECK_FALSE(contains(Permutation{}, Permutation{1}));
  CHECK(find_occurrence(pi, Permutation::parse("123456")).empty());
}

TEST_CASE("contains agrees with naive subsequence enumeration up to length 7") {
  std::vector<Permutation> patterns = all_up_to(4);
  std::mt19937 rng(7);
  for (std::size_t n = 0; n <= 7; ++n) {
    std::vector<Permutation> hosts = n <= 5 ? all_permutations(n) : std::vector<Permutation>{};
    for (int i = 0; n > 5 && i < 300; ++i) hosts.push_back(oracle::random_permutation(n, rng));
    for (const auto& pi : hosts)
      for (const auto& sigma : patterns) REQUIRE(contains(pi, sigma) == oracle::contains(pi, sigma));
  }
  // whole of S_7 against a few longer patterns
  for (const auto& pi : all_permutations(7))
    for (const char* s : {"2143", "3412", "51342", "246135"}) {
      const auto sigma = Permutation::parse(s);
      REQUIRE(contains(pi, sigma) == oracle::contains(pi, sigma));
    }
}

TEST_CASE("containment is a partial order on lengths <= 5") {
  const auto perms = all_up_to(5);
  for (const auto& a : perms) {
    CHECK(contains(a, a));
    for (const auto& b : perms) {
      if (a.size() == b.size() && contains(a, b)) REQUIRE(a == b);
    }
  }
  // transitivity over all triples up to length 4
  const auto small = all_up_to(4);
  for (const auto& a : small)
    for (const auto& b : small) {
      if (!contains(a, b)) continue;
      for (const auto& c : small)
        if (contains(b, c)) REQUIRE(contains(a, c));
    }
}

TEST_CASE("subgrid") {
  const auto pi = Permutation::parse("917456328");
  CHECK(subgrid(pi, {1, 5}, {1, 5}) == std::vector<int>{1, 4, 5});
  CHECK(subgrid(pi, {6, 9}, {6, 9}) == std::vector<int>{6, 8});
  CHECK(subgrid(pi, {6, 9}, {1, 5}) == std::vector<int>{3, 2});
  CHECK(subgrid(pi, Interval::none(), {1, 9}).empty());
}

TEST_CASE("sums and powers") {
  const Permutation p21{2, 1}, p12{1, 2};
  CHECK(direct_sum(p21, p21) == Permutation::parse("2143"));
  CHECK(skew_sum(p12, p12) == Permutation::parse("3412"));
  CHECK(direct_sum(p21, Permutation{}) == p21);
  CHECK(skew_sum(Permutation{}, p21) == p21);
  CHECK(sum_power(p21, 3, SumKind::direct) == Permutation::parse("214365"));
  CHECK(sum_power(p12, 2, SumKind::skew) == Permutation::parse("3412"));
  CHECK(sum_power(Permutation{1}, 1, SumKind::direct) == Permutation{1});
  CHECK(sum_power(p21, 0, SumKind::skew).empty());

  for (const auto& a : all_up_to(3))
    for (const auto& b : all_up_to(3)) {
      auto d = direct_sum(a, b), s = skew_sum(a, b);
      CHECK(d.size() == a.size() + b.size());
      CHECK((contains(d, a) && contains(d, b) && contains(s, a) && contains(s, b)));
    }
}

TEST_CASE("symmetries") {
  CHECK(inverse(Permutation::parse("231")) == Permutation::parse("312"));
  CHECK(complement(Permutation::parse("231")) == Permutation::parse("213"));
  CHECK(reverse(Permutation::parse("123")) == Permutation::parse("321"));

  const auto perms = all_up_to(4);
  for (auto which : {Symmetry::inverse, Symmetry::reverse, Symmetry::complement}) {
    for (const auto& a : perms) {
      REQUIRE(symmetry(symmetry(a, which), which) == a);
      for (const auto& b : perms)
        REQUIRE(contains(a, b) == contains(symmetry(a, which), symmetry(b, which)));
    }
    // bijection on S_5
    std::set<Permutation> image;
    for (const auto& p : all_permutations(5)) image.insert(symmetry(p, which));
    CHECK(image.size() == 120);
  }
}

TEST_CASE("longest_monotone") {
  auto ml = longest_monotone(Permutation::parse("12345"));
  CHECK(ml.increasing == 5);
  CHECK(ml.decreasing == 1);
  ml = longest_monotone(Permutation::parse("21"));
  CHECK(ml.increasing == 1);
  CHECK(ml.decreasing == 2);
  ml = longest_monotone(Permutation::parse("391867452"));
  CHECK(ml.increasing == 3);
  CHECK(ml.decreasing == 5);
  CHECK(oracle::monotone_lengths(Permutation::parse("391867452")) == std::pair<std::size_t, std::size_t>{3, 5});

  for (std::size_t n = 0; n <= 7; ++n)
    for (const auto& p : all_permutations(n)) {
      auto got = longest_monotone(p);
      auto want = oracle::monotone_lengths(p);
      REQUIRE(got.increasing == want.first);
      REQUIRE(got.decreasing == want.second);
      REQUIRE(std::max(got.increasing, got.decreasing) * std::max(got.increasing, got.decreasing) >= n);
    }
}

TEST_CASE("pattern_of") {
  CHECK(pattern_of(std::vector<int>{9, 1, 6, 7, 2}) == Permutation::parse("51342"));
  CHECK(pattern_of(std::vector<int>{1, 2, 3}) == Permutation::parse("123"));
  CHECK(pattern_of(std::vector<int>{10, 9, 3, 1, 2, 14, 11}) == Permutation::parse("5431276"));
  CHECK(pattern_of(std::vector<int>{}).empty());
  CHECK_THROWS_AS(pattern_of(std::vector<int>{3, 3}), PreconditionError);
}

TEST_CASE("pattern_of a subgrid is contained in the permutation") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const int last = static_cast<int>(n);
    for (const auto& pi : all_permutations(n))
      for (int a = 1; a <= last; ++a)
        for (int b = a; b <= last; ++b)
          for (int c = 1; c <= last; ++c)
            for (int d = c; d <= last; ++d) REQUIRE(contains(pi, pattern_of(subgrid(pi, {a, b}, {c, d}))));
  }
}
