#include <doctest.h>

#include <random>

#include "basisforge/admissibility.hpp"
#include "basisforge/error.hpp"

using namespace basisforge;

namespace {

using Shape = TwoGroupShape;

// Direct transcription of the two inequalities over a partition of exponents.
Admissibility by_hand(const std::vector<unsigned>& exps) {
  std::uint64_t big_even = 0, odd = 0, v = 0;
  for (auto e : exps) {
    if (e == 1) {
      ++v;
    } else if (e % 2 == 1) {
      ++odd;
    } else if (e >= 6) {
      ++big_even;
    }
  }
  if (2 * (big_even / 2) + odd >= v) return Admissibility::Admissible;
  if (big_even + odd >= v) return Admissibility::WeaklyAdmissibleOnly;
  return Admissibility::Inadmissible;
}

GroupSpec from_exps(const std::vector<unsigned>& exps) {
  std::vector<std::uint64_t> m;
  for (auto e : exps) m.push_back(std::uint64_t{1} << e);
  return GroupSpec(m);
}

}  // namespace

TEST_SUITE("admissibility") {

TEST_CASE("shapes") {
  const auto a = shape_of_2group(GroupSpec({4, 4, 2}));
  CHECK(a.even_part == std::vector<std::pair<unsigned, std::uint64_t>>{{1, 2}});
  CHECK(a.odd_part.empty());
  CHECK(a.v == 1);
  const auto b = shape_of_2group(GroupSpec({64, 8, 2, 2}));
  CHECK(b.even_part == std::vector<std::pair<unsigned, std::uint64_t>>{{3, 1}});
  CHECK(b.odd_part == std::vector<std::pair<unsigned, std::uint64_t>>{{1, 1}});
  CHECK(b.v == 2);
  CHECK(b.log_order() == 11);
  CHECK(shape_of_2group(b.to_group()) == b);
  CHECK_THROWS_AS(shape_of_2group(GroupSpec({3})), InvalidArgument);
  CHECK_THROWS_AS(shape_of_2group(GroupSpec({12})), InvalidArgument);
  // Non-canonical input is normalized first.
  CHECK(shape_of_2group(GroupSpec({2, 4, 4})) == a);
}

TEST_CASE("classification") {
  CHECK(classify(shape_of_2group(GroupSpec({2}))) == Admissibility::Inadmissible);
  CHECK(classify(shape_of_2group(GroupSpec{})) == Admissibility::Admissible);
  Shape s;
  s.even_part = {{3, 1}};
  s.v = 1;
  CHECK(classify(s) == Admissibility::WeaklyAdmissibleOnly);
  CHECK(to_string(Admissibility::WeaklyAdmissibleOnly) == "weakly_admissible_only");
}

TEST_CASE("admissible implies weakly admissible; even sums coincide") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    std::vector<unsigned> exps;
    const int k = static_cast<int>(rng() % 8);
    for (int i = 0; i < k; ++i) exps.push_back(1 + static_cast<unsigned>(rng() % 9));
    const auto shape = shape_of_2group(from_exps(exps));
    const auto c = classify(shape);
    CHECK(c == by_hand(exps));
    const bool adm = 2 * (shape.large_even() / 2) + shape.odd_total() >= shape.v;
    const bool weak = shape.large_even() + shape.odd_total() >= shape.v;
    if (adm) CHECK(weak);
    if (shape.large_even() % 2 == 0) CHECK(c != Admissibility::WeaklyAdmissibleOnly);
  }
}

TEST_CASE("partition census") {
  const auto c1 = partition_census(1);
  CHECK(c1.total == 1);
  CHECK(c1.admissible == 0);
  const auto c4 = partition_census(4);
  CHECK(c4.total == 5);
  CHECK(c4.admissible == 3);
  CHECK(partition_census(5).total == 7);
  CHECK(partition_count(5) == 7);
  CHECK(partition_count(100) == BigInt("190569292"));
  for (unsigned n = 1; n <= 60; ++n) {
    const auto c = partition_census(n);
    CHECK(c.total == partition_count(n));
    CHECK(c.admissible <= c.weakly);
    CHECK(c.weakly <= c.total);
  }
  CHECK(census_csv_row(c4) == "4,5,3,3,0.600000");
  CHECK_THROWS_AS(partition_census(kCensusMaxN + 1), CapExceeded);
}

TEST_CASE("census agrees with a classification of every partition") {
  for (unsigned n = 1; n <= 18; ++n) {
    std::uint64_t adm = 0, weak = 0, total = 0;
    std::vector<unsigned> part;
    auto rec = [&](auto&& self, unsigned rem, unsigned max) -> void {
      if (rem == 0) {
        ++total;
        const auto c = by_hand(part);
        adm += c == Admissibility::Admissible;
        weak += c != Admissibility::Inadmissible;
        return;
      }
      for (unsigned x = std::min(rem, max); x >= 1; --x) {
        part.push_back(x);
        self(self, rem - x, x);
        part.pop_back();
      }
    };
    rec(rec, n, n);
    const auto c = partition_census(n);
    CHECK(c.total == total);
    CHECK(c.admissible == adm);
    CHECK(c.weakly == weak);
  }
}

TEST_CASE("ratio trend") {
  auto ratio = [](unsigned n) {
    const auto c = partition_census(n);
    return c.admissible.convert_to<double>() / c.total.convert_to<double>();
  };
  for (unsigned n = 30; n <= 60; ++n) CHECK(ratio(n) >= ratio(n - 10));
  CHECK(ratio(60) > ratio(20));
}

TEST_CASE("thread count does not change the census") {
  Limits one, four;
  four.threads = 4;
  for (unsigned n : {10u, 33u, 50u}) {
    const auto a = partition_census(n, one), b = partition_census(n, four);
    CHECK(a.total == b.total);
    CHECK(a.admissible == b.admissible);
    CHECK(a.weakly == b.weakly);
  }
}

}
