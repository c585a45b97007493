#include <doctest.h>

#include <cmath>
#include <map>

#include "basisforge/bounds.hpp"
#include "basisforge/error.hpp"
#include "basisforge/verify.hpp"
#include "oracle.hpp"

using namespace basisforge;

namespace {

// Closed forms evaluated in floating point.
double closed_form(const std::string& source, double p, double s, double n) {
  const double q = std::pow(p, s);
  const double qn = std::pow(p, s * n);
  auto par = [&](double m) { return std::pow(p, s * m) + 9 * std::pow(p, (s - 0.5) * m); };
  static const std::map<std::string, int> ids = {
      {"pcp(k=2)", 0},
      {"pcp(k=3)", 1},
      {"pcp(1,k=2)*pcp(n-1,k=2)", 2},
      {"pcp(1,k=3)*pcp(n-1,k=2)", 3},
      {"pcp(2,k=3)*pcp(n-2,k=2)", 4},
      {"pcp(1,k=2)^2*pcp(n-2,k=2)", 5},
      {"parabola", 6},
      {"pcp(1,k=2)*parabola(n-1)", 7},
  };
  switch (ids.at(source)) {
    case 0: return 2 * (qn - 1);
    case 1: return 3 * (qn - 1);
    case 2: return 4 * (q - 1) * (std::pow(p, s * (n - 1)) - 1);
    case 3: return 6 * (q - 1) * (std::pow(p, s * (n - 1)) - 1);
    case 4: return 6 * (q * q - 1) * (std::pow(p, s * (n - 2)) - 1);
    case 5: return 8 * (q - 1) * (q - 1) * (std::pow(p, s * (n - 2)) - 1);
    case 6: return par(n);
    case 7: return 2 * (q - 1) * par(n - 1);
  }
  return 0;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("counting lower bounds") {
  CHECK(lower_bound(9, 1, Kind::Difference) == 4);
  CHECK(lower_bound(4, 2, Kind::Additive) == 3);
  CHECK(lower_bound(9, 1, Kind::Additive) == 4);
  CHECK(lower_bound(7, 1, Kind::Difference) == 3);
  CHECK(lower_bound(1, 1, Kind::Additive) == 1);
  CHECK(lower_bound(100, 0, Kind::Additive) == 0);
  for (std::uint64_t n = 1; n <= 300; n += 7) {
    for (std::uint64_t g = 1; g <= 9; ++g) {
      for (auto k : {Kind::Additive, Kind::Difference}) {
        CHECK(lower_bound(n, g, k) == oracle::lower(n, g, k == Kind::Difference));
      }
    }
  }
  // Large orders stay exact.
  const std::uint64_t big = std::uint64_t{1} << 62;
  const auto m = lower_bound(big, 4, Kind::Additive);
  CHECK(m == std::uint64_t{1} << 32);
}

TEST_CASE("surds") {
  CHECK(half_power(3, 4) == Surd{9, 0, 0});
  CHECK(half_power(3, 3) == Surd{0, 3, 3});
  CHECK(ceil(Surd{9, 9, 3}) == 25);  // 9 + 15.58...
  CHECK(ceil(Surd{4, 0, 0}) == 4);
  CHECK(ceil(Surd{0, 2, 4}) == 4);
  CHECK(ceil(half_power(3, 3) * 9 + 9) == static_cast<long>(std::ceil(9 + 9 * std::pow(3.0, 1.5))));
}

TEST_CASE("appendix values match the closed forms") {
  for (auto [p, s] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    for (unsigned n = 1; n <= 4; ++n) {
      if (p == 3 && s == 1 && n == 1) continue;
      for (std::uint64_t g = 1; g <= 6; ++g) {
        for (auto k : {Kind::Additive, Kind::Difference}) {
          for (const auto& u : appendix_upper_bounds(p, s, n, g, k)) {
            CAPTURE(u.source);
            CAPTURE(p);
            CAPTURE(s);
            CAPTURE(n);
            CHECK(g <= u.g_max);
            if (!u.applicable && u.factors.empty()) continue;
            const double v = closed_form(u.source, static_cast<double>(p), s, n);
            CHECK(u.ceiling == BigInt(static_cast<long long>(std::ceil(v - 1e-9))));
            CHECK(u.factor_ceiling >= u.ceiling);
          }
        }
      }
    }
  }
  // The largest multiplicity row on Z7^2.
  bool found = false;
  for (const auto& u : appendix_upper_bounds(7, 1, 1, 6, Kind::Additive)) {
    if (u.source == "pcp(k=3)") {
      found = true;
      CHECK(u.applicable);
      CHECK(u.ceiling == 18);
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(appendix_upper_bounds(2, 1, 1, 1, Kind::Additive), HypothesisViolation);
  CHECK_THROWS_AS(appendix_upper_bounds(3, 1, 1, 1, Kind::Difference), HypothesisViolation);
  CHECK(appendix_upper_bounds(5, 1, 1, 7, Kind::Additive).empty());
}

TEST_CASE("difference formulas need an odd prime") {
  for (const auto& u : appendix_upper_bounds(2, 2, 1, 1, Kind::Difference)) CHECK_FALSE(u.applicable);
  bool any = false;
  for (const auto& u : appendix_upper_bounds(2, 2, 1, 1, Kind::Additive)) any = any || u.applicable;
  CHECK(any);
}

TEST_CASE("realized bounds are certified and within the formula") {
  for (auto [p, s, n] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{
           {5, 1, 1}, {7, 1, 1}, {3, 2, 1}, {3, 1, 2}, {5, 1, 2}}) {
    for (std::uint64_t g = 1; g <= 6; ++g) {
      for (auto k : {Kind::Additive, Kind::Difference}) {
        for (const auto& u : appendix_upper_bounds(p, s, n, g, k)) {
          if (!u.applicable) continue;
          CAPTURE(u.source);
          const auto b = realize(u, k);
          CHECK(b.g_claimed() >= g);
          CHECK(oracle::min_count(b, k) >= g);
          CHECK(BigInt(b.size()) <= u.ceiling);
        }
      }
    }
  }
}

TEST_CASE("reports") {
  const auto r = bound_report(GroupSpec({5, 5}), 2, Kind::Difference);
  CHECK(r.lower == 8);
  REQUIRE(r.best_upper);
  CHECK(*r.best_upper == 8);
  REQUIRE(r.achieved);
  CHECK(*r.achieved <= 8);
  CHECK(*r.achieved >= r.lower);

  const auto r2 = bound_report(GroupSpec({2, 2}), 3, Kind::Additive);
  CHECK(r2.lower == 4);
  REQUIRE(r2.exhaustive);
  CHECK(*r2.exhaustive == 4);
  CHECK(bound_csv_header() == "group,g,kind,lower,best_upper,upper_sources,achieved,achieved_source");

  for (const auto& g : {GroupSpec({3, 3}), GroupSpec({5}), GroupSpec({4, 4}), GroupSpec({7, 7}), GroupSpec{}}) {
    for (std::uint64_t m = 1; m <= 4; ++m) {
      for (auto k : {Kind::Additive, Kind::Difference}) {
        const auto rep = bound_report(g, m, k);
        if (rep.achieved) CHECK(*rep.achieved >= rep.lower);
        if (rep.exhaustive) {
          CHECK(*rep.exhaustive >= rep.lower);
          if (rep.best_upper) CHECK(BigInt(*rep.exhaustive) <= *rep.best_upper);
        }
        if (rep.achieved && rep.best_upper) CHECK(BigInt(*rep.achieved) <= *rep.best_upper);
      }
    }
  }
}

}
