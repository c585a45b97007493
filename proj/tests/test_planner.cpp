#include <doctest.h>

#include "basisforge/admissibility.hpp"
#include "basisforge/error.hpp"
#include "basisforge/planner.hpp"
#include "basisforge/verify.hpp"
#include "oracle.hpp"

using namespace basisforge;

namespace {

GroupSpec power_of(const GroupSpec& g, unsigned k) {
  std::vector<std::uint64_t> m;
  for (unsigned i = 0; i < k; ++i) m.insert(m.end(), g.moduli().begin(), g.moduli().end());
  return GroupSpec(m);
}

GroupSpec two_part(const GroupSpec& g) {
  std::vector<std::uint64_t> m;
  for (auto x : g.moduli()) {
    std::uint64_t t = 1;
    while (x % 2 == 0) {
      x /= 2;
      t *= 2;
    }
    if (t > 1) m.push_back(t);
  }
  return GroupSpec(m);
}

}  // namespace

TEST_SUITE("planner") {

TEST_CASE("odd cyclic group: a single parabola step") {
  const auto plan = plan_decomposition(GroupSpec({3}), Theorem::WeaklyAdmissible, 1);
  REQUIRE(plan.steps.size() == 1);
  CHECK(plan.steps[0].kind == "atomic");
  CHECK(plan.steps[0].construction == "parabola");
  CHECK(plan.power == 2);
  const auto m = materialize(plan);
  CHECK(m.basis.group() == GroupSpec({3, 3}));
  CHECK(oracle::min_count(m.basis, Kind::Difference) >= 1);
}

TEST_CASE("Z4 squared materializes") {
  const auto plan = plan_decomposition(GroupSpec({4}), Theorem::WeaklyAdmissible, 1);
  const auto m = materialize(plan);
  CHECK(m.basis.group() == GroupSpec({4, 4}));
  CHECK(oracle::min_count(m.basis, Kind::Difference) >= 1);
  CHECK(m.sizes.size() == plan.steps.size());
}

TEST_CASE("Z2 is rejected by both theorems") {
  CHECK_THROWS_AS(plan_decomposition(GroupSpec({2}), Theorem::WeaklyAdmissible, 1), HypothesisViolation);
  CHECK_THROWS_AS(plan_decomposition(GroupSpec({2}), Theorem::Admissible, 1), HypothesisViolation);
  CHECK_THROWS_AS(plan_decomposition(GroupSpec({3}), Theorem::Admissible, 1), HypothesisViolation);
}

TEST_CASE("theorem names") {
  CHECK(parse_theorem("weak") == Theorem::WeaklyAdmissible);
  CHECK(parse_theorem("adm") == Theorem::Admissible);
  CHECK(parse_theorem("admissible") == Theorem::Admissible);
  CHECK_THROWS_AS(parse_theorem("strong"), InvalidArgument);
}

TEST_CASE("plans agree with the classifier and materialize to valid bases") {
  const std::vector<std::string> groups = {
      "Z4",     "Z8",        "Z16",       "Z8xZ2",    "Z4xZ2",  "Z64xZ2",    "Z32",     "Z3",
      "Z5",     "Z9",        "Z12",       "Z3xZ3",    "Z8xZ3",  "Z4^2",      "Z8xZ2^2", "Z8^2xZ2^2",
      "Z2",     "Z4xZ2^2",   "Z32xZ2",    "Z128xZ2",  "Z256",   "Z64xZ8xZ2", "Z24",     "Z6"};
  Limits limits;
  limits.cap = 1 << 16;
  std::size_t built = 0;
  for (const auto& text : groups) {
    const auto g = parse_group_spec(text);
    for (auto t : {Theorem::WeaklyAdmissible, Theorem::Admissible}) {
      for (unsigned n = 1; n <= 2; ++n) {
        CAPTURE(text);
        CAPTURE(to_string(t));
        CAPTURE(n);
        const auto verdict = classify(shape_of_2group(two_part(g)));
        const bool two_ok = t == Theorem::WeaklyAdmissible ? verdict != Admissibility::Inadmissible
                                                           : verdict == Admissibility::Admissible;
        try {
          const auto plan = plan_decomposition(g, t, n);
          CHECK(two_ok);
          CHECK(plan.power == (t == Theorem::WeaklyAdmissible ? 2 * n : n));
          for (const auto& st : plan.steps) CHECK(group_order(st.group) <= plan.max_order);
          if (!fits(plan, limits)) continue;
          const auto m = materialize(plan, limits);
          CHECK(m.basis.group() == power_of(g, plan.power));
          CHECK(check_g_basis(m.basis, Kind::Difference, 1, limits).passed);
          ++built;
        } catch (const HypothesisViolation&) {
          if (two_ok && t == Theorem::WeaklyAdmissible) FAIL("unexpected rejection");
        }
      }
    }
  }
  CHECK(built >= 10);
}

TEST_CASE("materialization respects the cap") {
  const auto plan = plan_decomposition(GroupSpec({8, 2}), Theorem::WeaklyAdmissible, 3);
  Limits tight;
  tight.cap = 1024;
  CHECK_FALSE(fits(plan, tight));
  CHECK_THROWS_AS(materialize(plan, tight), CapExceeded);
}

}
