#include <doctest.h>

#include <set>

#include "basisforge/error.hpp"
#include "basisforge/galois_ring.hpp"

using namespace basisforge;

namespace {

RingElement re(std::vector<std::uint64_t> c) { return RingElement{std::move(c)}; }

struct Params {
  std::uint64_t p;
  unsigned s;
  unsigned n;
};

const std::vector<Params> kRings = {{2, 1, 1}, {2, 2, 1}, {2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {3, 1, 2},
                                    {3, 2, 1}, {3, 2, 2}, {5, 1, 2}, {7, 1, 1}, {2, 1, 4}, {5, 2, 1}};

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_SUITE("galois_ring") {

TEST_CASE("modulus choice") {
  CHECK(GaloisRing(2, 2, 2).modulus() == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(GaloisRing(3, 1, 2).modulus() == std::vector<std::uint64_t>{1, 0, 1});
  const auto lin = GaloisRing(2, 2, 1).modulus();
  CHECK(lin.size() == 2);
  CHECK(lin[1] == 1);
  CHECK_THROWS_AS(GaloisRing(4, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(GaloisRing(3, 0, 1), InvalidArgument);
}

TEST_CASE("hand-reduced products") {
  const GaloisRing r42(2, 2, 2);
  CHECK(r42.mul(re({0, 1}), re({0, 1})) == re({3, 3}));
  CHECK(r42.mul(re({3, 2}), r42.one()) == re({3, 2}));
  const GaloisRing r32(3, 1, 2);
  CHECK(r32.mul(re({0, 1}), re({0, 1})) == re({2, 0}));
}

TEST_CASE("units and inverses") {
  const GaloisRing r42(2, 2, 2);
  CHECK_FALSE(r42.is_unit(re({2, 2})));
  CHECK(r42.is_unit(re({1, 0})));
  const GaloisRing r91(3, 2, 1);
  CHECK_FALSE(r91.is_unit(re({3})));
  CHECK(r91.inverse(re({2})) == re({5}));
  CHECK(GaloisRing(2, 2, 1).inverse(re({3})) == re({3}));
  CHECK(r42.inverse(r42.one()) == r42.one());
  CHECK_THROWS(r42.inverse(re({2, 0})));
}

TEST_CASE("ring axioms and unit count, exhaustively") {
  for (const auto& [p, s, n] : kRings) {
    const GaloisRing r(p, s, n);
    CAPTURE(p);
    CAPTURE(s);
    CAPTURE(n);
    const auto size = r.order();
    REQUIRE(size == ipow(p, s * n));
    std::uint64_t units = 0;
    for (std::uint64_t i = 0; i < size; ++i) {
      const auto a = r.element(i);
      REQUIRE(r.index(a) == i);
      if (r.is_unit(a)) {
        ++units;
        CHECK(r.mul(r.inverse(a), a) == r.one());
      }
    }
    CHECK(units == ipow(p, (s - 1) * n) * (ipow(p, n) - 1));
    const std::uint64_t step = size > 64 ? 7 : 1;
    for (std::uint64_t i = 0; i < size; i += step) {
      for (std::uint64_t j = 0; j < size; j += step) {
        const auto a = r.element(i), b = r.element(j);
        CHECK(r.mul(a, b) == r.mul(b, a));
        const auto ga = r.to_group_element(a), gb = r.to_group_element(b);
        CHECK(r.to_group_element(r.add(a, b)) == add(r.additive_group(), ga, gb));
        for (std::uint64_t k = 0; k < size; k += step * 3 + 1) {
          const auto c = r.element(k);
          CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
          CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("teichmuller systems") {
  const auto t41 = teichmuller(GaloisRing(2, 2, 1));
  CHECK(t41.xi == re({1}));
  CHECK(t41.elements == std::vector<RingElement>{re({0}), re({1})});

  for (const auto& [p, s, n] : kRings) {
    const GaloisRing r(p, s, n);
    const auto t = teichmuller(r);
    const std::uint64_t m = ipow(p, n) - 1;
    CAPTURE(p);
    CAPTURE(s);
    CAPTURE(n);
    REQUIRE(t.elements.size() == m + 1);
    CHECK(r.pow(t.xi, m) == r.one());
    for (std::uint64_t d = 1; d < m; ++d) {
      if (m % d == 0) CHECK(r.pow(t.xi, d) != r.one());
    }
    std::set<std::vector<std::uint64_t>> residues;
    for (const auto& a : t.elements) {
      std::vector<std::uint64_t> red;
      for (auto c : a.coeffs) red.push_back(c % p);
      residues.insert(red);
    }
    CHECK(residues.size() == m + 1);
    for (std::size_t i = 0; i < t.elements.size(); ++i) {
      for (std::size_t j = 0; j < t.elements.size(); ++j) {
        if (i != j) CHECK(r.is_unit(r.sub(t.elements[i], t.elements[j])));
      }
    }
  }
}

TEST_CASE("coordinates") {
  const GaloisRing r(2, 2, 2);
  CHECK(r.to_group_element(re({3, 1})).coords == std::vector<std::uint64_t>{3, 1});
  CHECK(r.to_group_element(r.zero()).coords == std::vector<std::uint64_t>{0, 0});
  CHECK(r.from_group_element(GroupElement{{2, 3}}) == re({2, 3}));
}

}
