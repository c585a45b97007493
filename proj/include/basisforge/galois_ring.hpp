#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "basisforge/groups.hpp"

namespace basisforge {

/// Polynomial of degree < n over Z_{p^s}, constant term first.
struct RingElement {
  std::vector<std::uint64_t> coeffs;

  friend auto operator<=>(const RingElement&, const RingElement&) = default;
};

/// GR(p^s, n) = Z_{p^s}[x] / (f).
class GaloisRing {
 public:
  GaloisRing(std::uint64_t p, unsigned s, unsigned n);

  std::uint64_t p() const noexcept { return p_; }
  unsigned s() const noexcept { return s_; }
  unsigned n() const noexcept { return n_; }
  /// Characteristic p^s.
  std::uint64_t q() const noexcept { return q_; }
  /// |R| = p^{sn}.
  std::uint64_t order() const noexcept { return additive_.order(); }
  /// Monic modulus, n+1 coefficients, constant term first.
  const std::vector<std::uint64_t>& modulus() const noexcept { return f_; }

  /// (R, +) as Z_{p^s}^n.
  const GroupSpec& additive_group() const noexcept { return additive_; }

  RingElement zero() const { return RingElement{std::vector<std::uint64_t>(n_, 0)}; }
  RingElement one() const;
  RingElement constant(std::uint64_t c) const;

  bool contains(const RingElement& a) const noexcept;

  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement sub(const RingElement& a, const RingElement& b) const;
  RingElement neg(const RingElement& a) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  RingElement pow(const RingElement& a, std::uint64_t k) const;

  bool is_unit(const RingElement& a) const;
  RingElement inverse(const RingElement& a) const;

  std::uint64_t index(const RingElement& a) const;
  RingElement element(std::uint64_t index) const;

  GroupElement to_group_element(const RingElement& a) const;
  RingElement from_group_element(const GroupElement& a) const;

 private:
  void require(const RingElement& a) const;

  std::uint64_t p_;
  unsigned s_;
  unsigned n_;
  std::uint64_t q_;
  std::vector<std::uint64_t> f_;
  GroupSpec additive_;
};

struct TeichmullerSystem {
  RingElement xi;
  /// 0 followed by xi^0, xi^1, ..., xi^{p^n-2}.
  std::vector<RingElement> elements;
};

TeichmullerSystem teichmuller(const GaloisRing& ring);

}  // namespace basisforge
