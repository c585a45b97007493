#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "basisforge/basis.hpp"
#include "basisforge/galois_ring.hpp"
#include "basisforge/groups.hpp"
#include "basisforge/limits.hpp"

namespace basisforge {

// ---------------------------------------------------------------------------
// Galois-ring families

/// {(x, x^2)} in Z_{p^s}^{2n}, optionally completed with D1 x D2 over pR x R.
BasisSet parabola_basis_odd(std::uint64_t p, unsigned s, unsigned n, bool complete,
                            const Limits& limits = {});

/// Teichmuller system of GR(4, n) in Z_4^n, optionally completed over 2Z_4^n.
BasisSet teichmuller_rds_basis(unsigned n, bool complete, const Limits& limits = {});

/// Union of k lines {(x, a_i x)} in Z_{p^s}^{2n}.
BasisSet pcp_lines(std::uint64_t p, unsigned s, unsigned n, unsigned k, Kind kind = Kind::Difference,
                   const Limits& limits = {});

/// Multi-block extension over G x G for G a product of distinct prime-power blocks.
BasisSet pcp_multi(const GroupSpec& g, unsigned k, Kind kind = Kind::Difference,
                   const Limits& limits = {});

/// (R x R, *) with (x1,y1)*(x2,y2) = (x1+x2, y1+y2+x1x2) over GR(4, n).
/// Labels are index(x) + |R| * index(y).
class StarGroupModel final : public FiniteGroupModel {
 public:
  explicit StarGroupModel(unsigned n);

  const GaloisRing& ring() const noexcept { return ring_; }
  std::uint64_t order() const override { return size_ * size_; }
  std::uint64_t identity() const override { return 0; }
  std::uint64_t op(std::uint64_t a, std::uint64_t b) const override;
  std::uint64_t inverse(std::uint64_t a) const override;

  std::uint64_t label(const RingElement& x, const RingElement& y) const;
  std::pair<RingElement, RingElement> pair_of(std::uint64_t label) const;

 private:
  std::uint64_t ring_add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t ring_mul(std::uint64_t a, std::uint64_t b) const;

  GaloisRing ring_;
  std::uint64_t size_;
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> mul_table_;
  std::vector<std::uint32_t> neg_table_;
};

struct StarBasis {
  std::shared_ptr<const StarGroupModel> model;
  std::vector<std::uint64_t> labels;  // S u (T x W), sorted
  std::uint64_t s_size = 0;
  std::uint64_t t_size = 0;
  std::uint64_t w_size = 0;
  Decomposition decomposition;
  BasisSet standard;  // same set in Z_8^n x Z_2^n coordinates
};

StarBasis star_basis(unsigned n, const Limits& limits = {});

// ---------------------------------------------------------------------------
// Combinators

/// {embed(a) + lift(b)}; inner lives in embed.source(), outer in q.quotient().
BasisSet quotient_compose(const BasisSet& inner, const BasisSet& outer, const Homomorphism& embed,
                          const QuotientData& q, const Limits& limits = {});

BasisSet product_compose(const BasisSet& lhs, const BasisSet& rhs);

/// Reorders coordinates so the basis lives in `target`, which must have the
/// same multiset of moduli. Equal moduli keep their relative order.
BasisSet coerce_coordinates(const BasisSet& basis, const GroupSpec& target);

/// Subgroup prod (m_i/d_i) Z_{m_i} of prod Z_{m_i}, with d_i | m_i.
struct CoordinateFiltration {
  GroupSpec ambient;
  std::vector<std::uint64_t> sub;
  GroupSpec inner;  // Z_{d_i} for d_i > 1
  GroupSpec outer;  // Z_{m_i/d_i} for m_i/d_i > 1
  Homomorphism embed;
  QuotientData q;

  /// Moves a basis of `outer` into q.quotient() coordinates.
  BasisSet outer_to_quotient(const BasisSet& natural) const;
  BasisSet compose(const BasisSet& inner_basis, const BasisSet& outer_basis,
                   const Limits& limits = {}) const;
};

CoordinateFiltration coordinate_filtration(const GroupSpec& ambient, std::vector<std::uint64_t> sub,
                                           const Limits& limits = {});

enum class RecursionVariant { Z2_2s_n, Z2s_2n };

std::string to_string(RecursionVariant v);
RecursionVariant parse_recursion_variant(std::string_view text);

/// Z_{2^{2s}}^n (Z2_2s_n) or Z_{2^s}^{2n} (Z2s_2n) by repeated quotient steps.
BasisSet even_power_recursion(unsigned s, unsigned n, RecursionVariant variant,
                              const Limits& limits = {});

// ---------------------------------------------------------------------------
// Search

BasisSet greedy_basis(const GroupSpec& g, std::uint64_t target_g, Kind kind, const Limits& limits = {});

inline constexpr std::uint64_t kExhaustiveCap = 32;

struct ExhaustiveResult {
  std::uint64_t size;
  BasisSet witness;
  std::uint64_t nodes;
};

ExhaustiveResult exhaustive_min(const GroupSpec& g, std::uint64_t target_g, Kind kind,
                                const Limits& limits = {});

}  // namespace basisforge
