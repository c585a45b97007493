#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "basisforge/limits.hpp"

namespace basisforge {

using BigInt = boost::multiprecision::cpp_int;

/// Mixed-radix coordinate vector; coords[i] lives in [0, moduli[i]).
struct GroupElement {
  std::vector<std::uint64_t> coords;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// A finite abelian group written as an ordered product of cyclic groups.
/// The empty moduli list is the trivial group.
class GroupSpec {
 public:
  GroupSpec() = default;
  explicit GroupSpec(std::vector<std::uint64_t> moduli);

  const std::vector<std::uint64_t>& moduli() const noexcept { return moduli_; }
  std::size_t rank() const noexcept { return moduli_.size(); }
  std::uint64_t order() const noexcept { return order_; }
  bool trivial() const noexcept { return moduli_.empty(); }

  bool contains(const GroupElement& a) const noexcept;
  GroupElement zero() const { return GroupElement{std::vector<std::uint64_t>(moduli_.size(), 0)}; }

  /// Mixed-radix rank, first coordinate least significant.
  std::uint64_t index(const GroupElement& a) const;
  GroupElement element(std::uint64_t index) const;

  /// Canonical text, runs of equal moduli compressed: "Z8^2xZ2". Trivial group is "trivial".
  std::string to_string() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) noexcept { return a.moduli_ == b.moduli_; }

 private:
  std::vector<std::uint64_t> moduli_;
  std::uint64_t order_ = 1;
};

GroupSpec parse_group_spec(std::string_view text);

/// Direct product with coordinates concatenated (lhs first).
GroupSpec product(const GroupSpec& lhs, const GroupSpec& rhs);
GroupElement concat(const GroupElement& lhs, const GroupElement& rhs);

GroupElement add(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement subtract(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement negate(const GroupSpec& g, const GroupElement& a);
GroupElement scale(const GroupSpec& g, std::uint64_t k, const GroupElement& a);
std::uint64_t element_order(const GroupSpec& g, const GroupElement& a);

/// Columns of the matrix are the images of the source generators.
class Homomorphism {
 public:
  Homomorphism(GroupSpec source, GroupSpec target, std::vector<GroupElement> images);

  const GroupSpec& source() const noexcept { return source_; }
  const GroupSpec& target() const noexcept { return target_; }
  const std::vector<GroupElement>& images() const noexcept { return images_; }

  GroupElement apply(const GroupElement& a) const;

 private:
  GroupSpec source_;
  GroupSpec target_;
  std::vector<GroupElement> images_;
};

// ---------------------------------------------------------------------------
// Smith normal form

using IntMatrix = std::vector<std::vector<BigInt>>;

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal with d_1 | d_2 | ...
  IntMatrix V;  // cols x cols, unimodular
};

/// U * M * V = D.
SmithForm smith_normal_form(const IntMatrix& m);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

// ---------------------------------------------------------------------------
// Quotients

/// G/H in invariant-factor coordinates (largest factor first, unit factors dropped).
class QuotientData {
 public:
  const GroupSpec& ambient() const noexcept { return ambient_; }
  const GroupSpec& quotient() const noexcept { return quotient_; }
  std::uint64_t subgroup_order() const noexcept { return ambient_.order() / quotient_.order(); }

  GroupElement project(const GroupElement& a) const;
  /// Coset representative with the smallest ambient index.
  GroupElement lift(const GroupElement& q) const;

 private:
  friend QuotientData quotient_by_subgroup(const GroupSpec&, std::span<const GroupElement>,
                                           const Limits&);

  GroupSpec ambient_;
  GroupSpec quotient_;
  // projection_[j][k]: weight of ambient coordinate j in quotient coordinate k.
  std::vector<std::vector<std::uint64_t>> projection_;
  std::vector<std::uint64_t> lift_;
};

QuotientData quotient_by_subgroup(const GroupSpec& g, std::span<const GroupElement> gens,
                                  const Limits& limits = {});

/// Sorted element indices of the subgroup generated by `gens`.
std::vector<std::uint64_t> subgroup_closure(const GroupSpec& g, std::span<const GroupElement> gens,
                                            const Limits& limits = {});

// ---------------------------------------------------------------------------
// Black-box groups

/// A finite group whose elements are labelled 0 .. order()-1.
class FiniteGroupModel {
 public:
  virtual ~FiniteGroupModel() = default;
  virtual std::uint64_t order() const = 0;
  virtual std::uint64_t identity() const = 0;
  virtual std::uint64_t op(std::uint64_t a, std::uint64_t b) const = 0;
  virtual std::uint64_t inverse(std::uint64_t a) const = 0;
};

/// A GroupSpec seen as a black box; labels are element indices.
class SpecModel final : public FiniteGroupModel {
 public:
  explicit SpecModel(GroupSpec spec) : spec_(std::move(spec)) {}

  const GroupSpec& spec() const noexcept { return spec_; }
  std::uint64_t order() const override { return spec_.order(); }
  std::uint64_t identity() const override { return 0; }
  std::uint64_t op(std::uint64_t a, std::uint64_t b) const override;
  std::uint64_t inverse(std::uint64_t a) const override;

 private:
  GroupSpec spec_;
};

std::uint64_t power(const FiniteGroupModel& model, std::uint64_t a, std::uint64_t k);
std::uint64_t element_order(const FiniteGroupModel& model, std::uint64_t a);

using OrderCensus = std::map<std::uint64_t, std::uint64_t>;

OrderCensus order_census(const FiniteGroupModel& model, const Limits& limits = {});
OrderCensus order_census(const GroupSpec& g, const Limits& limits = {});

/// Invariant-factor structure of a black-box abelian group plus the
/// explicit isomorphism between model labels and spec coordinates.
struct Decomposition {
  GroupSpec spec;
  std::vector<std::uint64_t> generators;  // model label of each spec coordinate's unit vector
  std::vector<std::uint64_t> label_of;    // spec index -> model label
  std::vector<std::uint64_t> index_of;    // model label -> spec index

  GroupElement to_spec(std::uint64_t label) const { return spec.element(index_of.at(label)); }
  std::uint64_t to_label(const GroupElement& a) const { return label_of.at(spec.index(a)); }
};

Decomposition black_box_decompose(const FiniteGroupModel& model, const Limits& limits = {});

/// The subgroup generated by `gens`, as an invariant-factor spec embedded into `g`.
Homomorphism subgroup_embedding(const GroupSpec& g, std::span<const GroupElement> gens,
                                const Limits& limits = {});

/// Invariant factors (largest first) of an arbitrary cyclic product.
GroupSpec invariant_factors(const GroupSpec& g);

std::uint64_t checked_cap(const std::string& what, std::uint64_t size, const Limits& limits);

}  // namespace basisforge
