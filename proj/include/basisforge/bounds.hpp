#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "basisforge/basis.hpp"
#include "basisforge/groups.hpp"
#include "basisforge/limits.hpp"

namespace basisforge {

/// Smallest size a g-basis of a group of this order can have by counting.
std::uint64_t lower_bound(std::uint64_t group_order, std::uint64_t g, Kind kind);

/// a + b * sqrt(c) with b, c >= 0.
struct Surd {
  BigInt a = 0;
  BigInt b = 0;
  BigInt c = 0;

  friend bool operator==(const Surd&, const Surd&) = default;
};

/// p^{e/2}, exact.
Surd half_power(std::uint64_t p, std::uint64_t e);
Surd operator+(const Surd& x, const BigInt& k);
Surd operator*(const Surd& x, const BigInt& k);
BigInt ceil(const Surd& x);
std::string to_string(const Surd& x);

/// One factor of a product construction over Z_{p^s}^{2n}.
struct FactorRecipe {
  std::string family;  // "pcp" or "parabola"
  std::uint64_t p;
  unsigned s;
  unsigned n;
  unsigned k;  // pcp only
};

struct UpperBound {
  std::string source;
  Kind kind;
  std::uint64_t g_max;      // the bound covers every g <= g_max
  unsigned min_n;
  Surd value;
  BigInt ceiling;           // ceiling of value, taken at the end
  BigInt factor_ceiling;    // product of per-factor ceilings
  std::vector<FactorRecipe> factors;
  bool applicable;
  std::string reason;       // why not applicable
};

/// Every closed-form bound on Z_{p^s}^{2n} that covers (g, kind).
/// Throws HypothesisViolation for the two excluded tiny cases.
std::vector<UpperBound> appendix_upper_bounds(std::uint64_t p, unsigned s, unsigned n, std::uint64_t g,
                                              Kind kind);

/// Builds and returns the construction behind a bound.
BasisSet realize(const UpperBound& bound, Kind kind, const Limits& limits = {});

struct BoundReport {
  GroupSpec group;
  std::uint64_t g;
  Kind kind;
  std::uint64_t lower;
  std::vector<UpperBound> uppers;
  std::optional<BigInt> best_upper;
  std::vector<std::string> best_sources;
  std::optional<std::uint64_t> achieved;
  std::string achieved_source;
  std::optional<std::uint64_t> exhaustive;
  std::string note;
};

BoundReport bound_report(const GroupSpec& group, std::uint64_t g, Kind kind, const Limits& limits = {});

std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& report);

}  // namespace basisforge
