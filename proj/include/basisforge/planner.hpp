#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "basisforge/basis.hpp"
#include "basisforge/groups.hpp"
#include "basisforge/limits.hpp"

namespace basisforge {

enum class Theorem { WeaklyAdmissible, Admissible };

std::string to_string(Theorem t);
/// Accepts "weak", "weakly_admissible", "adm", "admissible".
Theorem parse_theorem(std::string_view text);

/// Z_modulus^count; inside a quotient step, `sub` is the order of the cyclic
/// subgroup taken in each coordinate, embedded by multiplication by modulus/sub.
struct Segment {
  std::uint64_t modulus = 0;
  std::uint64_t count = 0;
  std::uint64_t sub = 1;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct PlanStep {
  std::size_t id = 0;
  std::string kind;  // "quotient", "product" or "atomic"
  std::vector<Segment> group;
  std::string label;
  std::vector<std::size_t> children;  // quotient: {inner, outer}
  std::string construction;           // atomic only
  std::map<std::string, std::int64_t> params;
  std::string bound;
};

struct DecompositionPlan {
  GroupSpec base;
  Theorem theorem = Theorem::WeaklyAdmissible;
  unsigned n = 1;
  unsigned power = 1;             // the target is base^power
  std::vector<PlanStep> steps;    // children precede parents
  std::size_t root = 0;
  BigInt max_order = 1;           // largest group order among steps
};

std::string group_text(const std::vector<Segment>& blocks);
BigInt group_order(const std::vector<Segment>& blocks);

/// Symbolic plan for a 1-difference basis of G^{2n} (weak) or G^n (admissible).
/// Throws HypothesisViolation naming the failed inequality.
DecompositionPlan plan_decomposition(const GroupSpec& g, Theorem theorem, unsigned n);

bool fits(const DecompositionPlan& plan, const Limits& limits);

struct MaterializedPlan {
  BasisSet basis;                    // in base^power, user coordinates
  std::vector<std::uint64_t> sizes;  // per step id
};

/// Builds every step. Throws CapExceeded when some step group exceeds the cap.
MaterializedPlan materialize(const DecompositionPlan& plan, const Limits& limits = {});

}  // namespace basisforge
