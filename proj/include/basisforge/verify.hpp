#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "basisforge/basis.hpp"
#include "basisforge/groups.hpp"
#include "basisforge/limits.hpp"

namespace basisforge {

/// Ordered-pair representation counts, indexed by element index (or model label).
std::vector<std::uint64_t> representation_counts(const GroupSpec& g, std::span<const GroupElement> a,
                                                 Kind kind, const Limits& limits = {});
std::vector<std::uint64_t> representation_counts(const FiniteGroupModel& model,
                                                 std::span<const std::uint64_t> a, Kind kind,
                                                 const Limits& limits = {});

struct BasisCertificate {
  std::string group;
  std::uint64_t group_order = 0;
  std::uint64_t basis_size = 0;
  Kind kind = Kind::Difference;
  std::uint64_t g_required = 0;
  std::uint64_t min_count = 0;
  std::vector<std::uint64_t> argmin;  // coordinates; a single label for models
  std::map<std::uint64_t, std::uint64_t> histogram;  // count -> number of elements
  std::uint64_t lower_bound = 0;
  bool passed = false;
};

BasisCertificate check_g_basis(const BasisSet& basis, Kind kind, std::uint64_t g,
                               const Limits& limits = {});
BasisCertificate check_g_basis(const FiniteGroupModel& model, std::span<const std::uint64_t> a,
                               Kind kind, std::uint64_t g, const Limits& limits = {});

struct RdsResult {
  bool passed = false;
  std::uint64_t subgroup_order = 0;
  std::uint64_t lambda = 0;
  std::vector<std::uint64_t> witness;  // first offending element, empty on pass
  std::uint64_t witness_count = 0;
};

RdsResult check_rds(const BasisSet& basis, std::span<const GroupElement> subgroup_gens,
                    std::uint64_t lambda, const Limits& limits = {});

/// Process-wide tallies of issued certificates.
struct CertificateStats {
  std::uint64_t issued = 0;
  std::uint64_t passed = 0;
  std::uint64_t floor_checked = 0;
};

CertificateStats certificate_stats();

}  // namespace basisforge
