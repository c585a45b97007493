#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "basisforge/groups.hpp"
#include "basisforge/limits.hpp"

namespace basisforge {

/// prod Z_{2^{2s_i}}^{u_i} x prod Z_{2^{2r_j+1}}^{v_j} x Z_2^v.
struct TwoGroupShape {
  std::vector<std::pair<unsigned, std::uint64_t>> even_part;  // (s_i, u_i), s_i ascending
  std::vector<std::pair<unsigned, std::uint64_t>> odd_part;   // (r_j, v_j), r_j ascending
  std::uint64_t v = 0;

  /// Sum of u_i over blocks with s_i >= 3.
  std::uint64_t large_even() const;
  /// Sum of v_j.
  std::uint64_t odd_total() const;
  /// log2 of the group order.
  std::uint64_t log_order() const;
  GroupSpec to_group() const;

  friend bool operator==(const TwoGroupShape&, const TwoGroupShape&) = default;
};

TwoGroupShape shape_of_2group(const GroupSpec& g);

enum class Admissibility { Admissible, WeaklyAdmissibleOnly, Inadmissible };

std::string to_string(Admissibility a);
Admissibility classify(const TwoGroupShape& shape);

struct PartitionStats {
  unsigned n = 0;
  BigInt total = 0;
  BigInt admissible = 0;
  BigInt weakly = 0;  // includes the admissible ones
};

inline constexpr unsigned kCensusMaxN = 90;

/// Enumerates every partition of n (one 2-group of order 2^n each) and classifies it.
PartitionStats partition_census(unsigned n, const Limits& limits = {});

/// p(n) by Euler's pentagonal recurrence.
BigInt partition_count(unsigned n);

std::string census_csv_header();
std::string census_csv_row(const PartitionStats& stats);

}  // namespace basisforge
