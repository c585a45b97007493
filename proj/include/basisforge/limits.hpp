#pragma once

#include <cstdint>

namespace basisforge {

inline constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 20;

/// Resource knobs shared by every enumerating operation.
/// Results never depend on `threads`.
struct Limits {
  std::uint64_t cap = kDefaultCap;
  unsigned threads = 1;
};

}  // namespace basisforge
