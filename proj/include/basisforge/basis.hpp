#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "basisforge/groups.hpp"

namespace basisforge {

enum class Kind { Additive, Difference };

std::string to_string(Kind kind);
/// Accepts "add", "additive", "nu", "diff", "difference", "eta".
Kind parse_kind(std::string_view text);

struct Provenance {
  std::string name;
  std::map<std::string, std::int64_t> params;
  std::map<std::string, std::string> labels;
  std::vector<Provenance> parts;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// A deduplicated subset of a group, sorted by element index.
class BasisSet {
 public:
  BasisSet(GroupSpec group, std::vector<GroupElement> elements, Kind kind, std::uint64_t g_claimed,
           Provenance provenance);

  const GroupSpec& group() const noexcept { return group_; }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  Kind kind() const noexcept { return kind_; }
  std::uint64_t g_claimed() const noexcept { return g_claimed_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  std::vector<std::uint64_t> indices() const;
  bool symmetric() const;  // A == -A

  BasisSet with_kind(Kind kind) const;
  BasisSet with_claim(std::uint64_t g) const;

 private:
  GroupSpec group_;
  std::vector<GroupElement> elements_;
  Kind kind_;
  std::uint64_t g_claimed_;
  Provenance provenance_;
};

}  // namespace basisforge
