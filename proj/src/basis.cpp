#include "basisforge/basis.hpp"

#include <algorithm>

#include "basisforge/error.hpp"

namespace basisforge {

std::string to_string(Kind kind) { return kind == Kind::Additive ? "additive" : "difference"; }

Kind parse_kind(std::string_view text) {
  if (text == "add" || text == "additive" || text == "nu") return Kind::Additive;
  if (text == "diff" || text == "difference" || text == "eta") return Kind::Difference;
  throw InvalidArgument("unknown kind '" + std::string(text) + "' (expected add|diff)");
}

BasisSet::BasisSet(GroupSpec group, std::vector<GroupElement> elements, Kind kind,
                   std::uint64_t g_claimed, Provenance provenance)
    : group_(std::move(group)), kind_(kind), g_claimed_(g_claimed), provenance_(std::move(provenance)) {
  std::vector<std::pair<std::uint64_t, GroupElement>> keyed;
  keyed.reserve(elements.size());
  for (auto& e : elements) {
    if (!group_.contains(e)) {
      throw InvalidArgument("basis element does not belong to " + group_.to_string());
    }
    const std::uint64_t idx = group_.index(e);
    keyed.emplace_back(idx, std::move(e));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  elements_.reserve(keyed.size());
  for (auto& [idx, e] : keyed) elements_.push_back(std::move(e));
}

std::vector<std::uint64_t> BasisSet::indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(group_.index(e));
  return out;
}

bool BasisSet::symmetric() const {
  const auto idx = indices();
  for (const auto& e : elements_) {
    if (!std::binary_search(idx.begin(), idx.end(), group_.index(negate(group_, e)))) return false;
  }
  return true;
}

BasisSet BasisSet::with_kind(Kind kind) const {
  BasisSet out = *this;
  out.kind_ = kind;
  return out;
}

BasisSet BasisSet::with_claim(std::uint64_t g) const {
  BasisSet out = *this;
  out.g_claimed_ = g;
  return out;
}

}  // namespace basisforge
