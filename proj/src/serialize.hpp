#pragma once

#include <string>

#include <json.hpp>

#include "basisforge/admissibility.hpp"
#include "basisforge/basis.hpp"
#include "basisforge/bounds.hpp"
#include "basisforge/constructions.hpp"
#include "basisforge/planner.hpp"
#include "basisforge/verify.hpp"

namespace basisforge::io {

using Json = nlohmann::json;

/// Compact, sorted keys.
std::string canonical(const Json& j);

Json to_json(const GroupElement& a);
Json to_json(const Provenance& p);
Json to_json(const BasisSet& b);
Json to_json(const BasisCertificate& c);
Json to_json(const RdsResult& r);
Json to_json(const TwoGroupShape& s);
Json to_json(const UpperBound& u);
Json to_json(const BoundReport& r);
Json to_json(const ExhaustiveResult& r);
Json to_json(const DecompositionPlan& p);
Json to_json(const BigInt& v);

Provenance provenance_from_json(const Json& j);
BasisSet basis_from_json(const Json& j);
GroupElement element_from_json(const GroupSpec& g, const Json& j);

}  // namespace basisforge::io
