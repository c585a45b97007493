#include "serialize.hpp"

#include <limits>

#include "basisforge/error.hpp"

namespace basisforge::io {

std::string canonical(const Json& j) { return j.dump(); }

Json to_json(const GroupElement& a) { return Json(a.coords); }

Json to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::int64_t>::max()) return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

Json to_json(const Provenance& p) {
  Json params = Json::object();
  for (const auto& [k, v] : p.params) params[k] = v;
  for (const auto& [k, v] : p.labels) params[k] = v;
  Json parts = Json::array();
  for (const auto& part : p.parts) parts.push_back(to_json(part));
  return Json{{"name", p.name}, {"params", params}, {"parts", parts}};
}

Json to_json(const BasisSet& b) {
  Json elems = Json::array();
  for (const auto& e : b.elements()) elems.push_back(to_json(e));
  return Json{{"elements", elems},
              {"g_claimed", b.g_claimed()},
              {"group", b.group().to_string()},
              {"kind", to_string(b.kind())},
              {"provenance", to_json(b.provenance())}};
}

Json to_json(const BasisCertificate& c) {
  Json hist = Json::object();
  for (const auto& [count, mult] : c.histogram) hist[std::to_string(count)] = mult;
  return Json{{"argmin", c.argmin},
              {"basis_size", c.basis_size},
              {"g_required", c.g_required},
              {"group", c.group},
              {"group_order", c.group_order},
              {"histogram", hist},
              {"kind", to_string(c.kind)},
              {"lower_bound", c.lower_bound},
              {"min_count", c.min_count},
              {"verdict", c.passed ? "pass" : "fail"}};
}

Json to_json(const RdsResult& r) {
  Json j{{"lambda", r.lambda}, {"subgroup_order", r.subgroup_order}, {"verdict", r.passed ? "pass" : "fail"}};
  if (!r.passed) {
    j["witness"] = r.witness;
    j["witness_count"] = r.witness_count;
  }
  return j;
}

Json to_json(const TwoGroupShape& s) {
  Json even = Json::array();
  for (const auto& [si, ui] : s.even_part) even.push_back({si, ui});
  Json odd = Json::array();
  for (const auto& [rj, vj] : s.odd_part) odd.push_back({rj, vj});
  return Json{{"even_part", even}, {"odd_part", odd}, {"v", s.v}};
}

Json to_json(const UpperBound& u) {
  Json factors = Json::array();
  for (const auto& f : u.factors) {
    Json fj{{"family", f.family}, {"n", f.n}, {"p", f.p}, {"s", f.s}};
    if (f.family == "pcp") fj["k"] = f.k;
    factors.push_back(fj);
  }
  Json j{{"applicable", u.applicable}, {"g_max", u.g_max}, {"kind", to_string(u.kind)},
         {"min_n", u.min_n},           {"source", u.source}, {"factors", factors}};
  if (u.applicable || !u.factors.empty()) {
    j["value"] = to_string(u.value);
    j["ceiling"] = to_json(u.ceiling);
    j["factor_ceiling"] = to_json(u.factor_ceiling);
  }
  if (!u.reason.empty()) j["reason"] = u.reason;
  return j;
}

Json to_json(const BoundReport& r) {
  Json uppers = Json::array();
  for (const auto& u : r.uppers) uppers.push_back(to_json(u));
  Json j{{"group", r.group.to_string()},
         {"g", r.g},
         {"kind", to_string(r.kind)},
         {"lower", r.lower},
         {"uppers", uppers},
         {"best_upper", r.best_upper ? to_json(*r.best_upper) : Json(nullptr)},
         {"upper_sources", r.best_sources},
         {"achieved", r.achieved ? Json(*r.achieved) : Json(nullptr)},
         {"achieved_source", r.achieved_source},
         {"exhaustive", r.exhaustive ? Json(*r.exhaustive) : Json(nullptr)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const ExhaustiveResult& r) {
  return Json{{"size", r.size}, {"nodes", r.nodes}, {"witness", to_json(r.witness)}};
}

Json to_json(const DecompositionPlan& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps) {
    Json segs = Json::array();
    for (const auto& seg : s.group) {
      Json sj{{"modulus", seg.modulus}, {"count", seg.count}};
      if (s.kind == "quotient") sj["sub"] = seg.sub;
      segs.push_back(sj);
    }
    Json sj{{"id", s.id},
            {"kind", s.kind},
            {"group", group_text(s.group)},
            {"order", to_json(group_order(s.group))},
            {"label", s.label},
            {"children", s.children},
            {"bound", s.bound}};
    if (s.kind == "quotient") {
      sj["embedding"] = segs;
    }
    if (s.kind == "atomic") {
      sj["construction"] = s.construction;
      Json params = Json::object();
      for (const auto& [k, v] : s.params) {
        if (k == "variant") {
          params[k] = v == 0 ? "Z2_2s_n" : "Z2s_2n";
        } else {
          params[k] = v;
        }
      }
      sj["params"] = params;
    }
    steps.push_back(sj);
  }
  std::string target = p.base.to_string();
  if (!p.base.trivial()) target = "(" + target + ")^" + std::to_string(p.power);
  return Json{{"group", p.base.to_string()},
              {"theorem", to_string(p.theorem)},
              {"n", p.n},
              {"target", target},
              {"root", p.root},
              {"max_order", to_json(p.max_order)},
              {"steps", steps}};
}

Provenance provenance_from_json(const Json& j) {
  Provenance p;
  p.name = j.at("name").get<std::string>();
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) {
      if (v.is_number_integer()) {
        p.params[k] = v.get<std::int64_t>();
      } else if (v.is_string()) {
        p.labels[k] = v.get<std::string>();
      } else {
        throw InvalidArgument("provenance parameter '" + k + "' must be an integer or string");
      }
    }
  }
  if (j.contains("parts")) {
    for (const auto& part : j.at("parts")) p.parts.push_back(provenance_from_json(part));
  }
  return p;
}

GroupElement element_from_json(const GroupSpec& g, const Json& j) {
  if (!j.is_array() || j.size() != g.rank()) {
    throw InvalidArgument("element must be an array of " + std::to_string(g.rank()) + " integers");
  }
  GroupElement e;
  for (const auto& c : j) {
    if (!c.is_number_integer() || c.get<std::int64_t>() < 0) {
      throw InvalidArgument("element coordinates must be non-negative integers");
    }
    e.coords.push_back(c.get<std::uint64_t>());
  }
  if (!g.contains(e)) throw InvalidArgument("element " + j.dump() + " is not reduced in " + g.to_string());
  return e;
}

BasisSet basis_from_json(const Json& j) {
  try {
    const GroupSpec g = parse_group_spec(j.at("group").get<std::string>());
    std::vector<GroupElement> elems;
    for (const auto& e : j.at("elements")) elems.push_back(element_from_json(g, e));
    const Kind kind = j.contains("kind") ? parse_kind(j.at("kind").get<std::string>()) : Kind::Difference;
    const std::uint64_t claim = j.contains("g_claimed") ? j.at("g_claimed").get<std::uint64_t>() : 0;
    Provenance prov;
    if (j.contains("provenance")) prov = provenance_from_json(j.at("provenance"));
    return BasisSet(g, std::move(elems), kind, claim, std::move(prov));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed basis JSON: ") + e.what());
  }
}

}  // namespace basisforge::io
