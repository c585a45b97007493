#include "basisforge/planner.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "basisforge/admissibility.hpp"
#include "basisforge/bounds.hpp"
#include "basisforge/constructions.hpp"
#include "basisforge/error.hpp"
#include "number_theory.hpp"

namespace basisforge {

std::string to_string(Theorem t) { return t == Theorem::WeaklyAdmissible ? "weak" : "adm"; }

Theorem parse_theorem(std::string_view text) {
  if (text == "weak" || text == "weakly_admissible") return Theorem::WeaklyAdmissible;
  if (text == "adm" || text == "admissible") return Theorem::Admissible;
  throw InvalidArgument("unknown theorem '" + std::string(text) + "' (expected weak|adm)");
}

std::string group_text(const std::vector<Segment>& blocks) {
  std::string out;
  for (const auto& b : blocks) {
    if (b.count == 0) continue;
    if (!out.empty()) out += 'x';
    out += "Z" + std::to_string(b.modulus);
    if (b.count > 1) out += "^" + std::to_string(b.count);
  }
  return out.empty() ? "trivial" : out;
}

BigInt group_order(const std::vector<Segment>& blocks) {
  BigInt order = 1;
  for (const auto& b : blocks) order *= boost::multiprecision::pow(BigInt(b.modulus), static_cast<unsigned>(b.count));
  return order;
}

namespace {

using StepId = std::optional<std::size_t>;

std::uint64_t pow2(unsigned e) { return std::uint64_t{1} << e; }

std::string surd_bound(const Surd& value, bool asserted, const char* gate) {
  std::string out = to_string(value);
  if (!asserted) out += std::string(" (not asserted: ") + gate + ")";
  return out;
}

class Builder {
 public:
  std::vector<PlanStep> steps;

  std::size_t atomic(std::string construction, std::map<std::string, std::int64_t> params,
                     std::vector<Segment> group, std::string label, std::string bound) {
    PlanStep s;
    s.id = steps.size();
    s.kind = "atomic";
    s.group = std::move(group);
    s.label = std::move(label);
    s.construction = std::move(construction);
    s.params = std::move(params);
    s.bound = std::move(bound);
    steps.push_back(std::move(s));
    return steps.back().id;
  }

  // Z_{2^s}^{2m}
  StepId rec_z2s(unsigned s, std::uint64_t m) {
    if (m == 0) return std::nullopt;
    const Surd v = half_power(2, (2ULL * s - 1) * m) * (BigInt(pow2(s)) - 1) +
                   boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(s * m));
    return atomic("recursion", {{"s", s}, {"n", static_cast<std::int64_t>(m)}, {"variant", 1}},
                  {{pow2(s), 2 * m, 1}}, "Z" + std::to_string(pow2(s)) + "^{2n} recursion (Z2s_2n)",
                  surd_bound(v, m >= 9, "n < 9"));
  }

  // Z_{2^{2s}}^m
  StepId rec_z22s(unsigned s, std::uint64_t m) {
    if (m == 0) return std::nullopt;
    const Surd v = half_power(2, (2ULL * s - 1) * m) * (BigInt(pow2(s + 1)) - 1) +
                   boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(s * m));
    return atomic("recursion", {{"s", s}, {"n", static_cast<std::int64_t>(m)}, {"variant", 0}},
                  {{pow2(2 * s), m, 1}}, "Z" + std::to_string(pow2(2 * s)) + "^n recursion (Z2_2s_n)",
                  surd_bound(v, m >= 4, "n < 4"));
  }

  StepId star(std::uint64_t m) {
    if (m == 0) return std::nullopt;
    return atomic("star8", {{"n", static_cast<std::int64_t>(m)}}, {{8, m, 1}, {2, m, 1}},
                  "star group basis", "4^" + std::to_string(m) + " + |T|*|W|");
  }

  StepId parabola(std::uint64_t p, unsigned s, std::uint64_t m) {
    if (m == 0) return std::nullopt;
    const Surd v = half_power(p, (2ULL * s - 1) * m) * 9 +
                   boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(s * m));
    return atomic("parabola",
                  {{"p", static_cast<std::int64_t>(p)}, {"s", s}, {"n", static_cast<std::int64_t>(m)}, {"complete", 1}},
                  {{detail::ipow(p, s), 2 * m, 1}}, "parabola over GR(" + std::to_string(detail::ipow(p, s)) + ")",
                  to_string(v));
  }

  StepId product(const std::vector<StepId>& parts, std::string label) {
    std::vector<std::size_t> ids;
    for (const auto& p : parts) {
      if (p) ids.push_back(*p);
    }
    if (ids.empty()) return std::nullopt;
    if (ids.size() == 1) return ids.front();
    PlanStep s;
    s.id = steps.size();
    s.kind = "product";
    s.label = std::move(label);
    s.children = ids;
    std::string bound;
    for (auto c : ids) {
      const auto& g = steps[c].group;
      s.group.insert(s.group.end(), g.begin(), g.end());
      if (!bound.empty()) bound += " * ";
      bound += "size(#" + std::to_string(c) + ")";
    }
    s.bound = bound;
    steps.push_back(std::move(s));
    return steps.back().id;
  }

  StepId quotient(std::vector<Segment> segments, StepId inner, StepId outer, std::string label) {
    segments.erase(std::remove_if(segments.begin(), segments.end(), [](const Segment& s) { return s.count == 0; }),
                   segments.end());
    if (!inner) return outer;
    if (!outer) return inner;
    PlanStep s;
    s.id = steps.size();
    s.kind = "quotient";
    s.label = std::move(label);
    s.group = std::move(segments);
    s.children = {*inner, *outer};
    s.bound = "size(#" + std::to_string(*inner) + ") * size(#" + std::to_string(*outer) + ")";
    steps.push_back(std::move(s));
    return steps.back().id;
  }

  // Z8^{a8} x Z2^{a2} with a8 >= a2 and a8 - a2 even.
  StepId z8z2(std::uint64_t a8, std::uint64_t a2) {
    if (a2 == 0) return rec_z2s(3, a8 / 2);
    const StepId inner = star(a2);
    const StepId outer = rec_z2s(3, (a8 - a2) / 2);
    return quotient({{8, a2, 8}, {8, a8 - a2, 1}, {2, a2, 2}}, inner, outer, "split off Z8^m x Z2^m");
  }
};

struct Primary {
  std::map<unsigned, std::uint64_t, std::greater<>> two;     // exponent -> multiplicity
  std::map<std::uint64_t, std::pair<std::uint64_t, unsigned>> odd;  // q -> (p, s)
  std::map<std::uint64_t, std::uint64_t> odd_count;                 // q -> multiplicity
};

Primary primary_parts(const GroupSpec& g) {
  Primary out;
  for (auto m : g.moduli()) {
    for (const auto& pp : detail::factor(m)) {
      if (pp.p == 2) {
        ++out.two[pp.e];
      } else {
        out.odd[pp.q] = {pp.p, pp.e};
        ++out.odd_count[pp.q];
      }
    }
  }
  return out;
}

std::uint64_t count(const std::map<unsigned, std::uint64_t, std::greater<>>& m, unsigned e) {
  const auto it = m.find(e);
  return it == m.end() ? 0 : it->second;
}

std::string two_text(const Primary& pr) {
  std::vector<Segment> blocks;
  for (const auto& [e, c] : pr.two) blocks.push_back({pow2(e), c, 1});
  return group_text(blocks);
}

StepId plan_weak_two(Builder& b, const Primary& pr, unsigned n) {
  const auto& two = pr.two;
  std::uint64_t big = 0;
  for (const auto& [e, c] : two) {
    if (e >= 6) big += c;
  }
  const std::uint64_t v1 = count(two, 1), v3 = count(two, 3), v5 = count(two, 5);
  const std::uint64_t k = v3 + v5 + big;
  if (k < v1) {
    throw HypothesisViolation("2-part " + two_text(pr) + " is not weakly admissible: v3 + v5 + M = " +
                              std::to_string(k) + " < v1 = " + std::to_string(v1));
  }
  if (two.empty()) return std::nullopt;

  std::vector<Segment> segs;
  std::vector<StepId> inner;
  for (const auto& [e, c] : two) {
    const std::uint64_t m = c * 2 * n;
    unsigned sub_exp = 0;
    if (e == 2) sub_exp = 2;
    if (e == 4) sub_exp = 4;
    if (e == 5) sub_exp = 2;
    if (e >= 6) sub_exp = e - 3;
    segs.push_back({pow2(e), m, pow2(sub_exp)});
    if (sub_exp > 0) inner.push_back(b.rec_z2s(sub_exp, c * n));
  }
  const StepId in = b.product(inner, "subgroup factors");
  const StepId out = b.z8z2(2 * k * n, 2 * v1 * n);
  return b.quotient(segs, in, out, "quotient to Z8 and Z2 blocks");
}

StepId plan_adm_two(Builder& b, const Primary& pr, unsigned n) {
  const auto& two = pr.two;
  std::uint64_t log_order = 0, u = 0, v = 0;
  unsigned s1 = 0;
  for (const auto& [e, c] : two) {
    log_order += e * c;
    if (e >= 6 && e % 2 == 0) {
      u += c;
      if (s1 == 0 || e / 2 < s1) s1 = e / 2;
    }
    if (e >= 5 && e % 2 == 1) v += c;
  }
  const std::uint64_t h1 = count(two, 1), h2 = count(two, 3), l1 = count(two, 2), l2 = count(two, 4);
  const std::uint64_t m = u / 2, x = u % 2;
  if (2 * m + v + h2 < h1) {
    throw HypothesisViolation("2-part " + two_text(pr) + " is not admissible: 2*floor(U/2) + V + h2 = " +
                              std::to_string(2 * m + v + h2) + " < h1 = " + std::to_string(h1));
  }
  if (log_order % 2 != 0) {
    throw HypothesisViolation("2-part " + two_text(pr) + " does not have square order: log2|G_2| = " +
                              std::to_string(log_order) + " is odd");
  }
  if (two.empty()) return std::nullopt;

  std::vector<Segment> segs;
  std::vector<StepId> inner;
  for (const auto& [e, c] : two) {
    if (e >= 6 && e % 2 == 0) {
      const unsigned s = e / 2;
      const std::uint64_t keep = s == s1 ? x : 0;
      segs.push_back({pow2(e), (c - keep) * n, pow2(2 * (s - 3))});
      if (keep) segs.push_back({pow2(e), keep * n, 1});
      if (s > 3) inner.push_back(b.rec_z22s(s - 3, (c - keep) * n));
    } else if (e >= 5 && e % 2 == 1) {
      const unsigned r = (e - 1) / 2;
      segs.push_back({pow2(e), c * n, pow2(2 * (r - 1))});
      inner.push_back(b.rec_z22s(r - 1, c * n));
    } else {
      segs.push_back({pow2(e), c * n, 1});
    }
  }
  const StepId in1 = b.product(inner, "subgroup factors");

  std::vector<StepId> inner2;
  if (x) inner2.push_back(b.rec_z22s(s1, x * n));
  inner2.push_back(b.rec_z2s(3, m * n));
  inner2.push_back(b.rec_z22s(2, l2 * n));
  inner2.push_back(b.rec_z22s(1, l1 * n));
  const StepId in2 = b.product(inner2, "subgroup factors");
  const StepId out2 = b.z8z2((2 * m + v + h2) * n, h1 * n);
  std::vector<Segment> segs2;
  if (x) segs2.push_back({pow2(2 * s1), x * n, pow2(2 * s1)});
  segs2.push_back({64, 2 * m * n, 8});
  segs2.push_back({16, l2 * n, 16});
  segs2.push_back({4, l1 * n, 4});
  segs2.push_back({8, (v + h2) * n, 1});
  segs2.push_back({2, h1 * n, 1});
  const StepId out1 = b.quotient(segs2, in2, out2, "quotient to Z8 and Z2 blocks");
  return b.quotient(segs, in1, out1, "quotient by scaled even blocks");
}

std::vector<std::uint64_t> expand(const std::vector<Segment>& blocks) {
  std::vector<std::uint64_t> moduli;
  for (const auto& b : blocks) moduli.insert(moduli.end(), b.count, b.modulus);
  return moduli;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    const std::int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::logic_error("no modular inverse");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

// Canonical prime-power coordinates -> user coordinates by the Chinese remainder theorem.
BasisSet to_user_coordinates(const BasisSet& basis, const GroupSpec& target) {
  struct Slot {
    std::size_t coord;
    std::uint64_t q;
    std::uint64_t coef;
    bool used;
  };
  std::vector<Slot> slots;
  const auto& tm = target.moduli();
  for (std::size_t i = 0; i < tm.size(); ++i) {
    for (const auto& pp : detail::factor(tm[i])) {
      const std::uint64_t rest = tm[i] / pp.q;
      const std::uint64_t coef = rest * mod_inverse(rest % pp.q, pp.q) % tm[i];
      slots.push_back({i, pp.q, pp.q == tm[i] ? 1 : coef, false});
    }
  }
  const auto& cm = basis.group().moduli();
  std::vector<std::size_t> slot_of(cm.size());
  for (std::size_t k = 0; k < cm.size(); ++k) {
    auto it = std::find_if(slots.begin(), slots.end(), [&](const Slot& s) { return !s.used && s.q == cm[k]; });
    if (it == slots.end()) throw std::logic_error("plan group does not match the target");
    it->used = true;
    slot_of[k] = static_cast<std::size_t>(it - slots.begin());
  }
  std::vector<GroupElement> elems;
  elems.reserve(basis.size());
  for (const auto& a : basis.elements()) {
    GroupElement x = target.zero();
    for (std::size_t k = 0; k < cm.size(); ++k) {
      const Slot& s = slots[slot_of[k]];
      const unsigned __int128 add = static_cast<unsigned __int128>(a.coords[k]) * s.coef;
      x.coords[s.coord] = static_cast<std::uint64_t>((x.coords[s.coord] + add) % tm[s.coord]);
    }
    elems.push_back(std::move(x));
  }
  return BasisSet(target, std::move(elems), basis.kind(), basis.g_claimed(), basis.provenance());
}

}  // namespace

DecompositionPlan plan_decomposition(const GroupSpec& g, Theorem theorem, unsigned n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  DecompositionPlan plan;
  plan.base = g;
  plan.theorem = theorem;
  plan.n = n;
  plan.power = theorem == Theorem::WeaklyAdmissible ? 2 * n : n;

  const Primary pr = primary_parts(g);
  std::vector<std::uint64_t> two_moduli;
  for (const auto& [e, c] : pr.two) two_moduli.insert(two_moduli.end(), c, pow2(e));
  const Admissibility verdict = classify(shape_of_2group(GroupSpec(two_moduli)));
  const bool classified_ok = theorem == Theorem::WeaklyAdmissible ? verdict != Admissibility::Inadmissible
                                                                  : verdict == Admissibility::Admissible;

  Builder b;
  StepId two = theorem == Theorem::WeaklyAdmissible ? plan_weak_two(b, pr, n) : plan_adm_two(b, pr, n);
  std::vector<StepId> parts{two};
  for (const auto& [q, ps] : pr.odd) {
    const std::uint64_t c = pr.odd_count.at(q);
    if (theorem == Theorem::WeaklyAdmissible) {
      parts.push_back(b.parabola(ps.first, ps.second, c * n));
    } else {
      if (c % 2 != 0) {
        throw HypothesisViolation("odd part is not of the form H x H: Z" + std::to_string(q) + " appears " +
                                  std::to_string(c) + " times");
      }
      parts.push_back(b.parabola(ps.first, ps.second, c / 2 * n));
    }
  }
  if (!classified_ok) throw std::logic_error("planner accepted a 2-part the classifier rejects");
  StepId root = b.product(parts, "2-part times odd part");
  if (!root) root = b.atomic("trivial", {}, {}, "trivial group", "1");
  plan.steps = std::move(b.steps);
  plan.root = *root;
  for (const auto& s : plan.steps) plan.max_order = std::max(plan.max_order, group_order(s.group));
  return plan;
}

bool fits(const DecompositionPlan& plan, const Limits& limits) { return plan.max_order <= limits.cap; }

MaterializedPlan materialize(const DecompositionPlan& plan, const Limits& limits) {
  if (!fits(plan, limits)) {
    const std::uint64_t size = plan.max_order > std::numeric_limits<std::uint64_t>::max()
                                   ? std::numeric_limits<std::uint64_t>::max()
                                   : plan.max_order.convert_to<std::uint64_t>();
    throw CapExceeded("plan materialization", size, limits.cap);
  }
  std::vector<std::optional<BasisSet>> built(plan.steps.size());
  MaterializedPlan out{BasisSet(GroupSpec{}, {GroupElement{}}, Kind::Difference, 1, {}), {}};
  out.sizes.assign(plan.steps.size(), 0);
  for (const auto& s : plan.steps) {
    const GroupSpec grp(expand(s.group));
    std::optional<BasisSet> basis;
    if (s.kind == "atomic") {
      const auto& p = s.params;
      if (s.construction == "recursion") {
        basis = even_power_recursion(static_cast<unsigned>(p.at("s")), static_cast<unsigned>(p.at("n")),
                                     p.at("variant") == 0 ? RecursionVariant::Z2_2s_n : RecursionVariant::Z2s_2n,
                                     limits);
      } else if (s.construction == "star8") {
        basis = star_basis(static_cast<unsigned>(p.at("n")), limits).standard;
      } else if (s.construction == "parabola") {
        basis = parabola_basis_odd(static_cast<std::uint64_t>(p.at("p")), static_cast<unsigned>(p.at("s")),
                                   static_cast<unsigned>(p.at("n")), true, limits);
      } else {
        Provenance prov;
        prov.name = "trivial";
        basis = BasisSet(GroupSpec{}, {GroupElement{}}, Kind::Difference, 1, prov);
      }
      basis = coerce_coordinates(*basis, grp);
    } else if (s.kind == "product") {
      for (auto c : s.children) basis = basis ? product_compose(*basis, *built[c]) : *built[c];
      basis = coerce_coordinates(*basis, grp);
    } else {
      std::vector<std::uint64_t> sub;
      for (const auto& seg : s.group) sub.insert(sub.end(), seg.count, seg.sub);
      const auto f = coordinate_filtration(grp, sub, limits);
      basis = f.compose(coerce_coordinates(*built[s.children[0]], f.inner),
                        coerce_coordinates(*built[s.children[1]], f.outer), limits);
    }
    out.sizes[s.id] = basis->size();
    built[s.id] = std::move(basis);
  }

  std::vector<std::uint64_t> target;
  for (unsigned i = 0; i < plan.power; ++i) {
    target.insert(target.end(), plan.base.moduli().begin(), plan.base.moduli().end());
  }
  BasisSet mapped = to_user_coordinates(*built[plan.root], GroupSpec(target));
  Provenance prov;
  prov.name = "plan";
  prov.params = {{"n", plan.n}};
  prov.labels = {{"theorem", to_string(plan.theorem)}, {"group", plan.base.to_string()}};
  prov.parts = {mapped.provenance()};
  out.basis = BasisSet(mapped.group(), mapped.elements(), Kind::Difference, 1, std::move(prov));
  return out;
}

}  // namespace basisforge
