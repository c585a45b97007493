#include "basisforge/constructions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "basisforge/bounds.hpp"
#include "basisforge/error.hpp"
#include "basisforge/verify.hpp"
#include "number_theory.hpp"
#include "parallel.hpp"

namespace basisforge {

namespace {

GroupSpec uniform(std::uint64_t modulus, std::size_t count) {
  return GroupSpec(std::vector<std::uint64_t>(count, modulus));
}

GroupElement scaled(const GroupElement& a, std::uint64_t factor) {
  GroupElement out = a;
  for (auto& c : out.coords) c *= factor;
  return out;
}

Provenance make_provenance(std::string name, std::map<std::string, std::int64_t> params) {
  Provenance p;
  p.name = std::move(name);
  p.params = std::move(params);
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Galois-ring families

BasisSet parabola_basis_odd(std::uint64_t p, unsigned s, unsigned n, bool complete, const Limits& limits) {
  if (p == 2) throw InvalidArgument("parabola construction needs an odd prime, got p = 2");
  const GaloisRing ring(p, s, n);
  const GroupSpec g = uniform(ring.q(), 2 * static_cast<std::size_t>(n));
  checked_cap("parabola basis in " + g.to_string(), g.order(), limits);

  std::vector<GroupElement> elems;
  elems.reserve(ring.order());
  for (std::uint64_t idx = 0; idx < ring.order(); ++idx) {
    const RingElement x = ring.element(idx);
    elems.push_back(concat(ring.to_group_element(x), ring.to_group_element(ring.mul(x, x))));
  }

  Provenance prov = make_provenance("parabola", {{"p", static_cast<std::int64_t>(p)},
                                                 {"s", s},
                                                 {"n", n},
                                                 {"complete", complete ? 1 : 0}});
  if (complete) {
    const GroupSpec sub = s == 1 ? GroupSpec{} : uniform(ring.q() / p, n);
    const BasisSet d1 = greedy_basis(sub, 1, Kind::Difference, limits);
    const BasisSet d2 = greedy_basis(ring.additive_group(), 1, Kind::Difference, limits);
    for (const auto& a : d1.elements()) {
      GroupElement lifted = s == 1 ? ring.to_group_element(ring.zero()) : scaled(a, p);
      for (const auto& b : d2.elements()) elems.push_back(concat(lifted, b));
    }
    prov.parts = {d1.provenance(), d2.provenance()};
  }
  return BasisSet(g, std::move(elems), Kind::Difference, complete ? 1 : 0, std::move(prov));
}

BasisSet teichmuller_rds_basis(unsigned n, bool complete, const Limits& limits) {
  const GaloisRing ring(2, 2, n);
  checked_cap("Teichmuller basis in Z4^" + std::to_string(n), ring.order(), limits);
  const TeichmullerSystem t = teichmuller(ring);
  std::vector<GroupElement> elems;
  for (const auto& e : t.elements) elems.push_back(ring.to_group_element(e));
  Provenance prov = make_provenance("t4rds", {{"n", n}, {"complete", complete ? 1 : 0}});
  if (complete) {
    const BasisSet half = greedy_basis(uniform(2, n), 1, Kind::Difference, limits);
    for (const auto& h : half.elements()) elems.push_back(scaled(h, 2));
    prov.parts = {half.provenance()};
  }
  return BasisSet(ring.additive_group(), std::move(elems), Kind::Difference, complete ? 1 : 0,
                  std::move(prov));
}

BasisSet pcp_lines(std::uint64_t p, unsigned s, unsigned n, unsigned k, Kind kind, const Limits& limits) {
  const GaloisRing ring(p, s, n);
  const std::uint64_t field = detail::ipow(p, n);
  if (k < 2 || k > field || 2 * static_cast<std::uint64_t>(k) > ring.order()) {
    throw InvalidArgument("k = " + std::to_string(k) + " outside 2 <= k <= min(p^n, p^{sn}/2) = min(" +
                          std::to_string(field) + ", " + std::to_string(ring.order()) + "/2)");
  }
  const GroupSpec g = uniform(ring.q(), 2 * static_cast<std::size_t>(n));
  checked_cap("line basis in " + g.to_string(), g.order(), limits);
  const TeichmullerSystem t = teichmuller(ring);

  std::vector<GroupElement> elems;
  for (unsigned i = 0; i < k; ++i) {
    const RingElement& alpha = i + 1 < field ? t.elements[i + 1] : t.elements[0];
    for (std::uint64_t idx = 1; idx < ring.order(); ++idx) {
      const RingElement x = ring.element(idx);
      elems.push_back(concat(ring.to_group_element(x), ring.to_group_element(ring.mul(alpha, x))));
    }
  }
  return BasisSet(g, std::move(elems), kind, static_cast<std::uint64_t>(k) * (k - 1),
                  make_provenance("pcp", {{"p", static_cast<std::int64_t>(p)}, {"s", s}, {"n", n}, {"k", k}}));
}

BasisSet pcp_multi(const GroupSpec& g, unsigned k, Kind kind, const Limits& limits) {
  struct Block {
    std::uint64_t modulus;
    std::size_t offset;
    std::size_t count;
  };
  std::vector<Block> blocks;
  const auto& moduli = g.moduli();
  for (std::size_t i = 0; i < moduli.size();) {
    std::size_t j = i;
    while (j < moduli.size() && moduli[j] == moduli[i]) ++j;
    blocks.push_back({moduli[i], i, j - i});
    i = j;
  }
  if (blocks.empty()) throw InvalidArgument("multi-block construction needs a nontrivial group");
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < blocks.size(); ++b) {
      if (blocks[a].modulus == blocks[b].modulus) {
        throw InvalidArgument("group " + g.to_string() +
                              " is not in block form: equal moduli must be contiguous");
      }
    }
  }

  std::vector<GaloisRing> rings;
  std::vector<TeichmullerSystem> systems;
  std::uint64_t max_k = std::numeric_limits<std::uint64_t>::max();
  for (const auto& b : blocks) {
    const auto pf = detail::factor(b.modulus);
    if (pf.size() != 1) {
      throw InvalidArgument("modulus " + std::to_string(b.modulus) + " is not a prime power");
    }
    rings.emplace_back(pf[0].p, pf[0].e, static_cast<unsigned>(b.count));
    max_k = std::min(max_k, detail::ipow(pf[0].p, b.count) - 1);
  }
  const std::size_t m = blocks.size();
  if (k < m + 2 || k > max_k) {
    throw InvalidArgument("k = " + std::to_string(k) + " outside m+2 <= k <= min(p_i^{n_i} - 1) = [" +
                          std::to_string(m + 2) + ", " + std::to_string(max_k) + "]");
  }
  if (m > 16) throw InvalidArgument("too many blocks");
  const GroupSpec gg = product(g, g);
  checked_cap("multi-block basis in " + gg.to_string(), gg.order(), limits);
  for (const auto& r : rings) systems.push_back(teichmuller(r));

  std::vector<GroupElement> elems;
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  for (std::uint64_t mask = 0; mask < full; ++mask) {  // mask = I, a proper subset
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1U)) free.push_back(i);
    }
    std::uint64_t combos = 1;
    for (auto i : free) combos = detail::checked_mul(combos, rings[i].order() - 1, "multi-block size");
    for (unsigned j = 0; j < k; ++j) {
      for (std::uint64_t c = 0; c < combos; ++c) {
        GroupElement a = g.zero();
        GroupElement b = g.zero();
        std::uint64_t rest = c;
        for (auto i : free) {
          const GaloisRing& r = rings[i];
          const RingElement x = r.element(rest % (r.order() - 1) + 1);
          rest /= r.order() - 1;
          const RingElement y = r.mul(systems[i].elements[j + 1], x);
          for (std::size_t t = 0; t < blocks[i].count; ++t) {
            a.coords[blocks[i].offset + t] = x.coeffs[t];
            b.coords[blocks[i].offset + t] = y.coeffs[t];
          }
        }
        elems.push_back(concat(a, b));
      }
    }
  }
  const std::uint64_t guarantee = static_cast<std::uint64_t>(k - m) * (k - m - 1);
  Provenance prov = make_provenance("pcpmulti", {{"k", k}, {"m", static_cast<std::int64_t>(m)}});
  prov.labels["group"] = g.to_string();
  return BasisSet(gg, std::move(elems), kind, guarantee, std::move(prov));
}

// ---------------------------------------------------------------------------
// Star group

StarGroupModel::StarGroupModel(unsigned n) : ring_(2, 2, n), size_(ring_.order()) {
  if (size_ > (std::uint64_t{1} << 16)) {
    throw InvalidArgument("star group over GR(4," + std::to_string(n) + ") is too large");
  }
  if (size_ <= 2048) {
    add_table_.resize(size_ * size_);
    mul_table_.resize(size_ * size_);
    neg_table_.resize(size_);
    std::vector<RingElement> elems;
    for (std::uint64_t i = 0; i < size_; ++i) elems.push_back(ring_.element(i));
    for (std::uint64_t i = 0; i < size_; ++i) {
      neg_table_[i] = static_cast<std::uint32_t>(ring_.index(ring_.neg(elems[i])));
      for (std::uint64_t j = 0; j < size_; ++j) {
        add_table_[i * size_ + j] = static_cast<std::uint32_t>(ring_.index(ring_.add(elems[i], elems[j])));
        mul_table_[i * size_ + j] = static_cast<std::uint32_t>(ring_.index(ring_.mul(elems[i], elems[j])));
      }
    }
  }
}

std::uint64_t StarGroupModel::ring_add(std::uint64_t a, std::uint64_t b) const {
  if (!add_table_.empty()) return add_table_[a * size_ + b];
  return ring_.index(ring_.add(ring_.element(a), ring_.element(b)));
}

std::uint64_t StarGroupModel::ring_mul(std::uint64_t a, std::uint64_t b) const {
  if (!mul_table_.empty()) return mul_table_[a * size_ + b];
  return ring_.index(ring_.mul(ring_.element(a), ring_.element(b)));
}

std::uint64_t StarGroupModel::op(std::uint64_t a, std::uint64_t b) const {
  const std::uint64_t x1 = a % size_, y1 = a / size_;
  const std::uint64_t x2 = b % size_, y2 = b / size_;
  const std::uint64_t x = ring_add(x1, x2);
  const std::uint64_t y = ring_add(ring_add(y1, y2), ring_mul(x1, x2));
  return x + size_ * y;
}

std::uint64_t StarGroupModel::inverse(std::uint64_t a) const {
  const std::uint64_t x = a % size_, y = a / size_;
  const std::uint64_t nx = neg_table_.empty() ? ring_.index(ring_.neg(ring_.element(x))) : neg_table_[x];
  const std::uint64_t ny = neg_table_.empty() ? ring_.index(ring_.neg(ring_.element(y))) : neg_table_[y];
  return nx + size_ * ring_add(ring_mul(x, x), ny);
}

std::uint64_t StarGroupModel::label(const RingElement& x, const RingElement& y) const {
  return ring_.index(x) + size_ * ring_.index(y);
}

std::pair<RingElement, RingElement> StarGroupModel::pair_of(std::uint64_t label) const {
  if (label >= order()) throw InvalidArgument("star label out of range");
  return {ring_.element(label % size_), ring_.element(label / size_)};
}

StarBasis star_basis(unsigned n, const Limits& limits) {
  const GaloisRing probe(2, 2, n);
  checked_cap("star group over GR(4," + std::to_string(n) + ")",
              detail::checked_mul(probe.order(), probe.order(), "star group order"), limits);
  auto model = std::make_shared<const StarGroupModel>(n);
  const GaloisRing& ring = model->ring();

  StarBasis out{model, {}, 0, 0, 0, {}, BasisSet(GroupSpec{}, {GroupElement{}}, Kind::Difference, 0, {})};
  std::vector<std::uint64_t> labels;
  for (std::uint64_t idx = 0; idx < ring.order(); ++idx) {
    const RingElement x = ring.element(idx);
    labels.push_back(model->label(x, ring.mul(x, x)));
  }
  out.s_size = labels.size();

  const BasisSet t = greedy_basis(uniform(2, n), 1, Kind::Difference, limits);
  const BasisSet w = teichmuller_rds_basis(n, true, limits);
  out.t_size = t.size();
  out.w_size = w.size();
  for (const auto& te : t.elements()) {
    const RingElement tx = ring.from_group_element(scaled(te, 2));
    for (const auto& we : w.elements()) labels.push_back(model->label(tx, ring.from_group_element(we)));
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  const BasisCertificate cert = check_g_basis(*model, labels, Kind::Difference, 1, limits);
  if (!cert.passed) throw std::logic_error("star basis failed verification in the model");

  out.decomposition = black_box_decompose(*model, limits);
  std::vector<std::uint64_t> expected(n, 8);
  expected.insert(expected.end(), n, 2);
  if (out.decomposition.spec.moduli() != expected) {
    throw std::logic_error("star group decomposed to " + out.decomposition.spec.to_string());
  }
  std::vector<GroupElement> elems;
  for (auto l : labels) elems.push_back(out.decomposition.to_spec(l));
  out.labels = std::move(labels);
  Provenance prov = make_provenance("star8", {{"n", n},
                                              {"s_size", static_cast<std::int64_t>(out.s_size)},
                                              {"t_size", static_cast<std::int64_t>(out.t_size)},
                                              {"w_size", static_cast<std::int64_t>(out.w_size)}});
  prov.parts = {t.provenance(), w.provenance()};
  out.standard = BasisSet(out.decomposition.spec, std::move(elems), Kind::Difference, 1, std::move(prov));
  return out;
}

// ---------------------------------------------------------------------------
// Combinators

BasisSet quotient_compose(const BasisSet& inner, const BasisSet& outer, const Homomorphism& embed,
                          const QuotientData& q, const Limits& limits) {
  if (inner.kind() != outer.kind()) {
    throw InvalidArgument("kind mismatch: inner is " + to_string(inner.kind()) + ", outer is " +
                          to_string(outer.kind()));
  }
  if (inner.group() != embed.source()) {
    throw InvalidArgument("inner basis lives in " + inner.group().to_string() + ", embedding starts at " +
                          embed.source().to_string());
  }
  if (embed.target() != q.ambient()) throw InvalidArgument("embedding target differs from quotient ambient");
  if (outer.group() != q.quotient()) {
    throw InvalidArgument("outer basis lives in " + outer.group().to_string() + ", quotient is " +
                          q.quotient().to_string());
  }
  const GroupSpec& h = embed.source();
  if (q.subgroup_order() != h.order()) {
    throw InvalidArgument("subgroup order " + std::to_string(q.subgroup_order()) +
                          " differs from embedded group order " + std::to_string(h.order()));
  }
  for (const auto& img : embed.images()) {
    if (q.project(img) != q.quotient().zero()) {
      throw InvalidArgument("embedding image is not inside the quotiented subgroup");
    }
  }
  checked_cap("embedding check", h.order(), limits);
  std::vector<std::uint64_t> image;
  image.reserve(h.order());
  for (std::uint64_t idx = 0; idx < h.order(); ++idx) image.push_back(q.ambient().index(embed.apply(h.element(idx))));
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
    throw InvalidArgument("embedding is not injective");
  }

  std::vector<GroupElement> lifted;
  lifted.reserve(outer.size());
  for (const auto& b : outer.elements()) lifted.push_back(q.lift(b));
  std::vector<GroupElement> elems;
  elems.reserve(inner.size() * outer.size());
  for (const auto& a : inner.elements()) {
    const GroupElement ea = embed.apply(a);
    for (const auto& b : lifted) elems.push_back(add(q.ambient(), ea, b));
  }
  Provenance prov;
  prov.name = "quotient";
  prov.labels["subgroup"] = h.to_string();
  prov.parts = {inner.provenance(), outer.provenance()};
  return BasisSet(q.ambient(), std::move(elems), inner.kind(), inner.g_claimed() * outer.g_claimed(),
                  std::move(prov));
}

BasisSet product_compose(const BasisSet& lhs, const BasisSet& rhs) {
  if (lhs.kind() != rhs.kind()) {
    throw InvalidArgument("kind mismatch: " + to_string(lhs.kind()) + " vs " + to_string(rhs.kind()));
  }
  std::vector<GroupElement> elems;
  elems.reserve(lhs.size() * rhs.size());
  for (const auto& a : lhs.elements()) {
    for (const auto& b : rhs.elements()) elems.push_back(concat(a, b));
  }
  Provenance prov;
  prov.name = "product";
  prov.parts = {lhs.provenance(), rhs.provenance()};
  return BasisSet(product(lhs.group(), rhs.group()), std::move(elems), lhs.kind(),
                  lhs.g_claimed() * rhs.g_claimed(), std::move(prov));
}

BasisSet coerce_coordinates(const BasisSet& basis, const GroupSpec& target) {
  const auto& src = basis.group().moduli();
  const auto& dst = target.moduli();
  if (src.size() != dst.size()) {
    throw InvalidArgument("cannot coerce " + basis.group().to_string() + " to " + target.to_string());
  }
  std::vector<char> used(src.size(), 0);
  std::vector<std::size_t> from(dst.size());
  for (std::size_t t = 0; t < dst.size(); ++t) {
    bool found = false;
    for (std::size_t s = 0; s < src.size(); ++s) {
      if (!used[s] && src[s] == dst[t]) {
        used[s] = 1;
        from[t] = s;
        found = true;
        break;
      }
    }
    if (!found) {
      throw InvalidArgument("cannot coerce " + basis.group().to_string() + " to " + target.to_string());
    }
  }
  std::vector<GroupElement> elems;
  for (const auto& e : basis.elements()) {
    GroupElement out{std::vector<std::uint64_t>(dst.size())};
    for (std::size_t t = 0; t < dst.size(); ++t) out.coords[t] = e.coords[from[t]];
    elems.push_back(std::move(out));
  }
  return BasisSet(target, std::move(elems), basis.kind(), basis.g_claimed(), basis.provenance());
}

CoordinateFiltration coordinate_filtration(const GroupSpec& ambient, std::vector<std::uint64_t> sub,
                                           const Limits& limits) {
  const auto& moduli = ambient.moduli();
  if (sub.size() != moduli.size()) throw InvalidArgument("filtration needs one sub-modulus per coordinate");
  std::vector<std::uint64_t> inner_mod, outer_mod;
  std::vector<GroupElement> images;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (sub[i] == 0 || moduli[i] % sub[i] != 0) {
      throw InvalidArgument("sub-modulus " + std::to_string(sub[i]) + " does not divide " +
                            std::to_string(moduli[i]));
    }
    if (sub[i] > 1) {
      inner_mod.push_back(sub[i]);
      GroupElement img = ambient.zero();
      img.coords[i] = moduli[i] / sub[i] % moduli[i];
      images.push_back(std::move(img));
    }
    if (moduli[i] / sub[i] > 1) outer_mod.push_back(moduli[i] / sub[i]);
  }
  GroupSpec inner(inner_mod);
  Homomorphism embed(inner, ambient, images);
  QuotientData q = quotient_by_subgroup(ambient, images, limits);
  return CoordinateFiltration{ambient, std::move(sub), std::move(inner), GroupSpec(outer_mod),
                              std::move(embed), std::move(q)};
}

BasisSet CoordinateFiltration::outer_to_quotient(const BasisSet& natural) const {
  if (natural.group() != outer) {
    throw InvalidArgument("outer basis lives in " + natural.group().to_string() + ", expected " +
                          outer.to_string());
  }
  const auto& moduli = ambient.moduli();
  std::vector<GroupElement> elems;
  for (const auto& y : natural.elements()) {
    GroupElement x = ambient.zero();
    std::size_t k = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (moduli[i] / sub[i] > 1) x.coords[i] = y.coords[k++];
    }
    elems.push_back(q.project(x));
  }
  return BasisSet(q.quotient(), std::move(elems), natural.kind(), natural.g_claimed(), natural.provenance());
}

BasisSet CoordinateFiltration::compose(const BasisSet& inner_basis, const BasisSet& outer_basis,
                                       const Limits& limits) const {
  return quotient_compose(inner_basis, outer_to_quotient(outer_basis), embed, q, limits);
}

// ---------------------------------------------------------------------------
// Recursions over 2-groups

std::string to_string(RecursionVariant v) { return v == RecursionVariant::Z2_2s_n ? "Z2_2s_n" : "Z2s_2n"; }

RecursionVariant parse_recursion_variant(std::string_view text) {
  if (text == "Z2_2s_n") return RecursionVariant::Z2_2s_n;
  if (text == "Z2s_2n") return RecursionVariant::Z2s_2n;
  throw InvalidArgument("unknown recursion variant '" + std::string(text) + "' (expected Z2_2s_n|Z2s_2n)");
}

namespace {

BasisSet recurse(unsigned s, unsigned n, RecursionVariant variant, const Limits& limits) {
  if (variant == RecursionVariant::Z2_2s_n) {
    if (s == 1) return teichmuller_rds_basis(n, true, limits);
    const std::uint64_t m = detail::ipow(2, 2 * s, "recursion modulus");
    const GroupSpec ambient = uniform(m, n);
    checked_cap("recursion over " + ambient.to_string(), ambient.order(), limits);
    const auto f = coordinate_filtration(ambient, std::vector<std::uint64_t>(n, m / 4), limits);
    return f.compose(recurse(s - 1, n, variant, limits), teichmuller_rds_basis(n, true, limits), limits);
  }
  if (s == 2) return teichmuller_rds_basis(2 * n, true, limits);
  const std::uint64_t m = detail::ipow(2, s, "recursion modulus");
  const GroupSpec ambient = uniform(m, 2 * static_cast<std::size_t>(n));
  checked_cap("recursion over " + ambient.to_string(), ambient.order(), limits);
  if (s == 3) {
    std::vector<std::uint64_t> sub(2 * static_cast<std::size_t>(n), 1);
    std::fill(sub.begin(), sub.begin() + n, 4);
    const auto f = coordinate_filtration(ambient, sub, limits);
    const BasisSet star = coerce_coordinates(star_basis(n, limits).standard, f.outer);
    return f.compose(teichmuller_rds_basis(n, true, limits), star, limits);
  }
  const auto f = coordinate_filtration(ambient, std::vector<std::uint64_t>(2 * static_cast<std::size_t>(n), 4),
                                       limits);
  return f.compose(teichmuller_rds_basis(2 * n, true, limits), recurse(s - 2, n, variant, limits), limits);
}

}  // namespace

BasisSet even_power_recursion(unsigned s, unsigned n, RecursionVariant variant, const Limits& limits) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  Surd bound;
  bool asserted = false;
  if (variant == RecursionVariant::Z2_2s_n) {
    if (s < 1) throw InvalidArgument("variant Z2_2s_n needs s >= 1");
    asserted = n >= 4;
    bound = half_power(2, static_cast<std::uint64_t>(2 * s - 1) * n) *
                (BigInt(detail::ipow(2, s + 1)) - 1) +
            BigInt(detail::ipow(2, static_cast<std::uint64_t>(s) * n, "bound"));
  } else {
    if (s < 2) throw InvalidArgument("variant Z2s_2n needs s >= 2");
    asserted = n >= 9;
    bound = half_power(2, static_cast<std::uint64_t>(2 * s - 1) * n) * (BigInt(detail::ipow(2, s)) - 1) +
            BigInt(detail::ipow(2, static_cast<std::uint64_t>(s) * n, "bound"));
  }
  BasisSet inner = recurse(s, n, variant, limits);
  Provenance prov = make_provenance("recursion", {{"s", s}, {"n", n}});
  prov.labels["variant"] = to_string(variant);
  prov.labels["bound"] = to_string(bound);
  prov.labels["bound_asserted"] = asserted ? "true" : "false";
  prov.parts = {inner.provenance()};
  return BasisSet(inner.group(), inner.elements(), Kind::Difference, 1, std::move(prov));
}

// ---------------------------------------------------------------------------
// Search

BasisSet greedy_basis(const GroupSpec& g, std::uint64_t target_g, Kind kind, const Limits& limits) {
  const std::uint64_t order = checked_cap("greedy search over " + g.to_string(), g.order(), limits);
  if (target_g > order) {
    throw Unattainable("target multiplicity " + std::to_string(target_g) + " is unattainable in " +
                       g.to_string(),
                       order);
  }
  Provenance prov = make_provenance("greedy", {{"g", static_cast<std::int64_t>(target_g)}});
  prov.labels["group"] = g.to_string();
  prov.labels["kind"] = to_string(kind);

  const std::size_t rank = g.rank();
  const auto& moduli = g.moduli();
  std::vector<std::vector<std::uint64_t>> coords(order);
  for (std::uint64_t i = 0; i < order; ++i) coords[i] = g.element(i).coords;
  std::vector<std::uint64_t> radix(rank, 1);
  for (std::size_t i = 1; i < rank; ++i) radix[i] = radix[i - 1] * moduli[i - 1];
  auto combine = [&](std::uint64_t a, std::uint64_t b, bool minus) {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < rank; ++k) {
      const std::uint64_t m = moduli[k];
      const std::uint64_t x = coords[a][k];
      const std::uint64_t y = coords[b][k];
      const std::uint64_t s = minus ? (x >= y ? x - y : x + m - y) : (x + y >= m ? x + y - m : x + y);
      idx += s * radix[k];
    }
    return idx;
  };
  // Pairs created by adding c to A: (c,a), (a,c) and (c,c).
  auto touched = [&](std::uint64_t c, const std::vector<std::uint64_t>& a, auto&& visit) {
    const bool minus = kind == Kind::Difference;
    for (auto x : a) {
      visit(combine(c, x, minus));
      visit(combine(x, c, minus));
    }
    visit(combine(c, c, minus));
  };

  std::vector<std::uint64_t> chosen{0};
  std::vector<char> in_set(order, 0);
  in_set[0] = 1;
  std::vector<std::uint64_t> r(order, 0);
  r[combine(0, 0, kind == Kind::Difference)] = 1;
  auto deficient = [&] {
    return std::any_of(r.begin(), r.end(), [&](std::uint64_t v) { return v < target_g; });
  };

  const unsigned workers = detail::worker_count(limits.threads, order);
  std::vector<std::vector<std::uint32_t>> scratch(workers, std::vector<std::uint32_t>(order, 0));
  while (deficient()) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> best(workers, {0, order});  // (gain, index)
    detail::parallel_chunks(workers, order, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      auto& delta = scratch[w];
      std::vector<std::uint64_t> hits;
      for (std::uint64_t c = begin; c < end; ++c) {
        if (in_set[c]) continue;
        hits.clear();
        touched(c, chosen, [&](std::uint64_t x) {
          if (delta[x]++ == 0) hits.push_back(x);
        });
        std::uint64_t gain = 0;
        for (auto x : hits) {
          const std::uint64_t before = std::min(r[x], target_g);
          const std::uint64_t after = std::min(r[x] + delta[x], target_g);
          gain += after - before;
          delta[x] = 0;
        }
        if (gain > best[w].first || (gain == best[w].first && c < best[w].second)) best[w] = {gain, c};
      }
    });
    std::pair<std::uint64_t, std::uint64_t> pick{0, order};
    for (const auto& b : best) {
      if (b.second == order) continue;
      if (b.first > pick.first || (b.first == pick.first && b.second < pick.second)) pick = b;
    }
    if (pick.second == order) throw std::logic_error("greedy search exhausted the group");
    const std::uint64_t c = pick.second;
    touched(c, chosen, [&](std::uint64_t x) { ++r[x]; });
    chosen.push_back(c);
    in_set[c] = 1;
  }

  std::vector<GroupElement> elems;
  for (auto c : chosen) elems.push_back(g.element(c));
  return BasisSet(g, std::move(elems), kind, target_g, std::move(prov));
}

namespace {

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const GroupSpec& g, std::uint64_t target, Kind kind)
      : g_(g), n_(g.order()), target_(target), kind_(kind), r_(n_, 0) {
    table_.assign(n_ * n_, 0);
    for (std::uint64_t a = 0; a < n_; ++a) {
      const GroupElement ea = g.element(a);
      for (std::uint64_t b = 0; b < n_; ++b) {
        const GroupElement eb = g.element(b);
        table_[a * n_ + b] =
            g.index(kind == Kind::Additive ? add(g, ea, eb) : subtract(g, ea, eb));
      }
    }
  }

  bool run(std::uint64_t size) {
    size_ = size;
    chosen_.clear();
    std::fill(r_.begin(), r_.end(), 0);
    push(0);
    const bool found = dfs(1);
    if (!found) pop();
    return found;
  }

  const std::vector<std::uint64_t>& chosen() const { return chosen_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void push(std::uint64_t c) {
    for (auto a : chosen_) {
      ++r_[table_[c * n_ + a]];
      ++r_[table_[a * n_ + c]];
    }
    ++r_[table_[c * n_ + c]];
    chosen_.push_back(c);
  }

  void pop() {
    const std::uint64_t c = chosen_.back();
    chosen_.pop_back();
    for (auto a : chosen_) {
      --r_[table_[c * n_ + a]];
      --r_[table_[a * n_ + c]];
    }
    --r_[table_[c * n_ + c]];
  }

  bool feasible(std::uint64_t have) const {
    const std::uint64_t remaining = size_ - have;
    const std::uint64_t budget = size_ * size_ - have * have;
    std::uint64_t deficit = 0;
    for (std::uint64_t x = 0; x < n_; ++x) {
      if (r_[x] >= target_) continue;
      if (r_[x] + 2 * remaining < target_) return false;
      deficit += target_ - r_[x];
    }
    return deficit <= budget;
  }

  bool dfs(std::uint64_t have) {
    ++nodes_;
    if (!feasible(have)) return false;
    if (have == size_) return true;
    const std::uint64_t start = chosen_.back() + 1;
    for (std::uint64_t c = start; c + (size_ - have) <= n_; ++c) {
      push(c);
      if (dfs(have + 1)) return true;
      pop();
    }
    return false;
  }

  const GroupSpec& g_;
  std::uint64_t n_;
  std::uint64_t target_;
  Kind kind_;
  std::vector<std::uint64_t> table_;
  std::vector<std::uint64_t> r_;
  std::vector<std::uint64_t> chosen_;
  std::uint64_t size_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExhaustiveResult exhaustive_min(const GroupSpec& g, std::uint64_t target_g, Kind kind, const Limits& limits) {
  checked_cap("exhaustive search over " + g.to_string(), g.order(), limits);
  if (g.order() > kExhaustiveCap) throw CapExceeded("exhaustive search over " + g.to_string(), g.order(), kExhaustiveCap);
  if (target_g > g.order()) {
    throw Unattainable("target multiplicity " + std::to_string(target_g) + " is unattainable in " +
                       g.to_string(),
                       g.order());
  }
  Provenance prov = make_provenance("exhaustive", {{"g", static_cast<std::int64_t>(target_g)}});
  prov.labels["group"] = g.to_string();
  prov.labels["kind"] = to_string(kind);
  if (target_g == 0) {
    return {1, BasisSet(g, {g.zero()}, kind, 0, prov), 0};
  }
  ExhaustiveSearch search(g, target_g, kind);
  const std::uint64_t start = std::max<std::uint64_t>(1, lower_bound(g.order(), target_g, kind));
  for (std::uint64_t m = start; m <= g.order(); ++m) {
    if (search.run(m)) {
      std::vector<GroupElement> elems;
      for (auto c : search.chosen()) elems.push_back(g.element(c));
      prov.params["size"] = static_cast<std::int64_t>(m);
      return {m, BasisSet(g, std::move(elems), kind, target_g, prov), search.nodes()};
    }
  }
  throw std::logic_error("exhaustive search found no basis, not even the full group");
}

}  // namespace basisforge
