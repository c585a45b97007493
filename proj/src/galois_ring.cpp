#include "basisforge/galois_ring.hpp"

#include <algorithm>
#include <string>

#include "basisforge/error.hpp"
#include "number_theory.hpp"

namespace basisforge {

namespace {

using u128 = unsigned __int128;
using Poly = std::vector<std::uint64_t>;  // over F_p, trimmed, constant first

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= m - b ? a - (m - b) : a + b;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1U;
  }
  return r;
}

std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = submod(a[i], b[i], p);
  trim(a);
  return a;
}

// Returns (quotient, remainder); b must be nonzero.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  Poly quot;
  if (a.size() < b.size()) return {quot, a};
  quot.assign(a.size() - b.size() + 1, 0);
  const std::uint64_t lead_inv = inv_mod_prime(b.back(), p);
  for (std::size_t d = a.size(); d-- >= b.size();) {
    const std::uint64_t c = mulmod(a[d], lead_inv, p);
    if (c != 0) {
      const std::size_t shift = d + 1 - b.size();
      quot[shift] = c;
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = submod(a[shift + i], mulmod(c, b[i], p), p);
      }
    }
    if (d == 0) break;
  }
  trim(a);
  trim(quot);
  return {quot, a};
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], p), p);
  }
  trim(out);
  return out;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  return poly_divmod(poly_mul(a, b, p), f, p).second;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r{1};
  r = poly_divmod(r, f, p).second;
  base = poly_divmod(base, f, p).second;
  while (e > 0) {
    if (e & 1U) r = poly_mulmod(r, base, f, p);
    e >>= 1U;
    if (e > 0) base = poly_mulmod(base, base, f, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test over F_p.
bool irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  const Poly x{0, 1};
  const Poly xr = poly_divmod(x, f, p).second;
  std::vector<Poly> frob(n + 1);  // frob[k] = x^{p^k} mod f
  frob[0] = xr;
  for (std::size_t k = 1; k <= n; ++k) frob[k] = poly_powmod(frob[k - 1], p, f, p);
  if (frob[n] != xr) return false;
  for (auto r : detail::prime_factors(n)) {
    const Poly g = poly_gcd(f, poly_sub(frob[n / r], xr, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Inverse of a modulo f over F_p via extended Euclid; a must be coprime to f.
Poly poly_inverse(const Poly& a, const Poly& f, std::uint64_t p) {
  Poly r0 = f, r1 = poly_divmod(a, f, p).second;
  Poly t0, t1{1};
  while (!r1.empty()) {
    auto [quot, rem] = poly_divmod(r0, r1, p);
    Poly t2 = poly_sub(t0, poly_mul(quot, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw InvalidArgument("element is not invertible modulo f");
  const std::uint64_t c = inv_mod_prime(r0[0], p);
  for (auto& v : t0) v = mulmod(v, c, p);
  trim(t0);
  return t0;
}

}  // namespace

GaloisRing::GaloisRing(std::uint64_t p, unsigned s, unsigned n) : p_(p), s_(s), n_(n) {
  if (!detail::is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (s < 1) throw InvalidArgument("s must be >= 1");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  q_ = detail::ipow(p, s, "ring characteristic");
  additive_ = GroupSpec(std::vector<std::uint64_t>(n, q_));
  detail::ipow(p, n, "residue field size");

  // Smallest candidate in lexicographic order of (c_0, ..., c_{n-1}), c_0 != 0.
  const std::uint64_t count = detail::ipow(p, n);
  Poly f(n + 1, 0);
  bool found = false;
  for (std::uint64_t idx = 0; idx < count && !found; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned i = n; i-- > 0;) {
      f[i] = rest % p;
      rest /= p;
    }
    f[n] = 1;
    if (f[0] == 0) continue;
    found = irreducible(f, p);
  }
  if (!found) throw std::logic_error("no irreducible polynomial found");
  f_ = f;
}

void GaloisRing::require(const RingElement& a) const {
  if (!contains(a)) {
    throw InvalidArgument("ring element does not belong to GR(" + std::to_string(q_) + "," +
                          std::to_string(n_) + ")");
  }
}

bool GaloisRing::contains(const RingElement& a) const noexcept {
  if (a.coeffs.size() != n_) return false;
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [&](std::uint64_t c) { return c < q_; });
}

RingElement GaloisRing::one() const { return constant(1); }

RingElement GaloisRing::constant(std::uint64_t c) const {
  RingElement r = zero();
  r.coeffs[0] = c % q_;
  return r;
}

RingElement GaloisRing::add(const RingElement& a, const RingElement& b) const {
  require(a);
  require(b);
  RingElement r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = addmod(a.coeffs[i], b.coeffs[i], q_);
  return r;
}

RingElement GaloisRing::sub(const RingElement& a, const RingElement& b) const {
  require(a);
  require(b);
  RingElement r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = submod(a.coeffs[i], b.coeffs[i], q_);
  return r;
}

RingElement GaloisRing::neg(const RingElement& a) const { return sub(zero(), a); }

RingElement GaloisRing::mul(const RingElement& a, const RingElement& b) const {
  require(a);
  require(b);
  std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      prod[i + j] = addmod(prod[i + j], mulmod(a.coeffs[i], b.coeffs[j], q_), q_);
    }
  }
  for (std::size_t d = prod.size(); d-- > n_;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    // x^n = -(f_0 + ... + f_{n-1} x^{n-1})
    for (unsigned i = 0; i < n_; ++i) {
      const std::size_t t = d - n_ + i;
      prod[t] = submod(prod[t], mulmod(c, f_[i], q_), q_);
    }
    prod[d] = 0;
  }
  prod.resize(n_);
  return RingElement{prod};
}

RingElement GaloisRing::pow(const RingElement& a, std::uint64_t k) const {
  RingElement r = one();
  RingElement base = a;
  while (k > 0) {
    if (k & 1U) r = mul(r, base);
    k >>= 1U;
    if (k > 0) base = mul(base, base);
  }
  return r;
}

bool GaloisRing::is_unit(const RingElement& a) const {
  require(a);
  return std::any_of(a.coeffs.begin(), a.coeffs.end(), [&](std::uint64_t c) { return c % p_ != 0; });
}

RingElement GaloisRing::inverse(const RingElement& a) const {
  if (!is_unit(a)) throw InvalidArgument("ring element is not a unit");
  Poly abar(n_);
  for (unsigned i = 0; i < n_; ++i) abar[i] = a.coeffs[i] % p_;
  trim(abar);
  Poly fbar(f_.begin(), f_.end());
  for (auto& c : fbar) c %= p_;
  Poly inv = poly_inverse(abar, fbar, p_);
  RingElement b = zero();
  for (std::size_t i = 0; i < inv.size(); ++i) b.coeffs[i] = inv[i];

  const RingElement two = constant(2);
  const RingElement id = one();
  for (int iter = 0; iter < 70; ++iter) {
    const RingElement ab = mul(a, b);
    if (ab == id) return b;
    b = mul(b, sub(two, ab));
  }
  throw std::logic_error("Hensel refinement did not converge");
}

std::uint64_t GaloisRing::index(const RingElement& a) const {
  return additive_.index(to_group_element(a));
}

RingElement GaloisRing::element(std::uint64_t index) const {
  return from_group_element(additive_.element(index));
}

GroupElement GaloisRing::to_group_element(const RingElement& a) const {
  require(a);
  return GroupElement{a.coeffs};
}

RingElement GaloisRing::from_group_element(const GroupElement& a) const {
  if (!additive_.contains(a)) throw InvalidArgument("group element not in " + additive_.to_string());
  return RingElement{a.coords};
}

TeichmullerSystem teichmuller(const GaloisRing& ring) {
  const std::uint64_t p = ring.p();
  const unsigned n = ring.n();
  const std::uint64_t field_size = detail::ipow(p, n);
  const std::uint64_t unit_order = field_size - 1;
  const auto primes = detail::prime_factors(unit_order);

  Poly fbar(ring.modulus().begin(), ring.modulus().end());
  for (auto& c : fbar) c %= p;

  // First primitive element of the residue field in index order.
  RingElement u = ring.zero();
  bool found = false;
  for (std::uint64_t idx = 1; idx < field_size && !found; ++idx) {
    Poly cand(n);
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < n; ++i) {
      cand[i] = rest % p;
      rest /= p;
    }
    trim(cand);
    bool primitive = true;
    for (auto r : primes) {
      if (poly_powmod(cand, unit_order / r, fbar, p) == Poly{1}) {
        primitive = false;
        break;
      }
    }
    if (unit_order == 1 || primitive) {
      for (std::size_t i = 0; i < cand.size(); ++i) u.coeffs[i] = cand[i];
      found = true;
    }
  }
  if (!found) throw std::logic_error("no primitive element in residue field");

  // xi = u^{p^{(s-1)n}} by repeated p-th powers.
  RingElement xi = u;
  for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(ring.s() - 1) * n; ++k) xi = ring.pow(xi, p);

  TeichmullerSystem out;
  out.xi = xi;
  out.elements.reserve(field_size);
  out.elements.push_back(ring.zero());
  RingElement cur = ring.one();
  for (std::uint64_t i = 0; i < unit_order; ++i) {
    out.elements.push_back(cur);
    cur = ring.mul(cur, xi);
  }

  if (cur != ring.one()) throw std::logic_error("Teichmuller generator has wrong order");
  for (auto r : primes) {
    if (ring.pow(xi, unit_order / r) == ring.one()) throw std::logic_error("Teichmuller generator order too small");
  }
  // Distinct residues mod p is equivalent to pairwise unit differences.
  std::vector<std::vector<std::uint64_t>> residues;
  residues.reserve(out.elements.size());
  for (const auto& t : out.elements) {
    std::vector<std::uint64_t> r(n);
    for (unsigned i = 0; i < n; ++i) r[i] = t.coeffs[i] % p;
    residues.push_back(std::move(r));
  }
  std::sort(residues.begin(), residues.end());
  if (std::adjacent_find(residues.begin(), residues.end()) != residues.end()) {
    throw std::logic_error("Teichmuller system is not a transversal of R/pR");
  }
  return out;
}

}  // namespace basisforge
