#include "basisforge/groups.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "basisforge/error.hpp"
#include "number_theory.hpp"

namespace basisforge {

namespace {

using u128 = unsigned __int128;

void require_member(const GroupSpec& g, const GroupElement& a) {
  if (a.coords.size() != g.rank()) {
    throw InvalidArgument("element has " + std::to_string(a.coords.size()) +
                          " coordinates, group " + g.to_string() + " has rank " +
                          std::to_string(g.rank()));
  }
  if (!g.contains(a)) throw InvalidArgument("element coordinate out of range for " + g.to_string());
}

}  // namespace

std::uint64_t checked_cap(const std::string& what, std::uint64_t size, const Limits& limits) {
  if (size > limits.cap) throw CapExceeded(what, size, limits.cap);
  return size;
}

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec::GroupSpec(std::vector<std::uint64_t> moduli) : moduli_(std::move(moduli)) {
  order_ = 1;
  for (auto m : moduli_) {
    if (m < 2) throw InvalidArgument("modulus " + std::to_string(m) + " < 2");
    if (order_ > std::numeric_limits<std::uint64_t>::max() / m) {
      throw InvalidArgument("group order overflows 64 bits");
    }
    order_ *= m;
  }
}

bool GroupSpec::contains(const GroupElement& a) const noexcept {
  if (a.coords.size() != moduli_.size()) return false;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (a.coords[i] >= moduli_[i]) return false;
  }
  return true;
}

std::uint64_t GroupSpec::index(const GroupElement& a) const {
  require_member(*this, a);
  std::uint64_t idx = 0;
  std::uint64_t radix = 1;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    idx += a.coords[i] * radix;
    radix *= moduli_[i];
  }
  return idx;
}

GroupElement GroupSpec::element(std::uint64_t index) const {
  if (index >= order_) {
    throw InvalidArgument("index " + std::to_string(index) + " out of range for " + to_string());
  }
  GroupElement a{std::vector<std::uint64_t>(moduli_.size())};
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    a.coords[i] = index % moduli_[i];
    index /= moduli_[i];
  }
  return a;
}

std::string GroupSpec::to_string() const {
  if (moduli_.empty()) return "trivial";
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < moduli_.size()) {
    std::size_t j = i;
    while (j < moduli_.size() && moduli_[j] == moduli_[i]) ++j;
    if (!first) out << 'x';
    first = false;
    out << 'Z' << moduli_[i];
    if (j - i > 1) out << '^' << (j - i);
    i = j;
  }
  return out.str();
}

GroupSpec parse_group_spec(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "trivial") return GroupSpec{};
  if (text.empty()) throw InvalidArgument("empty group spec");

  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> InvalidArgument {
    return InvalidArgument("malformed group spec '" + std::string(text) + "' at offset " +
                           std::to_string(pos) + ": " + why +
                           " (grammar: factor (\"x\" factor)*, factor = Z<int>[^<int>])");
  };
  auto read_int = [&]() -> std::uint64_t {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc{} || ptr == text.data() + pos) throw fail("expected integer");
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
  };

  std::vector<std::uint64_t> moduli;
  while (true) {
    if (pos >= text.size() || text[pos] != 'Z') throw fail("expected 'Z'");
    ++pos;
    const std::uint64_t modulus = read_int();
    std::uint64_t exponent = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      exponent = read_int();
      if (exponent < 1) throw InvalidArgument("exponent < 1 in group spec '" + std::string(text) + "'");
    }
    if (modulus < 2) throw InvalidArgument("modulus < 2 in group spec '" + std::string(text) + "'");
    if (exponent > 4096) throw InvalidArgument("exponent too large in group spec");
    moduli.insert(moduli.end(), exponent, modulus);
    if (pos == text.size()) break;
    if (text[pos] != 'x') throw fail("expected 'x'");
    ++pos;
  }
  return GroupSpec(std::move(moduli));
}

GroupSpec product(const GroupSpec& lhs, const GroupSpec& rhs) {
  std::vector<std::uint64_t> moduli = lhs.moduli();
  moduli.insert(moduli.end(), rhs.moduli().begin(), rhs.moduli().end());
  return GroupSpec(std::move(moduli));
}

GroupElement concat(const GroupElement& lhs, const GroupElement& rhs) {
  GroupElement out = lhs;
  out.coords.insert(out.coords.end(), rhs.coords.begin(), rhs.coords.end());
  return out;
}

GroupElement add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  require_member(g, a);
  require_member(g, b);
  GroupElement out{std::vector<std::uint64_t>(g.rank())};
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const std::uint64_t m = g.moduli()[i];
    const std::uint64_t s = a.coords[i] + b.coords[i];
    out.coords[i] = (s >= m || s < a.coords[i]) ? s - m : s;
  }
  return out;
}

GroupElement negate(const GroupSpec& g, const GroupElement& a) {
  require_member(g, a);
  GroupElement out{std::vector<std::uint64_t>(g.rank())};
  for (std::size_t i = 0; i < g.rank(); ++i) {
    out.coords[i] = a.coords[i] == 0 ? 0 : g.moduli()[i] - a.coords[i];
  }
  return out;
}

GroupElement subtract(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  return add(g, a, negate(g, b));
}

GroupElement scale(const GroupSpec& g, std::uint64_t k, const GroupElement& a) {
  require_member(g, a);
  GroupElement out{std::vector<std::uint64_t>(g.rank())};
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const std::uint64_t m = g.moduli()[i];
    out.coords[i] = static_cast<std::uint64_t>((static_cast<u128>(k % m) * a.coords[i]) % m);
  }
  return out;
}

std::uint64_t element_order(const GroupSpec& g, const GroupElement& a) {
  require_member(g, a);
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const std::uint64_t m = g.moduli()[i];
    order = std::lcm(order, m / std::gcd(m, a.coords[i]));
  }
  return order;
}

// ---------------------------------------------------------------------------
// Homomorphism

Homomorphism::Homomorphism(GroupSpec source, GroupSpec target, std::vector<GroupElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.rank()) {
    throw InvalidArgument("homomorphism needs one image per source generator");
  }
  for (std::size_t i = 0; i < images_.size(); ++i) {
    require_member(target_, images_[i]);
    if (scale(target_, source_.moduli()[i], images_[i]) != target_.zero()) {
      throw InvalidArgument("homomorphism not well defined: generator " + std::to_string(i) +
                            " of order " + std::to_string(source_.moduli()[i]) +
                            " maps to an element of incompatible order");
    }
  }
}

GroupElement Homomorphism::apply(const GroupElement& a) const {
  require_member(source_, a);
  GroupElement out = target_.zero();
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (a.coords[i] != 0) out = add(target_, out, scale(target_, a.coords[i], images_[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix id(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) { std::swap(m[a], m[b]); }

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// row[target] += factor * row[source]
void add_row(IntMatrix& m, std::size_t target, std::size_t source, const BigInt& factor) {
  for (std::size_t j = 0; j < m[target].size(); ++j) m[target][j] += factor * m[source][j];
}

void add_col(IntMatrix& m, std::size_t target, std::size_t source, const BigInt& factor) {
  for (auto& row : m) row[target] += factor * row[source];
}

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix out(a.size(), std::vector<BigInt>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw InvalidArgument("matrix dimension mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (const auto& row : m) {
    if (row.size() != cols) throw InvalidArgument("ragged matrix");
  }
  SmithForm out{identity_matrix(rows), m, identity_matrix(cols)};
  IntMatrix& d = out.D;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Pivot: smallest nonzero magnitude in the trailing block.
      bool found = false;
      std::size_t pi = t, pj = t;
      BigInt best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (d[i][j] == 0) continue;
          BigInt mag = abs(d[i][j]);
          if (!found || mag < best) {
            found = true;
            best = mag;
            pi = i;
            pj = j;
          }
        }
      }
      if (!found) return out;

      swap_rows(d, t, pi);
      swap_rows(out.U, t, pi);
      swap_cols(d, t, pj);
      swap_cols(out.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        BigInt q = d[i][t] / d[t][t];
        add_row(d, i, t, -q);
        add_row(out.U, i, t, -q);
        if (d[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        BigInt q = d[t][j] / d[t][t];
        add_col(d, j, t, -q);
        add_col(out.V, j, t, -q);
        if (d[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold any offending row into row t and go again.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (d[i][j] % d[t][t] != 0) {
            add_row(d, t, i, 1);
            add_row(out.U, t, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : out.U[t]) x = -x;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quotients

GroupElement QuotientData::project(const GroupElement& a) const {
  require_member(ambient_, a);
  GroupElement q{std::vector<std::uint64_t>(quotient_.rank(), 0)};
  for (std::size_t k = 0; k < quotient_.rank(); ++k) {
    const std::uint64_t dk = quotient_.moduli()[k];
    u128 acc = 0;
    for (std::size_t j = 0; j < ambient_.rank(); ++j) {
      acc = (acc + static_cast<u128>(a.coords[j] % dk) * projection_[j][k]) % dk;
    }
    q.coords[k] = static_cast<std::uint64_t>(acc);
  }
  return q;
}

GroupElement QuotientData::lift(const GroupElement& q) const {
  return ambient_.element(lift_.at(quotient_.index(q)));
}

QuotientData quotient_by_subgroup(const GroupSpec& g, std::span<const GroupElement> gens,
                                  const Limits& limits) {
  checked_cap("quotient enumeration of " + g.to_string(), g.order(), limits);
  const std::size_t dim = g.rank();
  for (const auto& h : gens) require_member(g, h);

  IntMatrix relations;
  for (const auto& h : gens) {
    std::vector<BigInt> row(dim);
    for (std::size_t j = 0; j < dim; ++j) row[j] = h.coords[j];
    relations.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<BigInt> row(dim, 0);
    row[j] = g.moduli()[j];
    relations.push_back(std::move(row));
  }

  QuotientData out;
  out.ambient_ = g;
  std::vector<std::size_t> positions;
  std::vector<std::uint64_t> factors;
  if (dim > 0) {
    const SmithForm snf = smith_normal_form(relations);
    for (std::size_t k = 0; k < dim; ++k) {
      const BigInt& dk = snf.D[k][k];
      if (dk > 1) {
        positions.push_back(k);
        factors.push_back(static_cast<std::uint64_t>(dk));
      }
    }
    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return factors[a] > factors[b]; });
    std::vector<std::uint64_t> sorted_factors;
    std::vector<std::size_t> sorted_positions;
    for (auto o : order) {
      sorted_factors.push_back(factors[o]);
      sorted_positions.push_back(positions[o]);
    }
    out.quotient_ = GroupSpec(sorted_factors);
    out.projection_.assign(dim, std::vector<std::uint64_t>(sorted_positions.size(), 0));
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = 0; k < sorted_positions.size(); ++k) {
        BigInt w = snf.V[j][sorted_positions[k]] % sorted_factors[k];
        if (w < 0) w += sorted_factors[k];
        out.projection_[j][k] = static_cast<std::uint64_t>(w);
      }
    }
  }

  constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();
  out.lift_.assign(out.quotient_.order(), kUnset);
  std::uint64_t remaining = out.quotient_.order();
  for (std::uint64_t idx = 0; idx < g.order() && remaining > 0; ++idx) {
    const std::uint64_t q = out.quotient_.index(out.project(g.element(idx)));
    if (out.lift_[q] == kUnset) {
      out.lift_[q] = idx;
      --remaining;
    }
  }
  if (remaining != 0) throw std::logic_error("quotient projection is not surjective");
  return out;
}

std::vector<std::uint64_t> subgroup_closure(const GroupSpec& g, std::span<const GroupElement> gens,
                                            const Limits& limits) {
  checked_cap("subgroup closure in " + g.to_string(), g.order(), limits);
  for (const auto& h : gens) require_member(g, h);
  std::vector<char> seen(g.order(), 0);
  std::vector<std::uint64_t> frontier{0};
  seen[0] = 1;
  std::vector<std::uint64_t> members{0};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto idx : frontier) {
      const GroupElement a = g.element(idx);
      for (const auto& h : gens) {
        const std::uint64_t s = g.index(add(g, a, h));
        if (!seen[s]) {
          seen[s] = 1;
          members.push_back(s);
          next.push_back(s);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return members;
}

GroupSpec invariant_factors(const GroupSpec& g) {
  if (g.trivial()) return g;
  IntMatrix diag(g.rank(), std::vector<BigInt>(g.rank(), 0));
  for (std::size_t i = 0; i < g.rank(); ++i) diag[i][i] = g.moduli()[i];
  const SmithForm snf = smith_normal_form(diag);
  std::vector<std::uint64_t> factors;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (snf.D[i][i] > 1) factors.push_back(static_cast<std::uint64_t>(snf.D[i][i]));
  }
  std::sort(factors.rbegin(), factors.rend());
  return GroupSpec(factors);
}

// ---------------------------------------------------------------------------
// Black-box groups

std::uint64_t SpecModel::op(std::uint64_t a, std::uint64_t b) const {
  return spec_.index(add(spec_, spec_.element(a), spec_.element(b)));
}

std::uint64_t SpecModel::inverse(std::uint64_t a) const {
  return spec_.index(negate(spec_, spec_.element(a)));
}

std::uint64_t power(const FiniteGroupModel& model, std::uint64_t a, std::uint64_t k) {
  std::uint64_t result = model.identity();
  std::uint64_t base = a;
  while (k > 0) {
    if (k & 1U) result = model.op(result, base);
    k >>= 1U;
    if (k > 0) base = model.op(base, base);
  }
  return result;
}

namespace {

std::uint64_t order_with_primes(const FiniteGroupModel& model, std::uint64_t a,
                                std::uint64_t group_order, const std::vector<std::uint64_t>& primes) {
  const std::uint64_t e = model.identity();
  std::uint64_t ord = group_order;
  for (auto p : primes) {
    while (ord % p == 0 && power(model, a, ord / p) == e) ord /= p;
  }
  return ord;
}

// Smallest d with power(a, d) in the subgroup flagged by `member`; d divides `ord`.
std::uint64_t relative_order(const FiniteGroupModel& model, std::uint64_t a, std::uint64_t ord,
                             const std::vector<std::uint64_t>& primes,
                             const std::vector<std::int64_t>& member) {
  std::uint64_t d = ord;
  for (auto p : primes) {
    while (d % p == 0 && member[power(model, a, d / p)] >= 0) d /= p;
  }
  return d;
}

[[noreturn]] void throw_non_abelian_or(const FiniteGroupModel& model, const std::string& fallback) {
  const std::uint64_t n = model.order();
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = a + 1; b < n; ++b) {
      if (model.op(a, b) != model.op(b, a)) throw NonAbelian(a, b);
    }
  }
  throw std::logic_error(fallback);
}

}  // namespace

std::uint64_t element_order(const FiniteGroupModel& model, std::uint64_t a) {
  return order_with_primes(model, a, model.order(), detail::prime_factors(model.order()));
}

OrderCensus order_census(const FiniteGroupModel& model, const Limits& limits) {
  const std::uint64_t n = checked_cap("order census", model.order(), limits);
  const auto primes = detail::prime_factors(n);
  OrderCensus census;
  for (std::uint64_t a = 0; a < n; ++a) ++census[order_with_primes(model, a, n, primes)];
  return census;
}

OrderCensus order_census(const GroupSpec& g, const Limits& limits) {
  checked_cap("order census", g.order(), limits);
  OrderCensus census;
  for (std::uint64_t idx = 0; idx < g.order(); ++idx) ++census[element_order(g, g.element(idx))];
  return census;
}

Decomposition black_box_decompose(const FiniteGroupModel& model, const Limits& limits) {
  const std::uint64_t n = checked_cap("black-box decomposition", model.order(), limits);
  const std::uint64_t e = model.identity();
  const auto primes = detail::prime_factors(n);

  if (n <= 4096) {
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = a + 1; b < n; ++b) {
        if (model.op(a, b) != model.op(b, a)) throw NonAbelian(a, b);
      }
    }
  }

  std::vector<std::uint64_t> orders(n);
  for (std::uint64_t a = 0; a < n; ++a) orders[a] = order_with_primes(model, a, n, primes);

  std::vector<std::uint64_t> factors;
  std::vector<std::uint64_t> gens;
  std::vector<std::uint64_t> label_of{e};     // spec index -> label for the current subgroup
  std::vector<std::int64_t> member(n, -1);  // label -> spec index, -1 outside the subgroup
  member[e] = 0;

  while (label_of.size() < n) {
    std::uint64_t best = e;
    std::uint64_t best_order = 1;
    for (std::uint64_t a = 0; a < n; ++a) {
      if (member[a] >= 0 || orders[a] <= best_order) continue;
      const std::uint64_t d = relative_order(model, a, orders[a], primes, member);
      if (d > best_order) {
        best_order = d;
        best = a;
      }
    }
    if (best_order == 1) throw std::logic_error("decomposition stalled");

    // m*b lies in the current subgroup; subtract (c_i/m) a_i to split the factor off.
    const std::uint64_t m = best_order;
    const std::uint64_t hit = static_cast<std::uint64_t>(member[power(model, best, m)]);
    std::uint64_t adjusted = best;
    std::uint64_t rest = hit;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::uint64_t c = rest % factors[i];
      rest /= factors[i];
      if (c % m != 0) throw_non_abelian_or(model, "decomposition: coefficient not divisible");
      if (c != 0) adjusted = model.op(adjusted, power(model, model.inverse(gens[i]), c / m));
    }
    if (power(model, adjusted, m) != e) throw_non_abelian_or(model, "decomposition: bad lift order");

    const std::size_t old_size = label_of.size();
    std::vector<std::uint64_t> extended(old_size * m);
    std::uint64_t step = e;
    for (std::uint64_t j = 0; j < m; ++j) {
      for (std::size_t h = 0; h < old_size; ++h) {
        const std::uint64_t label = model.op(label_of[h], step);
        const std::size_t idx = h + old_size * j;
        if (j > 0 && member[label] >= 0) throw_non_abelian_or(model, "decomposition: collision");
        member[label] = static_cast<std::int64_t>(idx);
        extended[idx] = label;
      }
      step = model.op(step, adjusted);
    }
    label_of = std::move(extended);
    factors.push_back(m);
    gens.push_back(adjusted);
  }

  Decomposition out;
  out.spec = GroupSpec(factors);
  out.generators = gens;
  out.label_of = label_of;
  out.index_of.assign(n, 0);
  for (std::uint64_t idx = 0; idx < n; ++idx) out.index_of[label_of[idx]] = idx;

  // Certify: generators are central and translation by each generator is the
  // coordinate shift, which makes the bijection a homomorphism.
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    const std::uint64_t label = label_of[idx];
    const GroupElement x = out.spec.element(idx);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::uint64_t shifted = model.op(label, gens[i]);
      if (shifted != model.op(gens[i], label)) throw NonAbelian(label, gens[i]);
      GroupElement unit = out.spec.zero();
      unit.coords[i] = 1;
      if (out.index_of[shifted] != out.spec.index(add(out.spec, x, unit))) {
        throw std::logic_error("decomposition: isomorphism check failed");
      }
    }
  }
  return out;
}

namespace {

class SubgroupModel final : public FiniteGroupModel {
 public:
  SubgroupModel(const GroupSpec& g, std::vector<std::uint64_t> members)
      : g_(g), members_(std::move(members)) {}

  std::uint64_t order() const override { return members_.size(); }
  std::uint64_t identity() const override { return 0; }  // members_ is sorted; index 0 is zero
  std::uint64_t op(std::uint64_t a, std::uint64_t b) const override {
    return locate(add(g_, element(a), element(b)));
  }
  std::uint64_t inverse(std::uint64_t a) const override { return locate(negate(g_, element(a))); }

  GroupElement element(std::uint64_t label) const { return g_.element(members_[label]); }

 private:
  std::uint64_t locate(const GroupElement& x) const {
    const auto it = std::lower_bound(members_.begin(), members_.end(), g_.index(x));
    return static_cast<std::uint64_t>(it - members_.begin());
  }

  const GroupSpec& g_;
  std::vector<std::uint64_t> members_;
};

}  // namespace

Homomorphism subgroup_embedding(const GroupSpec& g, std::span<const GroupElement> gens,
                                const Limits& limits) {
  SubgroupModel sub(g, subgroup_closure(g, gens, limits));
  const Decomposition dec = black_box_decompose(sub, limits);
  std::vector<GroupElement> images;
  for (auto label : dec.generators) images.push_back(sub.element(label));
  return Homomorphism(dec.spec, g, std::move(images));
}

}  // namespace basisforge
