#include "basisforge/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "basisforge/constructions.hpp"
#include "basisforge/error.hpp"
#include "basisforge/verify.hpp"
#include "number_theory.hpp"

namespace basisforge {

namespace {

using u128 = unsigned __int128;

// Smallest m >= lo with pred(m).
template <typename Pred>
std::uint64_t least(std::uint64_t lo, Pred pred) {
  std::uint64_t hi = std::max<std::uint64_t>(lo, 1);
  while (!pred(hi)) hi *= 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

BigInt big_pow(std::uint64_t p, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= p;
  return r;
}

BigInt ceil_sqrt(const BigInt& m) {
  BigInt r = boost::multiprecision::sqrt(m);
  if (r * r < m) ++r;
  return r;
}

bool pcp_valid(std::uint64_t p, unsigned s, unsigned n, unsigned k, std::string& why) {
  const BigInt field = big_pow(p, n);
  const BigInt order = big_pow(p, static_cast<std::uint64_t>(s) * n);
  if (k < 2 || BigInt(k) > field || BigInt(2 * k) > order) {
    why = "line factor (p=" + std::to_string(p) + ",s=" + std::to_string(s) + ",n=" + std::to_string(n) +
          ",k=" + std::to_string(k) + ") violates 2 <= k <= min(p^n, p^{sn}/2)";
    return false;
  }
  return true;
}

struct Formula {
  std::string source;
  std::uint64_t g_max;
  unsigned min_n;
  bool odd_only;
};

}  // namespace

std::uint64_t lower_bound(std::uint64_t group_order, std::uint64_t g, Kind kind) {
  if (g == 0) return 0;
  const u128 n = group_order;
  if (kind == Kind::Additive) {
    if (g == 1) return least(1, [&](std::uint64_t m) { return u128(m) * (m + 1) >= 2 * n; });
    return least(1, [&](std::uint64_t m) { return u128(m) * m >= u128(g) * n; });
  }
  return least(1, [&](std::uint64_t m) { return u128(m) * (m - 1) >= u128(g) * (n - 1); });
}

Surd half_power(std::uint64_t p, std::uint64_t e) {
  if (e % 2 == 0) return Surd{big_pow(p, e / 2), 0, 0};
  return Surd{0, big_pow(p, e / 2), BigInt(p)};
}

Surd operator+(const Surd& x, const BigInt& k) { return Surd{x.a + k, x.b, x.c}; }

Surd operator*(const Surd& x, const BigInt& k) {
  if (x.b == 0) return Surd{x.a * k, 0, 0};
  return Surd{x.a * k, x.b * k, x.c};
}

BigInt ceil(const Surd& x) {
  if (x.b == 0 || x.c == 0) return x.a;
  return x.a + ceil_sqrt(x.b * x.b * x.c);
}

std::string to_string(const Surd& x) {
  std::ostringstream out;
  if (x.b == 0 || x.c == 0) {
    out << x.a;
  } else if (x.a == 0) {
    out << x.b << "*sqrt(" << x.c << ")";
  } else {
    out << x.a << " + " << x.b << "*sqrt(" << x.c << ")";
  }
  return out.str();
}

std::vector<UpperBound> appendix_upper_bounds(std::uint64_t p, unsigned s, unsigned n, std::uint64_t g,
                                              Kind kind) {
  if (!detail::is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (s < 1 || n < 1) throw InvalidArgument("s and n must be >= 1");
  if (g < 1) throw InvalidArgument("g must be >= 1");
  if (s == 1 && n == 1 && (p == 2 || p == 3)) {
    throw HypothesisViolation("Z_" + std::to_string(p) + "^2 is an excluded small case; use search-min");
  }

  const BigInt ps = big_pow(p, s);
  auto block = [&](unsigned m) { return big_pow(p, static_cast<std::uint64_t>(s) * m) - 1; };
  auto parabola_value = [&](unsigned m) {
    return half_power(p, static_cast<std::uint64_t>(2 * s - 1) * m) * 9 +
           big_pow(p, static_cast<std::uint64_t>(s) * m);
  };

  std::vector<Formula> table;
  if (kind == Kind::Additive) {
    table = {{"pcp(k=2)", 2, 1, false},
             {"pcp(k=3)", 6, 1, false},
             {"pcp(1,k=2)*pcp(n-1,k=2)", 4, 2, false},
             {"pcp(1,k=3)*pcp(n-1,k=2)", 6, 2, false},
             {"pcp(2,k=3)*pcp(n-2,k=2)", 6, 3, false},
             {"pcp(1,k=2)^2*pcp(n-2,k=2)", 6, 3, false}};
  } else {
    table = {{"parabola", 1, 1, true},
             {"pcp(k=2)", 2, 1, true},
             {"pcp(k=3)", 6, 1, true},
             {"pcp(1,k=2)*parabola(n-1)", 2, 2, true},
             {"pcp(1,k=2)*pcp(n-1,k=2)", 4, 2, true},
             {"pcp(1,k=3)*pcp(n-1,k=2)", 6, 2, true},
             {"pcp(2,k=3)*pcp(n-2,k=2)", 6, 3, true},
             {"pcp(1,k=2)^2*pcp(n-2,k=2)", 6, 3, true}};
  }

  std::vector<UpperBound> out;
  for (const auto& f : table) {
    if (g > f.g_max) continue;
    UpperBound b{f.source, kind, f.g_max, f.min_n, {}, 0, 0, {}, true, ""};
    if (f.odd_only && p == 2) {
      b.applicable = false;
      b.reason = "difference formulas need odd p";
      out.push_back(std::move(b));
      continue;
    }
    if (n < f.min_n) {
      b.applicable = false;
      b.reason = "needs n >= " + std::to_string(f.min_n);
      out.push_back(std::move(b));
      continue;
    }
    const std::string& src = f.source;
    if (src == "parabola") {
      b.value = parabola_value(n);
      b.factors = {{"parabola", p, s, n, 0}};
    } else if (src == "pcp(k=2)") {
      b.value = Surd{2 * block(n), 0, 0};
      b.factors = {{"pcp", p, s, n, 2}};
    } else if (src == "pcp(k=3)") {
      b.value = Surd{3 * block(n), 0, 0};
      b.factors = {{"pcp", p, s, n, 3}};
    } else if (src == "pcp(1,k=2)*parabola(n-1)") {
      b.value = parabola_value(n - 1) * (2 * (ps - 1));
      b.factors = {{"pcp", p, s, 1, 2}, {"parabola", p, s, n - 1, 0}};
    } else if (src == "pcp(1,k=2)*pcp(n-1,k=2)") {
      b.value = Surd{4 * (ps - 1) * block(n - 1), 0, 0};
      b.factors = {{"pcp", p, s, 1, 2}, {"pcp", p, s, n - 1, 2}};
    } else if (src == "pcp(1,k=3)*pcp(n-1,k=2)") {
      b.value = Surd{6 * (ps - 1) * block(n - 1), 0, 0};
      b.factors = {{"pcp", p, s, 1, 3}, {"pcp", p, s, n - 1, 2}};
    } else if (src == "pcp(2,k=3)*pcp(n-2,k=2)") {
      b.value = Surd{6 * block(2) * block(n - 2), 0, 0};
      b.factors = {{"pcp", p, s, 2, 3}, {"pcp", p, s, n - 2, 2}};
    } else {
      b.value = Surd{8 * (ps - 1) * (ps - 1) * block(n - 2), 0, 0};
      b.factors = {{"pcp", p, s, 1, 2}, {"pcp", p, s, 1, 2}, {"pcp", p, s, n - 2, 2}};
    }
    b.ceiling = ceil(b.value);
    b.factor_ceiling = 1;
    for (const auto& fr : b.factors) {
      if (fr.family == "pcp") {
        b.factor_ceiling *= BigInt(fr.k) * (big_pow(p, static_cast<std::uint64_t>(s) * fr.n) - 1);
      } else {
        b.factor_ceiling *= ceil(parabola_value(fr.n));
      }
      std::string why;
      if (fr.family == "pcp" && b.applicable && !pcp_valid(p, s, fr.n, fr.k, why)) {
        b.applicable = false;
        b.reason = why;
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

BasisSet realize(const UpperBound& bound, Kind kind, const Limits& limits) {
  if (!bound.applicable) throw HypothesisViolation(bound.source + " is not applicable: " + bound.reason);
  std::optional<BasisSet> acc;
  for (const auto& f : bound.factors) {
    BasisSet part = f.family == "pcp" ? pcp_lines(f.p, f.s, f.n, f.k, kind, limits)
                                      : parabola_basis_odd(f.p, f.s, f.n, true, limits);
    if (part.kind() != kind) part = part.with_kind(kind);
    acc = acc ? product_compose(*acc, part) : part;
  }
  if (!acc) throw InvalidArgument("bound has no factors");
  Provenance prov = acc->provenance();
  prov.labels["source"] = bound.source;
  return BasisSet(acc->group(), acc->elements(), kind, acc->g_claimed(), std::move(prov));
}

BoundReport bound_report(const GroupSpec& group, std::uint64_t g, Kind kind, const Limits& limits) {
  if (g < 1) throw InvalidArgument("g must be >= 1");
  BoundReport r{group, g, kind, lower_bound(group.order(), g, kind), {}, {}, {}, {}, "", {}, ""};
  if (group.trivial()) {
    r.lower = 1;
    r.best_upper = BigInt(1);
    r.best_sources = {"trivial"};
    r.achieved = 1;
    r.achieved_source = "trivial";
    r.exhaustive = 1;
    return r;
  }

  const auto& mods = group.moduli();
  const bool uniform = std::all_of(mods.begin(), mods.end(), [&](std::uint64_t m) { return m == mods[0]; });
  const auto pf = detail::factor(mods[0]);
  if (uniform && mods.size() % 2 == 0 && pf.size() == 1 && g <= 6) {
    try {
      r.uppers = appendix_upper_bounds(pf[0].p, pf[0].e, static_cast<unsigned>(mods.size() / 2), g, kind);
    } catch (const HypothesisViolation& e) {
      r.note = e.what();
    }
  }
  for (const auto& u : r.uppers) {
    if (!u.applicable) continue;
    if (!r.best_upper || u.ceiling < *r.best_upper) {
      r.best_upper = u.ceiling;
      r.best_sources.clear();
    }
    if (u.ceiling == *r.best_upper) r.best_sources.push_back(u.source);
  }

  auto consider = [&](std::uint64_t size, const std::string& source) {
    if (!r.achieved || size < *r.achieved) {
      r.achieved = size;
      r.achieved_source = source;
    }
  };

  if (group.order() <= kExhaustiveCap && g <= group.order()) {
    const ExhaustiveResult ex = exhaustive_min(group, g, kind, limits);
    r.exhaustive = ex.size;
    consider(ex.size, "exhaustive");
  }

  std::vector<const UpperBound*> ordered;
  for (const auto& u : r.uppers) {
    if (u.applicable) ordered.push_back(&u);
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const UpperBound* a, const UpperBound* b) { return a->ceiling < b->ceiling; });
  if (!ordered.empty() && group.order() <= limits.cap) {
    const UpperBound& u = *ordered.front();
    BasisSet b = realize(u, kind, limits);
    b = coerce_coordinates(b, group);
    if (check_g_basis(b, kind, g, limits).passed) consider(b.size(), u.source);
  }
  if (group.order() <= 1024 && g <= group.order()) {
    const BasisSet b = greedy_basis(group, g, kind, limits);
    if (check_g_basis(b, kind, g, limits).passed) consider(b.size(), "greedy");
  }
  return r;
}

std::string bound_csv_header() { return "group,g,kind,lower,best_upper,upper_sources,achieved,achieved_source"; }

std::string bound_csv_row(const BoundReport& report) {
  std::ostringstream out;
  std::string sources;
  for (const auto& s : report.best_sources) {
    if (!sources.empty()) sources += ';';
    sources += s;
  }
  out << report.group.to_string() << ',' << report.g << ',' << to_string(report.kind) << ',' << report.lower
      << ',';
  if (report.best_upper) out << *report.best_upper;
  out << ',' << sources << ',';
  if (report.achieved) out << *report.achieved;
  out << ',' << report.achieved_source;
  return out.str();
}

}  // namespace basisforge
