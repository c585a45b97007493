#include "basisforge/admissibility.hpp"

#include <cstdio>
#include <map>

#include "basisforge/error.hpp"
#include "number_theory.hpp"
#include "parallel.hpp"

namespace basisforge {

std::uint64_t TwoGroupShape::large_even() const {
  std::uint64_t total = 0;
  for (const auto& [s, u] : even_part) {
    if (s >= 3) total += u;
  }
  return total;
}

std::uint64_t TwoGroupShape::odd_total() const {
  std::uint64_t total = 0;
  for (const auto& [r, v] : odd_part) total += v;
  return total;
}

std::uint64_t TwoGroupShape::log_order() const {
  std::uint64_t e = v;
  for (const auto& [s, u] : even_part) e += 2ULL * s * u;
  for (const auto& [r, w] : odd_part) e += (2ULL * r + 1) * w;
  return e;
}

GroupSpec TwoGroupShape::to_group() const {
  std::map<unsigned, std::uint64_t, std::greater<>> blocks;  // exponent -> multiplicity
  for (const auto& [s, u] : even_part) blocks[2 * s] += u;
  for (const auto& [r, w] : odd_part) blocks[2 * r + 1] += w;
  if (v) blocks[1] += v;
  std::vector<std::uint64_t> moduli;
  for (const auto& [e, m] : blocks) {
    if (e >= 64) throw InvalidArgument("2-group factor 2^" + std::to_string(e) + " does not fit 64 bits");
    moduli.insert(moduli.end(), m, std::uint64_t{1} << e);
  }
  return GroupSpec(moduli);
}

TwoGroupShape shape_of_2group(const GroupSpec& g) {
  std::map<unsigned, std::uint64_t> count;
  const GroupSpec normal = invariant_factors(g);
  for (auto m : normal.moduli()) {
    const int e = detail::exact_log(m, 2);
    if (e < 1) throw InvalidArgument("modulus " + std::to_string(m) + " is not a power of 2");
    ++count[static_cast<unsigned>(e)];
  }
  TwoGroupShape shape;
  for (const auto& [e, c] : count) {
    if (e == 1) {
      shape.v = c;
    } else if (e % 2 == 0) {
      shape.even_part.emplace_back(e / 2, c);
    } else {
      shape.odd_part.emplace_back((e - 1) / 2, c);
    }
  }
  return shape;
}

std::string to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible: return "admissible";
    case Admissibility::WeaklyAdmissibleOnly: return "weakly_admissible_only";
    case Admissibility::Inadmissible: return "inadmissible";
  }
  return "inadmissible";
}

namespace {

Admissibility classify_counts(std::uint64_t large_even, std::uint64_t odd, std::uint64_t v) {
  if (2 * (large_even / 2) + odd >= v) return Admissibility::Admissible;
  if (large_even + odd >= v) return Admissibility::WeaklyAdmissibleOnly;
  return Admissibility::Inadmissible;
}

struct Tally {
  std::uint64_t total = 0;
  std::uint64_t admissible = 0;
  std::uint64_t weakly = 0;
};

void descend(unsigned remaining, unsigned max_part, std::uint64_t large_even, std::uint64_t odd, std::uint64_t v,
             Tally& t) {
  if (remaining == 0) {
    ++t.total;
    switch (classify_counts(large_even, odd, v)) {
      case Admissibility::Admissible: ++t.admissible; [[fallthrough]];
      case Admissibility::WeaklyAdmissibleOnly: ++t.weakly; break;
      case Admissibility::Inadmissible: break;
    }
    return;
  }
  for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
    if (part == 1) {
      descend(0, 1, large_even, odd, v + remaining, t);
    } else {
      descend(remaining - part, part, large_even + (part % 2 == 0 && part >= 6), odd + (part % 2 == 1), v, t);
    }
  }
}

}  // namespace

Admissibility classify(const TwoGroupShape& shape) {
  return classify_counts(shape.large_even(), shape.odd_total(), shape.v);
}

PartitionStats partition_census(unsigned n, const Limits& limits) {
  if (n > kCensusMaxN) {
    throw CapExceeded("partition census", n, kCensusMaxN);
  }
  PartitionStats stats;
  stats.n = n;
  if (n == 0) {
    stats.total = stats.admissible = stats.weakly = 1;
    return stats;
  }
  const unsigned workers = detail::worker_count(limits.threads, n);
  std::vector<Tally> tallies(workers);
  // Shard by the largest part.
  detail::parallel_chunks(workers, n, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const unsigned largest = static_cast<unsigned>(i + 1);
      if (largest == 1) {
        descend(0, 1, 0, 0, n, tallies[w]);
      } else {
        descend(n - largest, largest, largest % 2 == 0 && largest >= 6, largest % 2 == 1, 0, tallies[w]);
      }
    }
  });
  for (const auto& t : tallies) {
    stats.total += t.total;
    stats.admissible += t.admissible;
    stats.weakly += t.weakly;
  }
  return stats;
}

BigInt partition_count(unsigned n) {
  std::vector<BigInt> p(n + 1, 0);
  p[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    BigInt sum = 0;
    for (long k = 1;; ++k) {
      const long g1 = k * (3 * k - 1) / 2;
      if (g1 > static_cast<long>(m)) break;
      const long g2 = k * (3 * k + 1) / 2;
      const BigInt term = p[m - g1] + (g2 <= static_cast<long>(m) ? p[m - g2] : BigInt(0));
      if (k % 2 == 1) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    p[m] = sum;
  }
  return p[n];
}

std::string census_csv_header() { return "n,p_n,weakly,admissible,ratio"; }

std::string census_csv_row(const PartitionStats& stats) {
  char ratio[32];
  const double r = stats.total == 0 ? 0.0 : stats.admissible.convert_to<double>() / stats.total.convert_to<double>();
  std::snprintf(ratio, sizeof ratio, "%.6f", r);
  return std::to_string(stats.n) + "," + stats.total.str() + "," + stats.weakly.str() + "," +
         stats.admissible.str() + "," + ratio;
}

}  // namespace basisforge
