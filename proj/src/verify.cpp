#include "basisforge/verify.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "basisforge/bounds.hpp"
#include "basisforge/error.hpp"
#include "parallel.hpp"

namespace basisforge {

namespace {

std::atomic<std::uint64_t> g_issued{0};
std::atomic<std::uint64_t> g_passed{0};
std::atomic<std::uint64_t> g_floor_checked{0};

template <typename Combine>
std::vector<std::uint64_t> accumulate(std::uint64_t order, std::uint64_t rows, const Limits& limits,
                                      Combine&& combine_row) {
  const unsigned workers = detail::worker_count(limits.threads, rows);
  std::vector<std::vector<std::uint64_t>> partial(workers);
  detail::parallel_chunks(workers, rows, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& counts = partial[w];
    counts.assign(order, 0);
    for (std::uint64_t i = begin; i < end; ++i) combine_row(i, counts);
  });
  std::vector<std::uint64_t> total = std::move(partial[0]);
  if (total.empty()) total.assign(order, 0);
  for (unsigned w = 1; w < workers; ++w) {
    for (std::uint64_t x = 0; x < order; ++x) total[x] += partial[w][x];
  }
  return total;
}

BasisCertificate summarize(std::vector<std::uint64_t> const& counts, std::uint64_t size, Kind kind,
                           std::uint64_t g, std::uint64_t order) {
  BasisCertificate cert;
  cert.group_order = order;
  cert.basis_size = size;
  cert.kind = kind;
  cert.g_required = g;
  std::uint64_t best = 0;
  std::uint64_t best_at = 0;
  bool first = true;
  unsigned __int128 total = 0;
  for (std::uint64_t x = 0; x < counts.size(); ++x) {
    ++cert.histogram[counts[x]];
    total += counts[x];
    if (first || counts[x] < best) {
      best = counts[x];
      best_at = x;
      first = false;
    }
  }
  if (total != static_cast<unsigned __int128>(size) * size) {
    throw std::logic_error("representation counts do not sum to |A|^2");
  }
  cert.min_count = best;
  cert.argmin = {best_at};
  cert.passed = best >= g;
  cert.lower_bound = lower_bound(order, std::max<std::uint64_t>(g, 1), kind);
  ++g_issued;
  if (cert.passed) {
    ++g_passed;
    if (g >= 1) {
      if (size < cert.lower_bound) {
        throw std::logic_error("certificate passes below the counting lower bound");
      }
      ++g_floor_checked;
    }
  }
  return cert;
}

}  // namespace

std::vector<std::uint64_t> representation_counts(const GroupSpec& g, std::span<const GroupElement> a,
                                                 Kind kind, const Limits& limits) {
  const std::uint64_t order = checked_cap("representation counts over " + g.to_string(), g.order(), limits);
  for (const auto& x : a) {
    if (!g.contains(x)) throw InvalidArgument("set element does not belong to " + g.to_string());
  }
  const std::size_t rank = g.rank();
  const auto& moduli = g.moduli();
  std::vector<std::uint64_t> radix(rank, 1);
  for (std::size_t i = 1; i < rank; ++i) radix[i] = radix[i - 1] * moduli[i - 1];

  // Coordinates of b (additive) or -b (difference) for the inner loop.
  std::vector<std::vector<std::uint64_t>> second;
  second.reserve(a.size());
  for (const auto& x : a) second.push_back(kind == Kind::Additive ? x.coords : negate(g, x).coords);

  return accumulate(order, a.size(), limits, [&](std::uint64_t i, std::vector<std::uint64_t>& counts) {
    const auto& lhs = a[i].coords;
    for (const auto& rhs : second) {
      std::uint64_t idx = 0;
      for (std::size_t k = 0; k < rank; ++k) {
        std::uint64_t s = lhs[k] + rhs[k];
        if (s >= moduli[k]) s -= moduli[k];
        idx += s * radix[k];
      }
      ++counts[idx];
    }
  });
}

std::vector<std::uint64_t> representation_counts(const FiniteGroupModel& model,
                                                 std::span<const std::uint64_t> a, Kind kind,
                                                 const Limits& limits) {
  const std::uint64_t order = checked_cap("representation counts over model", model.order(), limits);
  std::vector<std::uint64_t> second;
  second.reserve(a.size());
  for (auto x : a) {
    if (x >= order) throw InvalidArgument("label out of range for model");
    second.push_back(kind == Kind::Additive ? x : model.inverse(x));
  }
  return accumulate(order, a.size(), limits, [&](std::uint64_t i, std::vector<std::uint64_t>& counts) {
    for (auto rhs : second) ++counts[model.op(a[i], rhs)];
  });
}

BasisCertificate check_g_basis(const BasisSet& basis, Kind kind, std::uint64_t g, const Limits& limits) {
  const GroupSpec& grp = basis.group();
  const auto& elems = basis.elements();
  const auto counts = representation_counts(grp, elems, kind, limits);

  if (kind == Kind::Difference) {
    for (std::uint64_t x = 0; x < grp.order(); ++x) {
      if (counts[x] != counts[grp.index(negate(grp, grp.element(x)))]) {
        throw std::logic_error("difference counts are not symmetric");
      }
    }
  }
  if (basis.symmetric()) {
    const Kind other = kind == Kind::Additive ? Kind::Difference : Kind::Additive;
    if (representation_counts(grp, elems, other, limits) != counts) {
      throw std::logic_error("symmetric set has differing additive and difference counts");
    }
  }

  BasisCertificate cert = summarize(counts, elems.size(), kind, g, grp.order());
  cert.group = grp.to_string();
  cert.argmin = grp.element(cert.argmin.front()).coords;
  return cert;
}

BasisCertificate check_g_basis(const FiniteGroupModel& model, std::span<const std::uint64_t> a,
                               Kind kind, std::uint64_t g, const Limits& limits) {
  std::vector<std::uint64_t> labels(a.begin(), a.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const auto counts = representation_counts(model, labels, kind, limits);
  if (kind == Kind::Difference) {
    for (std::uint64_t x = 0; x < model.order(); ++x) {
      if (counts[x] != counts[model.inverse(x)]) throw std::logic_error("difference counts are not symmetric");
    }
  }
  BasisCertificate cert = summarize(counts, labels.size(), kind, g, model.order());
  cert.group = "model(order " + std::to_string(model.order()) + ")";
  return cert;
}

RdsResult check_rds(const BasisSet& basis, std::span<const GroupElement> subgroup_gens,
                    std::uint64_t lambda, const Limits& limits) {
  const GroupSpec& grp = basis.group();
  const auto members = subgroup_closure(grp, subgroup_gens, limits);
  std::vector<char> in_n(grp.order(), 0);
  for (auto idx : members) in_n[idx] = 1;
  const auto counts = representation_counts(grp, basis.elements(), Kind::Difference, limits);

  RdsResult out;
  out.subgroup_order = members.size();
  out.lambda = lambda;
  out.passed = true;
  for (std::uint64_t x = 1; x < grp.order(); ++x) {
    const std::uint64_t expected = in_n[x] ? 0 : lambda;
    if (counts[x] != expected) {
      out.passed = false;
      out.witness = grp.element(x).coords;
      out.witness_count = counts[x];
      break;
    }
  }
  return out;
}

CertificateStats certificate_stats() {
  return CertificateStats{g_issued.load(), g_passed.load(), g_floor_checked.load()};
}

}  // namespace basisforge
