#include "basisforge/basisforge.h"

#include <cstring>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "basisforge/admissibility.hpp"
#include "basisforge/bounds.hpp"
#include "basisforge/constructions.hpp"
#include "basisforge/error.hpp"
#include "basisforge/planner.hpp"
#include "basisforge/verify.hpp"
#include "serialize.hpp"

using namespace basisforge;
using io::Json;

struct bf_context {
  Limits limits;
  std::string error;
};

struct bf_basis {
  BasisSet basis;
};

struct bf_certificate {
  BasisCertificate cert;
};

namespace {

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
bf_status guarded(bf_context* ctx, Fn&& fn) {
  if (!ctx) return BF_E_INVALID;
  ctx->error.clear();
  try {
    fn();
    return BF_OK;
  } catch (const CapExceeded& e) {
    ctx->error = e.what();
    return BF_E_CAP;
  } catch (const Unattainable& e) {
    ctx->error = e.what();
    return BF_E_UNATTAINABLE;
  } catch (const HypothesisViolation& e) {
    ctx->error = e.what();
    return BF_E_HYPOTHESIS;
  } catch (const InvalidArgument& e) {
    ctx->error = e.what();
    return BF_E_INVALID;
  } catch (const Json::exception& e) {
    ctx->error = std::string("malformed JSON: ") + e.what();
    return BF_E_INVALID;
  } catch (const std::exception& e) {
    ctx->error = std::string("internal error: ") + e.what();
    return BF_E_INTERNAL;
  } catch (...) {
    ctx->error = "internal error";
    return BF_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " must not be NULL");
}

std::uint64_t need_uint(const Json& req, const char* key) {
  if (!req.contains(key)) throw InvalidArgument(std::string("request needs '") + key + "'");
  const Json& v = req.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw InvalidArgument(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

unsigned need_small(const Json& req, const char* key) {
  const std::uint64_t v = need_uint(req, key);
  if (v > 4096) throw InvalidArgument(std::string("'") + key + "' is too large");
  return static_cast<unsigned>(v);
}

Kind kind_or(const Json& req, Kind fallback) {
  return req.contains("kind") ? parse_kind(req.at("kind").get<std::string>()) : fallback;
}

bool flag(const Json& req, const char* key) {
  if (!req.contains(key)) return false;
  const Json& v = req.at(key);
  return v.is_boolean() ? v.get<bool>() : v.get<std::int64_t>() != 0;
}

BasisSet construct(const Json& req, const Limits& limits) {
  const std::string family = req.at("family").get<std::string>();
  if (family == "parabola") {
    return parabola_basis_odd(need_uint(req, "p"), need_small(req, "s"), need_small(req, "n"), flag(req, "complete"),
                              limits);
  }
  if (family == "t4rds") return teichmuller_rds_basis(need_small(req, "n"), flag(req, "complete"), limits);
  if (family == "star8") return star_basis(need_small(req, "n"), limits).standard;
  if (family == "pcp") {
    return pcp_lines(need_uint(req, "p"), need_small(req, "s"), need_small(req, "n"), need_small(req, "k"),
                     kind_or(req, Kind::Difference), limits);
  }
  if (family == "pcpmulti") {
    return pcp_multi(parse_group_spec(req.at("group").get<std::string>()), need_small(req, "k"),
                     kind_or(req, Kind::Difference), limits);
  }
  if (family == "recursion") {
    const RecursionVariant v =
        req.contains("variant") ? parse_recursion_variant(req.at("variant").get<std::string>()) : RecursionVariant::Z2s_2n;
    return even_power_recursion(need_small(req, "s"), need_small(req, "n"), v, limits);
  }
  if (family == "greedy") {
    return greedy_basis(parse_group_spec(req.at("group").get<std::string>()), need_uint(req, "g"),
                        kind_or(req, Kind::Difference), limits);
  }
  throw InvalidArgument("unknown family '" + family +
                        "' (expected parabola|t4rds|star8|pcp|pcpmulti|recursion|greedy)");
}

}  // namespace

extern "C" {

bf_context* bf_context_new(void) {
  try {
    return new bf_context{};
  } catch (...) {
    return nullptr;
  }
}

void bf_context_free(bf_context* ctx) { delete ctx; }

bf_status bf_context_set_cap(bf_context* ctx, uint64_t cap) {
  return guarded(ctx, [&] {
    if (cap == 0) throw InvalidArgument("cap must be positive");
    ctx->limits.cap = cap;
  });
}

bf_status bf_context_set_threads(bf_context* ctx, unsigned threads) {
  return guarded(ctx, [&] {
    if (threads == 0) throw InvalidArgument("threads must be positive");
    ctx->limits.threads = threads;
  });
}

const char* bf_last_error(const bf_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

const char* bf_status_string(bf_status status) {
  switch (status) {
    case BF_OK: return "ok";
    case BF_E_INVALID: return "invalid argument";
    case BF_E_CAP: return "cap exceeded";
    case BF_E_UNATTAINABLE: return "unattainable";
    case BF_E_HYPOTHESIS: return "hypothesis violated";
    case BF_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void bf_string_free(char* s) { std::free(s); }

bf_status bf_construct(bf_context* ctx, const char* request_json, bf_basis** out) {
  return guarded(ctx, [&] {
    require(request_json, "request");
    require(out, "out");
    *out = new bf_basis{construct(Json::parse(request_json), ctx->limits)};
  });
}

bf_status bf_basis_from_json(bf_context* ctx, const char* json, bf_basis** out) {
  return guarded(ctx, [&] {
    require(json, "json");
    require(out, "out");
    *out = new bf_basis{io::basis_from_json(Json::parse(json))};
  });
}

bf_status bf_basis_to_json(bf_context* ctx, const bf_basis* basis, char** out) {
  return guarded(ctx, [&] {
    require(basis, "basis");
    require(out, "out");
    *out = dup(io::canonical(io::to_json(basis->basis)));
  });
}

size_t bf_basis_size(const bf_basis* basis) { return basis ? basis->basis.size() : 0; }

void bf_basis_free(bf_basis* basis) { delete basis; }

bf_status bf_verify(bf_context* ctx, const bf_basis* basis, uint64_t g, const char* kind, bf_certificate** out) {
  return guarded(ctx, [&] {
    require(basis, "basis");
    require(kind, "kind");
    require(out, "out");
    *out = new bf_certificate{check_g_basis(basis->basis, parse_kind(kind), g, ctx->limits)};
  });
}

int bf_certificate_passed(const bf_certificate* cert) { return cert && cert->cert.passed ? 1 : 0; }

bf_status bf_certificate_to_json(bf_context* ctx, const bf_certificate* cert, char** out) {
  return guarded(ctx, [&] {
    require(cert, "certificate");
    require(out, "out");
    *out = dup(io::canonical(io::to_json(cert->cert)));
  });
}

void bf_certificate_free(bf_certificate* cert) { delete cert; }

bf_status bf_rds_check(bf_context* ctx, const bf_basis* basis, const char* gens_json, uint64_t lambda, int* passed,
                       char** out_json) {
  return guarded(ctx, [&] {
    require(basis, "basis");
    require(gens_json, "subgroup generators");
    require(out_json, "out");
    const GroupSpec& g = basis->basis.group();
    std::vector<GroupElement> gens;
    const Json parsed = Json::parse(gens_json);
    if (!parsed.is_array()) throw InvalidArgument("subgroup generators must be an array of coordinate arrays");
    for (const auto& e : parsed) gens.push_back(io::element_from_json(g, e));
    const RdsResult r = check_rds(basis->basis, gens, lambda, ctx->limits);
    Json j = io::to_json(r);
    j["group"] = g.to_string();
    j["basis_size"] = basis->basis.size();
    if (passed) *passed = r.passed ? 1 : 0;
    *out_json = dup(io::canonical(j));
  });
}

bf_status bf_classify(bf_context* ctx, const char* group, char** out_json) {
  return guarded(ctx, [&] {
    require(group, "group");
    require(out_json, "out");
    const GroupSpec g = parse_group_spec(group);
    const TwoGroupShape shape = shape_of_2group(g);
    const Json j{{"group", g.to_string()},
                 {"log2_order", shape.log_order()},
                 {"shape", io::to_json(shape)},
                 {"verdict", to_string(classify(shape))}};
    *out_json = dup(io::canonical(j));
  });
}

bf_status bf_census(bf_context* ctx, unsigned max_n, char** out_csv) {
  return guarded(ctx, [&] {
    require(out_csv, "out");
    if (max_n < 1) throw InvalidArgument("max-n must be >= 1");
    std::string csv = census_csv_header() + "\n";
    for (unsigned n = 1; n <= max_n; ++n) {
      const PartitionStats s = partition_census(n, ctx->limits);
      if (s.total != partition_count(n)) throw std::logic_error("census total differs from p(n)");
      csv += census_csv_row(s) + "\n";
    }
    *out_csv = dup(csv);
  });
}

bf_status bf_bounds(bf_context* ctx, const char* group, uint64_t g, const char* kind, const char* format,
                    char** out) {
  return guarded(ctx, [&] {
    require(group, "group");
    require(kind, "kind");
    require(out, "out");
    const std::string fmt = format ? format : "json";
    if (fmt != "json" && fmt != "csv") throw InvalidArgument("format must be json or csv");
    const BoundReport r = bound_report(parse_group_spec(group), g, parse_kind(kind), ctx->limits);
    *out = dup(fmt == "csv" ? bound_csv_header() + "\n" + bound_csv_row(r) + "\n" : io::canonical(io::to_json(r)));
  });
}

bf_status bf_search_min(bf_context* ctx, const char* group, uint64_t g, const char* kind, char** out_json) {
  return guarded(ctx, [&] {
    require(group, "group");
    require(kind, "kind");
    require(out_json, "out");
    const GroupSpec grp = parse_group_spec(group);
    const Kind k = parse_kind(kind);
    const ExhaustiveResult r = exhaustive_min(grp, g, k, ctx->limits);
    if (g >= 1 && !check_g_basis(r.witness, k, g, ctx->limits).passed) {
      throw std::logic_error("exhaustive witness failed verification");
    }
    Json j = io::to_json(r);
    j["group"] = grp.to_string();
    j["g"] = g;
    j["kind"] = to_string(k);
    j["lower_bound"] = lower_bound(grp.order(), g, k);
    *out_json = dup(io::canonical(j));
  });
}

bf_status bf_plan(bf_context* ctx, const char* group, const char* theorem, unsigned n, int materialize, int* passed,
                  char** out_json) {
  return guarded(ctx, [&] {
    require(group, "group");
    require(theorem, "theorem");
    require(out_json, "out");
    const DecompositionPlan plan = plan_decomposition(parse_group_spec(group), parse_theorem(theorem), n);
    Json j = io::to_json(plan);
    bool ok = true;
    if (materialize) {
      if (fits(plan, ctx->limits)) {
        const MaterializedPlan m = basisforge::materialize(plan, ctx->limits);
        const BasisCertificate cert = check_g_basis(m.basis, Kind::Difference, 1, ctx->limits);
        ok = cert.passed;
        j["materialized"] = true;
        j["sizes"] = m.sizes;
        j["basis"] = io::to_json(m.basis);
        j["certificate"] = io::to_json(cert);
      } else {
        j["materialized"] = false;
        j["reason"] = "largest step group has order " + plan.max_order.str() + ", above cap " +
                      std::to_string(ctx->limits.cap);
      }
    }
    if (passed) *passed = ok ? 1 : 0;
    *out_json = dup(io::canonical(j));
  });
}

}  // extern "C"
