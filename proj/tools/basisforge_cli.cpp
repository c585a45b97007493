#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "basisforge/basisforge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct CommandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Context = std::unique_ptr<bf_context, decltype(&bf_context_free)>;
using Basis = std::unique_ptr<bf_basis, decltype(&bf_basis_free)>;
using Certificate = std::unique_ptr<bf_certificate, decltype(&bf_certificate_free)>;

void check(bf_context* ctx, bf_status st) {
  if (st != BF_OK) throw CommandError(std::string(bf_status_string(st)) + ": " + bf_last_error(ctx));
}

std::string take(char* s) {
  std::string out = s ? s : "";
  bf_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out + "\"";
}

// "2,0;0,2" or a JSON array.
std::string gens_to_json(const std::string& text) {
  if (!text.empty() && text.front() == '[') return text;
  std::string out = "[";
  std::stringstream groups(text);
  std::string gen;
  bool first = true;
  while (std::getline(groups, gen, ';')) {
    if (!first) out += ',';
    first = false;
    out += "[" + gen + "]";
  }
  return out + "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify additive and difference bases in finite abelian groups"};
  app.require_subcommand(1);

  unsigned threads = 1;
  std::uint64_t cap = 0;
  app.add_option("--threads", threads, "worker threads (results do not depend on this)")->check(CLI::PositiveNumber);
  app.add_option("--cap", cap, "enumeration cap (default 2^20, env BASISFORGE_CAP)");

  // construct
  auto* construct = app.add_subcommand("construct", "build a basis");
  std::string family, kind_c, group_c, variant, out_c;
  std::uint64_t p = 0, s = 0, n_c = 0, k = 0, g_c = 0;
  bool complete = false;
  construct->add_option("--family", family, "parabola|t4rds|star8|pcp|pcpmulti|recursion|greedy")
      ->required()
      ->check(CLI::IsMember({"parabola", "t4rds", "star8", "pcp", "pcpmulti", "recursion", "greedy"}));
  construct->add_option("--p", p);
  construct->add_option("--s", s);
  construct->add_option("--n", n_c);
  construct->add_option("--k", k);
  construct->add_option("--g", g_c);
  construct->add_option("--kind", kind_c, "add|diff");
  construct->add_option("--group", group_c, "group spec, e.g. Z5xZ7");
  construct->add_option("--variant", variant, "Z2_2s_n|Z2s_2n");
  construct->add_flag("--complete", complete);
  construct->add_option("--out", out_c, "output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "certify a basis");
  std::string basis_v, kind_v;
  std::uint64_t g_v = 0;
  verify->add_option("--basis", basis_v)->required();
  verify->add_option("--g", g_v)->required();
  verify->add_option("--kind", kind_v, "add|diff")->required();

  // rds-check
  auto* rds = app.add_subcommand("rds-check", "check the relative difference set law");
  std::string basis_r, gens_r;
  std::uint64_t lambda = 1;
  rds->add_option("--basis", basis_r)->required();
  rds->add_option("--subgroup", gens_r, "generators: \"2,0;0,2\" or [[2,0],[0,2]]")->required();
  rds->add_option("--lambda", lambda)->required();

  // classify
  auto* classify = app.add_subcommand("classify", "classify a 2-group");
  std::string group_cl;
  classify->add_option("--group", group_cl)->required();

  // census
  auto* census = app.add_subcommand("census", "partition census of 2-groups");
  unsigned max_n = 0;
  std::string out_ce;
  census->add_option("--max-n", max_n)->required();
  census->add_option("--out", out_ce);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "lower and upper bounds for a group");
  std::string group_b, kind_b;
  std::uint64_t g_b = 0;
  bool csv = false;
  bounds->add_option("--group", group_b)->required();
  bounds->add_option("--g", g_b)->required();
  bounds->add_option("--kind", kind_b)->required();
  bounds->add_flag("--csv", csv, "emit a CSV row instead of JSON");

  // search-min
  auto* search = app.add_subcommand("search-min", "exact minimum by exhaustive search");
  std::string group_s, kind_s;
  std::uint64_t g_s = 0;
  search->add_option("--group", group_s)->required();
  search->add_option("--g", g_s)->required();
  search->add_option("--kind", kind_s)->required();

  // plan
  auto* plan = app.add_subcommand("plan", "decomposition plan for G^n");
  std::string group_p, theorem, out_p;
  unsigned n_p = 1;
  bool materialize = false;
  plan->add_option("--group", group_p)->required();
  plan->add_option("--theorem", theorem, "weak|adm")->required()->check(CLI::IsMember({"weak", "adm"}));
  plan->add_option("--n", n_p)->required();
  plan->add_flag("--materialize", materialize);
  plan->add_option("--out", out_p);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  Context ctx(bf_context_new(), &bf_context_free);
  if (!ctx) {
    std::cerr << "error: out of memory\n";
    return kExitError;
  }
  bf_context* c = ctx.get();

  try {
    if (cap == 0) {
      if (const char* env = std::getenv("BASISFORGE_CAP")) {
        try {
          cap = std::stoull(env);
        } catch (const std::exception&) {
          throw CommandError("BASISFORGE_CAP must be a positive integer");
        }
      }
    }
    if (cap != 0) check(c, bf_context_set_cap(c, cap));
    check(c, bf_context_set_threads(c, threads));

    if (*construct) {
      std::string req = "{\"family\":" + json_string(family);
      auto num = [&](const char* key, CLI::Option* opt, std::uint64_t v) {
        if (opt->count()) req += ",\"" + std::string(key) + "\":" + std::to_string(v);
      };
      num("p", construct->get_option("--p"), p);
      num("s", construct->get_option("--s"), s);
      num("n", construct->get_option("--n"), n_c);
      num("k", construct->get_option("--k"), k);
      num("g", construct->get_option("--g"), g_c);
      if (!kind_c.empty()) req += ",\"kind\":" + json_string(kind_c);
      if (!group_c.empty()) req += ",\"group\":" + json_string(group_c);
      if (!variant.empty()) req += ",\"variant\":" + json_string(variant);
      if (complete) req += ",\"complete\":true";
      req += "}";
      bf_basis* raw = nullptr;
      check(c, bf_construct(c, req.c_str(), &raw));
      Basis b(raw, &bf_basis_free);
      char* text = nullptr;
      check(c, bf_basis_to_json(c, b.get(), &text));
      emit(take(text), out_c);
      return kExitOk;
    }
    if (*verify) {
      bf_basis* raw = nullptr;
      check(c, bf_basis_from_json(c, read_file(basis_v).c_str(), &raw));
      Basis b(raw, &bf_basis_free);
      bf_certificate* rc = nullptr;
      check(c, bf_verify(c, b.get(), g_v, kind_v.c_str(), &rc));
      Certificate cert(rc, &bf_certificate_free);
      char* text = nullptr;
      check(c, bf_certificate_to_json(c, cert.get(), &text));
      emit(take(text), "");
      return bf_certificate_passed(cert.get()) ? kExitOk : kExitFail;
    }
    if (*rds) {
      bf_basis* raw = nullptr;
      check(c, bf_basis_from_json(c, read_file(basis_r).c_str(), &raw));
      Basis b(raw, &bf_basis_free);
      int passed = 0;
      char* text = nullptr;
      check(c, bf_rds_check(c, b.get(), gens_to_json(gens_r).c_str(), lambda, &passed, &text));
      emit(take(text), "");
      return passed ? kExitOk : kExitFail;
    }
    if (*classify) {
      char* text = nullptr;
      check(c, bf_classify(c, group_cl.c_str(), &text));
      emit(take(text), "");
      return kExitOk;
    }
    if (*census) {
      char* text = nullptr;
      check(c, bf_census(c, max_n, &text));
      emit(take(text), out_ce);
      return kExitOk;
    }
    if (*bounds) {
      char* text = nullptr;
      check(c, bf_bounds(c, group_b.c_str(), g_b, kind_b.c_str(), csv ? "csv" : "json", &text));
      emit(take(text), "");
      return kExitOk;
    }
    if (*search) {
      char* text = nullptr;
      check(c, bf_search_min(c, group_s.c_str(), g_s, kind_s.c_str(), &text));
      emit(take(text), "");
      return kExitOk;
    }
    if (*plan) {
      int passed = 1;
      char* text = nullptr;
      check(c, bf_plan(c, group_p.c_str(), theorem.c_str(), n_p, materialize ? 1 : 0, &passed, &text));
      emit(take(text), out_p);
      return passed ? kExitOk : kExitFail;
    }
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
