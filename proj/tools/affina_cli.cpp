// affina — command-line front end.  Talks to the library exclusively through
// the public C API (affina.h).
//
// Exit codes: 0 success; 1 verification mismatch / failed audit rows /
// non-intersecting family on `family check`; 2 usage or input errors;
// 3 infeasible scale (cap or budget exceeded); 4 internal error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affina.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitScale = 3;
constexpr int kExitInternal = 4;

// Takes ownership of a library-owned string.
std::string take(char* s) {
  std::string out = s ? s : "";
  af_string_free(s);
  return out;
}

int status_exit(af_status st) {
  switch (st) {
    case AF_OK:
      return kExitOk;
    case AF_ERR_ARG:
    case AF_ERR_PARSE:
      return kExitUsage;
    case AF_ERR_SCALE:
      return kExitScale;
    default:
      return kExitInternal;
  }
}

// Prints the library's diagnostic and converts the status to an exit code.
int complain(af_status st) {
  std::cerr << "error: " << af_last_error() << "\n";
  return status_exit(st);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return kExitUsage;
  }
  out << content;
  if (!out.flush()) {
    std::cerr << "error: failed writing " << path << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

// "m=3,k=1,q=2" -> {{"m",3},{"k",1},{"q",2}}; empty optional on syntax error.
std::map<std::string, std::int64_t> parse_params(const std::string& text, bool& ok) {
  std::map<std::string, std::int64_t> out;
  ok = true;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    auto eq = piece.find('=');
    if (eq == std::string::npos || eq == 0) {
      ok = false;
      return out;
    }
    std::string key = piece.substr(0, eq);
    try {
      size_t used = 0;
      std::int64_t value = std::stoll(piece.substr(eq + 1), &used);
      if (used != piece.size() - eq - 1 || out.count(key)) {
        ok = false;
        return out;
      }
      out[key] = value;
    } catch (const std::exception&) {
      ok = false;
      return out;
    }
  }
  return out;
}

struct GaussArgs {
  std::uint32_t n = 0, k = 0, q = 0;
};

int run_gauss(const GaussArgs& a) {
  char* out = nullptr;
  af_status st = af_gauss(a.n, a.k, a.q, &out);
  if (st != AF_OK) return complain(st);
  std::cout << take(out) << "\n";
  return kExitOk;
}

struct CountArgs {
  std::string what;
  std::string params;
  bool verify = false;
  std::uint64_t enum_cap = 0;
};

int run_count(const CountArgs& a) {
  static const std::map<std::string, std::vector<std::string>> kOrders = {
      {"gauss", {"n", "k", "q"}},
      {"flats-within", {"m", "k", "q"}},
      {"flats-containing", {"n", "k", "m", "q"}},
      {"type-subspaces", {"m1", "k1", "m", "k", "n", "l", "q"}},
  };
  auto it = kOrders.find(a.what);
  if (it == kOrders.end()) {
    std::cerr << "error: unknown --what \"" << a.what
              << "\" (expected gauss, flats-within, flats-containing or type-subspaces)\n";
    return kExitUsage;
  }
  bool ok = false;
  auto named = parse_params(a.params, ok);
  if (!ok) {
    std::cerr << "error: --params must be comma-separated name=integer pairs\n";
    return kExitUsage;
  }
  std::vector<std::int64_t> ordered;
  for (const std::string& key : it->second) {
    auto found = named.find(key);
    if (found == named.end()) {
      std::cerr << "error: --params is missing \"" << key << "\" (required: ";
      for (size_t i = 0; i < it->second.size(); ++i)
        std::cerr << (i ? "," : "") << it->second[i];
      std::cerr << ")\n";
      return kExitUsage;
    }
    if (found->second < 0) {
      std::cerr << "error: param \"" << key << "\" must be nonnegative\n";
      return kExitUsage;
    }
    ordered.push_back(found->second);
    named.erase(found);
  }
  if (!named.empty()) {
    std::cerr << "error: unknown param \"" << named.begin()->first << "\" for --what " << a.what
              << "\n";
    return kExitUsage;
  }

  auto u = [&](size_t i) { return static_cast<std::uint32_t>(ordered[i]); };
  char* out = nullptr;
  af_status st;
  if (a.what == "gauss")
    st = af_gauss(u(0), u(1), u(2), &out);
  else if (a.what == "flats-within")
    st = af_count_flats_within(u(0), u(1), u(2), &out);
  else if (a.what == "flats-containing")
    st = af_count_flats_containing(u(0), u(1), u(2), u(3), &out);
  else
    st = af_count_type_subspaces(u(0), u(1), u(2), u(3), u(4), u(5), u(6), &out);
  if (st != AF_OK) return complain(st);
  std::string closed = take(out);

  if (!a.verify) {
    std::cout << closed << "\n";
    return kExitOk;
  }

  char* recount_out = nullptr;
  st = af_count_enumerated(a.what.c_str(), ordered.data(),
                           static_cast<std::uint32_t>(ordered.size()), a.enum_cap, &recount_out);
  if (st != AF_OK) return complain(st);
  std::string enumerated = take(recount_out);
  bool match = closed == enumerated;
  std::cout << "{\"what\":\"" << a.what << "\",\"params\":\"" << a.params
            << "\",\"closed_form\":\"" << closed << "\",\"enumerated\":\"" << enumerated
            << "\",\"match\":" << (match ? "true" : "false") << "}\n";
  if (!match) {
    std::cerr << "verification mismatch: " << a.what << "(" << a.params << ") closed form "
              << closed << " but enumeration found " << enumerated << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}

struct FamilyBuildArgs {
  std::string type;
  std::uint32_t n = 0, k = 0, q = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out_path;
};

int run_family_build(const FamilyBuildArgs& a) {
  af_family* fam = nullptr;
  af_status st = af_family_build(a.type.c_str(), a.n, a.k, a.q, a.seed, a.has_seed ? 1 : 0, &fam);
  if (st != AF_OK) return complain(st);
  std::unique_ptr<af_family, decltype(&af_family_free)> guard(fam, af_family_free);
  char* out = nullptr;
  st = af_family_to_json(fam, &out);
  if (st != AF_OK) return complain(st);
  std::string json = take(out);
  if (a.out_path.empty()) {
    std::cout << json << "\n";
    return kExitOk;
  }
  int rc = write_file(a.out_path, json + "\n");
  if (rc == kExitOk)
    std::cerr << "wrote " << a.out_path << "\n";
  return rc;
}

struct FamilyCheckArgs {
  std::string in_path;
  std::uint64_t tau_budget = 0;
};

int run_family_check(const FamilyCheckArgs& a) {
  std::ifstream in(a.in_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << a.in_path << "\n";
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  af_family* fam = nullptr;
  af_status st = af_family_from_json(buffer.str().c_str(), &fam);
  if (st != AF_OK) return complain(st);
  std::unique_ptr<af_family, decltype(&af_family_free)> guard(fam, af_family_free);
  char* out = nullptr;
  st = af_family_stats_json(fam, a.tau_budget, &out);
  if (st != AF_OK) return complain(st);
  std::cout << take(out) << "\n";
  int intersecting = 0;
  st = af_family_is_intersecting(fam, &intersecting);
  if (st != AF_OK) return complain(st);
  if (!intersecting) {
    std::cerr << "family is not intersecting\n";
    return kExitMismatch;
  }
  return kExitOk;
}

struct AuditArgs {
  std::string lemma;
  std::string grid;
  std::string out_path;
};

int run_audit(const AuditArgs& a) {
  af_audit* audit = nullptr;
  af_status st = af_audit_run(a.lemma.c_str(), a.grid.empty() ? nullptr : a.grid.c_str(), &audit);
  if (st != AF_OK) return complain(st);
  std::unique_ptr<af_audit, decltype(&af_audit_free)> guard(audit, af_audit_free);

  std::uint64_t rows = 0, holds = 0, equalities = 0, fails = 0, na = 0;
  st = af_audit_counts(audit, &rows, &holds, &equalities, &fails, &na);
  if (st != AF_OK) return complain(st);

  if (!a.out_path.empty()) {
    char* out = nullptr;
    if (ends_with(a.out_path, ".csv"))
      st = af_audit_csv(audit, &out);
    else if (ends_with(a.out_path, ".json"))
      st = af_audit_json(audit, &out);
    else {
      std::cerr << "error: --out must end in .csv or .json\n";
      return kExitUsage;
    }
    if (st != AF_OK) return complain(st);
    int rc = write_file(a.out_path, take(out));
    if (rc != kExitOk) return rc;
    std::cout << "{\"audit\":\"" << a.lemma << "\",\"rows\":" << rows << ",\"holds\":" << holds
              << ",\"equalities\":" << equalities << ",\"fails\":" << fails
              << ",\"not_applicable\":" << na << ",\"out\":\"" << a.out_path << "\"}\n";
  } else {
    char* out = nullptr;
    st = af_audit_csv(audit, &out);
    if (st != AF_OK) return complain(st);
    std::cout << take(out);
  }
  if (fails > 0) {
    std::cerr << "audit " << a.lemma << ": " << fails << " failing row(s)\n";
    return kExitMismatch;
  }
  return kExitOk;
}

struct SearchArgs {
  std::uint32_t n = 0, k = 0, q = 0;
  std::uint32_t tau_min = 0;
  std::uint64_t budget = 0;
  std::uint32_t vertex_cap = 0;
};

int run_search(const SearchArgs& a) {
  char* out = nullptr;
  af_status st = af_search_run(a.n, a.k, a.q, a.tau_min, a.budget, a.vertex_cap, nullptr,
                               nullptr, nullptr, &out);
  if (st != AF_OK) return complain(st);
  std::cout << take(out) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affina: exact combinatorics of intersecting flat families in AG(n, q)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(af_version()));

  int rc = kExitOk;

  GaussArgs gauss_args;
  auto* gauss_cmd = app.add_subcommand("gauss", "Print the Gaussian binomial [n k]_q");
  gauss_cmd->add_option("--n", gauss_args.n, "ambient dimension")->required();
  gauss_cmd->add_option("--k", gauss_args.k, "subspace dimension")->required();
  gauss_cmd->add_option("--q", gauss_args.q, "field order")->required();
  gauss_cmd->callback([&] { rc = run_gauss(gauss_args); });

  CountArgs count_args;
  auto* count_cmd =
      app.add_subcommand("count", "Evaluate a counting formula, optionally cross-checked "
                                  "against explicit enumeration");
  count_cmd
      ->add_option("--what", count_args.what,
                   "gauss | flats-within | flats-containing | type-subspaces")
      ->required();
  count_cmd->add_option("--params", count_args.params, "comma-separated name=value pairs")
      ->required();
  count_cmd->add_flag("--verify", count_args.verify, "recount by explicit enumeration");
  count_cmd->add_option("--enum-cap", count_args.enum_cap,
                        "max objects to enumerate during --verify (default 1000000)");
  count_cmd->callback([&] { rc = run_count(count_args); });

  auto* family_cmd = app.add_subcommand("family", "Build or check intersecting families");
  family_cmd->require_subcommand(1);

  FamilyBuildArgs build_args;
  auto* build_cmd = family_cmd->add_subcommand("build", "Construct a named family as JSON");
  build_cmd->add_option("--type", build_args.type, "pencil | hm | f3")->required();
  build_cmd->add_option("--n", build_args.n, "ambient dimension")->required();
  build_cmd->add_option("--k", build_args.k, "flat dimension")->required();
  build_cmd->add_option("--q", build_args.q, "field order (prime)")->required();
  auto* seed_opt = build_cmd->add_option("--seed", build_args.seed,
                                         "seed the randomized translate selector");
  build_cmd->add_option("--out", build_args.out_path, "output file (default stdout)");
  build_cmd->callback([&] {
    build_args.has_seed = seed_opt->count() > 0;
    rc = run_family_build(build_args);
  });

  FamilyCheckArgs check_args;
  auto* check_cmd = family_cmd->add_subcommand(
      "check", "Verify a family JSON file: size, intersecting, covering number, bounds");
  check_cmd->add_option("--in", check_args.in_path, "family JSON file")->required();
  check_cmd->add_option("--tau-budget", check_args.tau_budget,
                        "candidate budget for the covering-number search");
  check_cmd->callback([&] { rc = run_family_check(check_args); });

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "Sweep an inequality over a parameter grid");
  audit_cmd->add_option("--lemma", audit_args.lemma, "2.6 | 2.7 | dominance")->required();
  audit_cmd->add_option("--grid", audit_args.grid,
                        "grid spec, e.g. \"a=0..2,k=a+1..6,n=k..20,q=2,3,5\" (default: "
                        "the audit's built-in grid)");
  audit_cmd->add_option("--out", audit_args.out_path, "write report to FILE.csv or FILE.json");
  audit_cmd->callback([&] { rc = run_audit(audit_args); });

  SearchArgs search_args;
  auto* search_cmd = app.add_subcommand(
      "search", "Exact maximum intersecting family via branch and bound");
  search_cmd->add_option("--n", search_args.n, "ambient dimension")->required();
  search_cmd->add_option("--k", search_args.k, "flat dimension")->required();
  search_cmd->add_option("--q", search_args.q, "field order (prime)")->required();
  search_cmd->add_option("--tau-min", search_args.tau_min,
                         "only count families with covering number >= this");
  search_cmd->add_option("--budget", search_args.budget, "search node budget (default 1000000)");
  search_cmd->add_option("--vertex-cap", search_args.vertex_cap,
                         "max flats in the compatibility graph (default 5000)");
  search_cmd->callback([&] { rc = run_search(search_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return rc;
}
