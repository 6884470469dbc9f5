// C ABI for the shared library: exceptions are caught at this boundary and
// mapped to status codes, with the message kept in a per-thread buffer.

#include "affina.h"

#include <cstring>
#include <new>
#include <string>

#include "counting.hpp"
#include "enumcheck.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "fieldlinalg.hpp"
#include "search.hpp"
#include "serialize.hpp"

using namespace affina;

struct af_family {
  FlatFamily fam;
};
struct af_audit {
  AuditReport report;
};

namespace {

thread_local std::string g_last_error;

af_status fail(af_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Runs `fn` and maps thrown exceptions onto status codes.
template <typename Fn>
af_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ScaleError& e) {
    return fail(AF_ERR_SCALE, e.what());
  } catch (const ParseError& e) {
    return fail(AF_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(AF_ERR_ARG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AF_ERR_SCALE, "out of memory");
  } catch (const std::exception& e) {
    return fail(AF_ERR_STATE, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

af_status string_result(const std::string& s, char** out) {
  if (!out) return fail(AF_ERR_ARG, "null output pointer");
  *out = dup_string(s);
  return AF_OK;
}

// Canonical axis-aligned flat: span{e_lo, ..., e_{lo+dim-1}} through 0.
Flat axis_flat(const FieldSpec& f, std::uint32_t n, std::uint32_t lo, std::uint32_t dim) {
  std::vector<Vec> rows;
  for (std::uint32_t i = 0; i < dim; ++i) {
    Vec row(n, 0);
    row[lo + i] = 1;
    rows.push_back(row);
  }
  return Flat::through(Subspace(f, n, rows), Vec(n, 0));
}

}  // namespace

extern "C" {

const char* af_version(void) { return "0.1.0"; }

const char* af_last_error(void) { return g_last_error.c_str(); }

void af_string_free(char* s) { delete[] s; }

af_status af_gauss(uint32_t n, uint32_t k, uint32_t q, char** out) {
  return guarded([&] {
    if (q < 2) return fail(AF_ERR_ARG, "q must be at least 2");
    return string_result(gauss(n, k, q).str(), out);
  });
}

af_status af_count_type_subspaces(uint32_t m1, uint32_t k1, uint32_t m, uint32_t k,
                                  uint32_t n, uint32_t l, uint32_t q, char** out) {
  return guarded([&] {
    if (q < 2) return fail(AF_ERR_ARG, "q must be at least 2");
    return string_result(count_type_subspaces(m1, k1, m, k, n, l, q).str(), out);
  });
}

af_status af_count_flats_within(uint32_t m, uint32_t k, uint32_t q, char** out) {
  return guarded([&] { return string_result(count_flats_within(m, k, q).str(), out); });
}

af_status af_count_flats_containing(uint32_t n, uint32_t k, uint32_t m, uint32_t q,
                                    char** out) {
  return guarded([&] { return string_result(count_flats_containing(n, k, m, q).str(), out); });
}

af_status af_count_flats_total(uint32_t n, uint32_t k, uint32_t q, char** out) {
  return guarded([&] { return string_result(count_flats_total(n, k, q).str(), out); });
}

af_status af_hm_size(uint32_t n, uint32_t k, uint32_t q, char** out) {
  return guarded([&] { return string_result(hm_size(n, k, q).str(), out); });
}

af_status af_f3_size(uint32_t n, uint32_t q, char** out) {
  return guarded([&] { return string_result(f3_size(n, q).str(), out); });
}

af_status af_count_enumerated(const char* what, const int64_t* params,
                              uint32_t nparams, uint64_t enum_cap, char** out) {
  return guarded([&] {
    if (!what || !params) return fail(AF_ERR_ARG, "null pointer");
    std::string name(what);
    std::uint64_t cap = enum_cap ? enum_cap : 1'000'000ull;
    auto need = [&](uint32_t count) {
      if (nparams != count)
        throw std::invalid_argument("count recount \"" + name + "\" takes " +
                                    std::to_string(count) + " params, got " +
                                    std::to_string(nparams));
      for (uint32_t idx = 0; idx < count; ++idx)
        if (params[idx] < 0)
          throw std::invalid_argument("count recount params must be nonnegative");
    };
    auto u = [&](uint32_t idx) { return static_cast<std::uint32_t>(params[idx]); };
    std::uint64_t value = 0;
    if (name == "gauss") {
      need(3);
      value = enumerated_subspace_count(FieldSpec(u(2)), u(0), u(1), cap);
    } else if (name == "type-subspaces") {
      need(7);
      value = enumerated_type_subspace_count(FieldSpec(u(6)), u(0), u(1), u(2), u(3), u(4),
                                             u(5), cap);
    } else if (name == "flats-within") {
      need(3);
      value = enumerated_flats_within_count(FieldSpec(u(2)), u(0), u(1), cap);
    } else if (name == "flats-containing") {
      need(4);
      value = enumerated_flats_containing_count(FieldSpec(u(3)), u(0), u(1), u(2), cap);
    } else {
      return fail(AF_ERR_ARG, "unknown recount \"" + name +
                                  "\" (expected gauss, type-subspaces, flats-within or "
                                  "flats-containing)");
    }
    return string_result(std::to_string(value), out);
  });
}

af_status af_bound_value(const char* id, uint32_t n, uint32_t k, uint32_t q,
                         int32_t s, int32_t i, int32_t m, int32_t t, char** out) {
  return guarded([&] {
    if (!id) return fail(AF_ERR_ARG, "null bound id");
    BoundParams p;
    p.n = n;
    p.k = k;
    p.q = q;
    p.s = s;
    p.i = i;
    p.m = m;
    p.t = t;
    return string_result(bound_value(id, p).str(), out);
  });
}

af_status af_check_lemma(const char* lemma, uint32_t n, uint32_t k, uint32_t q,
                         int32_t a, int* verdict) {
  return guarded([&] {
    if (!lemma) return fail(AF_ERR_ARG, "null lemma name");
    if (!verdict) return fail(AF_ERR_ARG, "null output pointer");
    std::string name(lemma);
    Verdict v;
    if (name == "2.6")
      v = check_binomial_product_bound(a, n, k, q);
    else if (name == "2.7")
      v = check_hm_sandwich(n, k, q);
    else
      return fail(AF_ERR_ARG, "unknown lemma \"" + name + "\" (expected 2.6 or 2.7)");
    *verdict = static_cast<int>(v);
    return AF_OK;
  });
}

af_status af_audit_run(const char* audit, const char* grid, af_audit** out) {
  return guarded([&] {
    if (!audit) return fail(AF_ERR_ARG, "null audit name");
    if (!out) return fail(AF_ERR_ARG, "null output pointer");
    AuditReport rep = run_audit(audit, grid ? std::string(grid) : std::string());
    *out = new af_audit{std::move(rep)};
    return AF_OK;
  });
}

af_status af_audit_csv(const af_audit* a, char** out) {
  return guarded([&] {
    if (!a) return fail(AF_ERR_ARG, "null audit handle");
    return string_result(a->report.to_csv(), out);
  });
}

af_status af_audit_json(const af_audit* a, char** out) {
  return guarded([&] {
    if (!a) return fail(AF_ERR_ARG, "null audit handle");
    return string_result(a->report.to_json(), out);
  });
}

af_status af_audit_counts(const af_audit* a, uint64_t* rows, uint64_t* holds,
                          uint64_t* equalities, uint64_t* fails,
                          uint64_t* not_applicable) {
  return guarded([&] {
    if (!a) return fail(AF_ERR_ARG, "null audit handle");
    if (rows) *rows = a->report.rows.size();
    if (holds) *holds = a->report.holds;
    if (equalities) *equalities = a->report.equalities;
    if (fails) *fails = a->report.fails;
    if (not_applicable) *not_applicable = a->report.not_applicable;
    return AF_OK;
  });
}

void af_audit_free(af_audit* a) { delete a; }

af_status af_family_build(const char* type, uint32_t n, uint32_t k, uint32_t q,
                          uint64_t seed, int use_seed, af_family** out) {
  return guarded([&] {
    if (!type) return fail(AF_ERR_ARG, "null family type");
    if (!out) return fail(AF_ERR_ARG, "null output pointer");
    std::string name(type);
    FieldSpec f(q);
    if (k == 0 || k > n) return fail(AF_ERR_ARG, "family construction needs 1 <= k <= n");
    if (name == "pencil") {
      Flat E = axis_flat(f, n, 0, 1);
      *out = new af_family{pencil_family(E, k)};
      return AF_OK;
    }
    if (name == "hm") {
      if (k + 1 > n) return fail(AF_ERR_ARG, "hm family needs n >= k+1");
      Flat U = axis_flat(f, n, 0, k);
      Flat E = axis_flat(f, n, k, 1);
      if (!use_seed) {
        *out = new af_family{hm_family(E, U)};
      } else {
        Flat join = flat_join(E, U);
        PointSelector sel = seeded_point_selector(seed, join);
        *out = new af_family{hm_family(E, U, &sel)};
      }
      return AF_OK;
    }
    if (name == "f3") {
      if (k != 3) return fail(AF_ERR_ARG, "f3 family is defined for k = 3 only");
      Flat U = axis_flat(f, n, 0, 3);
      if (!use_seed) {
        *out = new af_family{f3_family(U)};
      } else {
        PointSelector sel = seeded_point_selector(seed, U);
        *out = new af_family{f3_family(U, &sel)};
      }
      return AF_OK;
    }
    return fail(AF_ERR_ARG, "unknown family type \"" + name +
                                "\" (expected pencil, hm or f3)");
  });
}

af_status af_family_from_json(const char* text, af_family** out) {
  return guarded([&] {
    if (!text) return fail(AF_ERR_ARG, "null JSON text");
    if (!out) return fail(AF_ERR_ARG, "null output pointer");
    *out = new af_family{family_from_json(text)};
    return AF_OK;
  });
}

af_status af_family_to_json(const af_family* fam, char** out) {
  return guarded([&] {
    if (!fam) return fail(AF_ERR_ARG, "null family handle");
    return string_result(family_to_json(fam->fam), out);
  });
}

af_status af_family_size(const af_family* fam, uint64_t* out) {
  return guarded([&] {
    if (!fam || !out) return fail(AF_ERR_ARG, "null pointer");
    *out = fam->fam.size();
    return AF_OK;
  });
}

af_status af_family_params(const af_family* fam, uint32_t* n, uint32_t* k, uint32_t* q) {
  return guarded([&] {
    if (!fam) return fail(AF_ERR_ARG, "null family handle");
    if (n) *n = fam->fam.ambient_dim();
    if (k) *k = fam->fam.k();
    if (q) *q = fam->fam.q();
    return AF_OK;
  });
}

af_status af_family_is_intersecting(const af_family* fam, int* out) {
  return guarded([&] {
    if (!fam || !out) return fail(AF_ERR_ARG, "null pointer");
    *out = is_intersecting(fam->fam) ? 1 : 0;
    return AF_OK;
  });
}

af_status af_family_covering_number(const af_family* fam, uint64_t budget,
                                    uint32_t* value, uint32_t* lower_bound) {
  return guarded([&] {
    if (!fam || !value) return fail(AF_ERR_ARG, "null pointer");
    TauResult tr = covering_number(fam->fam, budget ? budget : 50'000'000ull);
    if (tr.status == TauResult::Status::Exact) {
      *value = tr.value;
      return AF_OK;
    }
    if (lower_bound) *lower_bound = tr.value;
    return fail(AF_ERR_SCALE, "covering-number budget exhausted; proven tau >= " +
                                  std::to_string(tr.value));
  });
}

af_status af_family_stats_json(const af_family* fam, uint64_t tau_budget, char** out) {
  return guarded([&] {
    if (!fam) return fail(AF_ERR_ARG, "null family handle");
    FamilyStats st = family_stats(fam->fam, tau_budget ? tau_budget : 50'000'000ull);
    return string_result(family_stats_to_json(st), out);
  });
}

af_status af_family_maximal_closure(const af_family* fam, uint64_t flat_budget,
                                    af_family** out) {
  return guarded([&] {
    if (!fam || !out) return fail(AF_ERR_ARG, "null pointer");
    *out = new af_family{maximal_closure(fam->fam, flat_budget ? flat_budget : (1u << 21))};
    return AF_OK;
  });
}

void af_family_free(af_family* fam) { delete fam; }

af_status af_search_run(uint32_t n, uint32_t k, uint32_t q, uint32_t tau_min,
                        uint64_t node_budget, uint32_t vertex_cap,
                        af_family** best, int* optimal, uint64_t* nodes,
                        char** json_out) {
  return guarded([&] {
    FieldSpec f(q);
    CompatibilityGraph graph(f, n, k, vertex_cap ? vertex_cap : 5000);
    std::optional<std::uint32_t> tmin;
    if (tau_min > 0) tmin = tau_min;
    SearchOutcome outcome = max_family(graph, tmin, node_budget ? node_budget : 1'000'000ull);
    if (json_out) *json_out = dup_string(search_outcome_to_json(outcome));
    if (optimal) *optimal = outcome.optimal ? 1 : 0;
    if (nodes) *nodes = outcome.nodes;
    if (best) *best = new af_family{std::move(outcome.best)};
    return AF_OK;
  });
}

}  // extern "C"
