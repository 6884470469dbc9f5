/* affina — exact combinatorics of intersecting flat families in AG(n, q).
 *
 * C interface to the shared library.  All functions return an af_status;
 * every other result travels through out-parameters.  Arbitrary-precision
 * counts are returned as decimal strings owned by the library — release them
 * with af_string_free.  Handles (af_family, af_audit) are opaque and must be
 * released with their matching *_free function.
 *
 * Thread safety: handles are immutable after creation and may be shared
 * across threads; af_last_error is per-thread.
 */
#ifndef AFFINA_H
#define AFFINA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum af_status {
  AF_OK = 0,
  AF_ERR_ARG = 1,   /* invalid argument / domain violation */
  AF_ERR_SCALE = 2, /* instance exceeds a configured cap or budget */
  AF_ERR_PARSE = 3, /* malformed grid spec or JSON document */
  AF_ERR_STATE = 4  /* internal invariant failure */
} af_status;

/* Library version, static storage (do not free). */
const char* af_version(void);

/* Message from the calling thread's most recent failing call.  Never NULL;
 * empty string when no failure has occurred on this thread. */
const char* af_last_error(void);

/* Releases any char* produced by this library. */
void af_string_free(char* s);

/* ---------------- counting (decimal-string results) ---------------- */

/* Gaussian binomial [n k]_q. */
af_status af_gauss(uint32_t n, uint32_t k, uint32_t q, char** out);

/* Subspaces of a fixed intersection pattern: m-dim subspaces U of an
 * (n+l)-dim space with dim(U n W) = k for a fixed l-dim W, meeting a fixed
 * chain position (m1, k1); 0 when the pattern is infeasible. */
af_status af_count_type_subspaces(uint32_t m1, uint32_t k1, uint32_t m, uint32_t k,
                                  uint32_t n, uint32_t l, uint32_t q, char** out);

/* k-flats inside a fixed m-flat: q^(m-k) [m k]_q. */
af_status af_count_flats_within(uint32_t m, uint32_t k, uint32_t q, char** out);

/* m-flats containing a fixed k-flat of AG(n, q): [n-k m-k]_q. */
af_status af_count_flats_containing(uint32_t n, uint32_t k, uint32_t m, uint32_t q,
                                    char** out);

/* All k-flats of AG(n, q). */
af_status af_count_flats_total(uint32_t n, uint32_t k, uint32_t q, char** out);

/* Size of the extremal non-trivial intersecting family of k-flats in
 * AG(n, q); requires n >= k+1 >= 2. */
af_status af_hm_size(uint32_t n, uint32_t k, uint32_t q, char** out);

/* Size of the k = 3 triangle family in AG(n, q); requires n >= 4. */
af_status af_f3_size(uint32_t n, uint32_t q, char** out);

/* Brute-force recount by explicit enumeration, for cross-checking the closed
 * forms.  what selects the formula and fixes the params order:
 *   "gauss"             params = n, k, q
 *   "type-subspaces"    params = m1, k1, m, k, n, l, q
 *   "flats-within"      params = m, k, q
 *   "flats-containing"  params = n, k, m, q
 * enum_cap bounds the number of enumerated objects (0 = default 1,000,000);
 * returns AF_ERR_SCALE when the instance exceeds it. */
af_status af_count_enumerated(const char* what, const int64_t* params,
                              uint32_t nparams, uint64_t enum_cap, char** out);

/* Closed-form value of a named size bound.  Ids: "meet-through-flat" (s),
 * "chain-cover" (s, i), "tau2-point-pair", "tau2-mid-flat" (m),
 * "tau2-mid-flat-sharp", "tau2-residual", "tau2-residual-k3",
 * "tau-t-product" (t).  Pass -1 for parameters the bound does not use. */
af_status af_bound_value(const char* id, uint32_t n, uint32_t k, uint32_t q,
                         int32_t s, int32_t i, int32_t m, int32_t t, char** out);

/* ---------------- inequality checks ---------------- */

/* lemma: "2.6" (uses `a`) or "2.7" (ignores `a`).  *verdict: 0 holds,
 * 1 equality, 2 fails, 3 not applicable (precondition unmet). */
af_status af_check_lemma(const char* lemma, uint32_t n, uint32_t k, uint32_t q,
                         int32_t a, int* verdict);

/* ---------------- audits ---------------- */

typedef struct af_audit af_audit;

/* audit: "2.6", "2.7" or "dominance".  grid: micro-syntax spec
 * ("a=0..2,k=a+1..6,n=k..20,q=2,3,5"), or NULL for the audit's default. */
af_status af_audit_run(const char* audit, const char* grid, af_audit** out);
af_status af_audit_csv(const af_audit* a, char** out);
af_status af_audit_json(const af_audit* a, char** out);
af_status af_audit_counts(const af_audit* a, uint64_t* rows, uint64_t* holds,
                          uint64_t* equalities, uint64_t* fails,
                          uint64_t* not_applicable);
void af_audit_free(af_audit* a);

/* ---------------- families ---------------- */

typedef struct af_family af_family;

/* type: "pencil" (all k-flats through a fixed line), "hm" (the extremal
 * non-trivial family), or "f3" (the k = 3 triangle family; k must be 3).
 * With use_seed != 0, free translate points are drawn from a generator
 * seeded with `seed`; otherwise the deterministic defaults apply. */
af_status af_family_build(const char* type, uint32_t n, uint32_t k, uint32_t q,
                          uint64_t seed, int use_seed, af_family** out);
af_status af_family_from_json(const char* text, af_family** out);
af_status af_family_to_json(const af_family* fam, char** out);
af_status af_family_size(const af_family* fam, uint64_t* out);
af_status af_family_params(const af_family* fam, uint32_t* n, uint32_t* k,
                           uint32_t* q);
af_status af_family_is_intersecting(const af_family* fam, int* out);

/* Exact covering number (least dimension of a flat meeting every member in
 * dimension >= 1).  budget = 0 means the default (50,000,000 candidate
 * verifications).  On AF_OK, *value is tau.  When the budget runs out the
 * call returns AF_ERR_SCALE and sets *lower_bound to the largest s with
 * "tau >= s" proven. */
af_status af_family_covering_number(const af_family* fam, uint64_t budget,
                                    uint32_t* value, uint32_t* lower_bound);

/* JSON report: size, intersecting, tau (with witness), pencil/extremal
 * bounds.  tau_budget = 0 means the default. */
af_status af_family_stats_json(const af_family* fam, uint64_t tau_budget,
                               char** out);

/* Grows the family to a maximal intersecting one (deterministic sweep).
 * flat_budget = 0 means the default cap on ambient k-flat count (2^21). */
af_status af_family_maximal_closure(const af_family* fam, uint64_t flat_budget,
                                    af_family** out);
void af_family_free(af_family* fam);

/* ---------------- search ---------------- */

/* Exact maximum intersecting family of k-flats in AG(n, q) by branch and
 * bound over the compatibility graph.  tau_min = 0 disables the covering-
 * number constraint; node_budget = 0 means the default (1,000,000);
 * vertex_cap = 0 means the default (5,000 flats).  Any of best / optimal /
 * nodes / json_out may be NULL when not wanted. */
af_status af_search_run(uint32_t n, uint32_t k, uint32_t q, uint32_t tau_min,
                        uint64_t node_budget, uint32_t vertex_cap,
                        af_family** best, int* optimal, uint64_t* nodes,
                        char** json_out);

#ifdef __cplusplus
}
#endif
#endif /* AFFINA_H */
