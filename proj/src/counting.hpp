#pragma once
// Exact enumerative formulas and inequality audits.
//
// Everything in this module is arithmetic on exact integers/rationals; q is a
// formal parameter here (any integer >= 2 is accepted, including prime powers)
// even though the geometric layer only instantiates prime fields.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace affina {

using BigCount = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// q^e for e >= 0.
BigCount q_pow(long long q, long long e);

// Gaussian binomial coefficient: number of k-dimensional subspaces of F_q^n.
// Zero outside 0 <= k <= n.
BigCount gauss(long long n, long long k, long long q);

// Number of m-dimensional subspaces of F_q^(n+l) that meet a fixed
// l-dimensional subspace W in dimension k and contain a fixed subspace of
// dimension m1 meeting W in dimension k1.  Zero exactly when the feasibility
// conditions fail: 0 <= k1 <= k <= l and 0 <= m1-k1 <= m-k <= n.
BigCount count_type_subspaces(long long m1, long long k1, long long m, long long k,
                              long long n, long long l, long long q);

// k-flats contained in a fixed m-flat: q^(m-k) * gauss(m, k, q).
BigCount count_flats_within(long long m, long long k, long long q);
// m-flats containing a fixed k-flat of AG(n, q): gauss(n-k, m-k, q).
BigCount count_flats_containing(long long n, long long k, long long m, long long q);
// All k-flats of AG(n, q).
BigCount count_flats_total(long long n, long long k, long long q);

// Size of the pencil-with-exchanged-flats family (the largest non-trivial
// intersecting family of k-flats):
//   gauss(n-1, k-1) - q^(k(k-1)) * gauss(n-k-1, k-1) + q^k.
// Requires n >= k+1, k >= 1, q >= 2.
BigCount hm_size(long long n, long long k, long long q);

// Size of the triangle family of 3-flats built over the 2-subspaces of a fixed
// 3-flat: (q^2+q+1) * gauss(n-2, 1, q) - q^2 - q.  Requires n >= 4.
BigCount f3_size(long long n, long long q);

// Outcome of an inequality check at one parameter point.
enum class Verdict { Holds, Equality, Fails, NotApplicable };
const char* verdict_name(Verdict v);

// Strict bound on a product of Gaussian binomials (exact rational comparison):
//   (q^(k-a)-1)(q^k-1) q^(n-2k)  <  q^(n-a)-1.
// NotApplicable unless a >= 0, n >= k >= a+1, q >= 2.
Verdict check_binomial_product_bound(long long a, long long n, long long k, long long q);

// Two-sided sandwich of the extremal family size, r = n-2k:
//   hm_size(n,k,q) > gauss(k,1)gauss(n-2,k-2) - q gauss(k,2)gauss(n-3,k-3)
//                  > (1 - 1/(q^r (q^2-1))) gauss(k,1)gauss(n-2,k-2).
// NotApplicable unless k >= 3, q >= 2, r >= 4 and (r,q) != (4,2).
Verdict check_hm_sandwich(long long n, long long k, long long q);

struct HmSandwichParts {
  bool applicable = false;
  BigCount family_size;  // hm_size(n,k,q)
  BigCount middle;       // gauss(k,1)gauss(n-2,k-2) - q gauss(k,2)gauss(n-3,k-3)
  BigRat tail;           // (1 - 1/(q^r (q^2-1))) gauss(k,1)gauss(n-2,k-2)
  Verdict upper = Verdict::NotApplicable;  // family_size > middle
  Verdict lower = Verdict::NotApplicable;  // middle > tail
};
HmSandwichParts hm_sandwich_parts(long long n, long long k, long long q);

// Closed-form upper bounds for intersecting families in the covering-number
// case analysis.  Identified by strings (also used in audit reports):
//   "meet-through-flat"    gauss(k,1) gauss(n-s-1, k-s-1)              [s]
//   "chain-cover"          gauss(k,1)^(s-i) gauss(n-s, k-s)            [s, i]
//   "tau2-point-pair"      gauss(n-2,k-2) + q(q+1)(gauss(k,1)-1)gauss(k,1)gauss(n-3,k-3)
//   "tau2-mid-flat"        gauss(m,1)gauss(n-2,k-2)
//                          + (gauss(k,1)-gauss(m,1))gauss(k,1)gauss(n-3,k-3)
//                          + (q^(m+1)+q^m-1)gauss(n-m,k-m)             [m]
//   "tau2-mid-flat-sharp"  the m = 2 case with the last term sharpened to
//                          (q^3+q^2-1)gauss(k,1)gauss(n-3,k-3)
//   "tau2-residual"        q gauss(3,1)(gauss(n-2,k-2)-gauss(n-3,k-3)) + gauss(n-3,k-3)
//   "tau2-residual-k3"     f3_size(n,q), the exact k = 3 form
//   "tau-t-product"        q^(t-1) gauss(t,1) gauss(k,1)^(t-1) gauss(n-t,k-t)  [t]
struct BoundParams {
  long long n = -1, k = -1, q = -1;
  long long s = -1, i = -1, m = -1, t = -1;
};
BigCount bound_value(const std::string& id, const BoundParams& p);

// Parameter grid micro-syntax: comma-separated clauses "name=lo..hi" or
// "name=v1,v2,...".  Range bounds may reference earlier variables with an
// optional offset, e.g. "a=0..2,k=a+1..6,n=k..20,q=2,3,5".
struct GridBound {
  bool is_var = false;
  long long value = 0;     // when literal
  std::string var;         // when variable reference
  long long offset = 0;    // added to the referenced variable
};
struct GridClause {
  std::string name;
  bool is_range = false;
  GridBound lo, hi;               // when is_range
  std::vector<GridBound> values;  // when list
};
struct GridSpec {
  std::vector<GridClause> clauses;
  static GridSpec parse(const std::string& text);  // throws ParseError
  using Point = std::map<std::string, long long>;
  // Nested iteration in clause order; later bounds see earlier bindings.
  void for_each_point(const std::function<void(const Point&)>& fn) const;
};

// One audited inequality instance.  lhs/rhs are exact decimal or "p/q"
// rational strings; empty for not-applicable rows.
struct AuditRow {
  std::string id;
  std::vector<std::pair<std::string, long long>> params;
  std::string lhs, rhs;
  Verdict verdict = Verdict::NotApplicable;
};

struct AuditReport {
  std::string audit;  // "2.6" | "2.7" | "dominance"
  std::string grid;
  std::vector<AuditRow> rows;
  std::size_t holds = 0, equalities = 0, fails = 0, not_applicable = 0;
  bool passed() const { return fails == 0; }
  std::string to_csv() const;
  std::string to_json() const;
};

// Runs one of the built-in audits over `grid` (empty string selects the
// default grid for that audit).  Audit names are the stable CLI tokens.
AuditReport run_audit(const std::string& audit, const std::string& grid);
const char* default_grid(const std::string& audit);

}  // namespace affina
