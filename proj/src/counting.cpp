#include "counting.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace affina {

BigCount q_pow(long long q, long long e) {
  if (q < 2) throw std::invalid_argument("q_pow: q must be >= 2");
  if (e < 0) throw std::invalid_argument("q_pow: negative exponent");
  return boost::multiprecision::pow(BigCount(q), static_cast<unsigned>(e));
}

BigCount gauss(long long n, long long k, long long q) {
  if (q < 2) throw std::invalid_argument("gauss: q must be >= 2");
  if (k < 0 || k > n) return 0;
  BigCount num = 1, den = 1;
  for (long long i = 0; i < k; ++i) {
    num *= q_pow(q, n - i) - 1;
    den *= q_pow(q, k - i) - 1;
  }
  return num / den;  // exact: the q-binomial is an integer
}

BigCount count_type_subspaces(long long m1, long long k1, long long m, long long k,
                              long long n, long long l, long long q) {
  if (q < 2) throw std::invalid_argument("count_type_subspaces: q must be >= 2");
  if (n < 0 || l < 0) throw std::invalid_argument("count_type_subspaces: negative dimensions");
  const bool feasible =
      0 <= k1 && k1 <= k && k <= l && 0 <= m1 - k1 && m1 - k1 <= m - k && m - k <= n;
  if (!feasible) return 0;
  return q_pow(q, (l - k) * (m - k - m1 + k1)) * gauss(n - (m1 - k1), (m - k) - (m1 - k1), q) *
         gauss(l - k1, k - k1, q);
}

BigCount count_flats_within(long long m, long long k, long long q) {
  if (k < 0 || k > m) return 0;
  return q_pow(q, m - k) * gauss(m, k, q);
}

BigCount count_flats_containing(long long n, long long k, long long m, long long q) {
  if (k < 0 || m < k || m > n) return 0;
  return gauss(n - k, m - k, q);
}

BigCount count_flats_total(long long n, long long k, long long q) {
  return count_flats_within(n, k, q);
}

BigCount hm_size(long long n, long long k, long long q) {
  if (q < 2 || k < 1 || n < k + 1)
    throw std::invalid_argument("hm_size: requires q >= 2 and n >= k+1 >= 2");
  return gauss(n - 1, k - 1, q) - q_pow(q, k * (k - 1)) * gauss(n - k - 1, k - 1, q) +
         q_pow(q, k);
}

BigCount f3_size(long long n, long long q) {
  if (q < 2 || n < 4) throw std::invalid_argument("f3_size: requires q >= 2 and n >= 4");
  return (BigCount(q) * q + q + 1) * gauss(n - 2, 1, q) - BigCount(q) * q - q;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Equality: return "equality";
    case Verdict::Fails: return "fails";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

namespace {

std::string rat_str(const BigRat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

Verdict check_binomial_product_bound(long long a, long long n, long long k, long long q) {
  if (a < 0 || q < 2 || k < a + 1 || n < k) return Verdict::NotApplicable;
  // (q^(k-a)-1)(q^k-1) q^(n-2k) < q^(n-a)-1, with n-2k possibly negative.
  BigRat lhs = BigRat((q_pow(q, k - a) - 1) * (q_pow(q, k) - 1));
  if (n - 2 * k >= 0)
    lhs *= BigRat(q_pow(q, n - 2 * k));
  else
    lhs /= BigRat(q_pow(q, 2 * k - n));
  BigRat rhs(q_pow(q, n - a) - 1);
  return lhs < rhs ? Verdict::Holds : Verdict::Fails;
}

HmSandwichParts hm_sandwich_parts(long long n, long long k, long long q) {
  HmSandwichParts out;
  const long long r = n - 2 * k;
  if (k < 3 || q < 2 || r < 4 || (r == 4 && q == 2)) return out;
  out.applicable = true;
  out.family_size = hm_size(n, k, q);
  const BigCount head = gauss(k, 1, q) * gauss(n - 2, k - 2, q);
  out.middle = head - BigCount(q) * gauss(k, 2, q) * gauss(n - 3, k - 3, q);
  const BigCount denom = q_pow(q, r) * (BigCount(q) * q - 1);
  out.tail = BigRat(head) * (BigRat(denom - 1) / BigRat(denom));
  out.upper = out.family_size > out.middle ? Verdict::Holds : Verdict::Fails;
  out.lower = BigRat(out.middle) > out.tail ? Verdict::Holds : Verdict::Fails;
  return out;
}

Verdict check_hm_sandwich(long long n, long long k, long long q) {
  HmSandwichParts p = hm_sandwich_parts(n, k, q);
  if (!p.applicable) return Verdict::NotApplicable;
  return (p.upper == Verdict::Holds && p.lower == Verdict::Holds) ? Verdict::Holds
                                                                  : Verdict::Fails;
}

BigCount bound_value(const std::string& id, const BoundParams& p) {
  const long long n = p.n, k = p.k, q = p.q;
  if (q < 2 || n < 1 || k < 1) throw std::invalid_argument("bound_value: requires q>=2, n>=1, k>=1");
  if (id == "meet-through-flat") {
    if (p.s < 1 || p.s > k) throw std::invalid_argument("bound_value: requires 1 <= s <= k");
    return gauss(k, 1, q) * gauss(n - p.s - 1, k - p.s - 1, q);
  }
  if (id == "chain-cover") {
    if (p.i < 1 || p.i > p.s || p.s > k)
      throw std::invalid_argument("bound_value: requires 1 <= i <= s <= k");
    BigCount out = gauss(n - p.s, k - p.s, q);
    for (long long j = 0; j < p.s - p.i; ++j) out *= gauss(k, 1, q);
    return out;
  }
  if (id == "tau2-point-pair") {
    if (k < 2) throw std::invalid_argument("bound_value: requires k >= 2");
    return gauss(n - 2, k - 2, q) + BigCount(q) * (q + 1) * (gauss(k, 1, q) - 1) *
                                        gauss(k, 1, q) * gauss(n - 3, k - 3, q);
  }
  if (id == "tau2-mid-flat") {
    if (p.m < 2 || p.m > k) throw std::invalid_argument("bound_value: requires 2 <= m <= k");
    return gauss(p.m, 1, q) * gauss(n - 2, k - 2, q) +
           (gauss(k, 1, q) - gauss(p.m, 1, q)) * gauss(k, 1, q) * gauss(n - 3, k - 3, q) +
           (q_pow(q, p.m + 1) + q_pow(q, p.m) - 1) * gauss(n - p.m, k - p.m, q);
  }
  if (id == "tau2-mid-flat-sharp") {
    if (k < 2) throw std::invalid_argument("bound_value: requires k >= 2");
    return BigCount(q + 1) * gauss(n - 2, k - 2, q) +
           (gauss(k, 1, q) - q - 1) * gauss(k, 1, q) * gauss(n - 3, k - 3, q) +
           (q_pow(q, 3) + q_pow(q, 2) - 1) * gauss(k, 1, q) * gauss(n - 3, k - 3, q);
  }
  if (id == "tau2-residual") {
    if (k < 3) throw std::invalid_argument("bound_value: requires k >= 3");
    return BigCount(q) * gauss(3, 1, q) * (gauss(n - 2, k - 2, q) - gauss(n - 3, k - 3, q)) +
           gauss(n - 3, k - 3, q);
  }
  if (id == "tau2-residual-k3") {
    if (k != 3) throw std::invalid_argument("bound_value: tau2-residual-k3 requires k == 3");
    return f3_size(n, q);
  }
  if (id == "tau-t-product") {
    if (p.t < 3 || p.t > k) throw std::invalid_argument("bound_value: requires 3 <= t <= k");
    BigCount out = q_pow(q, p.t - 1) * gauss(p.t, 1, q) * gauss(n - p.t, k - p.t, q);
    for (long long j = 0; j < p.t - 1; ++j) out *= gauss(k, 1, q);
    return out;
  }
  throw std::invalid_argument("bound_value: unknown bound id '" + id + "'");
}

// ---------------------------------------------------------------------------
// Grid micro-syntax.

namespace {

GridBound parse_bound(const std::string& tok) {
  if (tok.empty()) throw ParseError("grid: empty bound");
  GridBound b;
  std::size_t pos = 0;
  bool neg = false;
  if (tok[0] == '-' || tok[0] == '+') {
    neg = tok[0] == '-';
    pos = 1;
  }
  if (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) {
    std::size_t used = 0;
    b.value = std::stoll(tok, &used);
    if (used != tok.size()) throw ParseError("grid: bad bound '" + tok + "'");
    return b;
  }
  if (neg || pos != 0) throw ParseError("grid: bad bound '" + tok + "'");
  while (pos < tok.size() &&
         (std::isalnum(static_cast<unsigned char>(tok[pos])) || tok[pos] == '_'))
    ++pos;
  if (pos == 0) throw ParseError("grid: bad bound '" + tok + "'");
  b.is_var = true;
  b.var = tok.substr(0, pos);
  if (pos < tok.size()) {
    if (tok[pos] != '+' && tok[pos] != '-') throw ParseError("grid: bad bound '" + tok + "'");
    std::size_t used = 0;
    b.offset = std::stoll(tok.substr(pos), &used);
    if (used != tok.size() - pos) throw ParseError("grid: bad bound '" + tok + "'");
  }
  return b;
}

long long eval_bound(const GridBound& b, const GridSpec::Point& binding) {
  if (!b.is_var) return b.value;
  auto it = binding.find(b.var);
  if (it == binding.end()) throw ParseError("grid: unknown variable '" + b.var + "'");
  return it->second + b.offset;
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec spec;
  std::string piece;
  std::vector<std::string> pieces;
  for (std::stringstream ss(text); std::getline(ss, piece, ',');) pieces.push_back(piece);
  for (const std::string& raw : pieces) {
    std::string tok;
    for (char c : raw)
      if (!std::isspace(static_cast<unsigned char>(c))) tok += c;
    if (tok.empty()) throw ParseError("grid: empty clause in '" + text + "'");
    std::size_t eq = tok.find('=');
    if (eq == std::string::npos) {
      // Continuation of the previous clause's value list.
      if (spec.clauses.empty() || spec.clauses.back().is_range)
        throw ParseError("grid: stray value '" + tok + "'");
      spec.clauses.back().values.push_back(parse_bound(tok));
      continue;
    }
    GridClause clause;
    clause.name = tok.substr(0, eq);
    if (clause.name.empty()) throw ParseError("grid: missing variable name in '" + tok + "'");
    std::string rhs = tok.substr(eq + 1);
    std::size_t dots = rhs.find("..");
    if (dots != std::string::npos) {
      clause.is_range = true;
      clause.lo = parse_bound(rhs.substr(0, dots));
      clause.hi = parse_bound(rhs.substr(dots + 2));
    } else {
      clause.values.push_back(parse_bound(rhs));
    }
    spec.clauses.push_back(std::move(clause));
  }
  if (spec.clauses.empty()) throw ParseError("grid: no clauses in '" + text + "'");
  // Bounds may only reference variables defined by earlier clauses.
  std::set<std::string> defined;
  for (const GridClause& c : spec.clauses) {
    auto check_ref = [&](const GridBound& b) {
      if (b.is_var && !defined.count(b.var))
        throw ParseError("grid: bound references undefined variable '" + b.var + "'");
    };
    if (c.is_range) {
      check_ref(c.lo);
      check_ref(c.hi);
    } else {
      for (const GridBound& v : c.values) check_ref(v);
    }
    if (!defined.insert(c.name).second)
      throw ParseError("grid: variable '" + c.name + "' defined twice");
  }
  return spec;
}

void GridSpec::for_each_point(const std::function<void(const Point&)>& fn) const {
  Point binding;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == clauses.size()) {
      fn(binding);
      return;
    }
    const GridClause& c = clauses[idx];
    if (c.is_range) {
      long long lo = eval_bound(c.lo, binding), hi = eval_bound(c.hi, binding);
      for (long long v = lo; v <= hi; ++v) {
        binding[c.name] = v;
        rec(idx + 1);
      }
    } else {
      for (const GridBound& b : c.values) {
        binding[c.name] = eval_bound(b, binding);
        rec(idx + 1);
      }
    }
    binding.erase(c.name);
  };
  rec(0);
}

// ---------------------------------------------------------------------------
// Audits.

namespace {

long long need(const GridSpec::Point& pt, const char* name) {
  auto it = pt.find(name);
  if (it == pt.end()) throw ParseError(std::string("grid: audit requires variable '") + name + "'");
  return it->second;
}

std::vector<std::pair<std::string, long long>> params_of(const GridSpec::Point& pt) {
  return {pt.begin(), pt.end()};
}

void finish(AuditReport& rep) {
  for (const AuditRow& row : rep.rows) {
    switch (row.verdict) {
      case Verdict::Holds: ++rep.holds; break;
      case Verdict::Equality: ++rep.equalities; break;
      case Verdict::Fails: ++rep.fails; break;
      case Verdict::NotApplicable: ++rep.not_applicable; break;
    }
  }
}

void audit_product_bound(AuditReport& rep, const GridSpec& grid) {
  grid.for_each_point([&](const GridSpec::Point& pt) {
    long long a = need(pt, "a"), k = need(pt, "k"), n = need(pt, "n"), q = need(pt, "q");
    AuditRow row;
    row.id = "2.6";
    row.params = params_of(pt);
    Verdict v = check_binomial_product_bound(a, n, k, q);
    if (v != Verdict::NotApplicable) {
      BigRat lhs = BigRat((q_pow(q, k - a) - 1) * (q_pow(q, k) - 1));
      if (n - 2 * k >= 0)
        lhs *= BigRat(q_pow(q, n - 2 * k));
      else
        lhs /= BigRat(q_pow(q, 2 * k - n));
      row.lhs = rat_str(lhs);
      row.rhs = (q_pow(q, n - a) - 1).str();
    }
    row.verdict = v;
    rep.rows.push_back(std::move(row));
  });
}

void audit_hm_sandwich(AuditReport& rep, const GridSpec& grid) {
  grid.for_each_point([&](const GridSpec::Point& pt) {
    long long k = need(pt, "k"), q = need(pt, "q");
    long long n = pt.count("n") ? pt.at("n") : 2 * k + need(pt, "r");
    HmSandwichParts parts = hm_sandwich_parts(n, k, q);
    auto mk = [&](long long part, std::string lhs, std::string rhs, Verdict v) {
      AuditRow row;
      row.id = "2.7";
      row.params = params_of(pt);
      row.params.emplace_back("part", part);
      row.lhs = std::move(lhs);
      row.rhs = std::move(rhs);
      row.verdict = v;
      rep.rows.push_back(std::move(row));
    };
    if (!parts.applicable) {
      mk(1, "", "", Verdict::NotApplicable);
      mk(2, "", "", Verdict::NotApplicable);
      return;
    }
    mk(1, parts.family_size.str(), parts.middle.str(), parts.upper);
    mk(2, parts.middle.str(), rat_str(parts.tail), parts.lower);
  });
}

void audit_dominance(AuditReport& rep, const GridSpec& grid) {
  grid.for_each_point([&](const GridSpec::Point& pt) {
    long long k = need(pt, "k"), q = need(pt, "q");
    long long n = pt.count("n") ? pt.at("n") : 2 * k + need(pt, "r");
    const bool applicable =
        k >= 3 && ((q >= 3 && n >= 2 * k + 4) || (q == 2 && n >= 2 * k + 5));

    std::vector<std::pair<std::string, BoundParams>> bounds;
    BoundParams base;
    base.n = n;
    base.k = k;
    base.q = q;
    bounds.emplace_back("tau2-point-pair", base);
    {
      BoundParams bp = base;
      bp.m = 2;
      bounds.emplace_back("tau2-mid-flat-sharp", bp);
    }
    for (long long m = 3; m < k; ++m) {
      BoundParams bp = base;
      bp.m = m;
      bounds.emplace_back("tau2-mid-flat", bp);
    }
    bounds.emplace_back(k == 3 ? "tau2-residual-k3" : "tau2-residual", base);
    for (long long t = 3; t <= k; ++t) {
      BoundParams bp = base;
      bp.t = t;
      bounds.emplace_back("tau-t-product", bp);
    }

    BigCount f;
    if (applicable) f = hm_size(n, k, q);
    for (const auto& [id, bp] : bounds) {
      AuditRow row;
      row.id = id;
      row.params = params_of(pt);
      if (!pt.count("n")) row.params.emplace_back("n", n);
      if (bp.m >= 0) row.params.emplace_back("m", bp.m);
      if (bp.t >= 0) row.params.emplace_back("t", bp.t);
      if (!applicable) {
        row.verdict = Verdict::NotApplicable;
        rep.rows.push_back(std::move(row));
        continue;
      }
      BigCount value = bound_value(id, bp);
      row.lhs = value.str();
      row.rhs = f.str();
      if (value < f)
        row.verdict = Verdict::Holds;
      else if (value == f)
        // Only the exact k = 3 residual form is allowed to attain f.
        row.verdict = id == "tau2-residual-k3" ? Verdict::Equality : Verdict::Fails;
      else
        row.verdict = Verdict::Fails;
      rep.rows.push_back(std::move(row));
    }
  });
}

}  // namespace

const char* default_grid(const std::string& audit) {
  if (audit == "2.6") return "a=0..2,k=a+1..6,n=k..20,q=2,3,5";
  if (audit == "2.7") return "k=3..6,r=4..8,q=2,3,5";
  if (audit == "dominance") return "k=3..6,q=2,3,4,r=4..8";
  throw std::invalid_argument("unknown audit '" + audit + "'");
}

AuditReport run_audit(const std::string& audit, const std::string& grid) {
  AuditReport rep;
  rep.audit = audit;
  rep.grid = grid.empty() ? default_grid(audit) : grid;
  GridSpec spec = GridSpec::parse(rep.grid);
  if (audit == "2.6")
    audit_product_bound(rep, spec);
  else if (audit == "2.7")
    audit_hm_sandwich(rep, spec);
  else if (audit == "dominance")
    audit_dominance(rep, spec);
  else
    throw std::invalid_argument("unknown audit '" + audit + "'");
  finish(rep);
  return rep;
}

std::string AuditReport::to_csv() const {
  // Column order: id, parameter names by first appearance, lhs, rhs, verdict.
  std::vector<std::string> names;
  for (const AuditRow& row : rows)
    for (const auto& [name, _] : row.params)
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  std::ostringstream os;
  os << "lemma_id";
  for (const std::string& nm : names) os << ',' << nm;
  os << ",lhs,rhs,verdict\n";
  for (const AuditRow& row : rows) {
    os << row.id;
    for (const std::string& nm : names) {
      os << ',';
      for (const auto& [pn, pv] : row.params)
        if (pn == nm) {
          os << pv;
          break;
        }
    }
    os << ',' << row.lhs << ',' << row.rhs << ',' << verdict_name(row.verdict) << '\n';
  }
  return os.str();
}

std::string AuditReport::to_json() const {
  nlohmann::json j;
  j["audit"] = audit;
  j["grid"] = grid;
  j["summary"] = {{"rows", rows.size()},
                  {"holds", holds},
                  {"equalities", equalities},
                  {"fails", fails},
                  {"not_applicable", not_applicable},
                  {"passed", passed()}};
  j["rows"] = nlohmann::json::array();
  for (const AuditRow& row : rows) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [name, value] : row.params) params[name] = value;
    j["rows"].push_back({{"id", row.id},
                         {"params", params},
                         {"lhs", row.lhs},
                         {"rhs", row.rhs},
                         {"verdict", verdict_name(row.verdict)}});
  }
  return j.dump(2);
}

}  // namespace affina
