#include "fieldlinalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace affina {

namespace {

bool is_prime(std::uint32_t v) {
  if (v < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

void check_vec(const Vec& v, std::uint32_t n, std::uint32_t q) {
  if (v.size() != n) throw std::invalid_argument("vector length does not match ambient dimension");
  for (Coeff c : v)
    if (c >= q) throw std::invalid_argument("vector entry out of range for F_q");
}

}  // namespace

FieldSpec::FieldSpec(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) throw std::invalid_argument("field order must be prime, got " + std::to_string(q));
  if (q > (1u << 15)) throw std::invalid_argument("field order too large for this toolkit");
}

Coeff FieldSpec::inv(Coeff a) const {
  if (a == 0) throw std::invalid_argument("division by zero in F_q");
  // Fermat: a^(q-2) mod q.
  std::uint64_t base = a % q_, result = 1;
  for (std::uint32_t e = q_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % q_;
    base = base * base % q_;
  }
  return static_cast<Coeff>(result);
}

void vec_add_scaled(Vec& target, const Vec& row, Coeff factor, const FieldSpec& f) {
  for (std::size_t i = 0; i < target.size(); ++i)
    target[i] = f.add(target[i], f.mul(factor, row[i]));
}

Vec vec_sub(const Vec& a, const Vec& b, const FieldSpec& f) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

RrefResult rref(const FieldSpec& f, std::uint32_t n, std::vector<Vec> rows) {
  RrefResult out;
  std::size_t r = 0;
  for (std::uint32_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t pr = r;
    while (pr < rows.size() && rows[pr][col] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[r], rows[pr]);
    Coeff piv_inv = f.inv(rows[r][col]);
    for (Coeff& c : rows[r]) c = f.mul(c, piv_inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      vec_add_scaled(rows[i], rows[r], f.neg(rows[i][col]), f);
    }
    out.pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

Subspace::Subspace(const FieldSpec& f, std::uint32_t n, const std::vector<Vec>& generators)
    : q_(f.q()), n_(n) {
  for (const Vec& g : generators) check_vec(g, n, q_);
  RrefResult rr = rref(f, n, generators);
  rows_ = std::move(rr.rows);
  pivots_ = std::move(rr.pivots);
}

Subspace Subspace::zero(const FieldSpec& f, std::uint32_t n) {
  Subspace s(f.q(), n);
  return s;
}

Subspace Subspace::full(const FieldSpec& f, std::uint32_t n) {
  Subspace s(f.q(), n);
  for (std::uint32_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    s.rows_.push_back(std::move(e));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::from_rref(std::uint32_t q, std::uint32_t n, std::vector<Vec> rows,
                             std::vector<std::uint32_t> pivots) {
  Subspace s(q, n);
  s.rows_ = std::move(rows);
  s.pivots_ = std::move(pivots);
  return s;
}

Vec Subspace::reduce(Vec v) const {
  FieldSpec f(q_);
  check_vec(v, n_, q_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Coeff c = v[pivots_[i]];
    if (c != 0) vec_add_scaled(v, rows_[i], f.neg(c), f);
  }
  return v;
}

bool Subspace::contains(const Vec& v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Coeff c) { return c == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (q_ != other.q_ || n_ != other.n_)
    throw std::invalid_argument("subspace containment across different spaces");
  for (const Vec& row : other.rows_)
    if (!contains(row)) return false;
  return true;
}

namespace {

void check_same_space(const Subspace& a, const Subspace& b, const char* op) {
  if (a.q() != b.q() || a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument(std::string(op) + ": mismatched field or ambient dimension");
}

}  // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  check_same_space(a, b, "subspace_sum");
  std::vector<Vec> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  FieldSpec f(a.q());
  RrefResult rr = rref(f, a.ambient_dim(), std::move(rows));
  return Subspace::from_rref(a.q(), a.ambient_dim(), std::move(rr.rows), std::move(rr.pivots));
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  check_same_space(a, b, "subspace_intersection");
  const std::uint32_t n = a.ambient_dim();
  FieldSpec f(a.q());
  // Block rows [v | v] for v in basis(a), [w | 0] for w in basis(b).
  std::vector<Vec> wide;
  for (const Vec& v : a.basis()) {
    Vec row(2 * n, 0);
    std::copy(v.begin(), v.end(), row.begin());
    std::copy(v.begin(), v.end(), row.begin() + n);
    wide.push_back(std::move(row));
  }
  for (const Vec& w : b.basis()) {
    Vec row(2 * n, 0);
    std::copy(w.begin(), w.end(), row.begin());
    wide.push_back(std::move(row));
  }
  RrefResult rr = rref(f, 2 * n, std::move(wide));
  std::vector<Vec> inter;
  for (std::size_t i = 0; i < rr.rows.size(); ++i) {
    if (rr.pivots[i] < n) continue;  // left half nonzero
    inter.emplace_back(rr.rows[i].begin() + n, rr.rows[i].end());
  }
  RrefResult canon = rref(f, n, std::move(inter));
  return Subspace::from_rref(a.q(), n, std::move(canon.rows), std::move(canon.pivots));
}

std::optional<Vec> express_in_span(const FieldSpec& f, std::uint32_t n,
                                   const std::vector<Vec>& rows, const Vec& target) {
  const std::size_t m = rows.size();
  // Augment each row with a coefficient-tracking tail: [row | e_i].
  std::vector<Vec> aug;
  aug.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vec row(n + m, 0);
    std::copy(rows[i].begin(), rows[i].end(), row.begin());
    row[n + i] = 1;
    aug.push_back(std::move(row));
  }
  // Reduce on the left n columns only; the tail records combinations.
  std::size_t r = 0;
  std::vector<std::uint32_t> pivots;
  for (std::uint32_t col = 0; col < n && r < aug.size(); ++col) {
    std::size_t pr = r;
    while (pr < aug.size() && aug[pr][col] == 0) ++pr;
    if (pr == aug.size()) continue;
    std::swap(aug[r], aug[pr]);
    Coeff piv_inv = f.inv(aug[r][col]);
    for (Coeff& c : aug[r]) c = f.mul(c, piv_inv);
    for (std::size_t i = 0; i < aug.size(); ++i) {
      if (i == r || aug[i][col] == 0) continue;
      vec_add_scaled(aug[i], aug[r], f.neg(aug[i][col]), f);
    }
    pivots.push_back(col);
    ++r;
  }
  Vec w = target;
  Vec coeffs(m, 0);
  for (std::size_t i = 0; i < r; ++i) {
    Coeff c = w[pivots[i]];
    if (c == 0) continue;
    for (std::uint32_t col = 0; col < n; ++col) w[col] = f.sub(w[col], f.mul(c, aug[i][col]));
    for (std::size_t t = 0; t < m; ++t)
      coeffs[t] = f.add(coeffs[t], f.mul(c, aug[i][n + t]));
  }
  for (Coeff c : w)
    if (c != 0) return std::nullopt;
  return coeffs;
}

namespace {

// Visits every RREF matrix with d pivot rows over columns {0..n-1}:
// pivot-column sets in lexicographic order, then free entries in row-major
// odometer order (earlier free positions vary slowest).
void visit_rref_cells(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                      const std::function<void(const std::vector<Vec>&,
                                               const std::vector<std::uint32_t>&)>& fn) {
  if (d > n) return;
  const std::uint32_t q = f.q();
  if (d == 0) {
    std::vector<Vec> none;
    std::vector<std::uint32_t> nopiv;
    fn(none, nopiv);
    return;
  }
  std::vector<std::uint32_t> piv(d);
  for (std::uint32_t i = 0; i < d; ++i) piv[i] = i;
  std::vector<Vec> rows(d, Vec(n, 0));
  while (true) {
    std::vector<char> is_piv(n, 0);
    for (std::uint32_t p : piv) is_piv[p] = 1;
    // Free positions, row-major.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t c = piv[i] + 1; c < n; ++c)
        if (!is_piv[c]) free_pos.emplace_back(i, c);
    for (std::uint32_t i = 0; i < d; ++i) {
      std::fill(rows[i].begin(), rows[i].end(), 0);
      rows[i][piv[i]] = 1;
    }
    std::vector<Coeff> val(free_pos.size(), 0);
    while (true) {
      fn(rows, piv);
      // Odometer: last position fastest.
      std::size_t idx = free_pos.size();
      while (idx > 0 && val[idx - 1] == q - 1) {
        --idx;
        val[idx] = 0;
        rows[free_pos[idx].first][free_pos[idx].second] = 0;
      }
      if (idx == 0) break;
      ++val[idx - 1];
      rows[free_pos[idx - 1].first][free_pos[idx - 1].second] = val[idx - 1];
    }
    // Next pivot combination in lexicographic order.
    std::int32_t i = static_cast<std::int32_t>(d) - 1;
    while (i >= 0 && piv[i] == n - d + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (std::uint32_t j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
}

void for_each_unconstrained(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                            const SubspaceVisitor& visit) {
  visit_rref_cells(f, n, d,
                   [&](const std::vector<Vec>& rows, const std::vector<std::uint32_t>& piv) {
                     visit(Subspace::from_rref(f.q(), n, rows,
                                               std::vector<std::uint32_t>(piv.begin(), piv.end())));
                   });
}

// d-subspaces of `within`, via RREF coefficient matrices in the coordinates of
// within's basis. If C (d x m) is RREF and W's basis is RREF, then C*W is RREF
// with pivot columns W.pivots[C.pivots], so no re-reduction is needed.
void for_each_within(const FieldSpec& f, const Subspace& W, std::uint32_t d,
                     const SubspaceVisitor& visit) {
  const std::uint32_t n = W.ambient_dim();
  const std::uint32_t m = W.dim();
  visit_rref_cells(f, m, d,
                   [&](const std::vector<Vec>& crows, const std::vector<std::uint32_t>& cpiv) {
                     std::vector<Vec> rows(crows.size(), Vec(n, 0));
                     for (std::size_t i = 0; i < crows.size(); ++i)
                       for (std::uint32_t t = 0; t < m; ++t)
                         if (crows[i][t] != 0)
                           vec_add_scaled(rows[i], W.basis()[t], crows[i][t], f);
                     std::vector<std::uint32_t> piv(cpiv.size());
                     for (std::size_t i = 0; i < cpiv.size(); ++i) piv[i] = W.pivots()[cpiv[i]];
                     visit(Subspace::from_rref(f.q(), n, std::move(rows), std::move(piv)));
                   });
}

// d-subspaces containing C: each is C (+) V for a unique (d-c)-subspace V of
// the complement spanned by the standard vectors at C's non-pivot columns.
void for_each_containing(const FieldSpec& f, std::uint32_t n, const Subspace& C, std::uint32_t d,
                         const SubspaceVisitor& visit) {
  const std::uint32_t c = C.dim();
  std::vector<std::uint32_t> nonpiv;
  {
    std::vector<char> is_piv(n, 0);
    for (std::uint32_t p : C.pivots()) is_piv[p] = 1;
    for (std::uint32_t col = 0; col < n; ++col)
      if (!is_piv[col]) nonpiv.push_back(col);
  }
  visit_rref_cells(f, static_cast<std::uint32_t>(nonpiv.size()), d - c,
                   [&](const std::vector<Vec>& vrows, const std::vector<std::uint32_t>&) {
                     std::vector<Vec> rows = C.basis();
                     for (const Vec& vr : vrows) {
                       Vec row(n, 0);
                       for (std::size_t j = 0; j < nonpiv.size(); ++j) row[nonpiv[j]] = vr[j];
                       rows.push_back(std::move(row));
                     }
                     RrefResult rr = rref(f, n, std::move(rows));
                     visit(Subspace::from_rref(f.q(), n, std::move(rr.rows), std::move(rr.pivots)));
                   });
}

// Subspaces C <= S <= W of dimension d: run the `containing` scheme inside
// W-coordinates, then map back through W's basis (RREF is preserved).
void for_each_between(const FieldSpec& f, const Subspace& C, const Subspace& W, std::uint32_t d,
                      const SubspaceVisitor& visit) {
  const std::uint32_t n = W.ambient_dim();
  const std::uint32_t m = W.dim();
  // Coordinates of C's basis w.r.t. W's basis: read off W's pivot columns.
  std::vector<Vec> coords;
  for (const Vec& row : C.basis()) {
    Vec cv(m, 0);
    for (std::uint32_t t = 0; t < m; ++t) cv[t] = row[W.pivots()[t]];
    coords.push_back(std::move(cv));
  }
  RrefResult cc = rref(f, m, std::move(coords));
  Subspace Cc = Subspace::from_rref(f.q(), m, std::move(cc.rows), std::move(cc.pivots));
  for_each_containing(f, m, Cc, d, [&](const Subspace& S) {
    std::vector<Vec> rows(S.dim(), Vec(n, 0));
    for (std::uint32_t i = 0; i < S.dim(); ++i)
      for (std::uint32_t t = 0; t < m; ++t)
        if (S.basis()[i][t] != 0) vec_add_scaled(rows[i], W.basis()[t], S.basis()[i][t], f);
    std::vector<std::uint32_t> piv(S.dim());
    for (std::uint32_t i = 0; i < S.dim(); ++i) piv[i] = W.pivots()[S.pivots()[i]];
    visit(Subspace::from_rref(f.q(), n, std::move(rows), std::move(piv)));
  });
}

}  // namespace

void for_each_subspace(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                       const SubspaceVisitor& visit) {
  for_each_subspace(f, n, d, nullptr, nullptr, visit);
}

void for_each_subspace(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                       const Subspace* within, const Subspace* containing,
                       const SubspaceVisitor& visit) {
  if (within != nullptr) {
    if (within->q() != f.q() || within->ambient_dim() != n)
      throw std::invalid_argument("for_each_subspace: `within` lives in a different space");
    if (d > within->dim()) return;
  }
  if (containing != nullptr) {
    if (containing->q() != f.q() || containing->ambient_dim() != n)
      throw std::invalid_argument("for_each_subspace: `containing` lives in a different space");
    if (containing->dim() > d) return;
  }
  if (within != nullptr && containing != nullptr) {
    if (!within->contains(*containing))
      throw std::invalid_argument("for_each_subspace: `containing` is not inside `within`");
    for_each_between(f, *containing, *within, d, visit);
  } else if (within != nullptr) {
    for_each_within(f, *within, d, visit);
  } else if (containing != nullptr) {
    if (d > n) return;
    for_each_containing(f, n, *containing, d, visit);
  } else {
    for_each_unconstrained(f, n, d, visit);
  }
}

std::vector<Subspace> enumerate_subspaces(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                                          const Subspace* within, const Subspace* containing) {
  std::vector<Subspace> out;
  for_each_subspace(f, n, d, within, containing, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

}  // namespace affina
