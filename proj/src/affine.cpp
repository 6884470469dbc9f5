#include "affine.hpp"

#include <stdexcept>

namespace affina {

Flat Flat::through(Subspace direction, const Vec& point) {
  Vec reduced = direction.reduce(point);
  return Flat(std::move(direction), std::move(reduced));
}

Flat Flat::from_canonical(Subspace direction, Vec point) {
  return Flat(std::move(direction), std::move(point));
}

bool Flat::contains_point(const Vec& v) const {
  FieldSpec f(q());
  return dir_.contains(vec_sub(v, point_, f));
}

std::size_t FlatHash::operator()(const Flat& f) const {
  // FNV-1a over the canonical words.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t w) {
    h ^= w;
    h *= 1099511628211ull;
  };
  mix(f.ambient_dim());
  mix(f.dim());
  for (const Vec& row : f.direction().basis())
    for (Coeff c : row) mix(c + 1);
  for (Coeff c : f.representative()) mix(c + 1);
  return static_cast<std::size_t>(h);
}

namespace {

void check_same_space(const Flat& a, const Flat& b, const char* op) {
  if (a.q() != b.q() || a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument(std::string(op) + ": mismatched field or ambient dimension");
}

}  // namespace

std::optional<Flat> flat_intersection(const Flat& a, const Flat& b) {
  check_same_space(a, b, "flat_intersection");
  FieldSpec f(a.q());
  const Vec diff = vec_sub(b.representative(), a.representative(), f);
  std::vector<Vec> stacked = a.direction().basis();
  stacked.insert(stacked.end(), b.direction().basis().begin(), b.direction().basis().end());
  auto coeffs = express_in_span(f, a.ambient_dim(), stacked, diff);
  if (!coeffs) return std::nullopt;
  // diff = u + w with u in dir(a), w in dir(b); then a.rep + u lies in both.
  Vec x = a.representative();
  for (std::uint32_t i = 0; i < a.dim(); ++i)
    if ((*coeffs)[i] != 0) vec_add_scaled(x, a.direction().basis()[i], (*coeffs)[i], f);
  Subspace dir = subspace_intersection(a.direction(), b.direction());
  return Flat::through(std::move(dir), x);
}

int flat_meet_dim(const Flat& a, const Flat& b) {
  check_same_space(a, b, "flat_meet_dim");
  FieldSpec f(a.q());
  std::vector<Vec> stacked = a.direction().basis();
  stacked.insert(stacked.end(), b.direction().basis().begin(), b.direction().basis().end());
  RrefResult sum = rref(f, a.ambient_dim(), std::move(stacked));
  // Membership of the representative difference in dir(a) + dir(b).
  Vec diff = vec_sub(b.representative(), a.representative(), f);
  for (std::size_t i = 0; i < sum.rows.size(); ++i) {
    Coeff c = diff[sum.pivots[i]];
    if (c != 0) vec_add_scaled(diff, sum.rows[i], f.neg(c), f);
  }
  for (Coeff c : diff)
    if (c != 0) return -1;
  return static_cast<int>(a.dim() + b.dim()) - static_cast<int>(sum.rows.size());
}

Flat flat_join(const Flat& a, const Flat& b) {
  check_same_space(a, b, "flat_join");
  FieldSpec f(a.q());
  std::vector<Vec> rows = a.direction().basis();
  rows.insert(rows.end(), b.direction().basis().begin(), b.direction().basis().end());
  rows.push_back(vec_sub(b.representative(), a.representative(), f));
  RrefResult rr = rref(f, a.ambient_dim(), std::move(rows));
  Subspace dir =
      Subspace::from_rref(a.q(), a.ambient_dim(), std::move(rr.rows), std::move(rr.pivots));
  return Flat::through(std::move(dir), a.representative());
}

bool flat_contains(const Flat& outer, const Flat& inner) {
  check_same_space(outer, inner, "flat_contains");
  if (!outer.direction().contains(inner.direction())) return false;
  FieldSpec f(outer.q());
  return outer.direction().contains(
      vec_sub(inner.representative(), outer.representative(), f));
}

bool flat_incident(const Flat& a, const Flat& b) {
  return flat_contains(a, b) || flat_contains(b, a);
}

namespace {

// Visits `base + sum(lambda_j * gens[j])` for all coefficient tuples, first
// generator varying slowest.
void for_each_combination(const FieldSpec& f, const Vec& base, const std::vector<Vec>& gens,
                          const std::function<void(const Vec&)>& fn) {
  const std::uint32_t q = f.q();
  std::vector<Coeff> lambda(gens.size(), 0);
  Vec cur = base;
  while (true) {
    fn(cur);
    std::size_t idx = lambda.size();
    while (idx > 0 && lambda[idx - 1] == q - 1) --idx;
    if (idx == 0) break;
    ++lambda[idx - 1];
    for (std::size_t j = idx; j < lambda.size(); ++j) lambda[j] = 0;
    cur = base;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (lambda[j] != 0) vec_add_scaled(cur, gens[j], lambda[j], f);
  }
}

// A complement of D inside W: vectors of W's basis that remain independent
// after D is accounted for.
std::vector<Vec> complement_in(const FieldSpec& f, const Subspace& D, const Subspace& W) {
  std::vector<Vec> elim = D.basis();
  std::vector<Vec> comp;
  for (const Vec& w : W.basis()) {
    std::vector<Vec> trial = elim;
    trial.push_back(w);
    RrefResult rr = rref(f, W.ambient_dim(), std::move(trial));
    if (rr.rows.size() > elim.size()) {
      comp.push_back(w);
      elim = std::move(rr.rows);
    }
  }
  return comp;
}

}  // namespace

void for_each_flat(const FieldSpec& f, std::uint32_t n, std::uint32_t k,
                   const FlatVisitor& visit) {
  for_each_flat(f, n, k, nullptr, nullptr, visit);
}

void for_each_flat(const FieldSpec& f, std::uint32_t n, std::uint32_t k, const Flat* within,
                   const Flat* containing, const FlatVisitor& visit) {
  if (within != nullptr && (within->q() != f.q() || within->ambient_dim() != n))
    throw std::invalid_argument("for_each_flat: `within` lives in a different space");
  if (containing != nullptr && (containing->q() != f.q() || containing->ambient_dim() != n))
    throw std::invalid_argument("for_each_flat: `containing` lives in a different space");
  if (within != nullptr && k > within->dim()) return;
  if (containing != nullptr && containing->dim() > k) return;
  if (k > n) return;

  if (containing != nullptr) {
    // F >= C forces dir(F) >= dir(C) and F = dir(F) + C.rep; if also F <= W,
    // directions range between dir(C) and dir(W).
    if (within != nullptr && !flat_contains(*within, *containing))
      throw std::invalid_argument("for_each_flat: `containing` is not inside `within`");
    const Subspace* wdir = within != nullptr ? &within->direction() : nullptr;
    for_each_subspace(f, n, k, wdir, &containing->direction(), [&](const Subspace& D) {
      visit(Flat::through(D, containing->representative()));
    });
    return;
  }

  if (within != nullptr) {
    // Directions inside dir(W); coset representatives W.rep + complement
    // combinations, one per parallel copy.
    for_each_subspace(f, n, k, &within->direction(), nullptr, [&](const Subspace& D) {
      std::vector<Vec> comp = complement_in(f, D, within->direction());
      for_each_combination(f, within->representative(), comp,
                           [&](const Vec& rep) { visit(Flat::through(D, rep)); });
    });
    return;
  }

  // Unconstrained: canonical representatives are exactly the vectors that
  // vanish on the direction's pivot columns.
  for_each_subspace(f, n, k, [&](const Subspace& D) {
    std::vector<std::uint32_t> free_cols;
    {
      std::vector<char> is_piv(n, 0);
      for (std::uint32_t p : D.pivots()) is_piv[p] = 1;
      for (std::uint32_t c = 0; c < n; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    }
    Vec rep(n, 0);
    const std::uint32_t q = f.q();
    std::vector<Coeff> val(free_cols.size(), 0);
    while (true) {
      visit(Flat::from_canonical(D, rep));
      std::size_t idx = val.size();
      while (idx > 0 && val[idx - 1] == q - 1) {
        --idx;
        val[idx] = 0;
        rep[free_cols[idx]] = 0;
      }
      if (idx == 0) break;
      ++val[idx - 1];
      rep[free_cols[idx - 1]] = val[idx - 1];
    }
  });
}

std::vector<Flat> enumerate_flats(const FieldSpec& f, std::uint32_t n, std::uint32_t k,
                                  const Flat* within, const Flat* containing) {
  std::vector<Flat> out;
  for_each_flat(f, n, k, within, containing, [&](const Flat& fl) { out.push_back(fl); });
  return out;
}

}  // namespace affina
