#include "families.hpp"

#include <atomic>
#include <memory>
#include <random>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"

namespace affina {

FlatFamily::FlatFamily(const FieldSpec& f, std::uint32_t n, std::uint32_t k)
    : q_(f.q()), n_(n), k_(k) {
  if (k > n) throw std::invalid_argument("FlatFamily: k exceeds ambient dimension");
}

bool FlatFamily::add(const Flat& flat) {
  if (flat.q() != q_ || flat.ambient_dim() != n_)
    throw std::invalid_argument("FlatFamily::add: flat lives in a different space");
  if (flat.dim() != k_) throw std::invalid_argument("FlatFamily::add: flat has wrong dimension");
  if (!index_.insert(flat).second) return false;
  members_.push_back(flat);
  return true;
}

bool flats_intersecting(const Flat& a, const Flat& b) { return flat_meet_dim(a, b) >= 1; }

bool is_intersecting(const FlatFamily& fam) {
  const auto& mem = fam.members();
  const std::size_t m = mem.size();
  if (m < 2) return true;
  std::atomic<bool> ok{true};
  // Pair index space, split in blocks; early exit is monotone (flag only ever
  // clears), so the result is schedule-independent.
  parallel_blocks(0, m, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi && ok.load(std::memory_order_relaxed); ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (!flats_intersecting(mem[i], mem[j])) {
          ok.store(false, std::memory_order_relaxed);
          return;
        }
  });
  return ok.load();
}

namespace {

bool intersects_all(const std::vector<Flat>& members, const Flat& cand) {
  for (const Flat& m : members)
    if (flat_meet_dim(cand, m) < 1) return false;
  return true;
}

}  // namespace

TauResult covering_number(const FlatFamily& fam, std::uint64_t budget) {
  if (fam.size() == 0) throw std::invalid_argument("covering_number: empty family");
  if (fam.k() == 0)
    throw std::invalid_argument("covering_number: no flat meets a 0-flat in dimension >= 1");
  FieldSpec f(fam.q());
  const std::uint32_t n = fam.ambient_dim();
  const Flat& first = fam.members().front();
  // Any witness meets the first member in dimension >= 1, hence contains one
  // of its lines; the line set is the complete candidate pool for s = 1 and
  // seeds the candidate generation for larger s.
  std::vector<Flat> lines = enumerate_flats(f, n, 1, &first, nullptr);

  TauResult res;
  for (std::uint32_t s = 1; s <= n; ++s) {
    std::vector<Flat> cands;
    if (s == 1) {
      cands = lines;
    } else {
      std::unordered_set<Flat, FlatHash> seen;
      for (const Flat& line : lines)
        for_each_flat(f, n, s, nullptr, &line, [&](const Flat& cand) {
          if (seen.insert(cand).second) cands.push_back(cand);
        });
    }
    for (const Flat& cand : cands) {
      if (res.nodes >= budget) {
        res.status = TauResult::Status::LowerBoundOnly;
        res.value = s;  // dimensions < s are exhausted, so tau >= s
        return res;
      }
      ++res.nodes;
      if (intersects_all(fam.members(), cand)) {
        res.status = TauResult::Status::Exact;
        res.value = s;
        res.witness = cand;
        return res;
      }
    }
  }
  // Unreachable for k >= 1: the whole space intersects every member.
  throw std::logic_error("covering_number: no witness found up to the ambient dimension");
}

PointSelector fixed_point_selector(Vec point) {
  return [point](std::size_t) { return point; };
}

PointSelector seeded_point_selector(std::uint64_t seed, const Flat& inside) {
  FieldSpec f(inside.q());
  auto rng = std::make_shared<std::mt19937_64>(seed);
  Flat flat = inside;
  return [rng, flat, f](std::size_t) {
    Vec p = flat.representative();
    for (const Vec& row : flat.direction().basis()) {
      Coeff c = static_cast<Coeff>((*rng)() % f.q());
      if (c != 0) vec_add_scaled(p, row, c, f);
    }
    return p;
  };
}

FlatFamily pencil_family(const Flat& E, std::uint32_t k) {
  if (E.dim() != 1) throw std::invalid_argument("pencil_family: E must be a 1-flat");
  FieldSpec f(E.q());
  if (k < 1 || k > E.ambient_dim())
    throw std::invalid_argument("pencil_family: k out of range");
  FlatFamily fam(f, E.ambient_dim(), k);
  for_each_flat(f, E.ambient_dim(), k, nullptr, &E, [&](const Flat& F) { fam.add(F); });
  return fam;
}

FlatFamily hm_family(const Flat& E, const Flat& U, const PointSelector* selector) {
  if (E.q() != U.q() || E.ambient_dim() != U.ambient_dim())
    throw std::invalid_argument("hm_family: E and U live in different spaces");
  if (E.dim() != 1) throw std::invalid_argument("hm_family: E must be a 1-flat");
  const std::uint32_t k = U.dim();
  const std::uint32_t n = E.ambient_dim();
  if (k < 2 || k + 1 > n) throw std::invalid_argument("hm_family: requires 2 <= dim U <= n-1");
  auto meet = flat_intersection(E, U);
  if (!meet || meet->dim() != 0)
    throw std::invalid_argument("hm_family: E and U must meet in exactly one point");
  const Vec x = meet->representative();
  FieldSpec f(E.q());

  // The join of E and U: a (k+1)-flat through x.
  Subspace jdir = subspace_sum(E.direction(), U.direction());
  Flat join = Flat::through(jdir, x);

  FlatFamily fam(f, n, k);
  // Members through E that intersect U.
  for_each_flat(f, n, k, nullptr, &E, [&](const Flat& F) {
    if (flat_meet_dim(F, U) >= 1) fam.add(F);
  });
  // Exchanged flats: translates of the k-subspaces of the join direction that
  // do not contain dir(E).
  PointSelector fixed = fixed_point_selector(x);
  const PointSelector& pick = selector != nullptr ? *selector : fixed;
  std::size_t idx = 0;
  for_each_subspace(f, n, k, &jdir, nullptr, [&](const Subspace& T) {
    if (T.contains(E.direction())) return;
    Vec t = pick(idx++);
    if (!join.contains_point(t))
      throw std::invalid_argument("hm_family: selector returned a point outside the join of E and U");
    fam.add(Flat::through(T, t));
  });
  return fam;
}

FlatFamily f3_family(const Flat& U, const PointSelector* selector) {
  if (U.dim() != 3) throw std::invalid_argument("f3_family: U must be a 3-flat");
  FieldSpec f(U.q());
  const std::uint32_t n = U.ambient_dim();
  if (n < 4) throw std::invalid_argument("f3_family: requires ambient dimension >= 4");
  PointSelector fixed = fixed_point_selector(U.representative());
  const PointSelector& pick = selector != nullptr ? *selector : fixed;
  FlatFamily fam(f, n, 3);
  std::size_t idx = 0;
  for_each_subspace(f, n, 2, &U.direction(), nullptr, [&](const Subspace& S) {
    Vec s = pick(idx++);
    if (!U.contains_point(s))
      throw std::invalid_argument("f3_family: selector returned a point outside U");
    Flat base = Flat::through(S, s);
    for_each_flat(f, n, 3, nullptr, &base, [&](const Flat& F) { fam.add(F); });
  });
  return fam;
}

FlatFamily maximal_closure(const FlatFamily& fam, std::uint64_t flat_budget) {
  FieldSpec f(fam.q());
  const std::uint32_t n = fam.ambient_dim(), k = fam.k();
  BigCount total = count_flats_total(n, k, fam.q());
  if (total > BigCount(flat_budget))
    throw ScaleError("maximal_closure: " + total.str() + " k-flats exceed the budget of " +
                     std::to_string(flat_budget));
  if (!is_intersecting(fam))
    throw std::invalid_argument("maximal_closure: input family is not intersecting");

  std::vector<Flat> all = enumerate_flats(f, n, k);
  // Phase 1 (parallel): screen every flat against the input members only.
  // Rejection is monotone — a flat failing against a subset fails against any
  // superset — so this is schedule-independent.
  std::vector<char> passes(all.size(), 0);
  parallel_blocks(0, all.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      passes[i] = !fam.contains(all[i]) && intersects_all(fam.members(), all[i]);
  });
  // Phase 2 (sequential, enumeration order): accept survivors that also meet
  // everything accepted before them.  One sweep reaches the fixpoint.
  FlatFamily out = fam;
  std::vector<Flat> accepted;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!passes[i]) continue;
    if (intersects_all(accepted, all[i])) {
      accepted.push_back(all[i]);
      out.add(all[i]);
    }
  }
  return out;
}

FamilyStats family_stats(const FlatFamily& fam, std::uint64_t tau_budget) {
  FamilyStats st;
  st.size = fam.size();
  st.intersecting = is_intersecting(fam);
  if (fam.size() > 0 && fam.k() >= 1) st.tau = covering_number(fam, tau_budget);
  const long long n = fam.ambient_dim(), k = fam.k(), q = fam.q();
  st.pencil_bound = gauss(n - 1, k - 1, q);
  if (k >= 1 && n >= k + 1) st.hm_bound = hm_size(n, k, q);
  return st;
}

}  // namespace affina
