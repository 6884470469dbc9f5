// Acceptance sweep: nine end-to-end criteria, one PASS/FAIL line each with
// the measured runtime.  The process exit code is the number of failures.
//
// Each criterion pins its own tolerances in code: frozen expected values,
// per-instance enumeration caps, and a wall-clock limit.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "affine.hpp"
#include "counting.hpp"
#include "enumcheck.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "fieldlinalg.hpp"
#include "search.hpp"
#include "support/setgeom.hpp"

using namespace affina;

namespace {

int g_failures = 0;

// Runs one criterion: `fn` fills `detail` and returns pass/fail; a thrown
// exception fails the criterion, as does exceeding `limit_secs`.
void criterion(int index, const std::string& label, double limit_secs,
               const std::function<bool(std::string&)>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("unexpected exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (pass && limit_secs > 0 && secs > limit_secs) {
    pass = false;
    detail += " [exceeded the " + std::to_string(limit_secs) + " s limit]";
  }
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << index << ": " << label << " — "
            << detail << " (" << secs << " s)" << std::endl;
  if (!pass) ++g_failures;
}

Flat axis_flat(const FieldSpec& f, std::uint32_t n, std::uint32_t lo, std::uint32_t dim) {
  std::vector<Vec> rows;
  for (std::uint32_t i = 0; i < dim; ++i) {
    Vec row(n, 0);
    row[lo + i] = 1;
    rows.push_back(row);
  }
  return Flat::through(Subspace(f, n, rows), Vec(n, 0));
}

setgeom::PointSet points_of(const Flat& fl) {
  return setgeom::flat_points(fl.direction().basis(), fl.representative(), fl.q());
}

bool meets_all(const FlatFamily& fam, const Flat& flat) {
  return std::all_of(fam.members().begin(), fam.members().end(),
                     [&](const Flat& m) { return flats_intersecting(flat, m); });
}

// ---- criterion 1: flat algebra vs. the set-theoretic oracle ----

bool check_oracle_space(std::uint32_t n, std::uint32_t q, std::size_t expect_flats,
                        std::string& detail) {
  FieldSpec f(q);
  std::vector<Flat> flats;
  for (std::uint32_t k = 0; k <= n; ++k)
    for (const Flat& fl : enumerate_flats(f, n, k)) flats.push_back(fl);
  if (flats.size() != expect_flats) {
    detail = "AG(" + std::to_string(n) + "," + std::to_string(q) + "): expected " +
             std::to_string(expect_flats) + " flats, enumerated " + std::to_string(flats.size());
    return false;
  }
  for (const Flat& a : flats) {
    setgeom::PointSet pa = points_of(a);
    for (const Flat& b : flats) {
      setgeom::PointSet pb = points_of(b);
      setgeom::PointSet pmeet = setgeom::intersect(pa, pb);

      auto meet = flat_intersection(a, b);
      if (pmeet.empty() != !meet.has_value()) return false;
      if (meet && points_of(*meet) != pmeet) return false;
      if (flat_meet_dim(a, b) != setgeom::set_dim(pmeet, q)) return false;

      setgeom::PointSet punion = pa;
      punion.insert(pb.begin(), pb.end());
      if (points_of(flat_join(a, b)) != setgeom::affine_hull(punion, q)) return false;

      bool b_in_a = std::includes(pa.begin(), pa.end(), pb.begin(), pb.end());
      bool a_in_b = std::includes(pb.begin(), pb.end(), pa.begin(), pa.end());
      if (flat_contains(a, b) != b_in_a) return false;
      if (flat_incident(a, b) != (a_in_b || b_in_a)) return false;
    }
  }
  return true;
}

bool criterion1(std::string& detail) {
  if (!check_oracle_space(3, 2, 51, detail)) {
    if (detail.empty()) detail = "disagreement in AG(3,2)";
    return false;
  }
  if (!check_oracle_space(2, 3, 22, detail)) {
    if (detail.empty()) detail = "disagreement in AG(2,3)";
    return false;
  }
  detail =
      "intersection, join, meet dimension, incidence and containment agree with "
      "point-set oracles on all 51^2 pairs in AG(3,2) and 22^2 pairs in AG(2,3)";
  return true;
}

// ---- criterion 2: closed-form counts vs. explicit enumeration ----

constexpr std::uint64_t kEnumCap = 50'000;

// Runs an enumerator; empty optional means it exceeded kEnumCap objects.
std::optional<std::uint64_t> try_enum(const std::function<std::uint64_t()>& fn) {
  try {
    return fn();
  } catch (const ScaleError&) {
    return std::nullopt;
  }
}

// Compares a closed form against an enumeration whose full walk would visit
// `walk` objects: an exact match when the walk fits under the cap, otherwise
// the walk itself must provably exceed the cap.
bool check_instance(const BigCount& closed, const BigCount& walk,
                    const std::optional<std::uint64_t>& enumerated, std::uint64_t& exact,
                    std::uint64_t& capped) {
  if (enumerated) {
    ++exact;
    return BigCount(*enumerated) == closed;
  }
  ++capped;
  return walk > BigCount(kEnumCap);
}

bool criterion2(std::string& detail) {
  std::uint64_t exact = 0, capped = 0;
  auto fail_at = [&](const std::string& what) {
    detail = "mismatch at " + what;
    return false;
  };

  for (std::uint32_t q : {2u, 3u}) {
    FieldSpec f(q);
    // Largest n with q^n <= 2^13 points.
    std::uint32_t max_n = 0;
    for (std::uint64_t p = 1; p * q <= 8192; p *= q) ++max_n;

    for (std::uint32_t n = 0; n <= max_n; ++n) {
      for (std::uint32_t k = 0; k <= n; ++k) {
        if (!check_instance(gauss(n, k, q), gauss(n, k, q),
                            try_enum([&] { return enumerated_subspace_count(f, n, k, kEnumCap); }),
                            exact, capped))
          return fail_at("gauss(" + std::to_string(n) + "," + std::to_string(k) + "," +
                         std::to_string(q) + ")");
        if (!check_instance(
                count_flats_within(n, k, q), count_flats_within(n, k, q),
                try_enum([&] { return enumerated_flats_within_count(f, n, k, kEnumCap); }),
                exact, capped))
          return fail_at("flats-within(" + std::to_string(n) + "," + std::to_string(k) + "," +
                         std::to_string(q) + ")");
        for (std::uint32_t m = k; m <= n; ++m) {
          if (!check_instance(
                  count_flats_containing(n, k, m, q), count_flats_containing(n, k, m, q),
                  try_enum([&] { return enumerated_flats_containing_count(f, n, k, m, kEnumCap); }),
                  exact, capped))
            return fail_at("flats-containing(" + std::to_string(n) + "," + std::to_string(k) +
                           "," + std::to_string(m) + "," + std::to_string(q) + ")");
        }
      }
    }

    // Subspaces of a fixed intersection pattern, over a compact but mixed
    // (feasible and infeasible) parameter box.
    for (std::uint32_t amb = 2; amb <= 4; ++amb)
      for (std::uint32_t l = 1; l <= 3; ++l)
        for (std::uint32_t m = 0; m <= 3 && m <= amb + l; ++m)
          for (std::uint32_t m1 = 0; m1 <= m; ++m1)
            for (std::uint32_t k1 = 0; k1 <= m1; ++k1)
              for (std::uint32_t k = 0; k <= m; ++k) {
                // The enumerator walks every m-subspace containing the fixed
                // (m1, k1) seed; infeasible seeds walk nothing.
                BigCount walk = (k1 > m1 || k1 > l || m1 - k1 > amb)
                                    ? BigCount(0)
                                    : gauss(amb + l - m1, m - m1, q);
                if (!check_instance(count_type_subspaces(m1, k1, m, k, amb, l, q), walk,
                                    try_enum([&] {
                                      return enumerated_type_subspace_count(f, m1, k1, m, k, amb,
                                                                            l, kEnumCap);
                                    }),
                                    exact, capped))
                  return fail_at("type-subspaces(" + std::to_string(m1) + "," +
                                 std::to_string(k1) + "," + std::to_string(m) + "," +
                                 std::to_string(k) + "," + std::to_string(amb) + "," +
                                 std::to_string(l) + "," + std::to_string(q) + ")");
              }
  }

  std::ostringstream os;
  os << exact << " instances recounted exactly, " << capped
     << " oversize instances consistent with the per-instance cap of " << kEnumCap
     << " enumerated objects (q in {2,3}, ambient spaces up to 2^13 points)";
  detail = os.str();
  return true;
}

// ---- criterion 3: the extremal construction at (7,3,2), default and seeded ----

bool criterion3(std::string& detail) {
  FieldSpec f(2);
  Flat E = axis_flat(f, 7, 3, 1);
  Flat U = axis_flat(f, 7, 0, 3);
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

  for (int variant = 0; variant <= static_cast<int>(seeds.size()); ++variant) {
    FlatFamily fam = [&] {
      if (variant == 0) return hm_family(E, U);
      Flat join = flat_join(E, U);
      PointSelector sel = seeded_point_selector(seeds[variant - 1], join);
      return hm_family(E, U, &sel);
    }();
    std::string tag = variant == 0 ? "default" : "seed " + std::to_string(seeds[variant - 1]);
    if (fam.size() != 211) {
      detail = tag + ": size " + std::to_string(fam.size()) + ", expected 211";
      return false;
    }
    std::uint64_t pairs = 0;
    const auto& mem = fam.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        if (!flats_intersecting(mem[i], mem[j])) {
          detail = tag + ": members " + std::to_string(i) + " and " + std::to_string(j) +
                   " do not share a line";
          return false;
        }
        ++pairs;
      }
    if (pairs != 22155) {
      detail = tag + ": checked " + std::to_string(pairs) + " pairs, expected 22155";
      return false;
    }
    TauResult tau = covering_number(fam);
    if (tau.status != TauResult::Status::Exact || tau.value != 2 || !tau.witness ||
        tau.witness->dim() != 2 || !meets_all(fam, *tau.witness)) {
      detail = tag + ": covering number is not an exact 2 with a verified witness";
      return false;
    }
  }
  detail =
      "default + 5 seeded variants: size 211, all 22155 member pairs share a line, "
      "covering number exactly 2 with a witness verified against every member";
  return true;
}

// ---- criterion 4: the k = 3 triangle family and the size identity ----

bool criterion4(std::string& detail) {
  FieldSpec f(2);
  FlatFamily fam = f3_family(axis_flat(f, 7, 0, 3));
  if (fam.size() != 211 || BigCount(fam.size()) != f3_size(7, 2)) {
    detail = "size " + std::to_string(fam.size()) + ", expected 211";
    return false;
  }
  if (!is_intersecting(fam)) {
    detail = "family is not intersecting";
    return false;
  }
  TauResult tau = covering_number(fam);
  if (tau.status != TauResult::Status::Exact || tau.value != 2 || !tau.witness ||
      !meets_all(fam, *tau.witness)) {
    detail = "covering number is not an exact 2 with a verified witness";
    return false;
  }

  std::uint64_t points = 0;
  for (std::uint32_t q : {2u, 3u, 4u, 5u})
    for (std::uint32_t n = 7; n <= 30; ++n, ++points)
      if (hm_size(n, 3, q) != f3_size(n, q)) {
        detail = "size identity broken at n=" + std::to_string(n) + ", q=" + std::to_string(q);
        return false;
      }
  detail = "size 211 with covering number exactly 2 (verified witness); the k = 3 size "
           "identity holds at all " +
           std::to_string(points) + " points (q in {2,3,4,5}, n in 7..30)";
  return true;
}

// ---- criterion 5: the pencil at (7,3,2) is maximal ----

bool criterion5(std::string& detail) {
  FieldSpec f(2);
  FlatFamily fam = pencil_family(axis_flat(f, 7, 0, 1), 3);
  if (fam.size() != 651) {
    detail = "size " + std::to_string(fam.size()) + ", expected 651";
    return false;
  }
  TauResult tau = covering_number(fam);
  if (tau.status != TauResult::Status::Exact || tau.value != 1 || !tau.witness ||
      !meets_all(fam, *tau.witness)) {
    detail = "covering number is not an exact 1 with a verified witness";
    return false;
  }
  BigCount total = count_flats_total(7, 3, 2);
  FlatFamily closed = maximal_closure(fam);
  if (!(closed == fam)) {
    detail = "closure grew the family to " + std::to_string(closed.size()) + " members";
    return false;
  }
  detail = "651 members, covering number 1; sweeping all " + total.str() +
           " 3-flats of AG(7,2) adds nothing: the pencil is maximal";
  return true;
}

// ---- criteria 6 and 7: audits ----

bool criterion6(std::string& detail) {
  AuditReport a = run_audit("2.6", "");
  AuditReport b = run_audit("2.7", "");
  if (a.rows.size() != 768 || a.fails != 0 || a.holds != 768) {
    detail = "binomial-product audit: " + std::to_string(a.rows.size()) + " rows, " +
             std::to_string(a.fails) + " failures";
    return false;
  }
  if (b.rows.size() != 120 || b.fails != 0) {
    detail = "sandwich audit: " + std::to_string(b.rows.size()) + " rows, " +
             std::to_string(b.fails) + " failures";
    return false;
  }
  detail = "--lemma 2.6: 768/768 rows hold; --lemma 2.7: 120 rows, " +
           std::to_string(b.holds) + " hold, " + std::to_string(b.not_applicable) +
           " not applicable, zero failures";
  return true;
}

bool criterion7(std::string& detail) {
  AuditReport rep = run_audit("dominance", "");
  if (rep.fails != 0) {
    detail = std::to_string(rep.fails) + " failing rows";
    return false;
  }
  std::uint64_t residual_rows = 0;
  for (const AuditRow& row : rep.rows) {
    bool k3 = false;
    for (const auto& [name, value] : row.params)
      if (name == "k" && value == 3) k3 = true;
    if (row.verdict == Verdict::Equality) {
      if (row.id != "tau2-residual-k3" || !k3) {
        detail = "equality at unexpected bound " + row.id;
        return false;
      }
    }
    if (row.id == "tau2-residual-k3" && row.verdict != Verdict::NotApplicable) {
      ++residual_rows;
      if (row.verdict != Verdict::Equality) {
        detail = "the k = 3 residual bound should attain the family size exactly";
        return false;
      }
    }
  }
  if (residual_rows != rep.equalities || rep.equalities == 0) {
    detail = "equality count " + std::to_string(rep.equalities) + " does not match the " +
             std::to_string(residual_rows) + " applicable k = 3 residual rows";
    return false;
  }
  std::ostringstream os;
  os << rep.rows.size() << " rows: " << rep.holds << " strict, " << rep.equalities
     << " equalities (every one is the k = 3 residual bound attaining the family size), "
     << rep.not_applicable << " not applicable, zero failures";
  detail = os.str();
  return true;
}

// ---- criterion 8: exhaustive search on AG(3,2) ----

bool criterion8(std::string& detail) {
  FieldSpec f(2);
  CompatibilityGraph g(f, 3, 2);
  SearchOutcome out = max_family(g, 2);
  if (!out.optimal || out.best.size() != 7) {
    detail = "found " + std::to_string(out.best.size()) +
             (out.optimal ? " (optimal)" : " (budget exhausted)") + ", expected an optimal 7";
    return false;
  }
  if (!is_intersecting(out.best)) {
    detail = "winner is not intersecting";
    return false;
  }
  TauResult tau = covering_number(out.best);
  if (tau.status != TauResult::Status::Exact || tau.value < 2) {
    detail = "winner's covering number is below the requested minimum";
    return false;
  }
  detail = "maximum family of planes with covering number >= 2 has exactly 7 members "
           "(proved optimal in " +
           std::to_string(out.nodes) + " search nodes)";
  return true;
}

// ---- criterion 9: scale statement for the open instance ----

bool criterion9(std::string& detail) {
  BigCount total = count_flats_total(11, 3, 2);
  if (total.str() != "13044728576") {
    detail = "expected 13044728576 3-flats at (n,q) = (11,2), computed " + total.str();
    return false;
  }
  detail =
      "AG(11,2) has exactly 13044728576 3-flats (about 1.3e10), so exhaustively "
      "certifying a maximum intersecting family at (n,k,q) = (11,3,2) is not "
      "reproducible on this hardware; the exact counts, audits and small-space "
      "searches above are the evidence this build stands on";
  return true;
}

}  // namespace

int main() {
  std::cout.setf(std::ios::fixed);
  std::cout.precision(2);
  criterion(1, "flat algebra agrees with independent point-set oracles", 5.0, criterion1);
  criterion(2, "closed-form counts agree with explicit enumeration", 60.0, criterion2);
  criterion(3, "extremal family at (7,3,2): size, pairwise lines, covering number", 30.0,
            criterion3);
  criterion(4, "k = 3 triangle family and its size identity", 30.0, criterion4);
  criterion(5, "the pencil at (7,3,2) is maximal under exhaustive sweep", 300.0, criterion5);
  criterion(6, "inequality audits --lemma 2.6 and 2.7 report zero failures", 120.0, criterion6);
  criterion(7, "dominance audit: strict except the k = 3 residual equality", 120.0, criterion7);
  criterion(8, "exhaustive search on AG(3,2) planes with tau >= 2", 10.0, criterion8);
  criterion(9, "scale statement for the (11,3,2) instance", 10.0, criterion9);
  if (g_failures == 0)
    std::cout << "all 9 acceptance criteria passed" << std::endl;
  else
    std::cout << g_failures << " acceptance criteria failed" << std::endl;
  return g_failures;
}
