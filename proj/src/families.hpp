#pragma once
// Families of k-flats and the predicates studied on them.
//
// "Intersecting" throughout means every two members share a flat of dimension
// at least 1 (a line) — strictly stronger than sharing a point.  The covering
// number tau of a family is the least dimension of a flat that intersects
// every member in that sense.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "affine.hpp"
#include "counting.hpp"
#include "fieldlinalg.hpp"

namespace affina {

// Ordered, duplicate-free collection of k-flats of one ambient space.
class FlatFamily {
 public:
  FlatFamily(const FieldSpec& f, std::uint32_t n, std::uint32_t k);

  std::uint32_t q() const { return q_; }
  std::uint32_t ambient_dim() const { return n_; }
  std::uint32_t k() const { return k_; }
  const std::vector<Flat>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  // Appends unless already present; returns false on duplicate.  Throws
  // std::invalid_argument when the flat has the wrong dimension or space.
  bool add(const Flat& flat);
  bool contains(const Flat& flat) const { return index_.count(flat) != 0; }

  bool operator==(const FlatFamily& o) const {
    return q_ == o.q_ && n_ == o.n_ && k_ == o.k_ && members_ == o.members_;
  }

 private:
  std::uint32_t q_, n_, k_;
  std::vector<Flat> members_;
  std::unordered_set<Flat, FlatHash> index_;
};

// The family predicate: dim(a ^ b) >= 1.
bool flats_intersecting(const Flat& a, const Flat& b);

// All pairs intersecting; vacuously true for sizes 0 and 1.
bool is_intersecting(const FlatFamily& fam);

// Exact-if-finished covering-number search.
struct TauResult {
  enum class Status { Exact, LowerBoundOnly };
  Status status = Status::Exact;
  // Exact: tau itself.  LowerBoundOnly: a proven lower bound — every dimension
  // below `value` has been exhaustively ruled out before the budget ran out.
  std::uint32_t value = 0;
  std::optional<Flat> witness;  // set when exact
  std::uint64_t nodes = 0;      // candidate flats verified
};

// Searches dimensions s = 1, 2, ... in order.  Candidates for each s are the
// s-flats containing some line of the first member (complete: any flat that
// intersects the first member contains such a line).  `budget` caps the number
// of candidate verifications.  Throws std::invalid_argument on an empty family
// or a family of 0-flats (nothing intersects a point in dimension >= 1).
TauResult covering_number(const FlatFamily& fam, std::uint64_t budget = 50'000'000);

// Picks the extra translation point for the i-th exchanged flat in the family
// constructions below.  Implementations must return points inside the allowed
// flat; the constructions validate this.
using PointSelector = std::function<Vec(std::size_t)>;
PointSelector fixed_point_selector(Vec point);
// Uniform points of `inside`, drawn from a seeded generator.
PointSelector seeded_point_selector(std::uint64_t seed, const Flat& inside);

// All k-flats containing the 1-flat E.
FlatFamily pencil_family(const Flat& E, std::uint32_t k);

// The extremal non-trivial family: all k-flats containing E that intersect U,
// plus one translate of each k-subspace of dir(E)+dir(U) that misses dir(E).
// Requires dim E = 1, dim U = k, and E ^ U a single point.  The selector
// chooses the translates' base points inside the join of E and U (default:
// the common point of E and U).
FlatFamily hm_family(const Flat& E, const Flat& U, const PointSelector* selector = nullptr);

// The k = 3 triangle family: for every 2-subspace S of dir(U) (U a 3-flat),
// all 3-flats containing S + s, where the selector picks s inside U (default:
// U's canonical representative).
FlatFamily f3_family(const Flat& U, const PointSelector* selector = nullptr);

// Grows `fam` to a maximal intersecting family: one sweep over all k-flats in
// enumeration order, adding each flat that intersects everything accepted so
// far.  Requires `fam` intersecting; throws ScaleError when the ambient has
// more than `flat_budget` k-flats.
FlatFamily maximal_closure(const FlatFamily& fam, std::uint64_t flat_budget = 1u << 21);

struct FamilyStats {
  std::size_t size = 0;
  bool intersecting = false;
  std::optional<TauResult> tau;       // unset for an empty family or k = 0
  BigCount pencil_bound;              // gauss(n-1, k-1, q)
  std::optional<BigCount> hm_bound;   // hm_size(n,k,q) when n >= k+1
};
FamilyStats family_stats(const FlatFamily& fam, std::uint64_t tau_budget = 50'000'000);

}  // namespace affina
