#pragma once
// Affine flats of AG(n, q): cosets `direction + point` with a canonical
// representative (the point's coordinates at the direction's pivot columns are
// zero), so flats compare by value.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fieldlinalg.hpp"

namespace affina {

class Flat {
 public:
  // Canonicalizes the representative. Throws std::invalid_argument on
  // mismatched ambient/field.
  static Flat through(Subspace direction, const Vec& point);
  // Trusted: `point` must already be reduced against `direction`.
  static Flat from_canonical(Subspace direction, Vec point);

  std::uint32_t q() const { return dir_.q(); }
  std::uint32_t ambient_dim() const { return dir_.ambient_dim(); }
  std::uint32_t dim() const { return dir_.dim(); }
  const Subspace& direction() const { return dir_; }
  const Vec& representative() const { return point_; }

  bool contains_point(const Vec& v) const;

  bool operator==(const Flat& o) const { return dir_ == o.dir_ && point_ == o.point_; }

 private:
  Flat(Subspace dir, Vec point) : dir_(std::move(dir)), point_(std::move(point)) {}
  Subspace dir_;
  Vec point_;
};

struct FlatHash {
  std::size_t operator()(const Flat& f) const;
};

// Set intersection of two flats: empty (nullopt) or the flat
// (dir1 ^ dir2) + x for a common point x.  Two flats meet iff the difference
// of their representatives lies in the sum of their directions.
std::optional<Flat> flat_intersection(const Flat& a, const Flat& b);

// dim of the intersection, -1 when disjoint.  Cheaper than materializing the
// intersection: one stacked row reduction plus a membership test.
int flat_meet_dim(const Flat& a, const Flat& b);

// Smallest flat containing both: direction dir1 + dir2 + <p2 - p1>, through p1.
Flat flat_join(const Flat& a, const Flat& b);

// inner is a subflat of outer.
bool flat_contains(const Flat& outer, const Flat& inner);
// Incidence: one contains the other.
bool flat_incident(const Flat& a, const Flat& b);

// Deterministic enumeration of the k-flats of AG(n, q), optionally restricted
// to flats inside `within` and/or flats containing `containing`.  Directions
// follow the subspace enumeration order; coset representatives follow a fixed
// odometer over the free coordinates.
using FlatVisitor = std::function<void(const Flat&)>;
void for_each_flat(const FieldSpec& f, std::uint32_t n, std::uint32_t k,
                   const FlatVisitor& visit);
void for_each_flat(const FieldSpec& f, std::uint32_t n, std::uint32_t k, const Flat* within,
                   const Flat* containing, const FlatVisitor& visit);
std::vector<Flat> enumerate_flats(const FieldSpec& f, std::uint32_t n, std::uint32_t k,
                                  const Flat* within = nullptr,
                                  const Flat* containing = nullptr);

}  // namespace affina
