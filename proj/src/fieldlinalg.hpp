#pragma once
// Exact linear algebra over prime fields F_q.
//
// Subspaces are stored as reduced-row-echelon bases, which makes the basis a
// canonical form: two subspaces are equal iff their stored rows are equal.
// All enumeration runs in a fixed deterministic order (pivot-column sets in
// lexicographic order, then free entries), so downstream golden files and
// family constructions are reproducible.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace affina {

using Coeff = std::uint32_t;
using Vec = std::vector<Coeff>;

// A prime modulus together with its modular arithmetic. Construction rejects
// non-prime q; prime-power fields are intentionally unsupported.
class FieldSpec {
 public:
  explicit FieldSpec(std::uint32_t q);

  std::uint32_t q() const { return q_; }

  Coeff add(Coeff a, Coeff b) const { return (a + b) % q_; }
  Coeff sub(Coeff a, Coeff b) const { return (a + q_ - b) % q_; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % q_);
  }
  Coeff neg(Coeff a) const { return (q_ - a) % q_; }
  Coeff inv(Coeff a) const;  // throws std::invalid_argument on a == 0

  bool operator==(const FieldSpec& o) const { return q_ == o.q_; }

 private:
  std::uint32_t q_;
};

// In-place vector helpers; entries must already be reduced mod q.
void vec_add_scaled(Vec& target, const Vec& row, Coeff factor, const FieldSpec& f);
Vec vec_sub(const Vec& a, const Vec& b, const FieldSpec& f);

// A linear subspace of F_q^n in canonical (RREF) form.
class Subspace {
 public:
  // Canonicalizes arbitrary generators via row reduction. Throws
  // std::invalid_argument on length mismatches or out-of-range entries.
  Subspace(const FieldSpec& f, std::uint32_t n, const std::vector<Vec>& generators);

  static Subspace zero(const FieldSpec& f, std::uint32_t n);
  static Subspace full(const FieldSpec& f, std::uint32_t n);

  // Trusted constructor for rows already in RREF with the given pivots.
  // Used by the enumerators, which produce canonical rows directly.
  static Subspace from_rref(std::uint32_t q, std::uint32_t n, std::vector<Vec> rows,
                            std::vector<std::uint32_t> pivots);

  std::uint32_t q() const { return q_; }
  std::uint32_t ambient_dim() const { return n_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.size()); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }

  // Canonical coset representative: v minus its projection on the pivot
  // coordinates. reduce(v) == 0 iff v is a member.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& o) const {
    return q_ == o.q_ && n_ == o.n_ && rows_ == o.rows_;
  }

 private:
  Subspace(std::uint32_t q, std::uint32_t n) : q_(q), n_(n) {}
  std::uint32_t q_ = 0;
  std::uint32_t n_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::uint32_t> pivots_;
};

// Row reduction of arbitrary rows; returns canonical rows plus pivot columns.
struct RrefResult {
  std::vector<Vec> rows;
  std::vector<std::uint32_t> pivots;
};
RrefResult rref(const FieldSpec& f, std::uint32_t n, std::vector<Vec> rows);

// Sum and intersection of subspaces of the same ambient space.
Subspace subspace_sum(const Subspace& a, const Subspace& b);
// Zassenhaus-style: row-reduce [[A|A],[B|0]]; rows with zero left half carry an
// intersection basis in their right half.
Subspace subspace_intersection(const Subspace& a, const Subspace& b);

// Writes `target` as a combination of `rows` if possible; returns the
// coefficient vector (one entry per row) or nullopt.
std::optional<Vec> express_in_span(const FieldSpec& f, std::uint32_t n,
                                   const std::vector<Vec>& rows, const Vec& target);

// Deterministic enumeration of all d-dimensional subspaces, optionally
// restricted to subspaces of `within` and/or superspaces of `containing`.
// Visits each subspace exactly once; the visited reference is only valid for
// the duration of the callback.
using SubspaceVisitor = std::function<void(const Subspace&)>;
void for_each_subspace(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                       const SubspaceVisitor& visit);
void for_each_subspace(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                       const Subspace* within, const Subspace* containing,
                       const SubspaceVisitor& visit);
std::vector<Subspace> enumerate_subspaces(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                                          const Subspace* within = nullptr,
                                          const Subspace* containing = nullptr);

}  // namespace affina
