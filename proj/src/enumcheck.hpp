#pragma once
// Brute-force recounts of the closed-form counting formulas by explicit
// enumeration.  These power `count --verify` and the dual-route equivalence
// tests; they are deliberately independent of the product formulas (they walk
// the actual subspaces/flats and count).
//
// Each function throws ScaleError once more than `cap` objects have been
// enumerated, so callers can bound work on instances whose true count is
// large.

#include <cstdint>

#include "fieldlinalg.hpp"

namespace affina {

// d-dimensional subspaces of F_q^n (the gauss(n, d, q) recount).
std::uint64_t enumerated_subspace_count(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                                        std::uint64_t cap);

// m-dimensional subspaces U of F_q^(n+l) with dim(U n W) = k that contain a
// fixed subspace of the same pattern with (m1, k1), where W is a fixed
// l-dimensional subspace.  Uses W = span{e_{n+1..n+l}} and the axis-aligned
// contained subspace; returns 0 when no such contained subspace exists.
std::uint64_t enumerated_type_subspace_count(const FieldSpec& f, std::uint32_t m1,
                                             std::uint32_t k1, std::uint32_t m, std::uint32_t k,
                                             std::uint32_t n, std::uint32_t l,
                                             std::uint64_t cap);

// k-flats inside one m-flat (AG(m, q) itself serves as the m-flat).
std::uint64_t enumerated_flats_within_count(const FieldSpec& f, std::uint32_t m, std::uint32_t k,
                                            std::uint64_t cap);

// m-flats of AG(n, q) containing one fixed k-flat.
std::uint64_t enumerated_flats_containing_count(const FieldSpec& f, std::uint32_t n,
                                                std::uint32_t k, std::uint32_t m,
                                                std::uint64_t cap);

}  // namespace affina
