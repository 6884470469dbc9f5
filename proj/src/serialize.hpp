#pragma once
// JSON interchange for families and search results.
//
// Family document shape:
//   {"q": 2, "n": 3, "k": 2,
//    "flats": [{"basis": [[1,0,0],[0,1,0]], "point": [0,0,1]}, ...]}
// `basis` rows are the direction's reduced-row-echelon basis and `point` is
// the canonical coset representative (zero at the basis pivot columns).  The
// loader re-derives both and rejects documents that are not canonical, so a
// family round-trips byte-for-byte.

#include <string>

#include "families.hpp"
#include "search.hpp"

namespace affina {

std::string family_to_json(const FlatFamily& fam, int indent = 2);

// Throws ParseError with a "flat #i: ..." diagnostic on malformed JSON,
// non-prime q, wrong-sized rows, out-of-range entries, non-RREF bases,
// non-canonical points, rank != k, or duplicate flats.
FlatFamily family_from_json(const std::string& text);

std::string family_stats_to_json(const FamilyStats& st, int indent = 2);

// {"size", "optimal", "nodes", "family"}.
std::string search_outcome_to_json(const SearchOutcome& out, int indent = 2);

}  // namespace affina
