#pragma once
// Exhaustive search for maximum intersecting families at toy scale: the
// compatibility graph has one vertex per k-flat and an edge where two flats
// meet in dimension >= 1; intersecting families are exactly its cliques.

#include <cstdint>
#include <optional>
#include <vector>

#include "families.hpp"

namespace affina {

class CompatibilityGraph {
 public:
  // Enumerates all k-flats of AG(n, q) (deterministic order) and their
  // pairwise compatibility.  Throws ScaleError when the flat count exceeds
  // `vertex_cap`.
  CompatibilityGraph(const FieldSpec& f, std::uint32_t n, std::uint32_t k,
                     std::uint32_t vertex_cap = 5000);

  std::uint32_t q() const { return q_; }
  std::uint32_t ambient_dim() const { return n_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(flats_.size()); }
  const std::vector<Flat>& flats() const { return flats_; }

  bool adjacent(std::uint32_t i, std::uint32_t j) const {
    return (adj_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1u;
  }
  std::uint32_t degree(std::uint32_t i) const;

 private:
  std::uint32_t q_, n_, k_;
  std::size_t words_;
  std::vector<Flat> flats_;
  std::vector<std::uint64_t> adj_;
};

struct SearchOutcome {
  FlatFamily best;
  bool optimal = false;   // search space exhausted within the node budget
  std::uint64_t nodes = 0;
};

// Branch-and-bound maximum clique (greedy-coloring bound, vertices in
// descending-degree order).  With `tau_min` set, only cliques whose covering
// number is >= tau_min count; candidates are filtered when they would improve
// the best.  Since tau is monotone under adding members, the filter never
// prunes a subtree, so the result stays exact.
SearchOutcome max_family(const CompatibilityGraph& graph,
                         std::optional<std::uint32_t> tau_min = std::nullopt,
                         std::uint64_t node_budget = 1'000'000);

}  // namespace affina
