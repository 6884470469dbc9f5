#include "enumcheck.hpp"

#include <string>

#include "affine.hpp"
#include "errors.hpp"

namespace affina {

namespace {

[[noreturn]] void over_cap(const char* what, std::uint64_t cap) {
  throw ScaleError(std::string(what) + ": more than " + std::to_string(cap) +
                   " objects to enumerate");
}

}  // namespace

std::uint64_t enumerated_subspace_count(const FieldSpec& f, std::uint32_t n, std::uint32_t d,
                                        std::uint64_t cap) {
  std::uint64_t count = 0;
  for_each_subspace(f, n, d, [&](const Subspace&) {
    if (++count > cap) over_cap("subspace recount", cap);
  });
  return count;
}

std::uint64_t enumerated_type_subspace_count(const FieldSpec& f, std::uint32_t m1,
                                             std::uint32_t k1, std::uint32_t m, std::uint32_t k,
                                             std::uint32_t n, std::uint32_t l,
                                             std::uint64_t cap) {
  const std::uint32_t dim = n + l;
  // No contained subspace of pattern (m1, k1) exists at all.
  if (k1 > m1 || k1 > l || m1 - k1 > n) return 0;

  std::vector<Vec> wrows, urows;
  for (std::uint32_t i = 0; i < l; ++i) {
    Vec row(dim, 0);
    row[n + i] = 1;
    wrows.push_back(row);
  }
  for (std::uint32_t i = 0; i < m1 - k1; ++i) {
    Vec row(dim, 0);
    row[i] = 1;
    urows.push_back(row);
  }
  for (std::uint32_t i = 0; i < k1; ++i) {
    Vec row(dim, 0);
    row[n + i] = 1;
    urows.push_back(row);
  }
  Subspace W(f, dim, wrows);
  Subspace U1(f, dim, urows);

  std::uint64_t count = 0, seen = 0;
  for_each_subspace(f, dim, m, nullptr, &U1, [&](const Subspace& u) {
    if (++seen > cap) over_cap("type-subspace recount", cap);
    if (subspace_intersection(u, W).dim() == k) ++count;
  });
  return count;
}

std::uint64_t enumerated_flats_within_count(const FieldSpec& f, std::uint32_t m, std::uint32_t k,
                                            std::uint64_t cap) {
  std::uint64_t count = 0;
  for_each_flat(f, m, k, [&](const Flat&) {
    if (++count > cap) over_cap("flats-within recount", cap);
  });
  return count;
}

std::uint64_t enumerated_flats_containing_count(const FieldSpec& f, std::uint32_t n,
                                                std::uint32_t k, std::uint32_t m,
                                                std::uint64_t cap) {
  std::vector<Vec> rows;
  for (std::uint32_t i = 0; i < k; ++i) {
    Vec row(n, 0);
    row[i] = 1;
    rows.push_back(row);
  }
  Flat fixed = Flat::through(Subspace(f, n, rows), Vec(n, 0));
  std::uint64_t count = 0;
  for_each_flat(f, n, m, nullptr, &fixed, [&](const Flat&) {
    if (++count > cap) over_cap("flats-containing recount", cap);
  });
  return count;
}

}  // namespace affina
