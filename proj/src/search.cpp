#include "search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

#include "errors.hpp"
#include "parallel.hpp"

namespace affina {

CompatibilityGraph::CompatibilityGraph(const FieldSpec& f, std::uint32_t n, std::uint32_t k,
                                       std::uint32_t vertex_cap)
    : q_(f.q()), n_(n), k_(k) {
  BigCount total = count_flats_total(n, k, q_);
  if (total > BigCount(vertex_cap))
    throw ScaleError("CompatibilityGraph: " + total.str() + " flats exceed the vertex cap of " +
                     std::to_string(vertex_cap));
  flats_ = enumerate_flats(f, n, k);
  const std::size_t nv = flats_.size();
  words_ = (nv + 63) / 64;
  adj_.assign(nv * words_, 0);
  // Upper triangle in parallel (each task writes only its own rows), then a
  // sequential mirror pass.
  parallel_blocks(0, nv, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = i + 1; j < nv; ++j)
        if (flats_intersecting(flats_[i], flats_[j]))
          adj_[i * words_ + (j >> 6)] |= 1ull << (j & 63);
  });
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j)
      if (adjacent(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)))
        adj_[j * words_ + (i >> 6)] |= 1ull << (i & 63);
}

std::uint32_t CompatibilityGraph::degree(std::uint32_t i) const {
  std::uint32_t d = 0;
  for (std::size_t w = 0; w < words_; ++w)
    d += static_cast<std::uint32_t>(std::popcount(adj_[i * words_ + w]));
  return d;
}

namespace {

// Fixed-width bitset over the reordered vertex space.
struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t words = 0) : w(words, 0) {}
  void set(std::uint32_t i) { w[i >> 6] |= 1ull << (i & 63); }
  void clear(std::uint32_t i) { w[i >> 6] &= ~(1ull << (i & 63)); }
  bool test(std::uint32_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  bool empty() const {
    for (std::uint64_t x : w)
      if (x) return false;
    return true;
  }
  void and_with(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
  }
  void and_not(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
  }
  std::int64_t first() const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i]) return static_cast<std::int64_t>((i << 6) + std::countr_zero(w[i]));
    return -1;
  }
};

std::vector<std::uint32_t> sorted_intersection(const std::vector<std::uint32_t>& a,
                                               const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct Searcher {
  const CompatibilityGraph& g;
  std::optional<std::uint32_t> tau_min;
  std::uint64_t budget;

  std::uint32_t nv;
  std::size_t words;
  std::vector<std::uint32_t> order;  // reordered index -> original vertex
  std::vector<Bits> adj;             // reordered adjacency

  // tau_min == 2 fast path: sorted line-id lists per vertex, and the running
  // intersection along the current clique.
  std::vector<std::vector<std::uint32_t>> vlines;
  std::vector<std::vector<std::uint32_t>> common_stack;

  std::vector<std::uint32_t> cur, best;
  std::uint64_t nodes = 0;
  bool exhausted = true;

  Searcher(const CompatibilityGraph& graph, std::optional<std::uint32_t> tmin, std::uint64_t bud)
      : g(graph), tau_min(tmin), budget(bud), nv(graph.vertex_count()), words((nv + 63) / 64) {
    order.resize(nv);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return g.degree(a) > g.degree(b);
    });
    std::vector<std::uint32_t> pos(nv);
    for (std::uint32_t i = 0; i < nv; ++i) pos[order[i]] = i;
    adj.assign(nv, Bits(words));
    for (std::uint32_t a = 0; a < nv; ++a)
      for (std::uint32_t b = 0; b < nv; ++b)
        if (a != b && g.adjacent(order[a], order[b])) adj[a].set(b);
    if (tau_min && *tau_min == 2 && g.k() >= 1) {
      FieldSpec f(g.q());
      std::unordered_map<Flat, std::uint32_t, FlatHash> line_ids;
      vlines.resize(nv);
      for (std::uint32_t i = 0; i < nv; ++i) {
        const Flat& flat = g.flats()[order[i]];
        for_each_flat(f, g.ambient_dim(), 1, &flat, nullptr, [&](const Flat& line) {
          auto [it, _] = line_ids.try_emplace(line, static_cast<std::uint32_t>(line_ids.size()));
          vlines[i].push_back(it->second);
        });
        std::sort(vlines[i].begin(), vlines[i].end());
      }
      common_stack.resize(nv + 1);
    }
  }

  bool tau_ok() {
    if (!tau_min || *tau_min <= 1) return true;
    if (*tau_min == 2) return common_stack[cur.size()].empty();
    FieldSpec f(g.q());
    FlatFamily fam(f, g.ambient_dim(), g.k());
    for (std::uint32_t v : cur) fam.add(g.flats()[order[v]]);
    TauResult tr = covering_number(fam);
    return tr.status == TauResult::Status::Exact && tr.value >= *tau_min;
  }

  void expand(Bits P) {
    if (nodes++ >= budget) {
      exhausted = false;
      return;
    }
    if (P.empty()) {
      if (cur.size() > best.size() && tau_ok()) best = cur;
      return;
    }
    // Greedy coloring bound: vertices grouped by color class, ascending.
    std::vector<std::uint32_t> verts, colors;
    Bits uncolored = P;
    std::uint32_t color = 0;
    while (!uncolored.empty()) {
      ++color;
      Bits avail = uncolored;
      while (true) {
        std::int64_t v = avail.first();
        if (v < 0) break;
        avail.clear(static_cast<std::uint32_t>(v));
        uncolored.clear(static_cast<std::uint32_t>(v));
        avail.and_not(adj[static_cast<std::uint32_t>(v)]);
        verts.push_back(static_cast<std::uint32_t>(v));
        colors.push_back(color);
      }
    }
    for (std::size_t idx = verts.size(); idx-- > 0;) {
      if (!exhausted) return;
      if (cur.size() + colors[idx] <= best.size()) return;  // bound
      std::uint32_t v = verts[idx];
      Bits P2 = P;
      P2.and_with(adj[v]);
      if (!vlines.empty())
        common_stack[cur.size() + 1] =
            cur.empty() ? vlines[v] : sorted_intersection(common_stack[cur.size()], vlines[v]);
      cur.push_back(v);
      expand(std::move(P2));
      cur.pop_back();
      P.clear(v);
    }
  }
};

}  // namespace

SearchOutcome max_family(const CompatibilityGraph& graph, std::optional<std::uint32_t> tau_min,
                         std::uint64_t node_budget) {
  Searcher s(graph, tau_min, node_budget);
  Bits all(s.words);
  for (std::uint32_t i = 0; i < s.nv; ++i) all.set(i);
  if (s.nv > 0) s.expand(std::move(all));

  FieldSpec f(graph.q());
  FlatFamily fam(f, graph.ambient_dim(), graph.k());
  for (std::uint32_t v : s.best) fam.add(graph.flats()[s.order[v]]);
  if (!is_intersecting(fam))
    throw std::logic_error("max_family: result failed the intersecting re-check");
  SearchOutcome out{std::move(fam), s.exhausted, s.nodes};
  return out;
}

}  // namespace affina
