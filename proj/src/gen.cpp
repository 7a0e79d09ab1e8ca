#include "gen.hpp"

#include <algorithm>
#include <numeric>

namespace mm {

double rng_unit(Rng& rng) { return (rng() >> 11) * 0x1.0p-53; }

uint64_t rng_below(Rng& rng, uint64_t bound) {
  // rejection sampling keeps this exactly uniform and reproducible
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Graph gen_gnp(int n, double p, Rng& rng) {
  Graph g(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng_unit(rng) < p) g.add_edge(u, v);
  return g;
}

Graph gen_regular(int n, int d, Rng& rng) {
  if (n * d % 2 != 0 || d >= n) throw ParseError("bad regular graph parameters");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<VertexId> stubs(static_cast<size_t>(n) * d);
    for (int i = 0; i < n * d; ++i) stubs[i] = i / d;
    for (size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng_below(rng, i + 1)]);
    Graph g(n);
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      VertexId a = stubs[i], b = stubs[i + 1];
      if (a == b || g.has_edge(a, b))
        ok = false;
      else
        g.add_edge(a, b);
    }
    if (ok) return g;
  }
  throw InternalInvariant("regular graph sampling failed");
}

Matching gen_random_matching(const Graph& g, double keep, Rng& rng) {
  std::vector<EdgeId> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng_below(rng, i)]);
  Matching m(g.n());
  for (EdgeId e : order) {
    const Edge& ed = g.edge(e);
    if (m.is_free(ed.u) && m.is_free(ed.v) && rng_unit(rng) < keep)
      m.match(g, ed.u, ed.v);
  }
  return m;
}

}  // namespace mm
