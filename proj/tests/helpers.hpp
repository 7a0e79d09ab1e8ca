#pragma once

#include <initializer_list>
#include <utility>

#include "core.hpp"

namespace mm::test {

using EdgeList = std::initializer_list<std::pair<VertexId, VertexId>>;

inline Graph make_graph(int n, EdgeList edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline MatchingSystem make_system(int n, EdgeList edges, EdgeList matched = {}) {
  MatchingSystem ms{make_graph(n, edges), Matching(n)};
  for (auto [u, v] : matched) ms.m.match(ms.g, u, v);
  return ms;
}

// every labeled graph on n vertices: mask bit k covers the k-th pair (u,v)
// in lexicographic order
inline Graph graph_from_mask(int n, uint64_t mask) {
  Graph g(n);
  int k = 0;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v, ++k)
      if (mask >> k & 1) g.add_edge(u, v);
  return g;
}

// enumerates all matchings of g as mate vectors, via edge subsets
template <class F>
void for_each_matching(const Graph& g, F&& f) {
  Matching m(g.n());
  auto rec = [&](auto&& self, EdgeId e) -> void {
    if (e == g.m()) {
      f(m);
      return;
    }
    self(self, e + 1);
    const Edge& ed = g.edge(e);
    if (m.is_free(ed.u) && m.is_free(ed.v)) {
      m.match(g, ed.u, ed.v);
      self(self, e + 1);
      m.unmatch(ed.u);
    }
  };
  rec(rec, 0);
}

}  // namespace mm::test
