#include "oracle.hpp"

#include <algorithm>
#include <unordered_map>

namespace mm {

namespace {

void check_cap(int n, int cap) {
  if (n > cap) throw TooLarge("oracle cap exceeded");
}

// Walks every simple alternating path from `v` (current length `len`,
// `visited` = bitmask of used vertices) and records length minima per parity.
// From a path of length L the next edge must have rho(e) == parity(L):
// path edge i is matching exactly when i is even-indexed (counting the
// virtual prefix), so an even-length path ends on a matching edge and is
// extended by a non-matching one, and vice versa.
void path_dfs(const MatchingSystem& ms, VertexId v, int len, uint32_t visited,
              OracleDistTable& t) {
  int& best = parity_of(len) == Parity::Odd ? t.dist_odd[v] : t.dist_even[v];
  best = std::min(best, len);
  Parity need = parity_of(len);
  for (EdgeId e : ms.g.incident(v)) {
    if (ms.rho(e) != need) continue;
    VertexId w = ms.g.edge(e).other(v);
    if (visited & (1u << w)) continue;
    path_dfs(ms, w, len + 1, visited | (1u << w), t);
  }
}

}  // namespace

OracleDistTable enumerate_alternating_dists(const MatchingSystem& ms) {
  int n = ms.g.n();
  check_cap(n, 14);
  OracleDistTable t{std::vector<int>(n, kInfDist), std::vector<int>(n, kInfDist)};
  for (VertexId u = 0; u < n; ++u)
    if (ms.m.is_free(u)) path_dfs(ms, u, 2, 1u << u, t);
  return t;
}

OracleDistTable state_bfs_dists(const MatchingSystem& ms) {
  int n = ms.g.n();
  check_cap(n, 14);
  OracleDistTable t{std::vector<int>(n, kInfDist), std::vector<int>(n, kInfDist)};
  // reachable[S] = bitmask of vertices v in S that end some simple
  // alternating path with vertex set exactly S (length |S| + 1).
  std::vector<uint32_t> reachable(size_t{1} << n, 0);
  std::vector<uint32_t> by_count;
  for (VertexId u = 0; u < n; ++u)
    if (ms.m.is_free(u)) reachable[1u << u] |= 1u << u;
  std::vector<std::vector<uint32_t>> buckets(n + 1);
  for (uint32_t s = 1; s < (1u << n); ++s)
    buckets[__builtin_popcount(s)].push_back(s);
  for (int k = 1; k <= n; ++k) {
    for (uint32_t s : buckets[k]) {
      uint32_t ends = reachable[s];
      if (!ends) continue;
      int len = k + 1;
      Parity pl = parity_of(len);
      for (uint32_t bits = ends; bits;) {
        VertexId v = __builtin_ctz(bits);
        bits &= bits - 1;
        int& best = pl == Parity::Odd ? t.dist_odd[v] : t.dist_even[v];
        best = std::min(best, len);
        for (EdgeId e : ms.g.incident(v)) {
          if (ms.rho(e) != pl) continue;
          VertexId w = ms.g.edge(e).other(v);
          if (s & (1u << w)) continue;
          reachable[s | (1u << w)] |= 1u << w;
        }
      }
    }
  }
  return t;
}

namespace {

int mu_rec(const Graph& g, uint32_t removed, std::unordered_map<uint32_t, int>& memo) {
  // find lowest live vertex with a live neighbor
  int n = g.n();
  VertexId v = -1;
  for (VertexId x = 0; x < n && v < 0; ++x) {
    if (removed & (1u << x)) continue;
    for (EdgeId e : g.incident(x))
      if (!(removed & (1u << g.edge(e).other(x)))) {
        v = x;
        break;
      }
  }
  if (v < 0) return 0;
  auto it = memo.find(removed);
  if (it != memo.end()) return it->second;
  int best = mu_rec(g, removed | (1u << v), memo);  // v stays unmatched
  for (EdgeId e : g.incident(v)) {
    VertexId w = g.edge(e).other(v);
    if (removed & (1u << w)) continue;
    best = std::max(best, 1 + mu_rec(g, removed | (1u << v) | (1u << w), memo));
  }
  memo.emplace(removed, best);
  return best;
}

}  // namespace

int brute_max_matching(const Graph& g) {
  check_cap(g.n(), 20);
  std::unordered_map<uint32_t, int> memo;
  return mu_rec(g, 0, memo);
}

namespace {

void aug_dfs(const MatchingSystem& ms, std::vector<VertexId>& path, uint32_t visited,
             int budget, std::vector<AlternatingPath>& out) {
  VertexId v = path.back();
  if (path.size() >= 2 && ms.m.is_free(v) && path.size() % 2 == 0) {
    // even vertex count = odd edge count; first edge was non-matching by
    // construction and alternation makes the last one non-matching too
    out.push_back(canonical(AlternatingPath{path}));
    return;  // a shortest path cannot be a prefix of another shortest path
  }
  if (budget == 0) return;
  bool need_matched = path.size() % 2 == 0;  // edges alternate: non-M, M, non-M, ...
  for (EdgeId e : ms.g.incident(v)) {
    if (ms.matched_edge(e) != need_matched) continue;
    VertexId w = ms.g.edge(e).other(v);
    if (visited & (1u << w)) continue;
    path.push_back(w);
    aug_dfs(ms, path, visited | (1u << w), budget - 1, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<AlternatingPath> all_shortest_aug_paths(const MatchingSystem& ms) {
  int n = ms.g.n();
  check_cap(n, 14);
  OracleDistTable t = state_bfs_dists(ms);
  int best = kInfDist;
  for (VertexId v = 0; v < n; ++v)
    if (ms.m.is_free(v)) best = std::min(best, t.dist_odd[v]);
  std::vector<AlternatingPath> out;
  if (best >= kInfDist) return out;
  int len = best - 2;  // strip the virtual prefix: real augmenting length
  for (VertexId u = 0; u < n; ++u) {
    if (!ms.m.is_free(u)) continue;
    std::vector<VertexId> path{u};
    aug_dfs(ms, path, 1u << u, len, out);
  }
  std::sort(out.begin(), out.end(),
            [](const AlternatingPath& a, const AlternatingPath& b) { return a.verts < b.verts; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_maximal_disjoint_shortest_set(const MatchingSystem& ms,
                                      const std::vector<AlternatingPath>& paths) {
  auto all = all_shortest_aug_paths(ms);
  if (all.empty()) return paths.empty();
  size_t want = all.front().verts.size();
  std::vector<char> used(ms.g.n(), 0);
  for (const auto& p : paths) {
    if (p.verts.size() != want) return false;
    AlternatingPath c = canonical(p);
    if (!std::binary_search(all.begin(), all.end(), c,
                            [](const AlternatingPath& a, const AlternatingPath& b) {
                              return a.verts < b.verts;
                            }))
      return false;
    for (VertexId v : c.verts) {
      if (used[v]) return false;  // overlap inside the candidate set
      used[v] = 1;
    }
  }
  for (const auto& p : all) {
    bool disjoint = true;
    for (VertexId v : p.verts) disjoint &= !used[v];
    if (disjoint) return false;
  }
  return true;
}

}  // namespace mm
