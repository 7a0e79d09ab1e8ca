#pragma once

// Brute-force reference implementations, intended for differential testing
// only. Everything here is exponential and guarded by size caps.

#include "core.hpp"

namespace mm {

struct OracleDistTable {
  std::vector<int> dist_odd, dist_even;  // kInfDist when unreachable
  int dist(VertexId v, Parity p) const {
    return p == Parity::Odd ? dist_odd[v] : dist_even[v];
  }
};

// Exact dist^odd / dist^even by DFS over all simple alternating paths,
// seeded from every free vertex with the virtual two-edge prefix.
// Precondition n <= 14 (throws TooLarge).
OracleDistTable enumerate_alternating_dists(const MatchingSystem& ms);

// Independent second oracle: BFS over (vertex, visited-set) states, where a
// state with visited set S has path length |S| + 1. Same cap.
OracleDistTable state_bfs_dists(const MatchingSystem& ms);

// Maximum matching cardinality by branch and bound with memoization on the
// removed-vertex mask. Precondition n <= 20.
int brute_max_matching(const Graph& g);

// Every shortest augmenting path of ms, canonicalized and sorted; empty when
// no augmenting path exists. Precondition n <= 14.
std::vector<AlternatingPath> all_shortest_aug_paths(const MatchingSystem& ms);

// True iff `paths` are pairwise vertex-disjoint shortest augmenting paths and
// no further shortest augmenting path is disjoint from all of them.
bool is_maximal_disjoint_shortest_set(const MatchingSystem& ms,
                                      const std::vector<AlternatingPath>& paths);

}  // namespace mm
