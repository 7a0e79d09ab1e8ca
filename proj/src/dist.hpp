#pragma once

// Alternating-path distance engine.
//
// compute_dist runs the round-synchronized tentative-distance process: a
// round queue delivers (vertex, round, parity) triples in nondecreasing
// round order; orthodox distances propagate down edge by edge, and
// unorthodox distances are produced from the minimum-level incoming edge of
// the shrunk subtree hanging below each vertex (tracked with meldable heaps
// that are merged bottom-up as vertices contract into their parents).

#include <cstdint>
#include <optional>

#include "core.hpp"

namespace mm {

struct DistTable {
  std::vector<int> dist_odd, dist_even;
  std::vector<VertexId> par;    // discovery parent; -1 = none
  std::vector<char> par_virtual;  // true for free vertices (virtual parent)
  int rounds = 0;               // largest round actually processed

  int dist(VertexId v, Parity p) const {
    return p == Parity::Odd ? dist_odd[v] : dist_even[v];
  }
  // parity of the smaller (orthodox) finite distance, if any
  std::optional<Parity> alpha(VertexId v) const {
    int de = dist_even[v], dd = dist_odd[v];
    if (de >= kInfDist && dd >= kInfDist) return std::nullopt;
    return de < dd ? Parity::Even : Parity::Odd;
  }
  int dist_orthodox(VertexId v) const { return std::min(dist_even[v], dist_odd[v]); }
  int dist_unorthodox(VertexId v) const { return std::max(dist_even[v], dist_odd[v]); }
};

struct DistOpCounters {
  uint64_t queue_pushes = 0, queue_pops = 0;
  uint64_t edge_scans = 0;
  uint64_t heap_pushes = 0, heap_pops = 0, heap_melds = 0;
  uint64_t find_ops = 0;
  uint64_t total() const {
    return queue_pushes + queue_pops + edge_scans + heap_pushes + heap_pops +
           heap_melds + find_ops;
  }
};

// Computes the distance table of `ms`. When `round_bound` is set, only
// distances <= round_bound are guaranteed (larger queue entries are
// discarded). When `seeds` is given, only those free vertices start the
// process (paths from other free vertices are then ignored, which is what
// region-restricted distance queries need).
DistTable compute_dist(const MatchingSystem& ms,
                       std::optional<int> round_bound = std::nullopt,
                       DistOpCounters* counters = nullptr,
                       const std::vector<VertexId>* seeds = nullptr);

struct EdgeLevels {
  int vlevel;       // dist^rho(y) + dist^rho(z) + 1
  int hlevel;       // max of the two endpoint distances
  uint64_t level;   // (n + 3) * vlevel + hlevel
};

// Throws UndefinedLevel if either endpoint lacks a rho(e)-parity distance.
EdgeLevels edge_level(const MatchingSystem& ms, const DistTable& dt, EdgeId e);

// Edges that end a shortest orthodox alternating path at u, ascending edge id.
// Throws NoOrthodoxPath when u has no finite distance.
std::vector<EdgeId> ep_set(const MatchingSystem& ms, const DistTable& dt, VertexId u);
// The distinct far endpoints of ep_set(u), ascending.
std::vector<VertexId> p_set(const MatchingSystem& ms, const DistTable& dt, VertexId u);

// l such that 2l+1 is the shortest augmenting path length; nullopt when no
// augmenting path exists.
std::optional<int> shortest_aug_length(const MatchingSystem& ms, const DistTable& dt);

// One line per vertex: "v dist_odd dist_even par", infinity and absent
// parent printed as '-'.
void dump_dist(std::ostream& out, const DistTable& dt);

}  // namespace mm
