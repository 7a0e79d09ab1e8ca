#pragma once

// Alternating base trees: a spanning forest of the reachable vertices in
// which every non-free vertex hangs below one of the predecessors that end a
// shortest orthodox path at it. Removing the virtual super source splits the
// tree into one component per free vertex; min-level incoming edges of those
// subtrees drive unorthodox path reconstruction.

#include <optional>

#include "core.hpp"
#include "dist.hpp"

namespace mm {

struct AbtTree {
  std::vector<VertexId> parent;      // -1 for free roots and unreachable vertices
  std::vector<EdgeId> parent_edge;   // -1 likewise
  std::vector<VertexId> root_of;     // component root (a free vertex), -1 if outside
  std::vector<int> tin, tout;        // preorder intervals for ancestor tests
  std::vector<char> in_tree;

  bool is_ancestor(VertexId a, VertexId d) const {
    return in_tree[a] && in_tree[d] && tin[a] <= tin[d] && tout[d] <= tout[a];
  }
};

// `respected` maps child -> required parent; those edges must be shortest-path
// predecessor edges (NotEpEdge) and at most one per child (RespectConflict).
// Unconstrained vertices take their smallest-id predecessor.
AbtTree build_abt(const MatchingSystem& ms, const DistTable& dt,
                  const std::vector<std::pair<VertexId, VertexId>>& respected = {});

struct MieTable {
  std::vector<EdgeId> mie;  // per vertex: min-level incoming edge of T(v), -1 none
};

// Leaf-to-root contraction over the whole forest; ties at equal level prefer
// non-predecessor edges, then the (min endpoint, max endpoint) pair.
MieTable compute_mies(const MatchingSystem& ms, const DistTable& dt, const AbtTree& abt);

// The alternating path from s down to its descendant t realizing dist^theta(t)
// (virtual prefix stripped). Throws NotDescendant / NoSuchParity.
AlternatingPath path_construction(const MatchingSystem& ms, const DistTable& dt,
                                  const AbtTree& abt, const MieTable& mies,
                                  VertexId s, VertexId t, Parity theta);

// A double path: two vertex-disjoint paths in the base dag from the endpoints
// of a critical-volume edge down to two distinct free vertices.
struct DoublePath {
  std::vector<VertexId> p, q;  // p starts at y, q starts at z; both end free
  VertexId y, z;
  EdgeId bridge;
};

// Converts pairwise disjoint double paths into pairwise disjoint shortest
// augmenting paths, using one base tree that respects all of them.
std::vector<AlternatingPath> aug_from_double_paths(const MatchingSystem& ms,
                                                   const DistTable& dt,
                                                   const std::vector<DoublePath>& dps);

}  // namespace mm
