#pragma once

// Alternating base dag and the double search.
//
// The base dag H points every reachable non-free vertex at all of its
// shortest-orthodox-path predecessors; free vertices are its sinks. A
// candidate edge of critical volume joins two branches; the double search
// either produces two vertex-disjoint sink paths from its endpoints (a
// double path) or certifies a bottleneck vertex through which every such
// path must go, in which case everything reachable above the bottleneck is
// shrunk into it.

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "abt.hpp"
#include "core.hpp"
#include "dist.hpp"
#include "shrink.hpp"

namespace mm {

struct Abd {
  int n = 0;
  std::vector<std::vector<VertexId>> out, in;  // ascending neighbor ids
  std::vector<char> in_dag, sink;
  std::vector<int> phi;  // orthodox distance, the dag potential

  bool has_vertex(VertexId v) const { return in_dag[v]; }
};

// Vertices with a finite orthodox distance (<= depth_bound when given) and
// their predecessor edges.
Abd build_abd(const MatchingSystem& ms, const DistTable& dt,
              std::optional<int> depth_bound = std::nullopt);

// Non-predecessor edges of volume 2l+5, ordered by (hlevel, edge id).
std::vector<EdgeId> candidate_edges(const MatchingSystem& ms, const DistTable& dt, int l);

// Live view of the base dag under vertex removal and bottleneck shrinking.
// The representative of a shrunk set is its bottleneck; a super-vertex's
// live out-edges are exactly the bottleneck's own (every other member's
// sink paths run through the bottleneck).
class WorkingDag {
 public:
  explicit WorkingDag(const Abd& abd);

  const Abd& abd() const { return *abd_; }
  VertexId find(VertexId v) { return uf_.find(v); }
  bool removed(VertexId rep) const { return removed_[rep]; }
  const std::vector<VertexId>& members(VertexId rep) const { return members_[rep]; }

  // Removes the given representatives, then recursively removes every live
  // non-sink vertex whose out-edges all died (restores "every live vertex
  // reaches a sink").
  void remove_and_close(const std::vector<VertexId>& reps);
  // Shrinks the representatives in `w_reps` into bottleneck `v`.
  void shrink(const std::vector<VertexId>& w_reps, VertexId v);

  uint64_t visited_edges = 0;       // cumulative search work
  std::ostream* trace = nullptr;    // optional event log

 private:
  friend struct DdfsRun;
  const Abd* abd_;
  detail::ShrinkUF uf_;
  std::vector<char> removed_;
  std::vector<std::vector<VertexId>> members_;
};

struct DdfsOutcome {
  bool success = false;
  std::vector<VertexId> p, q;       // on success: disjoint sink paths from y and z
  VertexId bottleneck = -1;         // on failure
  std::vector<VertexId> omissible;  // W (original vertices)
};

// Searches from the representatives of y and z; does not mutate `wd` (the
// caller applies remove_and_close / shrink). `phi` breaks exploration ties.
DdfsOutcome ddfs_once(WorkingDag& wd, VertexId y, VertexId z, const std::vector<int>& phi);

// Runs the candidates in order, removing on success and shrinking on failure;
// the collected double paths are mutually vertex-disjoint and maximal.
std::vector<DoublePath> maximal_double_paths(WorkingDag& wd,
                                             const MatchingSystem& ms,
                                             const std::vector<EdgeId>& candidates);

}  // namespace mm
