#pragma once

// Approximate maximum matching.
//
// The exact engine finds maximal sets of disjoint shortest augmenting paths;
// here that machinery is cut down to a bounded length 2l+1 and combined with
// a hitting set B that every remaining shortest augmenting path must cross.
// Subdividing the matching edges at B ("length stretch") pushes those paths
// beyond the length budget, so a fixed number of stretch-and-augment phases
// followed by an inverse recovery amplifies any (1-a)-approximate matching
// towards (1-a/2). Iterating over a = 1/2, 1/4, ... eps yields a (1-eps)
// approximation.
//
// The simulated CONGEST/semi-streaming cost of each step is tracked in a
// CostMeter. Charges follow the model's data-independent schedule (a phase
// always pays for its full parallel-DFS iteration budget and its bounded
// distance sweeps), even where the sequential simulation can skip provably
// idempotent work.

#include <cstdint>
#include <optional>
#include <vector>

#include "abd.hpp"
#include "core.hpp"
#include "dist.hpp"

namespace mm {

struct CostMeter {
  uint64_t congest_rounds = 0;
  uint64_t stream_passes = 0;
  uint64_t mm_invocations = 0;
  uint64_t mm_round_model = 1;  // rounds charged per maximal-matching call

  // One bounded distance computation: every simulated round relays through
  // shrunk components of diameter O(l), and streaming replays it in two
  // passes.
  void charge_dist(int rounds, int l) {
    congest_rounds += static_cast<uint64_t>(rounds) * (l + 1);
    stream_passes += 2 * static_cast<uint64_t>(rounds);
  }
  void charge_mm(uint64_t count = 1) {
    mm_invocations += count;
    congest_rounds += count * mm_round_model;
    stream_passes += count;
  }
  // Fixed cost of one path-finding phase at length budget 2l+1: three
  // bounded distance sweeps (global, per-region in parallel, merged-pair
  // search) plus the DFS iteration budget and the region-merge matching.
  void charge_aug_and_hit(int l) {
    for (int i = 0; i < 3; ++i) charge_dist(2 * l + 5, l);
    charge_mm(16ull * (l + 1) * (l + 1) + 1);
  }
};

// ---- bounded path finding -------------------------------------------------

enum class SearchState : uint8_t { Idle, Active, Dead };

struct Region {
  VertexId root;                 // a free vertex
  std::vector<VertexId> members; // discovery order, root first
};

struct DfsForest {
  std::vector<Region> regions;
  std::vector<SearchState> state;    // final state; Idle for unreached vertices
  std::vector<int> region_of;        // -1 = in no region
  std::vector<VertexId> tree_parent; // in-tree parent towards the root, -1
  std::vector<VertexId> active;      // ascending; live roots included
};

// Parallel DFS over the reverse base dag, one search per sink, running
// 16(l+1)^2 head-scheduling iterations (each one greedy maximal matching
// between heads and their idle in-neighbors). Verifies on exit that no idle
// vertex points at a dead one, that the active set is small, and that no
// region outgrew the iteration budget; violations throw InternalInvariant.
DfsForest parallel_dfs(const Abd& h, int l, CostMeter* cm = nullptr);

// Members of the region that admit a partial double path lying entirely
// inside it, where the path's bridge has the critical volume 2l'+5 (l' the
// shortest augmenting length). Candidates must have a dag edge leaving the
// region, an odd orthodox distance and an even distance completing the
// critical volume; the clincher compares that even distance against the
// region-induced system seeded at the root alone. Ascending order. The
// induced distance sweep is charged by the caller (regions run in parallel
// in the simulated model).
std::vector<VertexId> double_reachable(const MatchingSystem& ms, const DistTable& dt,
                                       const Abd& h, const DfsForest& forest,
                                       int region, int l_actual);

struct AugAndHitResult {
  std::vector<AlternatingPath> q;  // disjoint augmenting paths, length 2l'+1
  std::vector<VertexId> b;         // hitting set, ascending
  std::optional<int> l_actual;     // shortest augmenting length within budget
  int merges = 0;
};

// Paths no longer than 2l+1 plus a hitting set: Q is empty when the shortest
// augmenting path is longer, and |B| <= 16|Q|(l+1)^2 + |M|/(4(l+1)) always
// (checked; InternalInvariant otherwise).
AugAndHitResult aug_and_hit(const MatchingSystem& ms, int l, CostMeter* cm = nullptr);

// ---- stretching and recovery ----------------------------------------------

struct StretchMap {
  // matched {v,w} replaced by v-x-y-w with {v,x} and {y,w} matched
  struct Subdivision {
    VertexId v, w, x, y;
  };
  // free v keeps its edges but gains a matched tail {v,w1} plus {w1,w2};
  // the fresh vertex w2 takes over the free role
  struct Extension {
    VertexId v, w1, w2;
  };
  std::vector<Subdivision> subdivisions;
  std::vector<Extension> extensions;
  int old_n = 0, new_n = 0;
};

// Subdivides the matching edge of every matched vertex in `b` (once per
// edge) and extends every free vertex in `b`; fresh vertices get ids past
// the old range so the map stays invertible.
MatchingSystem length_stretch(const MatchingSystem& ms, const std::vector<VertexId>& b,
                              StretchMap& map);

// The image of an augmenting path under the stretch: subdivided matching
// edges detour through their gadget, extended endpoints grow the new tail.
AlternatingPath stretch_path(const AlternatingPath& p, const StretchMap& map);

// Inverts one stretch: both outer gadget edges matched collapses back to the
// matching edge, neither drops it; a mixed state cannot arise from
// augmentation and throws InconsistentSubdivision.
Matching unstretch(const Graph& old_g, const StretchMap& map, const Matching& stretched);

// Applies unstretch over the whole phase stack in reverse; originals[i] is
// the graph maps[i] was built from.
Matching recover(const std::vector<Graph>& originals, const std::vector<StretchMap>& maps,
                 Matching m);

// ---- drivers --------------------------------------------------------------

struct AmplifierStats {
  int phases = 0;             // phases actually executed
  int augmentations = 0;      // total |Q| over all phases
  std::vector<int> phase_b;   // hitting-set size per executed phase
  bool early_stop = false;
  bool keep_systems = false;            // in: snapshot each post-phase system
  std::vector<MatchingSystem> systems;  // out when keep_systems is set
};

// One amplification run: 4/alpha phases of {bounded path finding, stretch,
// augment} and a recovery, with the early stop once the total augmentation
// count exceeds (alpha^2/648)|M|. Requires inv_alpha a power of two >= 2.
Matching amplifier(const MatchingSystem& ms, int inv_alpha, CostMeter* cm = nullptr,
                   AmplifierStats* stats = nullptr);

// (1-eps)-approximate maximum matching, eps = 1/inv_eps; an inv_eps that is
// not a power of two is tightened up to the next one. Seeds with the greedy
// maximal matching and runs the amplifier schedule alpha = 1/2, 1/4, ...,
// eps, repeating each stage until its fixpoint.
Matching approx_matching(const Graph& g, int inv_eps, CostMeter* cm = nullptr);

}  // namespace mm
