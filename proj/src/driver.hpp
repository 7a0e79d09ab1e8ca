#pragma once

// Exact maximum matching: repeat phases of "find a maximal set of disjoint
// shortest augmenting paths, augment along all of them" until none is left.

#include <optional>

#include "abd.hpp"
#include "core.hpp"

namespace mm {

struct PhaseReport {
  int l = -1;                  // shortest augmenting length parameter (2l+1)
  int paths = 0;               // disjoint paths augmented this phase
  int candidates = 0;
  uint64_t ddfs_edges = 0;     // search work inside this phase
  DistOpCounters dist_ops;
};

// One phase: a maximal set of vertex-disjoint shortest augmenting paths of
// ms, empty when no augmenting path exists.
std::vector<AlternatingPath> find_phase_paths(const MatchingSystem& ms,
                                              PhaseReport* report = nullptr);

struct MatchResult {
  Matching matching;
  std::vector<PhaseReport> phases;
};

// Runs phases from `initial` (greedy maximal when absent). The phase count
// is bounded by 2*ceil(sqrt(n)) + 2.
MatchResult maximum_matching(const Graph& g,
                             std::optional<Matching> initial = std::nullopt);

}  // namespace mm
