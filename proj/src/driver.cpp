#include "driver.hpp"

#include <cmath>

namespace mm {

std::vector<AlternatingPath> find_phase_paths(const MatchingSystem& ms,
                                              PhaseReport* report) {
  PhaseReport scratch;
  PhaseReport& rep = report ? *report : scratch;

  int free_count = 0;
  for (VertexId v = 0; v < ms.g.n(); ++v) free_count += ms.m.is_free(v);
  if (free_count <= 1) return {};

  DistTable dt = compute_dist(ms, std::nullopt, &rep.dist_ops);
  auto l = shortest_aug_length(ms, dt);
  if (!l) return {};
  rep.l = *l;

  auto cands = candidate_edges(ms, dt, *l);
  rep.candidates = static_cast<int>(cands.size());
  Abd abd = build_abd(ms, dt);
  WorkingDag wd(abd);
  auto dps = maximal_double_paths(wd, ms, cands);
  rep.ddfs_edges = wd.visited_edges;
  if (dps.empty())
    throw InternalInvariant("augmenting length defined but no double path found");

  auto paths = aug_from_double_paths(ms, dt, dps);
  rep.paths = static_cast<int>(paths.size());
  for (const auto& p : paths)
    if (p.length() != 2 * *l + 1)
      throw InternalInvariant("constructed path has wrong length");
  return paths;
}

MatchResult maximum_matching(const Graph& g, std::optional<Matching> initial) {
  MatchingSystem ms{g, initial ? std::move(*initial) : greedy_maximal_matching(g)};
  validate_matching(ms.g, ms.m);

  int phase_bound = 2 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(g.n())))) + 2;
  MatchResult res;
  int last_l = -1;
  for (int phase = 0;; ++phase) {
    if (phase > phase_bound) throw InternalInvariant("phase bound exceeded");
    PhaseReport rep;
    auto paths = find_phase_paths(ms, &rep);
    if (paths.empty()) break;
    if (rep.l <= last_l) throw InternalInvariant("phase length failed to increase");
    last_l = rep.l;
    for (const auto& p : paths) augment_along(ms, p);
    res.phases.push_back(rep);
  }
  res.matching = std::move(ms.m);
  return res;
}

}  // namespace mm
