#include "approx.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "driver.hpp"

namespace mm {

namespace {

// Induced subsystem over `verts` with a local contiguous id space. With
// drop_cut set, matched vertices whose mate falls outside the set are left
// out as well, so the restricted matching frees no vertex that the full one
// does not.
struct Induced {
  MatchingSystem sys;
  std::vector<VertexId> to_global;  // ascending

  VertexId to_local(VertexId global) const {
    auto it = std::lower_bound(to_global.begin(), to_global.end(), global);
    return static_cast<VertexId>(it - to_global.begin());
  }
};

Induced induce(const MatchingSystem& ms, std::vector<VertexId> verts, bool drop_cut) {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (drop_cut) {
    std::vector<char> in(ms.g.n(), 0);
    for (VertexId v : verts) in[v] = 1;
    std::vector<VertexId> kept;
    for (VertexId v : verts)
      if (ms.m.is_free(v) || in[ms.m.mate(v)]) kept.push_back(v);
    verts = std::move(kept);
  }
  Induced r;
  r.to_global = std::move(verts);
  int k = static_cast<int>(r.to_global.size());
  std::vector<VertexId> local(ms.g.n(), -1);
  for (int i = 0; i < k; ++i) local[r.to_global[i]] = i;
  Graph g(k);
  for (const Edge& e : ms.g.edges())
    if (local[e.u] >= 0 && local[e.v] >= 0) g.add_edge(local[e.u], local[e.v]);
  Matching m(k);
  for (VertexId v : r.to_global) {
    VertexId w = ms.m.mate(v);
    if (w > v && local[w] >= 0) m.match(g, local[v], local[w]);
  }
  r.sys = MatchingSystem{std::move(g), std::move(m)};
  return r;
}

uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
}

}  // namespace

DfsForest parallel_dfs(const Abd& h, int l, CostMeter* cm) {
  const int limit = 16 * (l + 1) * (l + 1);
  if (cm) cm->charge_mm(static_cast<uint64_t>(limit));

  DfsForest f;
  f.state.assign(h.n, SearchState::Idle);
  f.region_of.assign(h.n, -1);
  f.tree_parent.assign(h.n, -1);

  struct Search {
    VertexId head;
    bool alive = true;
  };
  std::vector<Search> searches;
  for (VertexId u = 0; u < h.n; ++u) {
    if (!h.in_dag[u] || !h.sink[u]) continue;
    f.state[u] = SearchState::Active;
    f.region_of[u] = static_cast<int>(searches.size());
    f.regions.push_back({u, {u}});
    searches.push_back({u});
  }

  int alive = static_cast<int>(searches.size());
  for (int step = 0; step < limit && alive > 0; ++step) {
    // One scheduling round: greedy maximal matching between heads and their
    // idle in-neighbors, heads in root order, each taking its smallest
    // still-unclaimed target. Matched heads advance, the rest backtrack.
    std::vector<char> claimed(h.n, 0);
    for (size_t i = 0; i < searches.size(); ++i) {
      Search& s = searches[i];
      if (!s.alive) continue;
      VertexId pick = -1;
      for (VertexId v : h.in[s.head])
        if (f.state[v] == SearchState::Idle && !claimed[v]) {
          pick = v;
          break;
        }
      if (pick >= 0) {
        claimed[pick] = 1;
        f.state[pick] = SearchState::Active;
        f.region_of[pick] = static_cast<int>(i);
        f.tree_parent[pick] = s.head;
        f.regions[i].members.push_back(pick);
        s.head = pick;
      } else {
        f.state[s.head] = SearchState::Dead;
        if (s.head == f.regions[i].root) {
          s.alive = false;
          --alive;
        } else {
          s.head = f.tree_parent[s.head];
        }
      }
    }
  }

  int non_sink = 0;
  for (VertexId v = 0; v < h.n; ++v) {
    if (h.in_dag[v] && !h.sink[v]) ++non_sink;
    if (f.state[v] == SearchState::Active) f.active.push_back(v);
  }
  // Each live search changed one non-sink state per iteration and keeps at
  // most l+1 vertices active, so the active set stays a small fraction.
  if (static_cast<int64_t>(f.active.size()) * 8 * (l + 1) > non_sink)
    throw InternalInvariant("parallel dfs: active set over budget");
  for (const Region& r : f.regions)
    if (static_cast<int>(r.members.size()) > limit)
      throw InternalInvariant("parallel dfs: region over budget");
  // An idle vertex above a dead one would mean a head backtracked while an
  // expansion was still available.
  for (VertexId v = 0; v < h.n; ++v) {
    if (!h.in_dag[v] || f.state[v] != SearchState::Idle) continue;
    for (VertexId t : h.out[v])
      if (f.state[t] == SearchState::Dead)
        throw InternalInvariant("parallel dfs: idle vertex above a dead one");
  }
  return f;
}

std::vector<VertexId> double_reachable(const MatchingSystem& ms, const DistTable& dt,
                                       const Abd& h, const DfsForest& forest,
                                       int region, int l_actual) {
  const Region& r = forest.regions[region];
  // A qualifying vertex sits below a bridge of the critical volume 2l'+5, so
  // its odd distance is orthodox and its even one completes that volume.
  // Vertices whose distances sum higher only reach wasteful bridges, which
  // cannot close a shortest augmenting path across regions.
  std::vector<VertexId> cand;
  for (VertexId v : r.members) {
    if (dt.dist_even[v] >= kInfDist || dt.dist_odd[v] >= dt.dist_even[v]) continue;
    if (dt.dist_odd[v] + dt.dist_even[v] != 2 * l_actual + 5) continue;
    for (VertexId t : h.out[v])
      if (forest.region_of[t] != region) {
        cand.push_back(v);
        break;
      }
  }
  if (cand.empty()) return {};

  // The partial double path must lie inside the region: the even distance
  // has to survive restriction to it with only the root seeded; cut matched
  // pairs go free in the restriction but must not act as seeds.
  Induced ind = induce(ms, r.members, false);
  std::vector<VertexId> seeds{ind.to_local(r.root)};
  DistTable local = compute_dist(ind.sys, 2 * l_actual + 5, nullptr, &seeds);

  std::vector<VertexId> out;
  for (VertexId v : cand)
    if (local.dist_even[ind.to_local(v)] == dt.dist_even[v]) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

AugAndHitResult aug_and_hit(const MatchingSystem& ms, int l, CostMeter* cm) {
  validate_matching(ms.g, ms.m);
  if (cm) cm->charge_aug_and_hit(l);

  AugAndHitResult res;
  DistTable dt = compute_dist(ms, 2 * l + 5);
  Abd h = build_abd(ms, dt, l + 2);
  DfsForest forest = parallel_dfs(h, l, nullptr);

  std::vector<char> in_b(ms.g.n(), 0);
  for (VertexId v : forest.active) in_b[v] = 1;

  res.l_actual = shortest_aug_length(ms, dt);
  if (res.l_actual && *res.l_actual <= l) {
    int la = *res.l_actual;
    // mergeable region pairs: a critical crossable edge bridging two
    // regions, or a dag edge leaving a double-reachable vertex
    std::vector<std::pair<int, int>> pairs;
    for (EdgeId e : candidate_edges(ms, dt, la)) {
      int ru = forest.region_of[ms.g.edge(e).u];
      int rv = forest.region_of[ms.g.edge(e).v];
      if (ru >= 0 && rv >= 0 && ru != rv)
        pairs.emplace_back(std::min(ru, rv), std::max(ru, rv));
    }
    for (int r = 0; r < static_cast<int>(forest.regions.size()); ++r)
      for (VertexId v : double_reachable(ms, dt, h, forest, r, la))
        for (VertexId t : h.out[v]) {
          int rt = forest.region_of[t];
          if (rt >= 0 && rt != r) pairs.emplace_back(std::min(r, rt), std::max(r, rt));
        }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<char> taken(forest.regions.size(), 0);
    for (auto [a, b] : pairs) {
      if (taken[a] || taken[b]) continue;
      taken[a] = taken[b] = 1;
      std::vector<VertexId> verts = forest.regions[a].members;
      verts.insert(verts.end(), forest.regions[b].members.begin(),
                   forest.regions[b].members.end());
      for (VertexId v : verts) in_b[v] = 1;
      // The merged region holds a double path, hence an augmenting path
      // between the two roots. Cut matched pairs are dropped so that the
      // restricted system frees exactly the roots; the guaranteed path
      // never touches them (every matched edge on it lies inside).
      Induced ind = induce(ms, verts, true);
      auto local_paths = find_phase_paths(ind.sys);
      if (local_paths.empty())
        throw InternalInvariant("merged region lost its augmenting path");
      AlternatingPath p;
      for (VertexId v : local_paths.front().verts) p.verts.push_back(ind.to_global[v]);
      if (p.length() != 2 * la + 1 || !is_augmenting_path(ms, p))
        throw InternalInvariant("merged region path mismatch");
      res.q.push_back(std::move(p));
      ++res.merges;
    }
  }

  for (VertexId v = 0; v < ms.g.n(); ++v)
    if (in_b[v]) res.b.push_back(v);
  // |B| <= 16|Q|(l+1)^2 + |M|/(4(l+1)), scaled by 4(l+1) to stay integral
  uint64_t lp1 = static_cast<uint64_t>(l) + 1;
  if (res.b.size() * 4 * lp1 > 64 * res.q.size() * lp1 * lp1 * lp1 + ms.m.size())
    throw InternalInvariant("hitting set over budget");
  return res;
}

MatchingSystem length_stretch(const MatchingSystem& ms, const std::vector<VertexId>& b,
                              StretchMap& map) {
  validate_matching(ms.g, ms.m);
  int n = ms.g.n();
  map = StretchMap{};
  map.old_n = n;

  std::vector<char> in_b(n, 0);
  for (VertexId v : b) in_b[v] = 1;

  int next = n;
  std::vector<char> subdivided(ms.g.m(), 0);
  for (VertexId v = 0; v < n; ++v) {
    if (!in_b[v]) continue;
    if (ms.m.is_free(v)) {
      map.extensions.push_back({v, next, next + 1});
      next += 2;
    } else {
      VertexId w = ms.m.mate(v);
      if (w < v && in_b[w]) continue;  // one gadget covers both endpoints
      map.subdivisions.push_back({v, w, next, next + 1});
      next += 2;
      subdivided[*ms.g.find_edge(v, w)] = 1;
    }
  }
  map.new_n = next;

  Graph g(next);
  for (EdgeId e = 0; e < ms.g.m(); ++e)
    if (!subdivided[e]) g.add_edge(ms.g.edge(e).u, ms.g.edge(e).v);
  for (const auto& s : map.subdivisions) {
    g.add_edge(s.v, s.x);
    g.add_edge(s.x, s.y);
    g.add_edge(s.y, s.w);
  }
  for (const auto& e : map.extensions) {
    g.add_edge(e.v, e.w1);
    g.add_edge(e.w1, e.w2);
  }

  Matching m(next);
  for (auto [a, c] : ms.m.pairs())
    if (!subdivided[*ms.g.find_edge(a, c)]) m.match(g, a, c);
  for (const auto& s : map.subdivisions) {
    m.match(g, s.v, s.x);
    m.match(g, s.y, s.w);
  }
  for (const auto& e : map.extensions) m.match(g, e.v, e.w1);
  return MatchingSystem{std::move(g), std::move(m)};
}

AlternatingPath stretch_path(const AlternatingPath& p, const StretchMap& map) {
  std::unordered_map<uint64_t, const StretchMap::Subdivision*> subs;
  for (const auto& s : map.subdivisions) subs[pair_key(s.v, s.w)] = &s;
  std::unordered_map<VertexId, const StretchMap::Extension*> exts;
  for (const auto& e : map.extensions) exts[e.v] = &e;

  AlternatingPath out;
  if (p.verts.empty()) return out;
  if (auto it = exts.find(p.verts.front()); it != exts.end()) {
    out.verts.push_back(it->second->w2);
    out.verts.push_back(it->second->w1);
  }
  for (size_t i = 0; i < p.verts.size(); ++i) {
    out.verts.push_back(p.verts[i]);
    if (i + 1 == p.verts.size()) break;
    // only matched edges carry gadgets, so a hit identifies the detour
    auto it = subs.find(pair_key(p.verts[i], p.verts[i + 1]));
    if (it == subs.end()) continue;
    const auto& s = *it->second;
    if (p.verts[i] == s.v) {
      out.verts.push_back(s.x);
      out.verts.push_back(s.y);
    } else {
      out.verts.push_back(s.y);
      out.verts.push_back(s.x);
    }
  }
  if (auto it = exts.find(p.verts.back()); it != exts.end()) {
    out.verts.push_back(it->second->w1);
    out.verts.push_back(it->second->w2);
  }
  return out;
}

Matching unstretch(const Graph& old_g, const StretchMap& map, const Matching& stretched) {
  if (stretched.n() != map.new_n || old_g.n() != map.old_n)
    throw InternalInvariant("unstretch arity mismatch");
  Matching out(map.old_n);
  for (const auto& s : map.subdivisions) {
    bool left = stretched.mate(s.v) == s.x;
    bool right = stretched.mate(s.w) == s.y;
    bool mid = stretched.mate(s.x) == s.y;
    // augmentation flips the whole gadget or none of it
    if (left != right || mid == left) throw InconsistentSubdivision();
    if (left) out.match(old_g, s.v, s.w);
  }
  for (const auto& e : map.extensions) {
    bool tail = stretched.mate(e.v) == e.w1;
    bool tip = stretched.mate(e.w1) == e.w2;
    if (tail == tip) throw InconsistentSubdivision();
    // tail matched: v goes back to being free; otherwise v's partner is an
    // original vertex and the loop below restores the pair
  }
  for (auto [a, b] : stretched.pairs())
    if (a < map.old_n && b < map.old_n) out.match(old_g, a, b);
  return out;
}

Matching recover(const std::vector<Graph>& originals, const std::vector<StretchMap>& maps,
                 Matching m) {
  if (originals.size() != maps.size()) throw InternalInvariant("recover stack mismatch");
  for (size_t i = maps.size(); i-- > 0;) m = unstretch(originals[i], maps[i], m);
  return m;
}

Matching amplifier(const MatchingSystem& ms, int inv_alpha, CostMeter* cm,
                   AmplifierStats* stats) {
  if (inv_alpha < 2 || (inv_alpha & (inv_alpha - 1)))
    throw Error("amplifier: alpha must be a power of two at most 1/2");
  validate_matching(ms.g, ms.m);

  const int k = 4 * inv_alpha;
  const uint64_t m1 = ms.m.size();
  const uint64_t ia = inv_alpha;

  MatchingSystem cur = ms;
  std::vector<Graph> originals;
  std::vector<StretchMap> maps;
  uint64_t q_total = 0;
  bool early = false;

  for (int phase = 0; phase < k; ++phase) {
    AugAndHitResult ah = aug_and_hit(cur, k, cm);
    if (!ah.l_actual || *ah.l_actual > k) {
      // every remaining phase would stretch without ever augmenting; the
      // result is unaffected, so only the model cost is paid out
      if (cm)
        for (int rest = phase + 1; rest < k; ++rest) cm->charge_aug_and_hit(k);
      break;
    }
    originals.push_back(cur.g);
    StretchMap map;
    MatchingSystem next = length_stretch(cur, ah.b, map);
    for (const AlternatingPath& p : ah.q) augment_along(next, stretch_path(p, map));
    q_total += ah.q.size();
    maps.push_back(std::move(map));
    cur = std::move(next);
    if (stats) {
      ++stats->phases;
      stats->augmentations = static_cast<int>(q_total);
      stats->phase_b.push_back(static_cast<int>(ah.b.size()));
      if (stats->keep_systems) stats->systems.push_back(cur);
    }
    // space guard: enough progress to stop stretching further
    if (q_total * 648 * ia * ia > m1) {
      early = true;
      break;
    }
  }

  Matching out = recover(originals, maps, std::move(cur.m));
  if (static_cast<uint64_t>(out.size()) != m1 + q_total)
    throw InternalInvariant("recovery changed the augmentation count");
  validate_matching(ms.g, out);
  if (stats) stats->early_stop = early;
  return out;
}

Matching approx_matching(const Graph& g, int inv_eps, CostMeter* cm) {
  if (inv_eps < 2) throw Error("approx: eps must be at most 1/2");
  int target = static_cast<int>(std::bit_ceil(static_cast<unsigned>(inv_eps)));

  Matching m = greedy_maximal_matching(g);
  if (cm) cm->charge_mm();
  for (int ia = 2; ia <= target; ia *= 2) {
    // each call either gains (alpha^2/1296)|M| or certifies the stage done,
    // so this many repetitions always reach the (1 - alpha/2) target
    const uint64_t reps = 1296ull * ia + 1;
    CostMeter before;
    for (uint64_t it = 0; it < reps; ++it) {
      if (cm) before = *cm;
      Matching next = amplifier(MatchingSystem{g, m}, ia, cm);
      bool fixed = next.size() == m.size();
      m = std::move(next);
      if (fixed) {
        // further repetitions are identical no-ops; pay the model cost of
        // the ones the oblivious schedule would still run
        if (cm) {
          uint64_t skipped = reps - it - 1;
          cm->congest_rounds += skipped * (cm->congest_rounds - before.congest_rounds);
          cm->stream_passes += skipped * (cm->stream_passes - before.stream_passes);
          cm->mm_invocations += skipped * (cm->mm_invocations - before.mm_invocations);
        }
        break;
      }
    }
  }
  return m;
}

}  // namespace mm
