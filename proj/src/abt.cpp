#include "abt.hpp"

#include <algorithm>

#include "shrink.hpp"

namespace mm {

namespace {

bool edge_in_ep_of(const MatchingSystem& ms, const DistTable& dt, EdgeId e, VertexId u) {
  auto a = dt.alpha(u);
  if (!a) return false;
  Parity rp = ms.rho(e);
  if (rp != flip(*a)) return false;
  VertexId w = ms.g.edge(e).other(u);
  return dt.dist(w, rp) < kInfDist && dt.dist(w, rp) + 1 == dt.dist(u, *a);
}

bool edge_in_ep(const MatchingSystem& ms, const DistTable& dt, EdgeId e) {
  const Edge& ed = ms.g.edge(e);
  return edge_in_ep_of(ms, dt, e, ed.u) || edge_in_ep_of(ms, dt, e, ed.v);
}

}  // namespace

AbtTree build_abt(const MatchingSystem& ms, const DistTable& dt,
                  const std::vector<std::pair<VertexId, VertexId>>& respected) {
  int n = ms.g.n();
  AbtTree t;
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  t.root_of.assign(n, -1);
  t.tin.assign(n, -1);
  t.tout.assign(n, -1);
  t.in_tree.assign(n, 0);

  std::vector<VertexId> forced(n, -1);
  for (auto [child, par] : respected) {
    if (forced[child] >= 0 && forced[child] != par) throw RespectConflict();
    auto e = ms.g.find_edge(child, par);
    if (!e || !edge_in_ep_of(ms, dt, *e, child)) throw NotEpEdge();
    forced[child] = par;
  }

  for (VertexId v = 0; v < n; ++v) {
    if (!dt.alpha(v)) continue;
    t.in_tree[v] = 1;
    if (ms.m.is_free(v)) continue;  // roots of the forest components
    if (forced[v] >= 0) {
      t.parent[v] = forced[v];
    } else {
      auto ps = p_set(ms, dt, v);
      if (ps.empty()) throw InternalInvariant("reachable vertex without predecessor");
      t.parent[v] = ps.front();
    }
    t.parent_edge[v] = *ms.g.find_edge(v, t.parent[v]);
  }

  std::vector<std::vector<VertexId>> kids(n);
  for (VertexId v = 0; v < n; ++v)
    if (t.parent[v] >= 0) kids[t.parent[v]].push_back(v);

  int clock = 0;
  for (VertexId r = 0; r < n; ++r) {
    if (!t.in_tree[r] || !ms.m.is_free(r)) continue;
    // iterative preorder; second visit closes the interval
    std::vector<std::pair<VertexId, size_t>> stack{{r, 0}};
    t.tin[r] = clock++;
    t.root_of[r] = r;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < kids[v].size()) {
        VertexId c = kids[v][i++];
        t.tin[c] = clock++;
        t.root_of[c] = r;
        stack.emplace_back(c, 0);
      } else {
        t.tout[v] = clock++;
        stack.pop_back();
      }
    }
  }
  return t;
}

MieTable compute_mies(const MatchingSystem& ms, const DistTable& dt, const AbtTree& abt) {
  int n = ms.g.n();
  MieTable mt;
  mt.mie.assign(n, -1);

  detail::ShrinkUF uf(n);
  detail::EdgeHeap heap;
  std::vector<int> hroot(n, -1);

  for (EdgeId e = 0; e < ms.g.m(); ++e) {
    const Edge& ed = ms.g.edge(e);
    if (abt.parent_edge[ed.u] == e || abt.parent_edge[ed.v] == e) continue;
    EdgeLevels lv;
    try {
      lv = edge_level(ms, dt, e);
    } catch (const UndefinedLevel&) {
      continue;  // cannot be a minimum incoming edge
    }
    detail::EdgeHeap::Key key{lv.level, edge_in_ep(ms, dt, e) ? 1u : 0u,
                              static_cast<uint32_t>(ed.u), static_cast<uint32_t>(ed.v)};
    for (VertexId w : {ed.u, ed.v})
      hroot[w] = heap.meld(hroot[w], heap.make(key, e));
  }

  // children strictly farther than parents, so decreasing orthodox distance
  // is a valid leaf-to-root sweep
  std::vector<VertexId> order;
  for (VertexId v = 0; v < n; ++v)
    if (abt.in_tree[v]) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    int da = dt.dist_orthodox(a), db = dt.dist_orthodox(b);
    return da != db ? da > db : a < b;
  });

  for (VertexId v : order) {
    int& root = hroot[v];
    while (root >= 0) {
      const Edge& ed = ms.g.edge(heap.arena[root].edge);
      if (uf.find(ed.u) != uf.find(ed.v)) break;
      root = heap.pop(root);
    }
    if (root >= 0) mt.mie[v] = heap.arena[root].edge;
    VertexId p = abt.parent[v];
    if (p >= 0) {
      VertexId w = uf.find(p);
      uf.absorb(v, p);
      hroot[w] = heap.meld(hroot[w], hroot[v]);
      if (w != v) hroot[v] = -1;
    }
  }
  return mt;
}

AlternatingPath path_construction(const MatchingSystem& ms, const DistTable& dt,
                                  const AbtTree& abt, const MieTable& mies,
                                  VertexId s, VertexId t, Parity theta) {
  if (!abt.is_ancestor(s, t)) throw NotDescendant();
  if (dt.dist(t, theta) >= kInfDist) throw NoSuchParity();

  // Explicit-stack rendition of the recursive expansion; `rev` frames emit
  // their sub-path back to front so the final sequence comes out in order.
  struct Frame {
    VertexId s, t;
    Parity theta;
    bool rev;
    bool emit_only = false;  // plain vertex emission
  };
  AlternatingPath out;
  std::vector<Frame> stack{{s, t, theta, false}};
  size_t guard = 16 * static_cast<size_t>(ms.g.n()) + 64;
  while (!stack.empty()) {
    if (out.verts.size() + stack.size() > guard)
      throw InternalInvariant("path construction diverged");
    Frame f = stack.back();
    stack.pop_back();
    if (f.emit_only) {
      out.verts.push_back(f.t);
      continue;
    }
    if (f.s == f.t) {
      out.verts.push_back(f.t);
      continue;
    }
    if (dt.dist(f.t, f.theta) >= kInfDist) throw NoSuchParity();
    auto a = dt.alpha(f.t);
    if (a && *a == f.theta) {
      VertexId p = abt.parent[f.t];
      if (p < 0) {
        // The expansion entered through a different tree: a minimum incoming
        // edge may cross components, in which case the shortest path starts
        // at that tree's own free root rather than at s.
        if (!ms.m.is_free(f.t)) throw InternalInvariant("orthodox step above a root");
        out.verts.push_back(f.t);
        continue;
      }
      // forward: path(s..p) then t; reverse: t then reversed path(s..p)
      if (!f.rev) {
        stack.push_back({0, f.t, f.theta, false, true});
        stack.push_back({f.s, p, flip(f.theta), false});
      } else {
        stack.push_back({f.s, p, flip(f.theta), true});
        stack.push_back({0, f.t, f.theta, false, true});
      }
    } else {
      EdgeId e = mies.mie[f.t];
      if (e < 0) throw InternalInvariant("unorthodox step without incoming edge");
      const Edge& ed = ms.g.edge(e);
      VertexId z = abt.is_ancestor(f.t, ed.u) ? ed.u : ed.v;
      VertexId y = ed.other(z);
      if (!abt.is_ancestor(f.t, z) || abt.is_ancestor(f.t, y))
        throw InternalInvariant("incoming edge orientation");
      Parity rp = ms.rho(e);
      // forward: path(s..y), reversed path(t..z); reverse: path(t..z), reversed path(s..y)
      if (!f.rev) {
        stack.push_back({f.t, z, rp, true});
        stack.push_back({f.s, y, rp, false});
      } else {
        stack.push_back({f.s, y, rp, true});
        stack.push_back({f.t, z, rp, false});
      }
    }
  }
  return out;
}

std::vector<AlternatingPath> aug_from_double_paths(const MatchingSystem& ms,
                                                   const DistTable& dt,
                                                   const std::vector<DoublePath>& dps) {
  std::vector<char> used(ms.g.n(), 0);
  std::vector<std::pair<VertexId, VertexId>> respected;
  for (const DoublePath& dp : dps) {
    for (const auto* side : {&dp.p, &dp.q}) {
      if (side->empty()) throw InvalidDoublePath();
      for (VertexId v : *side) {
        if (used[v]) throw PathsOverlap();
        used[v] = 1;
      }
      for (size_t i = 0; i + 1 < side->size(); ++i)
        respected.emplace_back((*side)[i], (*side)[i + 1]);
    }
    if (dp.p.front() != dp.y || dp.q.front() != dp.z) throw InvalidDoublePath();
    if (!ms.m.is_free(dp.p.back()) || !ms.m.is_free(dp.q.back())) throw InvalidDoublePath();
  }

  AbtTree abt = build_abt(ms, dt, respected);
  MieTable mies = compute_mies(ms, dt, abt);

  std::vector<AlternatingPath> out;
  for (const DoublePath& dp : dps) {
    Parity rp = ms.rho(dp.bridge);
    AlternatingPath yside =
        path_construction(ms, dt, abt, mies, abt.root_of[dp.y], dp.y, rp);
    AlternatingPath zside =
        path_construction(ms, dt, abt, mies, abt.root_of[dp.z], dp.z, rp);
    AlternatingPath x = yside;
    x.verts.insert(x.verts.end(), zside.verts.rbegin(), zside.verts.rend());
    if (!is_augmenting_path(ms, x)) throw InternalInvariant("double path conversion failed");
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace mm
