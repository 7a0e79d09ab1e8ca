#include "dist.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <tuple>

#include "shrink.hpp"

namespace mm {

namespace {

constexpr VertexId kNoPar = -1;

// (round, vertex, parity, kind) with even popped before odd on full ties.
// Kind 0 marks seed/join entries whose round is final; kind 1 marks
// unorthodox candidates derived from an incoming-edge volume, which must be
// re-validated at pop time (the edge may have been shrunk into a self-loop
// after the candidate was queued, in which case the round is garbage).
enum { kKindJoin = 0, kKindOffer = 1 };
using QEntry = std::tuple<int, VertexId, int, int>;
using RoundQueue = std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>>;

struct Ctx {
  const MatchingSystem& ms;
  DistTable& dt;
  DistOpCounters& cnt;
  RoundQueue queue;
  detail::ShrinkUF uf;
  detail::EdgeHeap heap;
  std::vector<int> hroot;       // heap root per structural root, -1 empty
  std::vector<char> vol_fixed;  // per edge: already entered the heaps

  Ctx(const MatchingSystem& m, DistTable& d, DistOpCounters& c)
      : ms(m), dt(d), cnt(c), uf(m.g.n()), hroot(m.g.n(), -1), vol_fixed(m.g.m(), 0) {}

  void push(VertexId v, int r, Parity p, int kind) {
    ++cnt.queue_pushes;
    queue.emplace(r, v, static_cast<int>(p), kind);
  }

  int dist(VertexId v, Parity p) const { return dt.dist(v, p); }
  int& dist_ref(VertexId v, Parity p) {
    return p == Parity::Odd ? dt.dist_odd[v] : dt.dist_even[v];
  }

  // If the structural root w still lacks its unorthodox distance, enqueue the
  // candidate derived from an incoming-edge volume: dist^unorthodox(w) =
  // vol - dist^orthodox(w).
  void offer(VertexId w, int vol) {
    auto a = dt.alpha(w);
    if (!a) return;  // root not yet discovered; a later event re-offers
    if (dist(w, flip(*a)) < kInfDist) return;
    push(w, vol - dist(w, *a), flip(*a), kKindOffer);
  }

  // Lazily drop incoming edges both of whose endpoints were shrunk together,
  // then report the volume of the surviving minimum (-1 when none is left).
  int purge_min_vol(VertexId w) {
    int& root = hroot[w];
    while (root >= 0) {
      const Edge& e = ms.g.edge(heap.arena[root].edge);
      cnt.find_ops += 2;
      if (uf.find(e.u) != uf.find(e.v)) break;
      ++cnt.heap_pops;
      root = heap.pop(root);
    }
    if (root < 0) return -1;
    const Edge& ed = ms.g.edge(heap.arena[root].edge);
    Parity rp = ms.rho(heap.arena[root].edge);
    return dist(ed.u, rp) + dist(ed.v, rp) + 1;
  }

  void purge_and_offer(VertexId w) {
    int vol = purge_min_vol(w);
    if (vol >= 0) offer(w, vol);
  }
};

}  // namespace

DistTable compute_dist(const MatchingSystem& ms, std::optional<int> round_bound,
                       DistOpCounters* counters, const std::vector<VertexId>* seeds) {
  validate_matching(ms.g, ms.m);
  int n = ms.g.n();
  DistTable dt;
  dt.dist_odd.assign(n, kInfDist);
  dt.dist_even.assign(n, kInfDist);
  dt.par.assign(n, kNoPar);
  dt.par_virtual.assign(n, 0);
  DistOpCounters scratch;
  Ctx ctx(ms, dt, counters ? *counters : scratch);

  if (seeds) {
    for (VertexId u : *seeds) {
      if (!ms.m.is_free(u)) throw NotAMatching();
      dt.par_virtual[u] = 1;
      ctx.push(u, 2, Parity::Even, kKindJoin);
    }
  } else {
    for (VertexId u = 0; u < n; ++u)
      if (ms.m.is_free(u)) {
        dt.par_virtual[u] = 1;
        ctx.push(u, 2, Parity::Even, kKindJoin);
      }
  }

  while (!ctx.queue.empty()) {
    auto [r, v, pi, kind] = ctx.queue.top();
    ctx.queue.pop();
    ++ctx.cnt.queue_pops;
    if (round_bound && r > *round_bound) continue;
    Parity theta = static_cast<Parity>(pi);
    if (ctx.dist(v, theta) < kInfDist) continue;
    if (kind == kKindOffer) {
      // The candidate is only as fresh as the incoming edge it came from.
      // Intermediate shrinks may have turned that edge into a self-loop; the
      // current live minimum decides whether this round is still real.
      int vol = ctx.purge_min_vol(v);
      auto a = dt.alpha(v);
      if (vol < 0 || !a || vol - ctx.dist(v, *a) != r) {
        if (vol >= 0) ctx.offer(v, vol);
        continue;
      }
    }
    ctx.dist_ref(v, theta) = r;
    dt.rounds = std::max(dt.rounds, r);

    for (EdgeId e : ms.g.incident(v)) {
      ++ctx.cnt.edge_scans;
      VertexId x = ms.g.edge(e).other(v);
      Parity rp = ms.rho(e);
      if (dt.par[x] == kNoPar && !dt.par_virtual[x] && rp == theta) {
        dt.par[x] = v;
        ctx.push(x, r + 1, flip(theta), kKindJoin);
      } else if (!ctx.vol_fixed[e] && ctx.dist(v, rp) < kInfDist &&
                 ctx.dist(x, rp) < kInfDist &&
                 std::max(ctx.dist(v, rp), ctx.dist(x, rp)) == r) {
        // the edge volume is final from this round on
        ctx.vol_fixed[e] = 1;
        int vol = ctx.dist(v, rp) + ctx.dist(x, rp) + 1;
        detail::EdgeHeap::Key key{static_cast<uint64_t>(vol), 0,
                                  static_cast<uint32_t>(ms.g.edge(e).u),
                                  static_cast<uint32_t>(ms.g.edge(e).v)};
        ctx.cnt.find_ops += 2;
        VertexId rv = ctx.uf.find(v), rx = ctx.uf.find(x);
        for (VertexId w : {rv, rx}) {
          ++ctx.cnt.heap_pushes;
          ctx.hroot[w] = ctx.heap.meld(ctx.hroot[w], ctx.heap.make(key, e));
          ctx.offer(w, vol);
          if (rv == rx) break;
        }
      }
    }

    // theta unorthodox (the other parity resolved earlier) => contract v
    // into its parent and re-expose the merged set's best incoming edge.
    if (ctx.dist(v, flip(theta)) < ctx.dist(v, theta) && !dt.par_virtual[v]) {
      VertexId p = dt.par[v];
      ++ctx.cnt.find_ops;
      VertexId w = ctx.uf.find(p);
      ctx.uf.absorb(v, p);
      ++ctx.cnt.heap_melds;
      ctx.hroot[w] = ctx.heap.meld(ctx.hroot[w], ctx.hroot[v]);
      if (w != v) ctx.hroot[v] = -1;
      ctx.purge_and_offer(w);
    }
  }
  return dt;
}

EdgeLevels edge_level(const MatchingSystem& ms, const DistTable& dt, EdgeId e) {
  const Edge& ed = ms.g.edge(e);
  Parity rp = ms.rho(e);
  int du = dt.dist(ed.u, rp), dv = dt.dist(ed.v, rp);
  if (du >= kInfDist || dv >= kInfDist) throw UndefinedLevel();
  EdgeLevels lv;
  lv.vlevel = du + dv + 1;
  lv.hlevel = std::max(du, dv);
  lv.level = static_cast<uint64_t>(ms.g.n() + 3) * lv.vlevel + lv.hlevel;
  return lv;
}

std::vector<EdgeId> ep_set(const MatchingSystem& ms, const DistTable& dt, VertexId u) {
  auto a = dt.alpha(u);
  if (!a) throw NoOrthodoxPath();
  std::vector<EdgeId> out;
  for (EdgeId e : ms.g.incident(u)) {
    Parity rp = ms.rho(e);
    if (rp != flip(*a)) continue;
    VertexId w = ms.g.edge(e).other(u);
    if (dt.dist(w, rp) < kInfDist && dt.dist(w, rp) + 1 == dt.dist(u, *a)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> p_set(const MatchingSystem& ms, const DistTable& dt, VertexId u) {
  std::vector<VertexId> out;
  for (EdgeId e : ep_set(ms, dt, u)) out.push_back(ms.g.edge(e).other(u));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> shortest_aug_length(const MatchingSystem& ms, const DistTable& dt) {
  int best = kInfDist;
  for (VertexId v = 0; v < ms.g.n(); ++v)
    if (ms.m.is_free(v)) best = std::min(best, dt.dist_odd[v]);
  if (best >= kInfDist) return std::nullopt;
  return (best - 3) / 2;
}

void dump_dist(std::ostream& out, const DistTable& dt) {
  auto cell = [&](int d) {
    if (d >= kInfDist)
      out << '-';
    else
      out << d;
  };
  for (size_t v = 0; v < dt.dist_odd.size(); ++v) {
    out << v << ' ';
    cell(dt.dist_odd[v]);
    out << ' ';
    cell(dt.dist_even[v]);
    out << ' ';
    if (dt.par[v] >= 0)
      out << dt.par[v];
    else
      out << '-';
    out << '\n';
  }
}

}  // namespace mm
