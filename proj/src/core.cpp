#include "core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mm {

uint64_t Graph::key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
}

EdgeId Graph::add_edge(VertexId a, VertexId b) {
  if (a < 0 || b < 0 || a >= n() || b >= n()) throw EdgeNotInGraph("endpoint out of range");
  if (a == b) throw ParseError("self-loop");
  if (a > b) std::swap(a, b);
  auto [it, fresh] = index_.try_emplace(key(a, b), m());
  if (!fresh) throw ParseError("parallel edge");
  EdgeId e = m();
  edges_.push_back({a, b});
  adj_[a].push_back(e);
  adj_[b].push_back(e);
  return e;
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const {
  if (a < 0 || b < 0 || a >= n() || b >= n() || a == b) return std::nullopt;
  auto it = index_.find(key(a, b));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Matching::match(const Graph& g, VertexId a, VertexId b) {
  if (!g.has_edge(a, b)) throw EdgeNotInGraph("matching a non-edge");
  if (!is_free(a) || !is_free(b)) throw NotAMatching("endpoint already matched");
  mate_[a] = b;
  mate_[b] = a;
  ++size_;
}

void Matching::unmatch(VertexId a) {
  VertexId b = mate_[a];
  if (b < 0) return;
  mate_[a] = -1;
  mate_[b] = -1;
  --size_;
}

std::vector<VertexId> Matching::free_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n(); ++v)
    if (mate_[v] < 0) out.push_back(v);
  return out;
}

std::vector<std::pair<VertexId, VertexId>> Matching::pairs() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId v = 0; v < n(); ++v)
    if (mate_[v] > v) out.emplace_back(v, mate_[v]);
  return out;
}

void validate_matching(const Graph& g, const Matching& m) {
  if (m.n() != g.n()) throw NotAMatching("size mismatch");
  for (VertexId v = 0; v < g.n(); ++v) {
    VertexId w = m.mate(v);
    if (w < 0) continue;
    if (w >= g.n() || m.mate(w) != v) throw NotAMatching();
    if (!g.has_edge(v, w)) throw EdgeNotInGraph("matched pair is not an edge");
  }
}

bool is_alternating_path(const MatchingSystem& ms, const AlternatingPath& p) {
  const auto& vs = p.verts;
  if (vs.empty()) return false;
  std::vector<char> seen(ms.g.n(), 0);
  for (VertexId v : vs) {
    if (v < 0 || v >= ms.g.n() || seen[v]) return false;
    seen[v] = 1;
  }
  bool prev_matched = false;
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    auto e = ms.g.find_edge(vs[i], vs[i + 1]);
    if (!e) return false;
    bool cur = ms.matched_edge(*e);
    if (i > 0 && cur == prev_matched) return false;
    prev_matched = cur;
  }
  return true;
}

bool is_augmenting_path(const MatchingSystem& ms, const AlternatingPath& p) {
  if (!is_alternating_path(ms, p)) return false;
  if (p.length() < 1 || p.length() % 2 == 0) return false;
  if (!ms.m.is_free(p.verts.front()) || !ms.m.is_free(p.verts.back())) return false;
  // odd alternating path between free vertices starts and ends non-matching
  return true;
}

void augment_along(MatchingSystem& ms, const AlternatingPath& p) {
  if (!is_augmenting_path(ms, p)) throw NotAugmenting();
  const auto& vs = p.verts;
  for (size_t i = 1; i + 1 < vs.size(); i += 2) ms.m.unmatch(vs[i]);
  for (size_t i = 0; i + 1 < vs.size(); i += 2) ms.m.match(ms.g, vs[i], vs[i + 1]);
}

AlternatingPath canonical(const AlternatingPath& p) {
  AlternatingPath q = p;
  if (!q.verts.empty() && q.verts.back() < q.verts.front())
    std::reverse(q.verts.begin(), q.verts.end());
  return q;
}

Matching greedy_maximal_matching(const Graph& g) {
  std::vector<std::pair<VertexId, VertexId>> es;
  es.reserve(g.m());
  for (const Edge& e : g.edges()) es.emplace_back(e.u, e.v);
  std::sort(es.begin(), es.end());
  Matching m(g.n());
  for (auto [u, v] : es)
    if (m.is_free(u) && m.is_free(v)) m.match(g, u, v);
  return m;
}

GraphFile read_graph(std::istream& in) {
  std::string line;
  GraphFile gf;
  bool have_header = false;
  std::vector<std::pair<VertexId, VertexId>> mlines;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    auto fail = [&](const char* why) {
      throw ParseError("line " + std::to_string(lineno) + ": " + why);
    };
    if (tag == "p") {
      long n, m;
      if (have_header || !(ls >> n >> m) || n < 0) fail("bad header");
      have_header = true;
      gf.g = Graph(static_cast<int>(n));
      gf.m = Matching(static_cast<int>(n));
    } else if (tag == "e" || tag == "m") {
      VertexId u, v;
      if (!have_header || !(ls >> u >> v)) fail("edge before header or bad endpoints");
      if (tag == "e") {
        try {
          gf.g.add_edge(u, v);
        } catch (const Error&) {
          fail("bad edge");
        }
      } else {
        mlines.emplace_back(u, v);
      }
    } else {
      fail("unknown record");
    }
  }
  if (!have_header) throw ParseError("missing header");
  for (auto [u, v] : mlines) {
    if (!gf.g.has_edge(u, v)) throw EdgeNotInGraph("matching line is not an edge");
    gf.m.match(gf.g, u, v);
  }
  return gf;
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const Matching* m) {
  out << "p " << g.n() << ' ' << g.m() << '\n';
  std::vector<std::pair<VertexId, VertexId>> es;
  es.reserve(g.m());
  for (const Edge& e : g.edges()) es.emplace_back(e.u, e.v);
  std::sort(es.begin(), es.end());
  for (auto [u, v] : es) out << "e " << u << ' ' << v << '\n';
  if (m)
    for (auto [u, v] : m->pairs()) out << "m " << u << ' ' << v << '\n';
}

}  // namespace mm
