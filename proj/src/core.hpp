#pragma once

// Graphs, matchings and alternating paths: the shared substrate for the
// matching toolkit. Everything operates on matching systems I = (G, M),
// where distances are measured along simple alternating paths that start
// at a virtual "super free" vertex f attached to every free vertex by a
// length-two alternating tail (the edge at f is non-matching). Neither f
// nor the tail midpoints are ever materialized; free vertices simply seed
// with even distance 2.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mm {

using VertexId = int;
using EdgeId = int;

constexpr int kInfDist = INT32_MAX / 4;  // "no alternating path of this parity"

enum class Parity : uint8_t { Even = 0, Odd = 1 };

inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }
inline Parity parity_of(int len) { return (len & 1) ? Parity::Odd : Parity::Even; }
inline const char* to_cstr(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// ---- errors ---------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define MM_DEFINE_ERROR(Name)                       \
  struct Name : Error {                             \
    using Error::Error;                             \
    Name() : Error(#Name) {}                        \
  }

MM_DEFINE_ERROR(ParseError);
MM_DEFINE_ERROR(NotAMatching);
MM_DEFINE_ERROR(EdgeNotInGraph);
MM_DEFINE_ERROR(NotAugmenting);
MM_DEFINE_ERROR(PathsOverlap);
MM_DEFINE_ERROR(NoOrthodoxPath);
MM_DEFINE_ERROR(UndefinedLevel);
MM_DEFINE_ERROR(RespectConflict);
MM_DEFINE_ERROR(NotEpEdge);
MM_DEFINE_ERROR(NotDescendant);
MM_DEFINE_ERROR(NoSuchParity);
MM_DEFINE_ERROR(InvalidDoublePath);
MM_DEFINE_ERROR(TooLarge);
MM_DEFINE_ERROR(InconsistentSubdivision);
MM_DEFINE_ERROR(InternalInvariant);

#undef MM_DEFINE_ERROR

// ---- graph ----------------------------------------------------------------

struct Edge {
  VertexId u, v;  // normalized so u < v
  VertexId other(VertexId w) const { return w == u ? v : u; }
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  int n() const { return static_cast<int>(adj_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }

  // Adds {a,b}; parallel edges and self-loops are rejected.
  EdgeId add_edge(VertexId a, VertexId b);
  void add_vertices(int count) { adj_.resize(adj_.size() + count); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  // incident edge ids, in insertion order
  const std::vector<EdgeId>& incident(VertexId v) const { return adj_[v]; }
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  bool has_edge(VertexId a, VertexId b) const { return find_edge(a, b).has_value(); }

 private:
  static uint64_t key(VertexId a, VertexId b);
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adj_;
  std::unordered_map<uint64_t, EdgeId> index_;
};

// ---- matching -------------------------------------------------------------

class Matching {
 public:
  Matching() = default;
  explicit Matching(int n) : mate_(n, -1) {}

  int n() const { return static_cast<int>(mate_.size()); }
  int size() const { return size_; }
  bool is_free(VertexId v) const { return mate_[v] < 0; }
  VertexId mate(VertexId v) const { return mate_[v]; }

  void match(const Graph& g, VertexId a, VertexId b);
  void unmatch(VertexId a);
  void resize(int n) { mate_.resize(n, -1); }

  std::vector<VertexId> free_vertices() const;
  std::vector<std::pair<VertexId, VertexId>> pairs() const;

 private:
  std::vector<VertexId> mate_;
  int size_ = 0;
};

struct MatchingSystem {
  Graph g;
  Matching m;

  bool matched_edge(EdgeId e) const {
    const Edge& ed = g.edge(e);
    return m.mate(ed.u) == ed.v;
  }
  // rho(e): the parity of alternating paths that e can extend
  // (odd for matching edges, even otherwise).
  Parity rho(EdgeId e) const { return matched_edge(e) ? Parity::Odd : Parity::Even; }
};

// Checks that `mate` pairs are graph edges and mutually consistent;
// throws NotAMatching / EdgeNotInGraph.
void validate_matching(const Graph& g, const Matching& m);

// ---- paths ----------------------------------------------------------------

// A walk given by its vertex sequence; helpers check simplicity/alternation
// against a concrete system.
struct AlternatingPath {
  std::vector<VertexId> verts;

  int length() const { return static_cast<int>(verts.size()) - 1; }
  bool operator==(const AlternatingPath& o) const { return verts == o.verts; }
};

// Simple path, consecutive vertices adjacent, edges alternate in/out of M.
bool is_alternating_path(const MatchingSystem& ms, const AlternatingPath& p);
// Alternating, odd length, both endpoints free.
bool is_augmenting_path(const MatchingSystem& ms, const AlternatingPath& p);

// Flips the matching along `p`; throws NotAugmenting if p is not an
// augmenting path of ms.
void augment_along(MatchingSystem& ms, const AlternatingPath& p);

// Endpoint-normalized copy (smaller endpoint first) for set comparisons.
AlternatingPath canonical(const AlternatingPath& p);

// Deterministic greedy maximal matching: scan edges sorted by (u, v).
Matching greedy_maximal_matching(const Graph& g);

// ---- io -------------------------------------------------------------------

// Text format:  "p <n> <m>" header, "e u v" edges, optional "m u v" matching
// lines, "#" comments.  The writer sorts edge lines by (u, v).
struct GraphFile {
  Graph g;
  Matching m;  // empty matching if the file had no "m" lines
};

GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g, const Matching* m = nullptr);

}  // namespace mm
