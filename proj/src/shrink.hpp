#pragma once

// Internal helpers shared by the distance engine and the base-tree engine:
// a union-find whose find() reports the *structural root* of a shrunk
// subtree (not the internal union-by-size representative), and an arena
// pairing heap for min-level incoming edges.

#include <cstdint>
#include <vector>

#include "core.hpp"

namespace mm::detail {

class ShrinkUF {
 public:
  explicit ShrinkUF(int n) : parent_(n), size_(n, 1), top_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = top_[i] = i;
  }

  VertexId find(VertexId v) { return top_[find_i(v)]; }

  // Merges v's set into the set owning `new_top`; the merged set's
  // structural root becomes find(new_top).
  void absorb(VertexId v, VertexId new_top) {
    int a = find_i(v), b = find_i(new_top);
    if (a == b) return;
    VertexId t = top_[b];
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    top_[a] = t;
  }

 private:
  int find_i(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  std::vector<int> parent_, size_;
  std::vector<VertexId> top_;
};

// Min-heap keyed by (level, pref, min endpoint, max endpoint); `pref` lets
// callers prefer one edge class at equal level. Nodes live in a caller-owned
// arena so whole heaps can be melded in O(1).
struct EdgeHeap {
  struct Key {
    uint64_t level;
    uint32_t pref, a, b;
    bool operator<(const Key& o) const {
      if (level != o.level) return level < o.level;
      if (pref != o.pref) return pref < o.pref;
      if (a != o.a) return a < o.a;
      return b < o.b;
    }
  };
  struct Node {
    Key key;
    EdgeId edge;
    int child = -1, sibling = -1;
  };

  std::vector<Node> arena;

  int make(Key k, EdgeId e) {
    arena.push_back({k, e, -1, -1});
    return static_cast<int>(arena.size()) - 1;
  }

  int meld(int x, int y) {
    if (x < 0) return y;
    if (y < 0) return x;
    if (arena[y].key < arena[x].key) std::swap(x, y);
    arena[y].sibling = arena[x].child;
    arena[x].child = y;
    return x;
  }

  int pop(int root) {  // returns new root after removing the minimum
    int cur = arena[root].child;
    int merged = -1;
    while (cur >= 0) {  // two-pass pairing
      int a = cur, b = arena[a].sibling;
      int next = b >= 0 ? arena[b].sibling : -1;
      arena[a].sibling = -1;
      if (b >= 0) arena[b].sibling = -1;
      merged = meld(merged, meld(a, b));
      cur = next;
    }
    return merged;
  }
};

}  // namespace mm::detail
