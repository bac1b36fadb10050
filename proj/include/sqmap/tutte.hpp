#pragma once

// Tutte's bijection between rooted planar maps and rooted quadrangulations.
//
// Forward.  Every corner of G (vertex u, sector between d and next(d)) gives
// one edge of Q from u to the face on the left of d.  Q has darts 2d (from
// the vertex) and 2d+1 (from the face).  The quadrangulation is rooted at
// the corner dart leaving s into the face on the right of st.
//
// Inverse.  Each face of Q contains one edge of G joining its two primal
// corners.  A primal-tailed dart q of Q stands for the G dart that leaves
// tail(q) through the face on the left of q.

#include <algorithm>
#include <vector>

#include "closure.hpp"
#include "combmap.hpp"
#include "core.hpp"

namespace sqmap {

inline RootedMap tutte_forward(const RootedMap& g) {
  const auto& m = g.map;
  const int D = m.dart_count();
  std::vector<Dart> twin(2 * D), next(2 * D);
  for (Dart d = 0; d < D; ++d) {
    twin[2 * d] = 2 * d + 1;
    twin[2 * d + 1] = 2 * d;
    next[2 * d] = 2 * m.next(d);
    next[2 * d + 1] = 2 * m.prev(m.twin(d)) + 1;
  }
  const Dart root = 2 * m.prev(g.root);
  RootedMap q{CombinatorialMap(std::move(twin), std::move(next)), root, root};
  return q;
}

// Vertex classes of a connected bipartite map; class 0 holds the tail of
// the root.
inline std::vector<int> bipartition(const RootedMap& q) {
  const auto& m = q.map;
  std::vector<int> side(m.vertex_count(), -1);
  const int s = q.source();
  side[s] = 0;
  std::vector<int> queue{s};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int v = queue[i];
    for (Dart d : m.darts_around_vertex(v)) {
      const int w = m.head_of(d);
      if (side[w] == -1) {
        side[w] = 1 - side[v];
        queue.push_back(w);
      } else if (side[w] == side[v]) {
        throw Error(Errc::NotBipartite, "odd cycle through vertex " + std::to_string(w));
      }
    }
  }
  if (std::find(side.begin(), side.end(), -1) != side.end())
    throw Error(Errc::NotBipartite, "quadrangulation is disconnected");
  return side;
}

inline RootedMap tutte_inverse(const RootedMap& q) {
  const auto& m = q.map;
  for (int f = 0; f < m.face_count(); ++f)
    if (m.face_degree(f) != 4)
      throw Error(Errc::NotQuadrangulation, "face of degree " + std::to_string(m.face_degree(f)));
  const std::vector<int> side = bipartition(q);
  const int D = m.dart_count();
  std::vector<Dart> id(D, kNoDart);
  Dart count = 0;
  for (Dart d = 0; d < D; ++d)
    if (side[m.vertex_of(d)] == 0) id[d] = count++;
  std::vector<Dart> next(count), twin(count, kNoDart);
  for (Dart d = 0; d < D; ++d)
    if (id[d] != kNoDart) next[id[d]] = id[m.next(d)];
  for (int f = 0; f < m.face_count(); ++f) {
    auto e = m.darts_around_face(f);
    int k = side[m.vertex_of(e[0])] == 0 ? 0 : 1;
    const Dart a = id[m.prev(e[k])], b = id[m.prev(e[k + 2])];
    twin[a] = b;
    twin[b] = a;
  }
  const Dart root = id[q.root];
  return RootedMap{CombinatorialMap(std::move(twin), std::move(next)), root, root};
}

// Brute force: simple, connected, at least four vertices, and no set of
// one or two vertices disconnects the rest.
inline bool is_3_connected_bruteforce(const CombinatorialMap& m) {
  const int V = m.vertex_count();
  if (V < 4 || !is_simple(m) || !is_connected(m)) return false;
  std::vector<char> removed(V, 0);
  for (int a = 0; a < V; ++a) {
    removed[a] = 1;
    if (!remainder_connected(m, removed)) return false;
    for (int b = a + 1; b < V; ++b) {
      removed[b] = 1;
      const bool ok = remainder_connected(m, removed);
      removed[b] = 0;
      if (!ok) return false;
    }
    removed[a] = 0;
  }
  return true;
}

inline bool is_3_connected(const RootedMap& g) {
  if (g.map.vertex_count() < 4) return false;
  return is_irreducible(tutte_forward(g));
}

}  // namespace sqmap
