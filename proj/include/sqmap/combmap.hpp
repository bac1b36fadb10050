#pragma once

// Planar maps as rotation systems.
//
// Darts are 0..D-1.  twin pairs the two halves of an edge, next is the
// counterclockwise successor around the tail vertex.  The face on the right
// of a dart d is the orbit of d under d -> next(twin(d)); walking that orbit
// goes clockwise around the face.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace sqmap {

class CombinatorialMap {
 public:
  CombinatorialMap() = default;

  CombinatorialMap(std::vector<Dart> twin, std::vector<Dart> next, bool check_planar = true)
      : twin_(std::move(twin)), next_(std::move(next)) {
    validate_permutations();
    index();
    if (check_planar) check_euler();
  }

  int dart_count() const { return static_cast<int>(twin_.size()); }
  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return edge_count_; }
  int face_count() const { return face_count_; }
  int component_count() const { return component_count_; }

  Dart twin(Dart d) const { return twin_[d]; }
  Dart next(Dart d) const { return next_[d]; }
  Dart prev(Dart d) const { return prev_[d]; }
  // Next dart along the face on the right of d.
  Dart face_next(Dart d) const { return next_[twin_[d]]; }
  Dart face_prev(Dart d) const { return twin_[prev_[d]]; }

  int vertex_of(Dart d) const { return vertex_of_[d]; }
  int head_of(Dart d) const { return vertex_of_[twin_[d]]; }
  int edge_of(Dart d) const { return edge_of_[d]; }
  // Face on the right of d.
  int face_of(Dart d) const { return face_of_[d]; }
  int face_left_of(Dart d) const { return face_of_[twin_[d]]; }

  Dart vertex_dart(int v) const { return vertex_dart_[v]; }
  Dart edge_dart(int e) const { return edge_dart_[e]; }
  Dart face_dart(int f) const { return face_dart_[f]; }

  int degree(int v) const { return orbit_size(vertex_dart_[v], next_); }
  int face_degree(int f) const {
    int k = 0;
    Dart d = face_dart_[f];
    do {
      ++k;
      d = face_next(d);
    } while (d != face_dart_[f]);
    return k;
  }

  std::vector<Dart> darts_around_vertex(int v) const {
    std::vector<Dart> out;
    Dart d = vertex_dart_[v];
    do {
      out.push_back(d);
      d = next_[d];
    } while (d != vertex_dart_[v]);
    return out;
  }

  std::vector<Dart> darts_around_face(int f) const {
    std::vector<Dart> out;
    Dart d = face_dart_[f];
    do {
      out.push_back(d);
      d = face_next(d);
    } while (d != face_dart_[f]);
    return out;
  }

  const std::vector<Dart>& twin_array() const { return twin_; }
  const std::vector<Dart>& next_array() const { return next_; }

  bool operator==(const CombinatorialMap& o) const { return twin_ == o.twin_ && next_ == o.next_; }

 private:
  static int orbit_size(Dart d0, const std::vector<Dart>& perm) {
    int k = 0;
    Dart d = d0;
    do {
      ++k;
      d = perm[d];
    } while (d != d0);
    return k;
  }

  void validate_permutations() {
    const std::size_t n = twin_.size();
    if (next_.size() != n) throw Error(Errc::MalformedRotation, "twin and next differ in length");
    if (n % 2 != 0) throw Error(Errc::MalformedRotation, "odd dart count");
    prev_.assign(n, kNoDart);
    for (std::size_t d = 0; d < n; ++d) {
      const Dart t = twin_[d];
      if (t < 0 || static_cast<std::size_t>(t) >= n || t == static_cast<Dart>(d) ||
          twin_[t] != static_cast<Dart>(d))
        throw Error(Errc::MalformedRotation, "twin is not a fixed-point-free involution at dart " +
                                                 std::to_string(d));
      const Dart x = next_[d];
      if (x < 0 || static_cast<std::size_t>(x) >= n || prev_[x] != kNoDart)
        throw Error(Errc::MalformedRotation, "next is not a permutation at dart " + std::to_string(d));
      prev_[x] = static_cast<Dart>(d);
    }
  }

  // Labels orbits of a permutation in order of their smallest dart.
  static int label_orbits(const std::vector<Dart>& order_src, std::vector<int>& label,
                          std::vector<Dart>& first, const auto& step) {
    const int n = static_cast<int>(order_src.size());
    label.assign(n, -1);
    first.clear();
    int count = 0;
    for (Dart d0 = 0; d0 < n; ++d0) {
      if (label[d0] != -1) continue;
      first.push_back(d0);
      Dart d = d0;
      do {
        label[d] = count;
        d = step(d);
      } while (d != d0);
      ++count;
    }
    return count;
  }

  void index() {
    vertex_count_ = label_orbits(twin_, vertex_of_, vertex_dart_, [&](Dart d) { return next_[d]; });
    edge_count_ = label_orbits(twin_, edge_of_, edge_dart_, [&](Dart d) { return twin_[d]; });
    face_count_ = label_orbits(twin_, face_of_, face_dart_, [&](Dart d) { return next_[twin_[d]]; });

    // Components over vertices.
    std::vector<int> comp(vertex_count_, -1);
    component_count_ = 0;
    for (int v0 = 0; v0 < vertex_count_; ++v0) {
      if (comp[v0] != -1) continue;
      std::vector<int> stack{v0};
      comp[v0] = component_count_;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        Dart d = vertex_dart_[v];
        do {
          int w = vertex_of_[twin_[d]];
          if (comp[w] == -1) {
            comp[w] = component_count_;
            stack.push_back(w);
          }
          d = next_[d];
        } while (d != vertex_dart_[v]);
      }
      ++component_count_;
    }
    component_of_vertex_ = std::move(comp);
  }

  void check_euler() const {
    std::vector<long> chi(component_count_, 0);
    for (int v = 0; v < vertex_count_; ++v) chi[component_of_vertex_[v]] += 1;
    for (int e = 0; e < edge_count_; ++e) chi[component_of_vertex_[vertex_of_[edge_dart_[e]]]] -= 1;
    for (int f = 0; f < face_count_; ++f) chi[component_of_vertex_[vertex_of_[face_dart_[f]]]] += 1;
    for (int c = 0; c < component_count_; ++c)
      if (chi[c] != 2)
        throw Error(Errc::NonPlanar, "Euler characteristic " + std::to_string(chi[c]) +
                                         " on component " + std::to_string(c));
  }

  std::vector<Dart> twin_, next_, prev_;
  std::vector<int> vertex_of_, edge_of_, face_of_, component_of_vertex_;
  std::vector<Dart> vertex_dart_, edge_dart_, face_dart_;
  int vertex_count_ = 0, edge_count_ = 0, face_count_ = 0, component_count_ = 0;
};

// A map with an oriented root edge.  The outer face is the face on the
// right of outer_face_dart; it is carried along by constructions, never
// guessed.
struct RootedMap {
  CombinatorialMap map;
  Dart root = 0;
  Dart outer_face_dart = 0;

  int source() const { return map.vertex_of(root); }
  int sink() const { return map.head_of(root); }
  int outer_face() const { return map.face_of(outer_face_dart); }
};

struct FaceIndex {
  std::vector<std::vector<Dart>> faces;
  int outer_face = 0;
};

// Per-vertex counterclockwise dart lists; darts 2k and 2k+1 form edge k.
inline CombinatorialMap build_map(const std::vector<std::vector<Dart>>& rotations,
                                  bool check_planar = true) {
  std::size_t total = 0;
  for (const auto& r : rotations) total += r.size();
  if (total % 2 != 0) throw Error(Errc::MalformedRotation, "odd number of darts");
  std::vector<Dart> next(total, kNoDart), twin(total);
  std::vector<char> seen(total, 0);
  for (const auto& r : rotations) {
    if (r.empty()) throw Error(Errc::MalformedRotation, "isolated vertex");
    for (std::size_t i = 0; i < r.size(); ++i) {
      Dart d = r[i];
      if (d < 0 || static_cast<std::size_t>(d) >= total)
        throw Error(Errc::MalformedRotation, "dart id out of range");
      if (seen[d]) throw Error(Errc::MalformedRotation, "dart " + std::to_string(d) + " repeated");
      seen[d] = 1;
      next[d] = r[(i + 1) % r.size()];
    }
  }
  for (std::size_t d = 0; d < total; ++d) twin[d] = static_cast<Dart>(d ^ 1);
  return CombinatorialMap(std::move(twin), std::move(next), check_planar);
}

// Simple graph given by counterclockwise neighbour orders.  Returns the map
// and, through dart_of, the dart u->w for each listed pair.
inline CombinatorialMap map_from_neighbor_orders(const std::vector<std::vector<int>>& nbrs,
                                                 std::vector<std::vector<Dart>>* dart_of = nullptr) {
  const int n = static_cast<int>(nbrs.size());
  std::vector<std::vector<Dart>> rot(n);
  std::vector<std::vector<Dart>> ids(n);
  Dart next_id = 0;
  for (int u = 0; u < n; ++u) {
    ids[u].assign(nbrs[u].size(), kNoDart);
  }
  for (int u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < nbrs[u].size(); ++i) {
      if (ids[u][i] != kNoDart) continue;
      int w = nbrs[u][i];
      if (w < 0 || w >= n || w == u) throw Error(Errc::MalformedRotation, "bad neighbour");
      auto it = std::find(nbrs[w].begin(), nbrs[w].end(), u);
      if (it == nbrs[w].end()) throw Error(Errc::MalformedRotation, "asymmetric neighbour lists");
      std::size_t j = static_cast<std::size_t>(it - nbrs[w].begin());
      if (ids[w][j] != kNoDart) throw Error(Errc::MalformedRotation, "parallel edge");
      ids[u][i] = next_id;
      ids[w][j] = next_id + 1;
      next_id += 2;
    }
  }
  for (int u = 0; u < n; ++u) rot[u] = ids[u];
  if (dart_of) *dart_of = ids;
  return build_map(rot);
}

inline FaceIndex faces(const RootedMap& m) {
  FaceIndex fi;
  for (int f = 0; f < m.map.face_count(); ++f) fi.faces.push_back(m.map.darts_around_face(f));
  fi.outer_face = m.outer_face();
  return fi;
}

// Dual map on the same dart ids.  Dart d of the dual runs from the face on
// the right of d to the face on its left, so the dual root's tail is the
// face on the right of the primal root.  Applying dual twice gives a map
// isomorphic to the original through d -> twin(d), so the root comes back
// reversed.
inline RootedMap dual(const RootedMap& m) {
  const int D = m.map.dart_count();
  std::vector<Dart> next(D), twin(D);
  for (Dart d = 0; d < D; ++d) {
    twin[d] = m.map.twin(d);
    next[d] = m.map.twin(m.map.prev(d));
  }
  RootedMap out{CombinatorialMap(std::move(twin), std::move(next)), m.root, m.root};
  return out;
}

// Same graph, opposite orientation.
inline RootedMap mirror(const RootedMap& m) {
  const int D = m.map.dart_count();
  std::vector<Dart> next(D);
  for (Dart d = 0; d < D; ++d) next[d] = m.map.prev(d);
  RootedMap out{CombinatorialMap(m.map.twin_array(), std::move(next)), m.root, m.root};
  out.outer_face_dart = m.map.twin(m.outer_face_dart);
  return out;
}

inline bool is_simple(const CombinatorialMap& m) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(m.edge_count());
  for (int e = 0; e < m.edge_count(); ++e) {
    Dart d = m.edge_dart(e);
    int a = m.vertex_of(d), b = m.head_of(d);
    if (a == b) return false;
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

inline bool is_connected(const CombinatorialMap& m) { return m.component_count() <= 1; }

// Connectivity of the vertex set minus `removed`, ignoring the listed edges.
inline bool remainder_connected(const CombinatorialMap& m, const std::vector<char>& removed) {
  const int V = m.vertex_count();
  int start = -1, alive = 0;
  for (int v = 0; v < V; ++v)
    if (!removed[v]) {
      ++alive;
      if (start < 0) start = v;
    }
  if (alive == 0) return true;
  std::vector<char> seen(V, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    Dart d0 = m.vertex_dart(v), d = d0;
    do {
      int w = m.head_of(d);
      if (!removed[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
      d = m.next(d);
    } while (d != d0);
  }
  return reached == alive;
}

// Connected, simple, s != t, and G - {s,t} nonempty and connected.
inline bool check_squarable(const RootedMap& m) {
  const auto& g = m.map;
  if (!is_connected(g) || !is_simple(g)) return false;
  int s = m.source(), t = m.sink();
  if (s == t || g.vertex_count() < 3) return false;
  std::vector<char> removed(g.vertex_count(), 0);
  removed[s] = removed[t] = 1;
  return remainder_connected(g, removed);
}

// Breadth-first relabelling of the darts reachable from the root.  Two
// connected rooted maps get the same code iff there is an isomorphism
// carrying one root to the other.
inline std::string canonical_code(const CombinatorialMap& m, Dart root) {
  const int D = m.dart_count();
  std::vector<std::int32_t> label(D, -1);
  std::vector<Dart> order;
  order.reserve(D);
  label[root] = 0;
  order.push_back(root);
  std::string code;
  code.reserve(4 * (2 * D + 1));
  auto put = [&code](std::uint32_t x) {
    for (int k = 0; k < 4; ++k) code.push_back(static_cast<char>((x >> (8 * k)) & 0xff));
  };
  put(static_cast<std::uint32_t>(D));
  for (std::size_t i = 0; i < order.size(); ++i) {
    Dart d = order[i];
    for (Dart nb : {m.next(d), m.twin(d)}) {
      if (label[nb] < 0) {
        label[nb] = static_cast<std::int32_t>(order.size());
        order.push_back(nb);
      }
      put(static_cast<std::uint32_t>(label[nb]));
    }
  }
  return code;
}

inline std::string canonical_code(const RootedMap& m) { return canonical_code(m.map, m.root); }

// Code of the map up to orientation-preserving isomorphism, ignoring the root.
inline std::string unrooted_code(const CombinatorialMap& m) {
  std::string best;
  for (Dart d = 0; d < m.dart_count(); ++d) {
    std::string c = canonical_code(m, d);
    if (d == 0 || c < best) best = std::move(c);
  }
  return best;
}

// Renumber darts: new id of old dart d is perm[d].
inline RootedMap relabel(const RootedMap& m, const std::vector<Dart>& perm) {
  const int D = m.map.dart_count();
  std::vector<Dart> twin(D), next(D);
  for (Dart d = 0; d < D; ++d) {
    twin[perm[d]] = perm[m.map.twin(d)];
    next[perm[d]] = perm[m.map.next(d)];
  }
  return RootedMap{CombinatorialMap(std::move(twin), std::move(next)), perm[m.root],
                   perm[m.outer_face_dart]};
}

}  // namespace sqmap
