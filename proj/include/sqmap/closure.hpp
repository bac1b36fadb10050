#pragma once

// Closure of an edge-rooted binary tree into a quadrangulation of a
// hexagon, the diagonal rooting, and the irreducibility test.
//
// Contour.  The clockwise contour around a tree keeps the unbounded face on
// its left; with ccw rotations its darts follow d -> prev(twin(d)).  Each
// contour step visits one corner, identified here by its departing dart, so
// corners and darts of the tree are in bijection.  A corner is a leaf corner
// when its vertex has degree one.
//
// Identification.  When a leaf corner w (dart w->x) is followed by four
// non-leaf corners, the last one departing along a->b, the dart w->x is
// re-attached at a just after a->b in ccw order.  Dart ids never change:
// the old dart w->x becomes a->x.  The new bounded face x,y,z,a has degree
// four and the outer face stays on the left of x->a.

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>
#include <vector>

#include "combmap.hpp"
#include "core.hpp"
#include "treegrow.hpp"

namespace sqmap {

enum class Provenance : int {
  Tree = 0,        // tree edge whose ends are both tree vertices
  Closure = 1,     // leaf edge re-attached at an inner vertex
  HexClosure = 2,  // leaf edge whose leaf became a hexagon vertex
  Hexagon = 3,     // side of the hexagon
  Diagonal = 4,    // the chord i -> i+3
};

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Tree: return "tree";
    case Provenance::Closure: return "closure";
    case Provenance::HexClosure: return "hexagon-closure";
    case Provenance::Hexagon: return "hexagon";
    case Provenance::Diagonal: return "diagonal";
  }
  return "?";
}

struct ContourToken {
  Dart dart;  // departing dart of the corner
  bool leaf;
};

struct PartialClosure {
  RootedBinaryTree tree;
  std::vector<Dart> next;              // rotation of Q0 on the tree's darts
  std::vector<ContourToken> remaining;  // outer contour of Q0, starting at ell0
  Dart ell0 = kNoDart;                  // leaf dart of the first remaining leaf
  std::vector<std::pair<Dart, Dart>> merges;  // (leaf dart, dart a->b it was attached after)

  RootedMap q0() const {
    // Contour darts have the outer face on their left.
    return RootedMap{CombinatorialMap(tree.rooted.map.twin_array(), next), tree.rooted.root,
                     tree.rooted.map.twin(remaining.front().dart)};
  }
};

struct HexQuadrangulation {
  RootedMap q;                       // outer face = the hexagon
  std::array<Dart, 6> hexagon_darts;  // H_p : h_p -> h_{p+1}, p = 0..5 clockwise
  std::array<int, 6> hexagon_vertices;
  std::vector<Provenance> provenance;  // indexed by dart/2
  std::vector<Dart> leaf_darts;        // all leaf darts, merged or not
  int tree_darts = 0;
};

struct DoublyRootedMap {
  RootedMap rooted;
  Dart second_root = kNoDart;
  std::vector<Provenance> provenance;
};

namespace detail {

inline std::vector<ContourToken> tree_contour(const RootedMap& t) {
  const auto& m = t.map;
  std::vector<ContourToken> out;
  out.reserve(m.dart_count());
  Dart d = t.root;
  do {
    out.push_back({d, m.next(d) == d});
    d = m.prev(m.twin(d));
  } while (d != t.root);
  if (static_cast<int>(out.size()) != m.dart_count())
    throw Error(Errc::InvalidArgument, "closure input is not a tree");
  return out;
}

inline void attach(std::vector<Dart>& next, Dart wx, Dart ab) {
  next[wx] = next[ab];
  next[ab] = wx;
}

inline void check_tree_shape(const RootedBinaryTree& t) {
  const auto& m = t.rooted.map;
  if (t.internal_count < 1) throw Error(Errc::InvalidArgument, "closure needs n >= 1");
  if (m.edge_count() != 2 * t.internal_count + 1 || m.vertex_count() != m.edge_count() + 1)
    throw Error(Errc::InvalidArgument, "closure input is not a tree");
  for (int v = 0; v < m.vertex_count(); ++v) {
    int k = m.degree(v);
    if (k != 1 && k != 3) throw Error(Errc::InvalidArgument, "tree vertex of degree " + std::to_string(k));
  }
}

inline PartialClosure finish_partial(const RootedBinaryTree& t, std::vector<Dart> next,
                                     std::vector<ContourToken> seq,
                                     std::vector<std::pair<Dart, Dart>> merges,
                                     const std::vector<int>& position) {
  // ell0: the surviving leaf that comes first on the original contour.
  std::size_t best = seq.size();
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (seq[i].leaf && (best == seq.size() || position[seq[i].dart] < position[seq[best].dart])) best = i;
  if (best == seq.size()) throw Error(Errc::NoCompletion, "no leaf survives the partial closure");
  std::rotate(seq.begin(), seq.begin() + static_cast<long>(best), seq.end());
  PartialClosure pc;
  pc.tree = t;
  pc.next = std::move(next);
  pc.remaining = std::move(seq);
  pc.ell0 = pc.remaining.front().dart;
  pc.merges = std::move(merges);
  return pc;
}

}  // namespace detail

// Linear-time partial closure: stack reduction of the cyclic word of corner
// types, re-run from a leaf corner until a pass makes no identification.
inline PartialClosure partial_closure(const RootedBinaryTree& t) {
  detail::check_tree_shape(t);
  const auto& m = t.rooted.map;
  std::vector<ContourToken> seq = detail::tree_contour(t.rooted);
  std::vector<int> position(m.dart_count());
  for (std::size_t i = 0; i < seq.size(); ++i) position[seq[i].dart] = static_cast<int>(i);
  std::vector<Dart> next = m.next_array();
  std::vector<std::pair<Dart, Dart>> merges;

  std::vector<ContourToken> stack;
  for (;;) {
    auto first_leaf = std::find_if(seq.begin(), seq.end(), [](const ContourToken& c) { return c.leaf; });
    if (first_leaf == seq.end()) break;
    std::rotate(seq.begin(), first_leaf, seq.end());
    bool reduced = false;
    stack.clear();
    for (const ContourToken& c : seq) {
      stack.push_back(c);
      while (stack.size() >= 5) {
        const std::size_t k = stack.size();
        if (!stack[k - 5].leaf || stack[k - 4].leaf || stack[k - 3].leaf || stack[k - 2].leaf ||
            stack[k - 1].leaf)
          break;
        const ContourToken a = stack[k - 1];
        detail::attach(next, stack[k - 5].dart, a.dart);
        merges.emplace_back(stack[k - 5].dart, a.dart);
        stack.resize(k - 5);
        stack.push_back(a);
        reduced = true;
      }
    }
    seq.swap(stack);
    if (!reduced) break;
  }
  return detail::finish_partial(t, std::move(next), std::move(seq), std::move(merges), position);
}

// Reference version: after every identification the contour of the
// modified map is walked again from its earliest surviving corner and the
// first pattern is applied.  Quadratic; used to cross-check the stack form.
inline PartialClosure partial_closure_reference(const RootedBinaryTree& t) {
  detail::check_tree_shape(t);
  const auto& m = t.rooted.map;
  const int D = m.dart_count();
  const auto& twin = m.twin_array();
  std::vector<ContourToken> original = detail::tree_contour(t.rooted);
  std::vector<int> position(D);
  for (std::size_t i = 0; i < original.size(); ++i) position[original[i].dart] = static_cast<int>(i);
  std::vector<Dart> next = m.next_array();
  std::vector<Dart> prev(D);
  std::vector<std::pair<Dart, Dart>> merges;
  Dart outer = t.rooted.root;

  auto walk = [&]() {
    for (Dart d = 0; d < D; ++d) prev[next[d]] = d;
    std::vector<ContourToken> c;
    Dart d = outer;
    do {
      c.push_back({d, next[d] == d});
      d = prev[twin[d]];
    } while (d != outer);
    auto start = std::min_element(c.begin(), c.end(), [&](const ContourToken& x, const ContourToken& y) {
      return position[x.dart] < position[y.dart];
    });
    std::rotate(c.begin(), start, c.end());
    return c;
  };

  for (;;) {
    std::vector<ContourToken> c = walk();
    const std::size_t L = c.size();
    bool found = false;
    if (L >= 5) {
      for (std::size_t i = 0; i < L && !found; ++i) {
        if (!c[i].leaf) continue;
        bool ok = true;
        for (std::size_t k = 1; k <= 4; ++k) ok = ok && !c[(i + k) % L].leaf;
        if (!ok) continue;
        const Dart ab = c[(i + 4) % L].dart;
        detail::attach(next, c[i].dart, ab);
        merges.emplace_back(c[i].dart, ab);
        outer = ab;
        found = true;
      }
    }
    if (!found) return detail::finish_partial(t, std::move(next), std::move(c), std::move(merges), position);
  }
}

// Hexagon completion.  Leaves l_0, l_1, ... in contour order starting at
// ell0 go to hexagon positions h(l_0) = 0 <= h(l_1) <= ... < 6; the face
// between l_i and l_{i+1} has j_i + 1 + m_i sides where j_i counts the inner
// corners between them and m_i = h(l_{i+1}) - h(l_i) (cyclically).  All
// admissible assignments are enumerated and exactly one must survive.
inline HexQuadrangulation complete_closure(const PartialClosure& pc) {
  const auto& seq = pc.remaining;
  std::vector<Dart> leaves;
  std::vector<int> gaps;  // j_i
  for (const ContourToken& c : seq) {
    if (c.leaf) {
      leaves.push_back(c.dart);
      gaps.push_back(0);
    } else {
      if (gaps.empty()) throw Error(Errc::NoCompletion, "contour does not start at a leaf");
      ++gaps.back();
    }
  }
  const int k = static_cast<int>(leaves.size());
  if (k < 3) throw Error(Errc::NoCompletion, "fewer than three leaves remain");

  // Depth-first enumeration over steps m_i in [0, 6].
  std::vector<int> steps(k), found_steps;
  int solutions = 0;
  auto search = [&](auto&& self, int i, int used) -> void {
    if (i == k) {
      if (used == 6) {
        if (++solutions == 1) found_steps = steps;
      }
      return;
    }
    for (int mstep = 0; used + mstep <= 6; ++mstep) {
      if (gaps[i] + 1 + mstep != 4) continue;
      steps[i] = mstep;
      self(self, i + 1, used + mstep);
    }
  };
  search(search, 0, 0);
  if (solutions == 0) throw Error(Errc::NoCompletion, "no hexagon assignment gives quadrangular faces");
  if (solutions > 1) throw Error(Errc::NonUniqueCompletion, std::to_string(solutions) + " hexagon assignments");

  std::vector<int> label(k);
  for (int i = 1; i < k; ++i) label[i] = label[i - 1] + found_steps[i - 1];

  const auto& tm = pc.tree.rooted.map;
  const int base = tm.dart_count();
  std::vector<Dart> next = pc.next;
  std::vector<Dart> twin = tm.twin_array();
  next.resize(base + 12);
  twin.resize(base + 12);
  std::array<Dart, 6> H;
  for (int p = 0; p < 6; ++p) {
    H[p] = base + 2 * p;
    twin[H[p]] = H[p] + 1;
    twin[H[p] + 1] = H[p];
  }
  // A label of 6 is vertex 0 again; such leaves precede l_0 around it.
  std::array<std::vector<Dart>, 6> at;
  for (int i = 0; i < k; ++i)
    if (label[i] == 6) at[0].push_back(leaves[i]);
  for (int i = 0; i < k; ++i)
    if (label[i] < 6) at[label[i]].push_back(leaves[i]);
  for (int p = 0; p < 6; ++p) {
    std::vector<Dart> rot{twin[H[(p + 5) % 6]]};
    rot.insert(rot.end(), at[p].begin(), at[p].end());
    rot.push_back(H[p]);
    for (std::size_t r = 0; r < rot.size(); ++r) next[rot[r]] = rot[(r + 1) % rot.size()];
  }

  HexQuadrangulation hq;
  hq.q = RootedMap{CombinatorialMap(twin, next), pc.tree.rooted.root, twin[H[0]]};
  hq.hexagon_darts = H;
  hq.tree_darts = base;
  for (int p = 0; p < 6; ++p) hq.hexagon_vertices[p] = hq.q.map.vertex_of(H[p]);

  hq.provenance.assign((base + 12) / 2, Provenance::Tree);
  for (int p = 0; p < 6; ++p) hq.provenance[H[p] / 2] = Provenance::Hexagon;
  for (const auto& mg : pc.merges) hq.provenance[mg.first / 2] = Provenance::Closure;
  for (Dart d : leaves) hq.provenance[d / 2] = Provenance::HexClosure;
  for (const auto& mg : pc.merges) hq.leaf_darts.push_back(mg.first);
  hq.leaf_darts.insert(hq.leaf_darts.end(), leaves.begin(), leaves.end());

  // Post-conditions: quadrangular bounded faces, hexagonal outer face.
  const auto& q = hq.q.map;
  const int outer = hq.q.outer_face();
  for (int f = 0; f < q.face_count(); ++f) {
    const int deg = q.face_degree(f);
    if ((f == outer && deg != 6) || (f != outer && deg != 4))
      throw Error(Errc::NoCompletion, "face of degree " + std::to_string(deg) + " after completion");
  }
  if (q.vertex_count() != pc.tree.internal_count + 6)
    throw Error(Errc::NoCompletion, "vertex count " + std::to_string(q.vertex_count()));
  return hq;
}

inline HexQuadrangulation closure(const RootedBinaryTree& t) { return complete_closure(partial_closure(t)); }

// Undoes the closure using the recorded leaf darts: each one goes back to
// its own leaf vertex and the hexagon darts are dropped.
inline RootedBinaryTree recover_tree(const HexQuadrangulation& hq) {
  const int base = hq.tree_darts;
  const auto& m = hq.q.map;
  std::vector<char> is_leaf(base, 0);
  for (Dart d : hq.leaf_darts) is_leaf[d] = 1;
  std::vector<Dart> next(base);
  for (Dart d = 0; d < base; ++d) {
    if (is_leaf[d]) {
      next[d] = d;
      continue;
    }
    Dart x = m.next(d);
    while (x >= base || is_leaf[x]) x = m.next(x);
    next[d] = x;
  }
  RootedBinaryTree t = detail::make_tree(std::move(next), (base - 2) / 4);
  t.rooted.root = hq.q.root;
  t.rooted.outer_face_dart = hq.q.root;
  return t;
}

// Chord from hexagon vertex i to i+3, drawn inside the hexagonal face.
inline DoublyRootedMap add_diagonal(const HexQuadrangulation& hq, int i) {
  if (i < 0 || i > 5) throw Error(Errc::InvalidArgument, "hexagon index must be in 0..5");
  const auto& m = hq.q.map;
  const int D = m.dart_count();
  std::vector<Dart> next = m.next_array(), twin = m.twin_array();
  next.resize(D + 2);
  twin.resize(D + 2);
  const Dart d1 = D, d2 = D + 1;
  twin[d1] = d2;
  twin[d2] = d1;
  const Dart hi = hq.hexagon_darts[i], hj = hq.hexagon_darts[(i + 3) % 6];
  next[d1] = next[hi];
  next[hi] = d1;
  next[d2] = next[hj];
  next[hj] = d2;
  DoublyRootedMap out;
  out.rooted = RootedMap{CombinatorialMap(std::move(twin), std::move(next)), hq.q.root, hq.q.outer_face_dart};
  out.second_root = d1;
  out.provenance = hq.provenance;
  out.provenance.push_back(Provenance::Diagonal);
  return out;
}

// Forgets the diagonal's marking; the tree root stays the root.
inline RootedMap unroot_second(const DoublyRootedMap& qd) { return qd.rooted; }

// Every 4-cycle bounds a face.  Faces must all have degree four, except
// the outer face when allow_outer is set (quadrangulations of a hexagon).
// Parallel edges make the map reducible.
inline bool is_irreducible(const RootedMap& rq, bool allow_outer = false) {
  const auto& q = rq.map;
  const int outer = allow_outer ? rq.outer_face() : -1;
  std::vector<std::array<int, 4>> facial;
  for (int f = 0; f < q.face_count(); ++f) {
    if (f == outer) continue;
    if (q.face_degree(f) != 4) throw Error(Errc::NotQuadrangulation, "face of degree " + std::to_string(q.face_degree(f)));
    auto ds = q.darts_around_face(f);
    std::array<int, 4> e{q.edge_of(ds[0]), q.edge_of(ds[1]), q.edge_of(ds[2]), q.edge_of(ds[3])};
    std::sort(e.begin(), e.end());
    facial.push_back(e);
  }
  std::sort(facial.begin(), facial.end());
  if (!is_simple(q)) return false;

  const int V = q.vertex_count();
  // Two-paths p -> a -> r bucketed by endpoint r.
  std::vector<int> stamp(V, -1);
  std::vector<std::vector<std::pair<int, std::array<int, 2>>>> bucket(V);
  std::vector<int> touched;
  for (int p = 0; p < V; ++p) {
    touched.clear();
    for (Dart d1 : q.darts_around_vertex(p)) {
      const int a = q.head_of(d1);
      Dart d0 = q.twin(d1), d2 = d0;
      do {
        const int r = q.head_of(d2);
        if (r > p) {
          if (stamp[r] != p) {
            stamp[r] = p;
            bucket[r].clear();
            touched.push_back(r);
          }
          bucket[r].push_back({a, {q.edge_of(d1), q.edge_of(d2)}});
        }
        d2 = q.next(d2);
      } while (d2 != d0);
    }
    for (int r : touched) {
      const auto& b = bucket[r];
      for (std::size_t x = 0; x < b.size(); ++x)
        for (std::size_t y = x + 1; y < b.size(); ++y) {
          if (b[x].first == b[y].first) continue;
          std::array<int, 4> e{b[x].second[0], b[x].second[1], b[y].second[0], b[y].second[1]};
          std::sort(e.begin(), e.end());
          if (!std::binary_search(facial.begin(), facial.end(), e)) return false;
        }
    }
  }
  return true;
}

}  // namespace sqmap
