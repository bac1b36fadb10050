#pragma once

// Contacts graph of a squaring, the derived map D(G), and the check that
// touching squares sit within distance two in D(G).

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "combmap.hpp"
#include "core.hpp"
#include "squaring.hpp"

namespace sqmap {

// Vertices are the non-degenerate squares; `square[k]` indexes into the
// squaring and `edge[k]` is the map edge of that square.
struct ContactsGraph {
  std::vector<int> square;
  std::vector<int> edge;
  std::vector<std::vector<int>> adj;

  int vertex_count() const { return static_cast<int>(square.size()); }
  long edge_count() const {
    long m = 0;
    for (auto& a : adj) m += static_cast<long>(a.size());
    return m / 2;
  }
  bool connected() const {
    if (adj.empty()) return true;
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> st{0};
    seen[0] = 1;
    std::size_t n = 1;
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++n;
          st.push_back(w);
        }
    }
    return n == adj.size();
  }
};

// Closed squares intersect, corners included.
template <class S>
ContactsGraph contacts_graph(const Squaring<S>& sq, double tol = 1e-9) {
  ContactsGraph r;
  for (std::size_t i = 0; i < sq.squares.size(); ++i)
    if (!sq.squares[i].degenerate) {
      r.square.push_back(static_cast<int>(i));
      r.edge.push_back(sq.squares[i].edge);
    }
  const int N = r.vertex_count();
  r.adj.assign(N, {});
  const S t = is_exact_v<S> ? S(0) : scalar_from_double<S>(tol);
  std::vector<int> order(N);
  for (int k = 0; k < N; ++k) order[k] = k;
  auto sqr = [&](int k) -> const Square<S>& { return sq.squares[r.square[k]]; };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sqr(a).left() < sqr(b).left(); });
  for (int i = 0; i < N; ++i) {
    const auto& a = sqr(order[i]);
    for (int j = i + 1; j < N; ++j) {
      const auto& b = sqr(order[j]);
      if (b.left() > a.right() + t) break;
      if (b.bottom() <= a.top() + t && a.bottom() <= b.top() + t) {
        r.adj[order[i]].push_back(order[j]);
        r.adj[order[j]].push_back(order[i]);
      }
    }
  }
  for (auto& a : r.adj) std::sort(a.begin(), a.end());
  return r;
}

// D(G): subdivide every edge once, add a vertex per face joined to the
// subdivision vertices around it.  Each dart d of G contributes four darts:
//   4d   tail(d) -> v_e        4d+1 its twin
//   4d+2 v_e -> face right of d   4d+3 its twin
struct DerivedMap {
  CombinatorialMap map;
  std::vector<int> primal_vertex;       // G vertex -> D vertex
  std::vector<int> subdivision_vertex;  // G edge -> D vertex
  std::vector<int> facial_vertex;       // G face -> D vertex
};

inline DerivedMap derived_map(const CombinatorialMap& g) {
  const int D = g.dart_count();
  std::vector<Dart> twin(4 * D), next(4 * D);
  for (Dart d = 0; d < D; ++d) {
    twin[4 * d] = 4 * d + 1;
    twin[4 * d + 1] = 4 * d;
    twin[4 * d + 2] = 4 * d + 3;
    twin[4 * d + 3] = 4 * d + 2;
    const Dart e = g.twin(d);
    // at v_e, ccw: towards head(d), face left of d, tail(d), face right of d
    next[4 * e + 1] = 4 * e + 2;
    next[4 * e + 2] = 4 * d + 1;
    next[4 * d + 1] = 4 * d + 2;
    next[4 * d + 2] = 4 * e + 1;
    next[4 * d] = 4 * g.next(d);
    next[4 * d + 3] = 4 * g.twin(g.prev(d)) + 3;
  }
  DerivedMap out{CombinatorialMap(std::move(twin), std::move(next)), {}, {}, {}};
  for (int v = 0; v < g.vertex_count(); ++v) out.primal_vertex.push_back(out.map.vertex_of(4 * g.vertex_dart(v)));
  for (int e = 0; e < g.edge_count(); ++e)
    out.subdivision_vertex.push_back(out.map.vertex_of(4 * g.edge_dart(e) + 1));
  for (int f = 0; f < g.face_count(); ++f) out.facial_vertex.push_back(out.map.vertex_of(4 * g.face_dart(f) + 3));
  return out;
}

// Same shape up to orientation.
inline bool isomorphic_unrooted(const CombinatorialMap& a, const CombinatorialMap& b) {
  if (a.dart_count() != b.dart_count()) return false;
  const std::string ca = unrooted_code(a);
  return ca == unrooted_code(b) || ca == unrooted_code(mirror(RootedMap{b, 0, 0}).map);
}

struct LemmaReport {
  long checked = 0;
  std::vector<std::pair<int, int>> violations;  // pairs of map edges
  bool ok() const { return violations.empty(); }
};

// Every contact between s_e and s_f must be matched by a path of length at
// most two between v_e and v_f in D(G).
inline LemmaReport check_lemma_subgraph(const ContactsGraph& r, const DerivedMap& d) {
  LemmaReport rep;
  const auto& m = d.map;
  std::vector<int> mark(m.vertex_count(), -1);
  for (int k = 0; k < r.vertex_count(); ++k) {
    const int src = d.subdivision_vertex.at(r.edge[k]);
    // vertices within distance two of src
    for (Dart a : m.darts_around_vertex(src)) {
      const int w = m.head_of(a);
      mark[w] = src;
      for (Dart b : m.darts_around_vertex(w)) mark[m.head_of(b)] = src;
    }
    mark[src] = src;
    for (int j : r.adj[k]) {
      if (j < k) continue;
      ++rep.checked;
      if (mark[d.subdivision_vertex.at(r.edge[j])] != src) rep.violations.push_back({r.edge[k], r.edge[j]});
    }
  }
  return rep;
}

// Points that are a corner of exactly four non-degenerate squares.  Float
// coordinates are bucketed on a grid of size `grid`.
template <class S>
int four_corner_count(const Squaring<S>& sq, double grid = 1e-9) {
  if constexpr (is_exact_v<S>) {
    (void)grid;
    std::map<std::pair<S, S>, int> at;
    for (auto& q : sq.squares) {
      if (q.degenerate) continue;
      ++at[{q.left(), q.top()}];
      ++at[{q.right(), q.top()}];
      ++at[{q.left(), q.bottom()}];
      ++at[{q.right(), q.bottom()}];
    }
    int n = 0;
    for (auto& [p, c] : at) n += c == 4;
    return n;
  } else {
    std::map<std::pair<long long, long long>, int> at;
    auto key = [&](double x, double y) { return std::make_pair(std::llround(x / grid), std::llround(y / grid)); };
    for (auto& q : sq.squares) {
      if (q.degenerate) continue;
      ++at[key(q.left(), q.top())];
      ++at[key(q.right(), q.top())];
      ++at[key(q.left(), q.bottom())];
      ++at[key(q.right(), q.bottom())];
    }
    int n = 0;
    for (auto& [p, c] : at) n += c == 4;
    return n;
  }
}

}  // namespace sqmap
