#pragma once

// Small maps built from straight-line drawings.  Edge k becomes darts 2k
// (first -> second endpoint) and 2k+1, rotations sorted by angle.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "sqmap/combmap.hpp"

namespace fixtures {

using sqmap::Dart;

struct Point {
  double x, y;
};

struct Drawn {
  sqmap::RootedMap rooted;
  std::vector<int> vid;  // map vertex id of each point
};

// Root is dart 0 (edge 0 forwards).  The outer face is the face whose
// boundary walk has positive signed area.
inline Drawn map_from_geometry(const std::vector<Point>& pts,
                               const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<double, Dart>>> around(pts.size());
  std::vector<int> tail(2 * edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [u, v] = edges[k];
    around[u].push_back({std::atan2(pts[v].y - pts[u].y, pts[v].x - pts[u].x), static_cast<Dart>(2 * k)});
    around[v].push_back({std::atan2(pts[u].y - pts[v].y, pts[u].x - pts[v].x), static_cast<Dart>(2 * k + 1)});
    tail[2 * k] = u;
    tail[2 * k + 1] = v;
  }
  std::vector<std::vector<Dart>> rot;
  for (auto& a : around) {
    std::sort(a.begin(), a.end());
    std::vector<Dart> r;
    for (auto& e : a) r.push_back(e.second);
    rot.push_back(r);
  }
  Drawn out;
  out.rooted.map = sqmap::build_map(rot);
  const auto& m = out.rooted.map;
  out.rooted.root = 0;
  for (int f = 0; f < m.face_count(); ++f) {
    double area = 0;
    for (Dart d : m.darts_around_face(f)) {
      const Point& a = pts[tail[d]];
      const Point& b = pts[tail[m.twin(d)]];
      area += a.x * b.y - b.x * a.y;
    }
    if (area > 0) out.rooted.outer_face_dart = m.face_dart(f);
  }
  out.vid.resize(pts.size());
  for (std::size_t d = 0; d < tail.size(); ++d) out.vid[tail[d]] = m.vertex_of(static_cast<Dart>(d));
  return out;
}

// Point order s, a, t; root s->t.
inline Drawn p3() { return map_from_geometry({{0, 1}, {-1, 0}, {0, -1}}, {{0, 2}, {0, 1}, {1, 2}}); }

// Point order s, t, a, b with t inside the triangle s,a,b; root s->t.
inline Drawn k4() {
  return map_from_geometry({{0, 2}, {0, 0}, {-2, -1}, {2, -1}},
                           {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

// Point order s, t, a, b; edges st, sa, at, sb, bt.
inline Drawn theta() {
  return map_from_geometry({{0, 1}, {0, -1}, {-1, 0}, {1, 0}}, {{0, 1}, {0, 2}, {2, 1}, {0, 3}, {3, 1}});
}

inline Drawn triangle() { return map_from_geometry({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}}); }

}  // namespace fixtures
