#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "sqmap/combmap.hpp"

using namespace sqmap;

TEST(CombMap, TriangleCounts) {
  auto m = fixtures::triangle().rooted.map;
  EXPECT_EQ(m.vertex_count(), 3);
  EXPECT_EQ(m.edge_count(), 3);
  EXPECT_EQ(m.face_count(), 2);
  for (int f = 0; f < 2; ++f) EXPECT_EQ(m.face_degree(f), 3);
}

TEST(CombMap, ThetaFaces) {
  auto rm = fixtures::theta().rooted;
  EXPECT_EQ(rm.map.vertex_count(), 4);
  EXPECT_EQ(rm.map.edge_count(), 5);
  EXPECT_EQ(rm.map.face_count(), 3);
  FaceIndex fi = faces(rm);
  std::vector<int> deg;
  for (auto& f : fi.faces) deg.push_back(static_cast<int>(f.size()));
  std::sort(deg.begin(), deg.end());
  EXPECT_EQ(deg, (std::vector<int>{3, 3, 4}));
  EXPECT_EQ(fi.faces[fi.outer_face].size(), 4u);
}

TEST(CombMap, RejectsRepeatedDart) {
  try {
    build_map({{0, 2}, {1, 2}, {3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedRotation);
  }
}

TEST(CombMap, RejectsNonInvolution) {
  try {
    CombinatorialMap({1, 2, 0, 3}, {0, 1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedRotation);
  }
}

TEST(CombMap, RejectsTorus) {
  // One vertex, two interleaved loops: V - E + F = 1 - 2 + 1.
  try {
    build_map({{0, 2, 1, 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonPlanar);
  }
}

TEST(CombMap, DualCountsAndRoot) {
  auto rm = fixtures::theta().rooted;
  RootedMap d = dual(rm);
  EXPECT_EQ(d.map.vertex_count(), 3);
  EXPECT_EQ(d.map.edge_count(), 5);
  EXPECT_EQ(d.map.face_count(), 4);
  // dual vertices are the primal faces, dart by dart
  for (Dart a = 0; a < rm.map.dart_count(); ++a)
    for (Dart b = 0; b < rm.map.dart_count(); ++b)
      EXPECT_EQ(rm.map.face_of(a) == rm.map.face_of(b), d.map.vertex_of(a) == d.map.vertex_of(b));
  // tail of the dual root is the face on the right of the primal root
  for (Dart a : rm.map.darts_around_face(rm.map.face_of(rm.root)))
    EXPECT_EQ(d.map.vertex_of(a), d.source());
  // dual faces are the primal vertices; the dual face on the right of d
  // surrounds the head of d
  for (Dart a = 0; a < rm.map.dart_count(); ++a)
    for (Dart b = 0; b < rm.map.dart_count(); ++b)
      EXPECT_EQ(rm.map.head_of(a) == rm.map.head_of(b), d.map.face_of(a) == d.map.face_of(b));
}

TEST(CombMap, DoubleDualReversesRoot) {
  for (auto rm : {fixtures::theta().rooted, fixtures::k4().rooted, fixtures::p3().rooted}) {
    RootedMap dd = dual(dual(rm));
    EXPECT_EQ(canonical_code(dd), canonical_code(rm.map, rm.map.twin(rm.root)));
    EXPECT_EQ(unrooted_code(dd.map), unrooted_code(rm.map));
  }
}

TEST(CombMap, DualFaceDegreesMatchVertexDegrees) {
  auto rm = fixtures::k4().rooted;
  RootedMap d = dual(rm);
  std::vector<int> a, b;
  for (int v = 0; v < rm.map.vertex_count(); ++v) a.push_back(rm.map.degree(v));
  for (int f = 0; f < d.map.face_count(); ++f) b.push_back(d.map.face_degree(f));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(CombMap, Squarable) {
  EXPECT_FALSE(check_squarable(fixtures::theta().rooted));
  EXPECT_TRUE(check_squarable(fixtures::p3().rooted));
  EXPECT_TRUE(check_squarable(fixtures::k4().rooted));
  // two disjoint triangles
  auto two = build_map({{0, 5}, {1, 2}, {3, 4}, {6, 11}, {7, 8}, {9, 10}});
  EXPECT_EQ(two.component_count(), 2);
  EXPECT_FALSE(check_squarable(RootedMap{two, 0, 0}));
}

TEST(CombMap, CodeInvariantUnderRelabelling) {
  Rng rng = make_rng(7);
  for (auto rm : {fixtures::theta().rooted, fixtures::k4().rooted}) {
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<Dart> perm(rm.map.dart_count());
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
      RootedMap r = relabel(rm, perm);
      EXPECT_EQ(canonical_code(r), canonical_code(rm));
    }
  }
}

TEST(CombMap, CodeSeesRootMove) {
  auto rm = fixtures::theta().rooted;
  // st lies on two triangles, sa on a triangle and the quadrilateral
  EXPECT_NE(canonical_code(rm.map, 0), canonical_code(rm.map, 2));
}

namespace {

bool rooted_isomorphic(const CombinatorialMap& a, const CombinatorialMap& b) {
  std::vector<Dart> p(a.dart_count());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (p[0] != 0) continue;
    bool ok = true;
    for (Dart d = 0; d < a.dart_count() && ok; ++d)
      ok = p[a.twin(d)] == b.twin(p[d]) && p[a.next(d)] == b.next(p[d]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

}  // namespace

TEST(CombMap, TwoEdgeCensus) {
  std::vector<CombinatorialMap> maps;
  std::vector<Dart> next{0, 1, 2, 3};
  do {
    try {
      CombinatorialMap m({1, 0, 3, 2}, next);
      if (m.component_count() == 1) maps.push_back(m);
    } catch (const Error&) {
    }
  } while (std::next_permutation(next.begin(), next.end()));
  std::vector<CombinatorialMap> classes;
  for (auto& m : maps) {
    bool seen = false;
    for (auto& c : classes) seen = seen || rooted_isomorphic(m, c);
    if (!seen) classes.push_back(m);
  }
  std::set<std::string> codes;
  for (auto& m : maps) codes.insert(canonical_code(m, 0));
  EXPECT_EQ(codes.size(), classes.size());
  EXPECT_EQ(classes.size(), 9u);
}
