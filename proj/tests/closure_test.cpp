#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "sqmap/closure.hpp"
#include "sqmap/tutte.hpp"

using namespace sqmap;

namespace {

// All 4-cycles by walking four darts; true iff each bounds a face.
bool irreducible_bruteforce(const RootedMap& rq) {
  const auto& q = rq.map;
  std::set<std::vector<int>> facial;
  for (int f = 0; f < q.face_count(); ++f) {
    std::vector<int> e;
    for (Dart d : q.darts_around_face(f)) e.push_back(q.edge_of(d));
    std::sort(e.begin(), e.end());
    facial.insert(e);
  }
  const int D = q.dart_count();
  for (Dart d1 = 0; d1 < D; ++d1)
    for (Dart d2 : q.darts_around_vertex(q.head_of(d1)))
      for (Dart d3 : q.darts_around_vertex(q.head_of(d2)))
        for (Dart d4 : q.darts_around_vertex(q.head_of(d3))) {
          if (q.head_of(d4) != q.vertex_of(d1)) continue;
          std::vector<int> vs{q.vertex_of(d1), q.vertex_of(d2), q.vertex_of(d3), q.vertex_of(d4)};
          std::vector<int> es{q.edge_of(d1), q.edge_of(d2), q.edge_of(d3), q.edge_of(d4)};
          std::sort(vs.begin(), vs.end());
          std::sort(es.begin(), es.end());
          if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) continue;
          if (std::adjacent_find(es.begin(), es.end()) != es.end()) continue;
          if (!facial.count(es)) return false;
        }
  // parallel edges separate the sphere as well
  return is_simple(q);
}

void expect_hex(const HexQuadrangulation& hq, int n) {
  const auto& q = hq.q.map;
  EXPECT_EQ(q.vertex_count(), n + 6);
  EXPECT_EQ(q.edge_count(), 2 * n + 7);
  const int outer = hq.q.outer_face();
  for (int f = 0; f < q.face_count(); ++f) EXPECT_EQ(q.face_degree(f), f == outer ? 6 : 4);
  // root edge off the hexagon
  EXPECT_NE(q.face_of(hq.q.root), outer);
  EXPECT_NE(q.face_left_of(hq.q.root), outer);
  // hexagon vertices distinct and in the outer face order
  std::set<int> hv(hq.hexagon_vertices.begin(), hq.hexagon_vertices.end());
  EXPECT_EQ(hv.size(), 6u);
}

}  // namespace

TEST(Closure, SingleInternalVertexIsAlreadyClosed) {
  for (auto& t : enumerate_trees(1)) {
    auto pc = partial_closure(t);
    EXPECT_TRUE(pc.merges.empty());
    int leaves = 0;
    for (auto& c : pc.remaining) leaves += c.leaf;
    EXPECT_EQ(leaves, 3);
    auto hq = complete_closure(pc);
    expect_hex(hq, 1);
  }
}

TEST(Closure, RejectsEmptyTree) {
  EXPECT_THROW(partial_closure(enumerate_trees(0)[0]), Error);
}

TEST(Closure, PartialClosureFacesAndLeaves) {
  for (int n = 1; n <= 5; ++n)
    for (auto& t : enumerate_trees(n)) {
      auto pc = partial_closure(t);
      RootedMap q0 = pc.q0();
      const int outer = q0.outer_face();
      for (int f = 0; f < q0.map.face_count(); ++f)
        if (f != outer) EXPECT_EQ(q0.map.face_degree(f), 4);
      int leaves = 0;
      for (auto& c : pc.remaining) leaves += c.leaf;
      EXPECT_GE(leaves, 3);
      EXPECT_LE(static_cast<int>(pc.merges.size()), n + 2);
      EXPECT_TRUE(pc.remaining.front().leaf);
    }
}

TEST(Closure, CensusIsInjectiveAndValid) {
  for (int n = 1; n <= 5; ++n) {
    std::set<std::string> codes;
    auto ts = enumerate_trees(n);
    for (auto& t : ts) {
      auto hq = closure(t);
      expect_hex(hq, n);
      codes.insert(canonical_code(hq.q));
      EXPECT_TRUE(is_irreducible(hq.q, true));
    }
    EXPECT_EQ(codes.size(), ts.size()) << "n=" << n;
  }
}

TEST(Closure, StackAndReferenceAgree) {
  for (int n = 1; n <= 5; ++n)
    for (auto& t : enumerate_trees(n)) {
      auto a = partial_closure(t), b = partial_closure_reference(t);
      EXPECT_EQ(a.next, b.next);
      EXPECT_EQ(a.ell0, b.ell0);
    }
  Rng rng = make_rng(3);
  for (int rep = 0; rep < 60; ++rep) {
    int n = 1 + static_cast<int>(uniform_below(rng, 300));
    auto t = sample_direct(n, rng);
    auto a = partial_closure(t), b = partial_closure_reference(t);
    ASSERT_EQ(a.next, b.next);
    ASSERT_EQ(a.ell0, b.ell0);
    ASSERT_EQ(a.remaining.size(), b.remaining.size());
  }
}

TEST(Closure, ProvenanceRoundTrip) {
  Rng rng = make_rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 1 + static_cast<int>(uniform_below(rng, 200));
    auto t = sample_direct(n, rng);
    auto hq = closure(t);
    expect_hex(hq, n);
    auto back = recover_tree(hq);
    EXPECT_EQ(back.rooted.map, t.rooted.map);
    EXPECT_EQ(canonical_code(back.rooted), canonical_code(t.rooted));
  }
}

TEST(Closure, Diagonal) {
  auto t = enumerate_trees(1)[0];
  auto hq = closure(t);
  for (int i = 0; i < 6; ++i) {
    auto qd = add_diagonal(hq, i);
    const auto& q = qd.rooted.map;
    EXPECT_EQ(q.vertex_count(), 7);
    for (int f = 0; f < q.face_count(); ++f) EXPECT_EQ(q.face_degree(f), 4);
    EXPECT_EQ(q.vertex_of(qd.second_root), hq.hexagon_vertices[i]);
    EXPECT_EQ(q.head_of(qd.second_root), hq.hexagon_vertices[(i + 3) % 6]);
    RootedMap r = unroot_second(qd);
    EXPECT_EQ(r.root, hq.q.root);
    EXPECT_EQ(r.map.edge_count(), hq.q.map.edge_count() + 1);
  }
  EXPECT_THROW(add_diagonal(hq, 6), Error);
}

TEST(Closure, PillowIsIrreducible) {
  // four vertices on a 4-cycle, two faces
  auto m = build_map({{0, 7}, {2, 1}, {4, 3}, {6, 5}});
  RootedMap p{m, 0, 0};
  EXPECT_EQ(m.face_count(), 2);
  EXPECT_TRUE(irreducible_bruteforce(p));
  EXPECT_TRUE(is_irreducible(p));
}

TEST(Closure, SquareMapIsReducible) {
  // Vertex-face map of a plain 4-cycle: the two diagonals of the cycle
  // give 4-cycles that bound no face.
  auto c4 = fixtures::map_from_geometry({{0, 1}, {1, 0}, {0, -1}, {-1, 0}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  RootedMap q = tutte_forward(c4.rooted);
  EXPECT_FALSE(irreducible_bruteforce(q));
  EXPECT_FALSE(is_irreducible(q));
  EXPECT_THROW(is_irreducible(fixtures::k4().rooted), Error);
}

TEST(Closure, IrreducibleAgreesWithBruteForce) {
  Rng rng = make_rng(5);
  int reducible = 0;
  for (int rep = 0; rep < 200; ++rep) {
    auto t = sample_direct(8, rng);
    auto qd = add_diagonal(closure(t), static_cast<int>(uniform_below(rng, 6)));
    RootedMap q = unroot_second(qd);
    bool fast = is_irreducible(q);
    EXPECT_EQ(fast, irreducible_bruteforce(q));
    reducible += !fast;
  }
  EXPECT_GT(reducible, 0);
}
