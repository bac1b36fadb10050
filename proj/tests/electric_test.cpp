#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "sqmap/electric.hpp"

using namespace sqmap;

namespace {

// Ladder L_k: rails a_0..a_k and b_0..b_k with rungs a_i b_i; the root is
// the first rung a_0 -> b_0.  Drawn on an ellipse so rungs are parallel
// chords.
RootedMap ladder(int k) {
  std::vector<fixtures::Point> pts;
  const double pi = std::acos(-1.0);
  for (int i = 0; i <= k; ++i) {
    const double th = pi * (i + 1) / (k + 2);
    pts.push_back({-std::cos(th), std::sin(th)});
  }
  for (int i = 0; i <= k; ++i) pts.push_back({pts[i].x, -pts[i].y});
  std::vector<std::pair<int, int>> e{{0, k + 1}};
  for (int i = 0; i < k; ++i) {
    e.push_back({i, i + 1});
    e.push_back({k + 1 + i, k + 2 + i});
  }
  for (int i = 1; i <= k; ++i) e.push_back({i, k + 1 + i});
  return fixtures::map_from_geometry(pts, e).rooted;
}

}  // namespace

TEST(Electric, P3) {
  auto d = fixtures::p3();
  Network net = Network::from_map(d.rooted);
  auto pr = solve_potentials<Rational>(net);
  EXPECT_EQ(pr.P[d.vid[1]], Rational(1, 2));
  EXPECT_EQ(pr.P[net.s], 1);
  EXPECT_EQ(pr.P[net.t], 0);
  auto lam = total_current(net, pr);
  EXPECT_EQ(lam.source_sum, Rational(1, 2));
  EXPECT_EQ(lam.degree_form, Rational(1, 2));
  EXPECT_EQ(lam.sink_sum, Rational(1, 2));
  auto flow = edge_currents(net, pr);
  for (int e = 0; e < d.rooted.map.edge_count(); ++e) {
    if (e != net.root_edge) EXPECT_EQ(abs(flow.current[e]), Rational(1, 2));
  }
  auto dp = dual_potentials(net, lam.value());
  EXPECT_EQ(dp.x[d.rooted.map.face_of(d.rooted.root)], Rational(1, 2));
  EXPECT_EQ(dp.x[d.rooted.map.face_left_of(d.rooted.root)], 0);
}

TEST(Electric, K4) {
  auto d = fixtures::k4();
  Network net = Network::from_map(d.rooted);
  auto pr = solve_potentials<Rational>(net);
  EXPECT_EQ(pr.P[d.vid[2]], Rational(1, 2));
  EXPECT_EQ(pr.P[d.vid[3]], Rational(1, 2));
  EXPECT_EQ(total_current(net, pr).value(), 1);
  auto flow = edge_currents(net, pr);
  EXPECT_EQ(flow.current[5], 0);  // edge ab
  EXPECT_EQ(flow.node_residual, 0);
}

TEST(Electric, ModesAgreeOnLadders) {
  for (int k = 1; k <= 12; ++k) {
    Network net = Network::from_map(ladder(k));
    auto pd = solve_potentials<double>(net);
    auto pr = solve_potentials<Rational>(net);
    for (std::size_t v = 0; v < pd.P.size(); ++v) EXPECT_NEAR(pd.P[v], pr.P[v].get_d(), 1e-10);
    EXPECT_LE(pd.residual, 1e-10);
    EXPECT_EQ(pr.residual, 0);
    auto lam = total_current(net, pd);
    EXPECT_NEAR(lam.source_sum, lam.degree_form, 1e-12);
    EXPECT_NEAR(lam.source_sum, lam.sink_sum, 1e-10);
    for (double p : pd.P) {
      EXPECT_GE(p, -1e-14);
      EXPECT_LE(p, 1 + 1e-14);
    }
    auto ld = total_current(net, pr).value();
    auto dd = dual_potentials(net, lam.value());
    auto dr = dual_potentials(net, ld);
    for (std::size_t f = 0; f < dd.x.size(); ++f) EXPECT_NEAR(dd.x[f], dr.x[f].get_d(), 1e-10);
  }
}

TEST(Electric, DualDifferencesAreCurrents) {
  for (auto rm : {fixtures::k4().rooted, ladder(5)}) {
    Network net = Network::from_map(rm);
    auto pr = solve_potentials<Rational>(net);
    auto flow = edge_currents(net, pr);
    auto dp = dual_potentials(net, flow.lambda);
    const auto& g = rm.map;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (e == net.root_edge) continue;
      Dart d = g.edge_dart(e);
      EXPECT_EQ(abs(dp.x[g.face_of(d)] - dp.x[g.face_left_of(d)]), abs(flow.current[e]));
    }
  }
}

TEST(Electric, MonteCarlo) {
  auto p3 = fixtures::p3();
  Network n1 = Network::from_map(p3.rooted);
  auto h = mc_hitting_oracle(n1, p3.vid[1], 100000, 17);
  EXPECT_NEAR(h.estimate, 0.5, 3 * h.std_error);
  EXPECT_EQ(mc_hitting_oracle(n1, n1.s, 10, 1).estimate, 1.0);
  auto k4 = fixtures::k4();
  Network n2 = Network::from_map(k4.rooted);
  auto h2 = mc_hitting_oracle(n2, k4.vid[2], 100000, 18);
  EXPECT_NEAR(h2.estimate, 0.5, 3 * h2.std_error);
  EXPECT_THROW(mc_hitting_oracle(n2, 99, 10, 1), Error);
}

TEST(Electric, LadderProbeConverges) {
  std::vector<RootedMap> seq;
  for (int k = 1; k <= 8; ++k) seq.push_back(ladder(k));
  // the vertex next to s on the top rail: head of the root's ccw successor
  auto vals = potential_convergence_probe(seq, VertexLocator{-1, "nt"}, SolveMode::Rational);
  std::vector<double> diffs;
  for (std::size_t i = 1; i < vals.size(); ++i) diffs.push_back(std::fabs(vals[i] - vals[i - 1]));
  for (std::size_t i = 1; i < diffs.size(); ++i) EXPECT_LT(diffs[i], diffs[i - 1]);
  auto same = potential_convergence_probe({seq[3], seq[3], seq[3]}, VertexLocator{2, ""});
  EXPECT_EQ(same[0], same[1]);
  EXPECT_EQ(same[1], same[2]);
  EXPECT_THROW(potential_convergence_probe({seq[0]}, VertexLocator{1000, ""}), Error);
}

TEST(Electric, Preconditions) {
  // single edge: cutting the root leaves no path
  auto m = build_map({{0}, {1}});
  EXPECT_THROW(Network::from_map(RootedMap{m, 0, 0}), Error);
  EXPECT_FALSE(Network::from_map(fixtures::theta().rooted).squarable);
  EXPECT_TRUE(Network::from_map(fixtures::k4().rooted).squarable);
}
