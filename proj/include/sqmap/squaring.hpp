#pragma once

// Squared rectangles from rooted maps.
//
// The rectangle is [0, lambda] x [0, 1] with y pointing up and s on the top
// side.  Every non-root edge e = uv gets the square with top y = max P,
// side |P(u) - P(v)| and left side at the smaller potential of the two
// faces beside e.  The face on the right of st sits at x = lambda.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "combmap.hpp"
#include "core.hpp"
#include "electric.hpp"

namespace sqmap {

template <class S>
struct Square {
  int edge = -1;
  S x{}, y{}, side{};  // top-left corner and side length
  bool degenerate = false;

  S left() const { return x; }
  S right() const { return x + side; }
  S top() const { return y; }
  S bottom() const { return y - side; }
};

template <class S>
struct PrimalLine {
  int vertex = -1;
  S y{}, x0{}, x1{};
  bool degenerate() const { return !(x1 > x0); }
};

template <class S>
struct FacialLine {
  int face = -1;
  S x{}, y0{}, y1{};
  bool degenerate() const { return !(y1 > y0); }
};

template <class S>
struct Squaring {
  S lambda{};
  std::vector<Square<S>> squares;  // one per non-root edge, ordered by edge id
  std::vector<PrimalLine<S>> primal_lines;
  std::vector<FacialLine<S>> facial_lines;
  SolveMode mode = mode_of<S>();

  int degenerate_count() const {
    int k = 0;
    for (auto& q : squares) k += q.degenerate;
    return k;
  }
};

inline constexpr double kZeroCurrent = 1e-12;

template <class S>
bool is_zero_current(const S& side) {
  if constexpr (is_exact_v<S>) {
    return sgn(side) == 0;
  } else {
    return std::fabs(side) < kZeroCurrent;
  }
}

template <class S>
Squaring<S> build_squaring(const Network& net, const Potentials<S>& pot, const DualPotentials<S>& dp) {
  const auto& g = net.rooted.map;
  Squaring<S> sq;
  sq.lambda = total_current(net, pot).value();
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e == net.root_edge) continue;
    const Dart d = g.edge_dart(e);
    const S& pu = pot.P[g.vertex_of(d)];
    const S& pv = pot.P[g.head_of(d)];
    const S& xr = dp.x[g.face_of(d)];
    const S& xl = dp.x[g.face_left_of(d)];
    Square<S> q;
    q.edge = e;
    q.side = abs_value(S(pu - pv));
    q.y = std::max(pu, pv);
    q.x = std::min(xr, xl);
    q.degenerate = is_zero_current(q.side);
    sq.squares.push_back(q);
  }
  // lines: extents over the squares of incident non-root edges
  std::vector<int> square_of_edge(g.edge_count(), -1);
  for (std::size_t i = 0; i < sq.squares.size(); ++i) square_of_edge[sq.squares[i].edge] = static_cast<int>(i);
  for (int v = 0; v < g.vertex_count(); ++v) {
    PrimalLine<S> l;
    l.vertex = v;
    l.y = pot.P[v];
    bool first = true;
    for (Dart d : g.darts_around_vertex(v)) {
      const int k = square_of_edge[g.edge_of(d)];
      if (k < 0) continue;
      const auto& q = sq.squares[k];
      if (first || q.left() < l.x0) l.x0 = q.left();
      if (first || q.right() > l.x1) l.x1 = q.right();
      first = false;
    }
    if (first) l.x0 = l.x1 = S(0);
    sq.primal_lines.push_back(l);
  }
  for (int f = 0; f < g.face_count(); ++f) {
    FacialLine<S> l;
    l.face = f;
    l.x = dp.x[f];
    bool first = true;
    for (Dart d : g.darts_around_face(f)) {
      const int k = square_of_edge[g.edge_of(d)];
      if (k < 0) continue;
      const auto& q = sq.squares[k];
      if (first || q.bottom() < l.y0) l.y0 = q.bottom();
      if (first || q.top() > l.y1) l.y1 = q.top();
      first = false;
    }
    if (first) l.y0 = l.y1 = S(0);
    sq.facial_lines.push_back(l);
  }
  return sq;
}

// Solve both networks and assemble the squaring.
template <class S>
Squaring<S> square_map(const RootedMap& m, const SolverOptions& opt = {}) {
  Network net = Network::from_map(m);
  auto pot = solve_potentials<S>(net, opt);
  const S lambda = total_current(net, pot).value();
  auto dp = dual_potentials<S>(net, lambda, opt);
  return build_squaring(net, pot, dp);
}

// Exact squaring converted to doubles, for callers that want exact
// arithmetic but a floating result.
inline Squaring<double> to_double(const Squaring<Rational>& s) {
  Squaring<double> out;
  out.mode = SolveMode::Rational;
  out.lambda = s.lambda.get_d();
  for (auto& q : s.squares) out.squares.push_back({q.edge, q.x.get_d(), q.y.get_d(), q.side.get_d(), q.degenerate});
  for (auto& l : s.primal_lines) out.primal_lines.push_back({l.vertex, l.y.get_d(), l.x0.get_d(), l.x1.get_d()});
  for (auto& l : s.facial_lines) out.facial_lines.push_back({l.face, l.x.get_d(), l.y0.get_d(), l.y1.get_d()});
  return out;
}

inline Squaring<double> square_map(const RootedMap& m, SolveMode mode, const SolverOptions& opt = {}) {
  if (mode == SolveMode::Rational) return to_double(square_map<Rational>(m, opt));
  return square_map<double>(m, opt);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct TilingReport {
  double overlap_area = 0;    // sum of areas minus area of the union
  double coverage_deficit = 0;  // lambda minus covered part of the rectangle
  double out_of_bounds = 0;   // area of squares outside the rectangle
  double area_error = 0;      // |sum side^2 - lambda|
  double tolerance = 0;
  bool ok = false;
};

// Horizontal slabs between consecutive distinct square tops and bottoms;
// inside a slab the covering squares are fixed and their x-intervals are
// merged directly.
template <class S>
TilingReport validate_tiling(const Squaring<S>& sq, double rel_tol = 1e-8) {
  const S W = sq.lambda;
  std::vector<const Square<S>*> live;
  S area_sum = 0;
  for (auto& q : sq.squares) {
    area_sum += q.side * q.side;
    if (!q.degenerate) live.push_back(&q);
  }
  std::vector<S> ys;
  ys.reserve(2 * live.size() + 2);
  for (auto* q : live) {
    ys.push_back(q->top());
    ys.push_back(q->bottom());
  }
  ys.push_back(S(0));
  ys.push_back(S(1));
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::vector<const Square<S>*> by_bottom = live, by_top = live;
  std::sort(by_bottom.begin(), by_bottom.end(), [](auto* a, auto* b) { return a->bottom() < b->bottom(); });
  std::sort(by_top.begin(), by_top.end(), [](auto* a, auto* b) { return a->top() < b->top(); });
  std::vector<char> active(sq.squares.size(), 0);
  std::vector<const Square<S>*> act;
  std::size_t ib = 0, it = 0;
  S overlap = 0, covered = 0, outside = 0;
  auto index_of = [&](const Square<S>* q) { return static_cast<std::size_t>(q - sq.squares.data()); };
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    const S y0 = ys[k], y1 = ys[k + 1];
    while (ib < by_bottom.size() && by_bottom[ib]->bottom() <= y0) active[index_of(by_bottom[ib++])] = 1;
    while (it < by_top.size() && by_top[it]->top() <= y0) active[index_of(by_top[it++])] = 0;
    act.clear();
    for (auto* q : live)
      if (active[index_of(q)]) act.push_back(q);
    if (act.empty()) continue;
    const S h = y1 - y0;
    std::sort(act.begin(), act.end(), [](auto* a, auto* b) { return a->left() < b->left(); });
    S total = 0, uni = 0, inside = 0;
    S cur_l = act[0]->left(), cur_r = act[0]->right();
    auto flush = [&](const S& l, const S& r) {
      uni += r - l;
      const S a = std::max(l, S(0)), b = std::min(r, W);
      if (b > a) inside += b - a;
    };
    for (auto* q : act) {
      total += q->side;
      if (q->left() > cur_r) {
        flush(cur_l, cur_r);
        cur_l = q->left();
        cur_r = q->right();
      } else if (q->right() > cur_r) {
        cur_r = q->right();
      }
    }
    flush(cur_l, cur_r);
    overlap += (total - uni) * h;
    const bool in_band = y0 >= S(0) && y1 <= S(1);
    if (in_band) {
      covered += inside * h;
      outside += (uni - inside) * h;
    } else {
      outside += uni * h;
    }
  }
  TilingReport r;
  r.overlap_area = to_double(overlap);
  r.coverage_deficit = to_double(S(W - covered));
  r.out_of_bounds = to_double(outside);
  r.area_error = std::fabs(to_double(S(area_sum - W)));
  const double w = to_double(W);
  r.tolerance = is_exact_v<S> ? 0.0 : rel_tol * w;
  r.ok = w > 0 && r.overlap_area <= r.tolerance && r.coverage_deficit <= r.tolerance &&
         r.out_of_bounds <= r.tolerance && r.area_error <= r.tolerance;
  return r;
}

// Lemma-style check: every primal and facial line has positive length.
template <class S>
bool check_nondegenerate_lines(const Squaring<S>& sq) {
  for (auto& l : sq.primal_lines)
    if (l.degenerate()) return false;
  for (auto& l : sq.facial_lines)
    if (l.degenerate()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Duality: S(G*, s*t*) is S(G, st) turned a quarter counterclockwise and
// scaled to height one.  The point (x, y) goes to ((1 - y)/lambda, x/lambda).
// ---------------------------------------------------------------------------

struct DualityReport {
  double square_error = 0;   // max coordinate mismatch over squares
  double lambda_error = 0;   // |lambda(G) lambda(G*) - 1|
  double facial_error = 0;   // facial lines vs. rotated dual primal lines
  bool ok = false;
};

template <class S>
DualityReport check_duality_rotation(const RootedMap& g, double tol = 1e-8, const SolverOptions& opt = {}) {
  const Squaring<S> a = square_map<S>(g, opt);
  const RootedMap gd = dual(g);
  const Squaring<S> b = square_map<S>(gd, opt);
  DualityReport r;
  auto err = [](const S& u, const S& v) { return std::fabs(to_double(S(u - v))); };
  r.lambda_error = err(S(a.lambda * b.lambda), S(1));
  std::map<int, const Square<S>*> bq;
  for (auto& q : b.squares) bq[q.edge] = &q;
  for (auto& q : a.squares) {
    auto itb = bq.find(q.edge);
    if (itb == bq.end()) {
      r.square_error = 1e300;
      continue;
    }
    const Square<S>& p = *itb->second;
    const S ex = (S(1) - q.y) / a.lambda;
    const S ey = (q.x + q.side) / a.lambda;
    const S es = q.side / a.lambda;
    if (q.degenerate && p.degenerate) {
      r.square_error = std::max({r.square_error, err(p.side, es)});
      continue;
    }
    r.square_error = std::max({r.square_error, err(p.x, ex), err(p.y, ey), err(p.side, es)});
  }
  // facial line of face f in S(G) vs primal line of the dual vertex f in
  // S(G*) mapped back by (X, Y) -> (lambda Y, 1 - lambda X)
  for (auto& fl : a.facial_lines) {
    const int dv = gd.map.vertex_of(g.map.face_dart(fl.face));
    const auto& pl = b.primal_lines[dv];
    r.facial_error = std::max({r.facial_error, err(S(a.lambda * pl.y), fl.x),
                               err(S(S(1) - a.lambda * pl.x1), fl.y0), err(S(S(1) - a.lambda * pl.x0), fl.y1)});
  }
  const double t = is_exact_v<S> ? 0.0 : tol;
  r.ok = r.square_error <= t && r.lambda_error <= t && r.facial_error <= t;
  return r;
}

// ---------------------------------------------------------------------------
// From a tiling back to a map
// ---------------------------------------------------------------------------

struct TileInput {
  double x, y, side;  // top-left corner and side
};

namespace detail {

template <class S>
bool close(const S& a, const S& b, const S& tol) {
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return a == b;
  } else {
    return std::fabs(a - b) <= tol;
  }
}

}  // namespace detail

// Vertices are the maximal horizontal segments of the tiling, one edge per
// non-degenerate square from the segment along its top to the one along its
// bottom, plus a root edge from the top side to the bottom side drawn to
// the east of the rectangle.  Square k of the input becomes edge k (darts
// 2k downwards and 2k+1); dropped squares are reported in `kept`.
template <class S>
RootedMap map_from_squaring(const std::vector<Square<S>>& input, std::vector<int>* kept = nullptr) {
  std::vector<Square<S>> sq;
  std::vector<int> keep;
  for (std::size_t i = 0; i < input.size(); ++i)
    if (!input[i].degenerate && !is_zero_current(input[i].side)) {
      sq.push_back(input[i]);
      keep.push_back(static_cast<int>(i));
    }
  if (sq.empty()) throw Error(Errc::InvalidTiling, "no squares");
  S ymin = sq[0].bottom(), ymax = sq[0].top(), xmin = sq[0].left(), xmax = sq[0].right();
  for (auto& q : sq) {
    ymin = std::min(ymin, q.bottom());
    ymax = std::max(ymax, q.top());
    xmin = std::min(xmin, q.left());
    xmax = std::max(xmax, q.right());
  }
  const S H = ymax - ymin;
  Squaring<S> norm;
  norm.lambda = (xmax - xmin) / H;
  for (auto q : sq) {
    q.x = (q.x - xmin) / H;
    q.y = (q.y - ymin) / H;
    q.side = q.side / H;
    norm.squares.push_back(q);
  }
  TilingReport rep = validate_tiling(norm);
  if (!rep.ok)
    throw Error(Errc::InvalidTiling, "overlap " + std::to_string(rep.overlap_area) + ", deficit " +
                                         std::to_string(rep.coverage_deficit));
  const S tol = is_exact_v<S> ? S(0) : scalar_from_double<S>(1e-9);
  const int N = static_cast<int>(norm.squares.size());

  // Horizontal levels.
  std::vector<S> levels;
  for (auto& q : norm.squares) {
    levels.push_back(q.top());
    levels.push_back(q.bottom());
  }
  std::sort(levels.begin(), levels.end());
  std::vector<S> uniq;
  for (auto& y : levels)
    if (uniq.empty() || !detail::close(y, uniq.back(), tol)) uniq.push_back(y);
  auto level_of = [&](const S& y) {
    auto it = std::lower_bound(uniq.begin(), uniq.end(), y - tol);
    return static_cast<int>(it - uniq.begin());
  };

  // Per level, merge the x-intervals of squares touching it from either side.
  struct Touch {
    S l, r;
    int square;
    bool above;  // the square lies above the level
  };
  std::vector<std::vector<Touch>> at(uniq.size());
  for (int k = 0; k < N; ++k) {
    const auto& q = norm.squares[k];
    at[level_of(q.top())].push_back({q.left(), q.right(), k, false});
    at[level_of(q.bottom())].push_back({q.left(), q.right(), k, true});
  }
  std::vector<int> upper(N), lower(N);
  std::vector<std::vector<Dart>> rot;
  int top_vertex = -1, bottom_vertex = -1;
  for (std::size_t L = 0; L < uniq.size(); ++L) {
    auto& ts = at[L];
    std::sort(ts.begin(), ts.end(), [](const Touch& a, const Touch& b) { return a.l < b.l; });
    std::size_t i = 0;
    while (i < ts.size()) {
      std::size_t j = i;
      S r = ts[i].r;
      while (j + 1 < ts.size() && ts[j + 1].l <= r + tol) {
        ++j;
        r = std::max(r, ts[j].r);
      }
      const int v = static_cast<int>(rot.size());
      std::vector<Touch> above, below;
      for (std::size_t k = i; k <= j; ++k) {
        if (ts[k].above) {
          above.push_back(ts[k]);
          lower[ts[k].square] = v;  // the square hangs on v from above: v is its lower end
        } else {
          below.push_back(ts[k]);
          upper[ts[k].square] = v;
        }
      }
      // ccw from east: squares above right to left, then below left to right
      std::vector<Dart> r_darts;
      for (auto itv = above.rbegin(); itv != above.rend(); ++itv) r_darts.push_back(2 * itv->square + 1);
      for (auto& b : below) r_darts.push_back(2 * b.square);
      if (above.empty()) {
        if (top_vertex >= 0) throw Error(Errc::InvalidTiling, "more than one top segment");
        top_vertex = v;
        r_darts.insert(r_darts.begin(), 2 * N);
      }
      if (below.empty()) {
        if (bottom_vertex >= 0) throw Error(Errc::InvalidTiling, "more than one bottom segment");
        bottom_vertex = v;
        r_darts.insert(r_darts.begin(), 2 * N + 1);
      }
      rot.push_back(std::move(r_darts));
      i = j + 1;
    }
  }
  if (top_vertex < 0 || bottom_vertex < 0) throw Error(Errc::InvalidTiling, "missing top or bottom side");
  (void)upper;
  (void)lower;
  if (kept) *kept = keep;
  CombinatorialMap m = build_map(rot);
  return RootedMap{std::move(m), 2 * N, 2 * N + 1};
}

template <class S>
RootedMap map_from_squaring(const Squaring<S>& s, std::vector<int>* kept = nullptr) {
  return map_from_squaring(s.squares, kept);
}

}  // namespace sqmap
