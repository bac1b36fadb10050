#pragma once

// Hausdorff distance between finite unions of closed segments, e.g. the
// square boundaries of two squarings.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "core.hpp"
#include "squaring.hpp"

namespace sqmap {

struct Segment {
  double x0, y0, x1, y1;
  double length() const { return std::hypot(x1 - x0, y1 - y0); }
};

inline double point_segment_distance(double px, double py, const Segment& s) {
  const double dx = s.x1 - s.x0, dy = s.y1 - s.y0;
  const double len2 = dx * dx + dy * dy;
  double t = 0;
  if (len2 > 0) t = std::clamp(((px - s.x0) * dx + (py - s.y0) * dy) / len2, 0.0, 1.0);
  return std::hypot(px - (s.x0 + t * dx), py - (s.y0 + t * dy));
}

// Borders of the non-degenerate squares.  Shared sides appear twice, which
// does not change the union.
template <class S>
std::vector<Segment> squaring_segments(const Squaring<S>& sq) {
  std::vector<Segment> out;
  for (auto& q : sq.squares) {
    if (q.degenerate) continue;
    const double l = to_double(q.left()), r = to_double(q.right());
    const double t = to_double(q.top()), b = to_double(q.bottom());
    out.push_back({l, t, r, t});
    out.push_back({l, b, r, b});
    out.push_back({l, b, l, t});
    out.push_back({r, b, r, t});
  }
  return out;
}

// Uniform grid over the segments' bounding box answering nearest-segment
// queries.
class SegmentIndex {
 public:
  explicit SegmentIndex(std::vector<Segment> segs) : segs_(std::move(segs)), stamp_(segs_.size(), 0) {
    if (segs_.empty()) throw Error(Errc::InvalidArgument, "empty segment set");
    x0_ = y0_ = std::numeric_limits<double>::infinity();
    double x1 = -x0_, y1 = -y0_;
    for (auto& s : segs_) {
      x0_ = std::min({x0_, s.x0, s.x1});
      y0_ = std::min({y0_, s.y0, s.y1});
      x1 = std::max({x1, s.x0, s.x1});
      y1 = std::max({y1, s.y0, s.y1});
    }
    const double w = std::max(x1 - x0_, 1e-12), h = std::max(y1 - y0_, 1e-12);
    const double cells = std::max(1.0, static_cast<double>(segs_.size()));
    cell_ = std::sqrt(w * h / cells);
    cell_ = std::max(cell_, std::max(w, h) / 4096);
    nx_ = std::max(1, static_cast<int>(std::ceil(w / cell_)));
    ny_ = std::max(1, static_cast<int>(std::ceil(h / cell_)));
    grid_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const auto& s = segs_[i];
      const int cx0 = cx(std::min(s.x0, s.x1)), cx1 = cx(std::max(s.x0, s.x1));
      const int cy0 = cy(std::min(s.y0, s.y1)), cy1 = cy(std::max(s.y0, s.y1));
      for (int a = cx0; a <= cx1; ++a)
        for (int b = cy0; b <= cy1; ++b) grid_[static_cast<std::size_t>(b) * nx_ + a].push_back(static_cast<int>(i));
    }
  }

  const std::vector<Segment>& segments() const { return segs_; }

  // Distance to the nearest segment and its index.
  std::pair<double, int> nearest(double px, double py) const {
    ++epoch_;
    const int ci = cx(px), cj = cy(py);
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int r = 0;; ++r) {
      const int a0 = ci - r, a1 = ci + r, b0 = cj - r, b1 = cj + r;
      for (int a = a0; a <= a1; ++a)
        for (int b = b0; b <= b1; ++b) {
          if (a < 0 || b < 0 || a >= nx_ || b >= ny_) continue;
          if (a != a0 && a != a1 && b != b0 && b != b1) continue;
          for (int i : grid_[static_cast<std::size_t>(b) * nx_ + a]) {
            if (stamp_[i] == epoch_) continue;
            stamp_[i] = epoch_;
            const double d = point_segment_distance(px, py, segs_[i]);
            if (d < best) {
              best = d;
              arg = i;
            }
          }
        }
      if (a0 <= 0 && b0 <= 0 && a1 >= nx_ - 1 && b1 >= ny_ - 1) break;
      // everything not yet visited lies outside the searched block
      const double bx0 = x0_ + a0 * cell_, bx1 = x0_ + (a1 + 1) * cell_;
      const double by0 = y0_ + b0 * cell_, by1 = y0_ + (b1 + 1) * cell_;
      // unvisited cells lie beyond one of the block sides that does not
      // reach the grid border
      double lb = std::numeric_limits<double>::infinity();
      if (a0 > 0) lb = std::min(lb, std::max(0.0, px - bx0));
      if (a1 < nx_ - 1) lb = std::min(lb, std::max(0.0, bx1 - px));
      if (b0 > 0) lb = std::min(lb, std::max(0.0, py - by0));
      if (b1 < ny_ - 1) lb = std::min(lb, std::max(0.0, by1 - py));
      if (best <= lb) break;
    }
    return {best, arg};
  }

 private:
  int cx(double x) const { return std::clamp(static_cast<int>(std::floor((x - x0_) / cell_)), 0, nx_ - 1); }
  int cy(double y) const { return std::clamp(static_cast<int>(std::floor((y - y0_) / cell_)), 0, ny_ - 1); }

  std::vector<Segment> segs_;
  std::vector<std::vector<int>> grid_;
  double x0_ = 0, y0_ = 0, cell_ = 1;
  int nx_ = 1, ny_ = 1;
  mutable std::vector<unsigned> stamp_;
  mutable unsigned epoch_ = 0;
};

// sup over points p of A of dist(p, B), to within `tol`.  Branch and bound
// along each segment of A.  On a piece [p, q] the function is bounded by
// the 1-Lipschitz bound (f(p) + f(q) + |pq|)/2 and, since the distance to a
// fixed segment is convex, by max(d(p, s), d(q, s)) for the nearest
// segments s of both ends.
inline double directed_hausdorff(const std::vector<Segment>& A, const SegmentIndex& B, double tol = 1e-12) {
  double best = 0;
  struct Piece {
    double t0, t1, f0, f1;
    int s0, s1;
  };
  std::vector<Piece> stack;
  const auto& bs = B.segments();
  for (const auto& a : A) {
    const double dx = a.x1 - a.x0, dy = a.y1 - a.y0, len = a.length();
    auto at = [&](double t) { return B.nearest(a.x0 + t * dx, a.y0 + t * dy); };
    auto [f0, s0] = at(0.0);
    auto [f1, s1] = at(1.0);
    best = std::max({best, f0, f1});
    stack.clear();
    stack.push_back({0.0, 1.0, f0, f1, s0, s1});
    while (!stack.empty()) {
      Piece p = stack.back();
      stack.pop_back();
      const double L = (p.t1 - p.t0) * len;
      double ub = 0.5 * (p.f0 + p.f1 + L);
      for (int s : {p.s0, p.s1}) {
        const double u = std::max(point_segment_distance(a.x0 + p.t0 * dx, a.y0 + p.t0 * dy, bs[s]),
                                  point_segment_distance(a.x0 + p.t1 * dx, a.y0 + p.t1 * dy, bs[s]));
        ub = std::min(ub, u);
      }
      if (ub <= best + tol) continue;
      const double tm = 0.5 * (p.t0 + p.t1);
      auto [fm, sm] = at(tm);
      best = std::max(best, fm);
      stack.push_back({p.t0, tm, p.f0, fm, p.s0, sm});
      stack.push_back({tm, p.t1, fm, p.f1, sm, p.s1});
    }
  }
  return best;
}

inline double hausdorff_distance(const std::vector<Segment>& a, const std::vector<Segment>& b, double tol = 1e-12) {
  SegmentIndex ia(a), ib(b);
  return std::max(directed_hausdorff(a, ib, tol), directed_hausdorff(b, ia, tol));
}

template <class S, class T>
double hausdorff_distance(const Squaring<S>& a, const Squaring<T>& b, double tol = 1e-12) {
  return hausdorff_distance(squaring_segments(a), squaring_segments(b), tol);
}

}  // namespace sqmap
