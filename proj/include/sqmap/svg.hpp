#pragma once

// SVG rendering of squarings.  Output depends only on the input so runs can
// be compared byte for byte.
#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "squaring.hpp"

namespace sqmap {

struct RenderOptions {
  double height_px = 600;
  double margin_px = 10;
  bool primal_lines = true;
  bool facial_lines = false;
  bool label_edges = false;
  bool show_degenerate = false;  // zero-current squares as dots
  bool fill_by_size = false;     // shade squares by side-length quantile
  std::optional<std::pair<double, double>> marker;  // e.g. an accumulation point, in squaring coordinates
  std::vector<int> highlight;                      // indices into squares
};

namespace detail {

inline void append(std::string& out, const char* fmt, ...) __attribute__((format(printf, 2, 3)));

inline void append(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  const int n = std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  if (n < 0) throw Error(Errc::Io, "formatting failed");
  if (static_cast<std::size_t>(n) < sizeof buf) {
    out.append(buf, n);
    return;
  }
  std::string big(n + 1, '\0');
  va_start(ap, fmt);
  std::vsnprintf(big.data(), big.size(), fmt, ap);
  va_end(ap);
  out.append(big.data(), n);
}

}  // namespace detail

template <class S>
std::string render_svg(const Squaring<S>& sq, const RenderOptions& opt = {}) {
  const double lam = to_double(sq.lambda);
  const double k = opt.height_px;
  const double m = opt.margin_px;
  auto X = [&](double x) { return m + k * x; };
  auto Y = [&](double y) { return m + k * (1.0 - y); };
  std::string out;
  detail::append(out,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.3f\" height=\"%.3f\" "
                 "viewBox=\"0 0 %.3f %.3f\">\n",
                 2 * m + k * lam, 2 * m + k, 2 * m + k * lam, 2 * m + k);
  detail::append(out, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"none\" stroke=\"black\"/>\n",
                 X(0), Y(1), k * lam, k);
  std::vector<double> sides;
  for (auto& q : sq.squares)
    if (!q.degenerate) sides.push_back(to_double(q.side));
  std::sort(sides.begin(), sides.end());
  std::vector<char> hl(sq.squares.size(), 0);
  for (int i : opt.highlight)
    if (i >= 0 && static_cast<std::size_t>(i) < hl.size()) hl[i] = 1;
  out += "<g stroke=\"black\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < sq.squares.size(); ++i) {
    const auto& q = sq.squares[i];
    const double x = to_double(q.x), y = to_double(q.y), a = to_double(q.side);
    if (q.degenerate) {
      if (!opt.show_degenerate) continue;
      detail::append(out, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.5\" fill=\"red\"/>\n", X(x), Y(y));
      continue;
    }
    char fill[16] = "#dfe7f2";
    if (hl[i]) {
      std::snprintf(fill, sizeof fill, "#f4a261");
    } else if (opt.fill_by_size && !sides.empty()) {
      // rank among the non-degenerate sides; small squares are darker
      const double r = static_cast<double>(std::lower_bound(sides.begin(), sides.end(), a) - sides.begin()) /
                       static_cast<double>(sides.size());
      const int c = 90 + static_cast<int>(150 * r);
      std::snprintf(fill, sizeof fill, "#%02x%02x%02x", c, c, 255);
    }
    detail::append(out, "<rect x=\"%.6f\" y=\"%.6f\" width=\"%.6f\" height=\"%.6f\" fill=\"%s\"/>\n", X(x), Y(y), k * a,
                   k * a, fill);
    if (opt.label_edges)
      detail::append(out, "<text x=\"%.3f\" y=\"%.3f\" font-size=\"%.3f\" text-anchor=\"middle\">%d</text>\n",
                     X(x + a / 2), Y(y - a / 2), k * a / 3, q.edge);
  }
  out += "</g>\n";
  if (opt.primal_lines) {
    out += "<g stroke=\"#1d3557\" stroke-width=\"1.5\">\n";
    for (auto& l : sq.primal_lines)
      detail::append(out, "<line x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\"/>\n", X(to_double(l.x0)),
                     Y(to_double(l.y)), X(to_double(l.x1)), Y(to_double(l.y)));
    out += "</g>\n";
  }
  if (opt.facial_lines) {
    out += "<g stroke=\"#2a9d8f\" stroke-width=\"1\">\n";
    for (auto& l : sq.facial_lines)
      detail::append(out, "<line x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\"/>\n", X(to_double(l.x)),
                     Y(to_double(l.y0)), X(to_double(l.x)), Y(to_double(l.y1)));
    out += "</g>\n";
  }
  if (opt.marker)
    detail::append(out, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"none\" stroke=\"#e63946\" stroke-width=\"2\"/>\n",
                   X(opt.marker->first), Y(opt.marker->second));
  out += "</svg>\n";
  return out;
}

}  // namespace sqmap
