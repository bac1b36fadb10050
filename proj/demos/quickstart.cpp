// Draw one random planar map, square it, check the tiling and write an SVG.
//
//   quickstart [n] [seed] [out.svg]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "sqmap/io.hpp"
#include "sqmap/pipeline.hpp"
#include "sqmap/squaring.hpp"
#include "sqmap/svg.hpp"

using namespace sqmap;

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 200;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  const std::string out = argc > 3 ? argv[3] : "quickstart.svg";

  PipelineSample s = pipeline_sample(n, seed);
  const auto& g = s.map.map;
  std::printf("map: %d vertices, %d edges, %d faces, 3-connected: %s\n", g.vertex_count(), g.edge_count(),
              g.face_count(), s.three_connected ? "yes" : "no");

  Squaring<double> sq = square_map<double>(s.map);
  TilingReport rep = validate_tiling(sq);
  std::printf("squaring: width %.6f, %zu squares (%d of side zero), tiling %s\n", sq.lambda, sq.squares.size(),
              sq.degenerate_count(), rep.ok ? "valid" : "INVALID");

  RenderOptions ro;
  ro.fill_by_size = true;
  write_file_atomic(out, render_svg(sq, ro));
  std::printf("wrote %s\n", out.c_str());
  return rep.ok ? 0 : 1;
}
