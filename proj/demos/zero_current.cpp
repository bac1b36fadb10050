// K4 rooted at st: by symmetry a and b sit at potential 1/2, so the edge ab
// carries no current and its square has side 0.  Deleting ab gives the same
// tiling, and reading a map back from the tiling contracts ab instead.

#include <cstdio>

#include "sqmap/squaring.hpp"

using namespace sqmap;

int main() {
  // vertices s, t, a, b; the root is s -> t
  std::vector<std::vector<Dart>> rot{{0, 4, 2}, {1, 7, 9}, {10, 6, 3}, {5, 8, 11}};
  RootedMap k4{build_map(rot), 0, 0};
  auto sq = square_map<Rational>(k4);
  std::printf("width %s\n", sq.lambda.get_str().c_str());
  for (auto& q : sq.squares)
    std::printf("  edge %d: x=%s y=%s side=%s%s\n", q.edge, q.x.get_str().c_str(), q.y.get_str().c_str(),
                q.side.get_str().c_str(), q.degenerate ? "  (zero current)" : "");
  RootedMap back = map_from_squaring(sq);
  std::printf("read back: %d vertices, %d edges\n", back.map.vertex_count(), back.map.edge_count());
  return 0;
}
