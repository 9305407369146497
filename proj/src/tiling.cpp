#include "graphseg/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphseg/agglomerate.hpp"
#include "graphseg/error.hpp"

namespace graphseg {

namespace {

struct Factorization {
  int cols;
  int rows;
};

// Divisor pairs of n: cols >= rows first, most square first; then the
// transposed (taller than wide) layouts.
std::vector<Factorization> factorizations(int n) {
  std::vector<Factorization> wide;
  std::vector<Factorization> tall;
  for (int rows = 1; rows * rows <= n; ++rows) {
    if (n % rows != 0) continue;
    const int cols = n / rows;
    wide.push_back({cols, rows});
    if (cols != rows) tall.push_back({rows, cols});
  }
  std::reverse(wide.begin(), wide.end());
  std::reverse(tall.begin(), tall.end());
  wide.insert(wide.end(), tall.begin(), tall.end());
  return wide;
}

std::vector<int> split(int length, int parts) {
  std::vector<int> starts(static_cast<std::size_t>(parts) + 1);
  const int base = length / parts;
  const int extra = length % parts;
  for (int i = 0; i < parts; ++i) starts[static_cast<std::size_t>(i) + 1] = starts[static_cast<std::size_t>(i)] + base + (i < extra ? 1 : 0);
  return starts;
}

}  // namespace

std::size_t TileGrid::tile_of(int x, int y) const noexcept {
  int col = cols - 1;
  while (col > 0 && tiles[static_cast<std::size_t>(col)].x0 > x) --col;
  int row = rows - 1;
  while (row > 0 && tiles[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols)].y0 > y) --row;
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(col);
}

TileGrid make_grid(int width, int height, int n) {
  if (n < 1) throw ParameterError("tile count must be >= 1");
  if (width < 1 || height < 1) throw ParameterError("image dimensions must be >= 1");
  if (n == 1) return {width, height, 1, 1, {{0, 0, width, height}}};

  for (const auto [cols, rows] : factorizations(n)) {
    if (width / cols < 2 || height / rows < 2) continue;
    TileGrid grid{width, height, cols, rows, {}};
    const auto xs = split(width, cols);
    const auto ys = split(height, rows);
    grid.tiles.reserve(static_cast<std::size_t>(n));
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const auto ci = static_cast<std::size_t>(c);
        const auto ri = static_cast<std::size_t>(r);
        grid.tiles.push_back({xs[ci], ys[ri], xs[ci + 1] - xs[ci], ys[ri + 1] - ys[ri]});
      }
    }
    return grid;
  }
  throw GridError("n too large: " + std::to_string(n) + " tiles do not fit a " + std::to_string(width) + "x" +
                  std::to_string(height) + " image with every tile at least 2x2");
}

EdgeList tile_edges(const ImageF& img, const TileGrid& grid, std::size_t t) {
  if (t >= grid.size()) throw ParameterError("tile index out of range");
  const TileRect& r = grid.tiles[t];
  EdgeList edges;
  edges.reserve(expected_edge_count(r.width, r.height));
  append_region_edges(img, r.x0, r.x1(), r.y0, r.y1(), r.y1(), edges);
  sort_edges(edges);
  return edges;
}

BoundaryEdges boundary_edges(const ImageF& img, const TileGrid& grid) {
  BoundaryEdges seams;
  const int w = img.width();
  const int h = img.height();
  for (int c = 1; c < grid.cols; ++c) {
    const int xs = grid.tiles[static_cast<std::size_t>(c)].x0;
    for (int y = 0; y < h; ++y) {
      const VertexId a = vertex_id(xs - 1, y, w);
      seams.horizontal.push_back({a, a + 1, edge_weight(img, a, a + 1)});
    }
  }
  for (int r = 1; r < grid.rows; ++r) {
    const int ys = grid.tiles[static_cast<std::size_t>(r) * static_cast<std::size_t>(grid.cols)].y0;
    for (int x = 0; x < w; ++x) {
      const VertexId a = vertex_id(x, ys - 1, w);
      const VertexId b = vertex_id(x, ys, w);
      seams.vertical.push_back({a, b, edge_weight(img, a, b)});
    }
  }
  sort_edges(seams.horizontal);
  sort_edges(seams.vertical);
  return seams;
}

EdgeList seam_diagonal_edges(const ImageF& img, const TileGrid& grid) {
  const int w = img.width();
  const int h = img.height();
  EdgeList edges;
  auto emit = [&](int xa, int ya, int xb, int yb) {
    if (xa < 0 || xb < 0 || xa >= w || xb >= w || yb >= h) return;
    const VertexId a = vertex_id(xa, ya, w);
    const VertexId b = vertex_id(xb, yb, w);
    edges.push_back({a, b, edge_weight(img, a, b)});
  };
  for (int c = 1; c < grid.cols; ++c) {
    const int xs = grid.tiles[static_cast<std::size_t>(c)].x0;
    for (int y = 0; y + 1 < h; ++y) {
      emit(xs - 1, y, xs, y + 1);
      emit(xs, y, xs - 1, y + 1);
    }
  }
  for (int r = 1; r < grid.rows; ++r) {
    const int ys = grid.tiles[static_cast<std::size_t>(r) * static_cast<std::size_t>(grid.cols)].y0;
    for (int x = 0; x < w; ++x) {
      emit(x, ys - 1, x + 1, ys);
      emit(x, ys - 1, x - 1, ys);
    }
  }
  sort_edges(edges);
  // Pairs crossing a seam corner are emitted by both loops.
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::size_t stitch(ComponentForest& forest, const BoundaryEdges& seams, double k) {
  return threshold_pass(forest, seams.horizontal, k) + threshold_pass(forest, seams.vertical, k);
}

}  // namespace graphseg
