#pragma once

#include <cstddef>
#include <vector>

#include "graphseg/forest.hpp"
#include "graphseg/graph.hpp"
#include "graphseg/image.hpp"

namespace graphseg {

struct TileRect {
  int x0;
  int y0;
  int width;
  int height;

  int x1() const noexcept { return x0 + width; }
  int y1() const noexcept { return y0 + height; }
  friend bool operator==(const TileRect&, const TileRect&) = default;
};

/// cols x rows tiles, row-major tile order. Column widths (and row heights)
/// differ by at most one pixel; wider tiles come first.
struct TileGrid {
  int image_width = 0;
  int image_height = 0;
  int cols = 1;
  int rows = 1;
  std::vector<TileRect> tiles;

  std::size_t size() const noexcept { return tiles.size(); }
  /// Tile index holding pixel (x, y).
  std::size_t tile_of(int x, int y) const noexcept;
};

/// Splits the image into n tiles. Prefers cols >= rows with the most square
/// factorization; falls back to other factorizations of n, and throws
/// GridError when none keeps every tile at least 2x2.
TileGrid make_grid(int width, int height, int n);

/// Sorted edges with both endpoints inside tile t.
EdgeList tile_edges(const ImageF& img, const TileGrid& grid, std::size_t t);

/// Direct neighbors across seams: horizontal holds (x,y)-(x+1,y) pairs across
/// vertical seams, vertical holds (x,y)-(x,y+1) pairs across horizontal seams.
/// Each list is sorted.
struct BoundaryEdges {
  EdgeList horizontal;
  EdgeList vertical;
};
BoundaryEdges boundary_edges(const ImageF& img, const TileGrid& grid);

/// Cross-seam pairs that stitching skips: the diagonal neighbors. Sorted.
/// Together with the tile and boundary edges this is exactly build_edges().
EdgeList seam_diagonal_edges(const ImageF& img, const TileGrid& grid);

/// Threshold-merges across the horizontal seam edges, then the vertical ones,
/// using the thresholds the tile passes left in the forest.
std::size_t stitch(ComponentForest& forest, const BoundaryEdges& seams, double k);

}  // namespace graphseg
