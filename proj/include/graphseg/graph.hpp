#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graphseg/image.hpp"

namespace graphseg {

/// Pixel (x, y) has id y * width + x.
using VertexId = std::uint32_t;

struct Edge {
  VertexId a;
  VertexId b;
  float w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Total order used everywhere edges are sorted: weight, then (a, b).
struct EdgeOrder {
  bool operator()(const Edge& l, const Edge& r) const noexcept {
    if (l.w != r.w) return l.w < r.w;
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  }
};

using EdgeList = std::vector<Edge>;

inline VertexId vertex_id(int x, int y, int width) noexcept {
  return static_cast<VertexId>(y) * static_cast<VertexId>(width) + static_cast<VertexId>(x);
}

/// In-bounds subset of right, down, down-right, down-left (in that order).
/// Over the whole image every unordered 8-adjacent pair is produced exactly once.
std::vector<VertexId> neighbors_of(int x, int y, int width, int height);

/// Euclidean RGB distance between two pixels.
float edge_weight(const ImageF& img, VertexId a, VertexId b) noexcept;

/// 4WH - 3W - 3H + 2 for W, H >= 1.
std::size_t expected_edge_count(int width, int height) noexcept;

/// Appends the edges of rows [y_begin, y_end) whose endpoints both fall in the
/// column range [x_begin, x_end) and row range [y_begin, y_limit).
void append_region_edges(const ImageF& img, int x_begin, int x_end, int y_begin, int y_end, int y_limit,
                         EdgeList& out);

/// Full-image edge list in row-major emission order. Rows may be computed
/// concurrently; the emitted order does not depend on `workers`.
EdgeList build_edges(const ImageF& img, int workers = 1);

/// Sorts by EdgeOrder. The result is unique because (a, b) never repeats.
void sort_edges(EdgeList& edges);
bool is_sorted_by_weight(std::span<const Edge> edges) noexcept;

}  // namespace graphseg
