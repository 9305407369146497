#include "graphseg/graph.hpp"

#include <algorithm>
#include <bit>
#include <utility>
#include <cmath>

#include "graphseg/parallel.hpp"

namespace graphseg {

std::vector<VertexId> neighbors_of(int x, int y, int width, int height) {
  std::vector<VertexId> out;
  out.reserve(4);
  if (x + 1 < width) out.push_back(vertex_id(x + 1, y, width));
  if (y + 1 < height) {
    out.push_back(vertex_id(x, y + 1, width));
    if (x + 1 < width) out.push_back(vertex_id(x + 1, y + 1, width));
    if (x > 0) out.push_back(vertex_id(x - 1, y + 1, width));
  }
  return out;
}

float edge_weight(const ImageF& img, VertexId a, VertexId b) noexcept {
  const auto samples = img.samples();
  const float* pa = samples.data() + static_cast<std::size_t>(a) * ImageF::kChannels;
  const float* pb = samples.data() + static_cast<std::size_t>(b) * ImageF::kChannels;
  const float dr = pa[0] - pb[0];
  const float dg = pa[1] - pb[1];
  const float db = pa[2] - pb[2];
  return std::sqrt(dr * dr + dg * dg + db * db);
}

std::size_t expected_edge_count(int width, int height) noexcept {
  const auto w = static_cast<std::size_t>(width);
  const auto h = static_cast<std::size_t>(height);
  return 4 * w * h + 2 - 3 * w - 3 * h;
}

void append_region_edges(const ImageF& img, int x_begin, int x_end, int y_begin, int y_end, int y_limit,
                         EdgeList& out) {
  const int width = img.width();
  auto emit = [&](VertexId a, VertexId b) { out.push_back({a, b, edge_weight(img, a, b)}); };
  for (int y = y_begin; y < y_end; ++y) {
    const bool has_down = y + 1 < y_limit;
    for (int x = x_begin; x < x_end; ++x) {
      const VertexId a = vertex_id(x, y, width);
      const bool has_right = x + 1 < x_end;
      // Ascending b, so the list comes out ordered by (a, b).
      if (has_right) emit(a, a + 1);
      if (has_down) {
        const VertexId below = a + static_cast<VertexId>(width);
        if (x > x_begin) emit(a, below - 1);
        emit(a, below);
        if (has_right) emit(a, below + 1);
      }
    }
  }
}

EdgeList build_edges(const ImageF& img, int workers) {
  const int h = img.height();
  const std::size_t bands = static_cast<std::size_t>(std::min(h, std::max(1, workers)));
  if (bands == 1) {
    EdgeList edges;
    edges.reserve(expected_edge_count(img.width(), h));
    append_region_edges(img, 0, img.width(), 0, h, h, edges);
    return edges;
  }
  std::vector<EdgeList> parts(bands);
  parallel_chunks(bands, workers, [&](std::size_t band) {
    const auto rows = slice_of(static_cast<std::size_t>(h), bands, band);
    append_region_edges(img, 0, img.width(), static_cast<int>(rows.begin), static_cast<int>(rows.end), h, parts[band]);
  });
  EdgeList edges;
  edges.reserve(expected_edge_count(img.width(), h));
  for (const auto& part : parts) edges.insert(edges.end(), part.begin(), part.end());
  return edges;
}

namespace {

bool ordered_by_endpoints(std::span<const Edge> edges) noexcept {
  return std::is_sorted(edges.begin(), edges.end(),
                        [](const Edge& l, const Edge& r) { return l.a != r.a ? l.a < r.a : l.b < r.b; });
}

// Stable LSD radix sort on the weight. Non-negative IEEE floats order like
// their bit patterns.
void radix_sort_by_weight(EdgeList& edges) {
  constexpr int kDigitBits = 11;
  constexpr std::uint32_t kBuckets = 1u << kDigitBits;
  EdgeList scratch(edges.size());
  std::vector<std::size_t> offsets(kBuckets);
  for (int shift = 0; shift < 32; shift += kDigitBits) {
    auto digit = [shift](const Edge& e) { return (std::bit_cast<std::uint32_t>(e.w) >> shift) & (kBuckets - 1); };
    std::fill(offsets.begin(), offsets.end(), 0);
    for (const Edge& e : edges) ++offsets[digit(e)];
    if (offsets[digit(edges.front())] == edges.size()) continue;
    std::size_t sum = 0;
    for (auto& o : offsets) sum += std::exchange(o, sum);
    for (const Edge& e : edges) scratch[offsets[digit(e)]++] = e;
    edges.swap(scratch);
  }
}

}  // namespace

void sort_edges(EdgeList& edges) {
  if (edges.size() < 2) return;
  const bool radix_ok = ordered_by_endpoints(edges) &&
                        std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.w >= 0.0f && !std::signbit(e.w); });
  if (radix_ok) {
    radix_sort_by_weight(edges);
  } else {
    std::sort(edges.begin(), edges.end(), EdgeOrder{});
  }
}

bool is_sorted_by_weight(std::span<const Edge> edges) noexcept {
  return std::is_sorted(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) { return l.w < r.w; });
}

}  // namespace graphseg
