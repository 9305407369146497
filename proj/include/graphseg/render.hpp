#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "graphseg/agglomerate.hpp"
#include "graphseg/image.hpp"

namespace graphseg {

using Rgb = std::array<std::uint8_t, 3>;

/// Seeded random colors, one per component. Colors are assigned in order of
/// each component's first pixel in raster order, so equal partitions render
/// identically regardless of which vertex ended up as root.
class Palette {
 public:
  explicit Palette(std::uint64_t seed = 42) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Distinct colors for `count` components, redrawing on collision.
  std::vector<Rgb> colors(std::size_t count) const;

 private:
  std::uint64_t seed_;
};

Image8 render_labels(std::span<const VertexId> labels, int width, int height, const Palette& palette);
inline Image8 render_labels(const SegmentationResult& result, const Palette& palette) {
  return render_labels(result.labels, result.width, result.height, palette);
}

}  // namespace graphseg
