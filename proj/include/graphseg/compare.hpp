#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "graphseg/image.hpp"

namespace graphseg {

struct PartitionComparison {
  bool identical = false;
  std::pair<std::size_t, std::size_t> component_counts{0, 0};
  double rand_index = 0.0;
};

/// Dense labels 0..m-1 in order of first appearance; pixels share a label iff
/// they share a color.
std::vector<std::uint32_t> partition_from_colors(const Image8& img);

/// Compares two labelings of the same element set. Label values are arbitrary
/// integers; only equality matters. The Rand index is exact, from pair counts
/// over the contingency table. A single element compares with index 1.
PartitionComparison compare_partitions(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Throws ParameterError on dimension mismatch.
PartitionComparison compare_images(const Image8& a, const Image8& b);

}  // namespace graphseg
