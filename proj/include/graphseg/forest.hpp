#pragma once

#include <cstdint>
#include <vector>

#include "graphseg/graph.hpp"

namespace graphseg {

/// Disjoint-set forest carrying the per-vertex segmentation attributes:
/// parent (label), rank, size and threshold. Size and threshold are only
/// meaningful at roots; always read them through find().
///
/// Concurrent mutation is allowed only on disjoint vertex ranges whose trees
/// never reference each other (tile interiors before stitching).
class ComponentForest {
 public:
  ComponentForest(std::size_t vertex_count, double k);

  std::size_t vertex_count() const noexcept { return parent_.size(); }
  double k() const noexcept { return k_; }

  /// Root of v. Compresses the path so every visited vertex points at the root.
  VertexId find(VertexId v);

  bool is_root(VertexId v) const noexcept { return parent_[v] == v; }

  /// Union by rank of two distinct roots. The higher rank wins; on a tie `ra`
  /// wins and gains one rank. The survivor gets the combined size and
  /// `new_threshold`. Returns the survivor.
  VertexId join(VertexId ra, VertexId rb, double new_threshold);

  std::size_t component_count() const noexcept;

  VertexId parent(VertexId v) const noexcept { return parent_[v]; }
  std::uint8_t rank(VertexId v) const noexcept { return rank_[v]; }
  std::uint32_t size(VertexId root) const noexcept { return size_[root]; }
  double threshold(VertexId root) const noexcept { return threshold_[root]; }

  friend bool operator==(const ComponentForest&, const ComponentForest&) = default;

 private:
  std::vector<VertexId> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<std::uint32_t> size_;
  std::vector<double> threshold_;
  double k_;
};

}  // namespace graphseg
