#include "graphseg/agglomerate.hpp"

#include <cmath>

#include "graphseg/error.hpp"

namespace graphseg {

void SegParams::validate() const {
  if (!std::isfinite(k) || k < 0.0) throw ParameterError("k must be finite and >= 0");
  if (min_size < 1) throw ParameterError("min_size must be >= 1");
  if (!std::isfinite(sigma) || sigma < 0.0) throw ParameterError("sigma must be finite and >= 0");
}

std::vector<std::pair<std::string_view, double>> StageTimings::stages() const {
  return {{"smooth", smooth}, {"build", build},     {"sort", sort},
          {"threshold", threshold}, {"minsize", minsize}, {"render", render}};
}

std::size_t threshold_pass(ComponentForest& forest, std::span<const Edge> edges, double k,
                           const MergeObserver& observer) {
  if (!is_sorted_by_weight(edges)) throw ContractViolation("threshold_pass needs edges sorted by weight");
  std::size_t merges = 0;
  for (const Edge& e : edges) {
    const VertexId ra = forest.find(e.a);
    const VertexId rb = forest.find(e.b);
    if (ra == rb) continue;
    // The current edge is the lightest between the two components, so it is
    // both Dif and the new Int(C) of the union.
    const double w = e.w;
    if (w <= forest.threshold(ra) && w <= forest.threshold(rb)) {
      const double merged = static_cast<double>(forest.size(ra)) + forest.size(rb);
      const VertexId root = forest.join(ra, rb, w + k / merged);
      ++merges;
      if (observer) observer({e, root});
    }
  }
  return merges;
}

std::size_t minsize_pass(ComponentForest& forest, std::span<const Edge> edges, std::size_t min_size,
                         const MergeObserver& observer) {
  std::size_t merges = 0;
  if (min_size <= 1) return merges;
  for (const Edge& e : edges) {
    const VertexId ra = forest.find(e.a);
    const VertexId rb = forest.find(e.b);
    if (ra == rb) continue;
    if (forest.size(ra) < min_size || forest.size(rb) < min_size) {
      const VertexId root = forest.join(ra, rb, forest.threshold(ra));
      ++merges;
      if (observer) observer({e, root});
    }
  }
  return merges;
}

SegmentationResult extract_result(ComponentForest& forest, int width, int height, const StageTimings& timings) {
  if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) != forest.vertex_count()) {
    throw ParameterError("image dimensions do not match the forest");
  }
  SegmentationResult result;
  result.width = width;
  result.height = height;
  result.timings = timings;
  result.labels.resize(forest.vertex_count());
  for (VertexId v = 0; v < result.labels.size(); ++v) {
    const VertexId root = forest.find(v);
    result.labels[v] = root;
    result.component_count += root == v ? 1 : 0;
  }
  return result;
}

}  // namespace graphseg
