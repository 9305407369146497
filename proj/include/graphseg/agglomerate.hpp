#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "graphseg/forest.hpp"
#include "graphseg/graph.hpp"
#include "graphseg/image.hpp"

namespace graphseg {

struct SegParams {
  double k = 300.0;
  std::size_t min_size = 50;
  double sigma = 0.8;

  void validate() const;
};

/// Wall-clock milliseconds per pipeline stage.
struct StageTimings {
  double smooth = 0;
  double build = 0;
  double sort = 0;
  double threshold = 0;
  double minsize = 0;
  double render = 0;
  double total = 0;

  static constexpr std::string_view kStageNames[] = {"smooth", "build", "sort", "threshold", "minsize", "render"};

  /// (name, ms) for the six stages, in pipeline order.
  std::vector<std::pair<std::string_view, double>> stages() const;
};

struct SegmentationResult {
  int width = 0;
  int height = 0;
  /// Root vertex per pixel; labels[labels[v]] == labels[v].
  std::vector<VertexId> labels;
  std::size_t component_count = 0;
  StageTimings timings;
  /// Recolored output; empty until rendered.
  Image8 rendered;
};

/// Reported for each merge performed by a pass.
struct MergeEvent {
  Edge edge;
  VertexId survivor;
};
using MergeObserver = std::function<void(const MergeEvent&)>;

/// Threshold-based agglomeration over edges sorted by EdgeOrder weight.
/// Endpoints in different components merge when the edge weight does not
/// exceed either component's Int(C) + k/|C|; the survivor's threshold becomes
/// w + k/|merged|. Returns the number of merges.
std::size_t threshold_pass(ComponentForest& forest, std::span<const Edge> edges, double k,
                           const MergeObserver& observer = {});

/// Merges across every edge (in order) touching a component smaller than
/// min_size. Thresholds are left meaningless afterwards.
std::size_t minsize_pass(ComponentForest& forest, std::span<const Edge> edges, std::size_t min_size,
                         const MergeObserver& observer = {});

SegmentationResult extract_result(ComponentForest& forest, int width, int height,
                                  const StageTimings& timings = {});

}  // namespace graphseg
