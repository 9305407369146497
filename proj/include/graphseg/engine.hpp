#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "graphseg/agglomerate.hpp"
#include "graphseg/image.hpp"

namespace graphseg {

enum class Strategy { kSequential, kPipelined, kHybrid };

std::string_view to_string(Strategy s) noexcept;
std::optional<Strategy> parse_strategy(std::string_view name) noexcept;

struct StrategyConfig {
  Strategy kind = Strategy::kSequential;
  /// Tile count, hybrid only.
  int tiles = 4;
  /// Parallelism hint; 0 picks the hardware concurrency (capped at tiles for hybrid).
  int workers = 0;
  std::uint64_t seed = 42;
};

/// Smooth, build, sort, threshold pass, min-size pass, render; one thread.
SegmentationResult run_sequential(const Image8& img, const SegParams& params, std::uint64_t seed = 42);

/// Same output as run_sequential. Smoothing, row-band edge construction,
/// sorted-run merging and forest initialization overlap across workers.
SegmentationResult run_pipelined(const Image8& img, const SegParams& params, int workers = 0,
                                 std::uint64_t seed = 42);

/// Tile-parallel threshold passes on one shared forest, then horizontal and
/// vertical stitching and a global min-size pass. n == 1 matches run_sequential.
SegmentationResult run_hybrid(const Image8& img, const SegParams& params, int n, int workers = 0,
                              std::uint64_t seed = 42);

SegmentationResult run(const Image8& img, const SegParams& params, const StrategyConfig& config);

}  // namespace graphseg
