#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphseg/agglomerate.hpp"
#include "graphseg/engine.hpp"
#include "graphseg/image.hpp"

namespace graphseg {

inline constexpr const char* kBenchCsvHeader =
    "image,width,height,strategy,n,workers,run,smooth_ms,build_ms,sort_ms,threshold_ms,minsize_ms,render_ms,total_ms";

/// One CSV row. `run` is the 0-based run index, or -1 for a median row.
struct BenchRow {
  std::string image;
  int width = 0;
  int height = 0;
  Strategy strategy = Strategy::kSequential;
  int n = 1;
  int workers = 1;
  int run = 0;
  StageTimings timings;

  bool is_median() const noexcept { return run < 0; }
};

struct BenchInput {
  std::string name;
  Image8 image;
};

struct BenchConfig {
  std::vector<Strategy> strategies{Strategy::kSequential, Strategy::kPipelined, Strategy::kHybrid};
  /// Tile counts swept for the hybrid strategy; other strategies run once with n = 1.
  std::vector<int> tiles{1, 2, 4, 8};
  int runs = 5;
  /// 0 = hardware concurrency.
  int workers = 0;
  SegParams params;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  std::vector<BenchRow> medians() const;
  /// Median total for a configuration; throws std::out_of_range when absent.
  double median_total(const std::string& image, Strategy strategy, int n) const;
};

double median(std::vector<double> values);

/// Runs every configuration `runs` times, one configuration at a time, and
/// appends a median row after each configuration's runs.
BenchReport run_bench(const std::vector<BenchInput>& inputs, const BenchConfig& config);

void write_csv(const BenchReport& report, std::ostream& out);
/// Parses rows written by write_csv. Throws ParseError on schema mismatch.
BenchReport read_csv(std::istream& in);

/// Bar chart of median total time per configuration, SVG 1.1.
void write_svg(const BenchReport& report, std::ostream& out);

}  // namespace graphseg
