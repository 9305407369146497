#include "graphseg/engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <future>
#include <mutex>

#include "graphseg/forest.hpp"
#include "graphseg/graph.hpp"
#include "graphseg/parallel.hpp"
#include "graphseg/render.hpp"
#include "graphseg/tiling.hpp"
#include "internal/smoother.hpp"

namespace graphseg {

namespace {

using Clock = std::chrono::steady_clock;

enum Stage : std::size_t { kSmooth, kBuild, kSort, kThreshold, kMinsize, kRender, kStageCount };

// Each stage reports the wall-clock span from its earliest start to its latest
// end, so stages that overlap across threads add up to more than the total.
class StageRecorder {
 public:
  StageRecorder() : origin_(Clock::now()) {
    first_.fill(Clock::time_point::max());
    last_.fill(Clock::time_point::min());
  }

  template <typename Fn>
  decltype(auto) time(Stage stage, Fn&& fn) {
    const auto start = Clock::now();
    struct Finish {
      StageRecorder& self;
      Stage stage;
      Clock::time_point start;
      ~Finish() { self.record(stage, start, Clock::now()); }
    } finish{*this, stage, start};
    return fn();
  }

  void record(Stage stage, Clock::time_point start, Clock::time_point end) {
    std::lock_guard lock(mutex_);
    first_[stage] = std::min(first_[stage], start);
    last_[stage] = std::max(last_[stage], end);
  }

  StageTimings finish() const {
    const auto end = Clock::now();
    std::array<double, kStageCount> ms{};
    for (std::size_t s = 0; s < kStageCount; ++s) {
      if (last_[s] >= first_[s]) ms[s] = std::chrono::duration<double, std::milli>(last_[s] - first_[s]).count();
    }
    StageTimings t;
    t.smooth = ms[kSmooth];
    t.build = ms[kBuild];
    t.sort = ms[kSort];
    t.threshold = ms[kThreshold];
    t.minsize = ms[kMinsize];
    t.render = ms[kRender];
    t.total = std::chrono::duration<double, std::milli>(end - origin_).count();
    return t;
  }

 private:
  Clock::time_point origin_;
  std::array<Clock::time_point, kStageCount> first_;
  std::array<Clock::time_point, kStageCount> last_;
  std::mutex mutex_;
};

int resolve_workers(int workers) { return workers > 0 ? workers : default_workers(); }

// Merges sorted runs pairwise, running each round's merges in parallel.
EdgeList merge_runs(std::vector<EdgeList> runs, int workers) {
  if (runs.empty()) return {};
  while (runs.size() > 1) {
    const std::size_t pairs = runs.size() / 2;
    std::vector<EdgeList> next((runs.size() + 1) / 2);
    parallel_chunks(pairs, workers, [&](std::size_t p) {
      const auto& l = runs[2 * p];
      const auto& r = runs[2 * p + 1];
      next[p].resize(l.size() + r.size());
      std::merge(l.begin(), l.end(), r.begin(), r.end(), next[p].begin(), EdgeOrder{});
    });
    if (runs.size() % 2 == 1) next.back() = std::move(runs.back());
    runs = std::move(next);
  }
  return std::move(runs.front());
}

SegmentationResult finish_run(ComponentForest& forest, const Image8& img, const SegParams& params,
                              std::span<const Edge> sorted, StageRecorder& rec, std::uint64_t seed) {
  rec.time(kMinsize, [&] { minsize_pass(forest, sorted, params.min_size); });
  SegmentationResult result = rec.time(kRender, [&] {
    auto r = extract_result(forest, img.width(), img.height());
    r.rendered = render_labels(r, Palette(seed));
    return r;
  });
  result.timings = rec.finish();
  return result;
}

// Row-band schedule for the pipelined strategy. Band b moves through
// horizontal smoothing, vertical smoothing, then edge construction and a local
// sort; each step only waits for the rows it reads.
class BandPipeline {
 public:
  BandPipeline(const Image8& img, double sigma, std::size_t bands, StageRecorder& rec)
      : img_(img), smoother_(img, sigma), bands_(bands), progress_(bands), runs_(bands), rec_(rec) {}

  void run_band(std::size_t band) {
    try {
      const auto rows = slice_of(static_cast<std::size_t>(img_.height()), bands_, band);
      const int y0 = static_cast<int>(rows.begin);
      const int y1 = static_cast<int>(rows.end);

      rec_.time(kSmooth, [&] { smoother_.horizontal_rows(y0, y1); });
      advance(band, kHorizontalDone);

      wait_rows(smoother_.dependency_begin(y0), smoother_.dependency_end(y1), kHorizontalDone);
      rec_.time(kSmooth, [&] { smoother_.vertical_rows(y0, y1); });
      advance(band, kVerticalDone);

      // Downward edges of the last row read the first row of the next band.
      wait_rows(y0, std::min(img_.height(), y1 + 1), kVerticalDone);
      auto& run = runs_[band];
      rec_.time(kBuild, [&] {
        append_region_edges(smoother_.output(), 0, img_.width(), y0, y1, img_.height(), run);
      });
      rec_.time(kSort, [&] { sort_edges(run); });
    } catch (...) {
      // Release any band blocked on this one; the error is rethrown by the caller.
      advance(band, kFailed);
      throw;
    }
  }

  std::vector<EdgeList>& runs() { return runs_; }

 private:
  enum : int { kHorizontalDone = 1, kVerticalDone = 2, kFailed = 100 };

  void advance(std::size_t band, int state) {
    progress_[band].store(state);
    progress_[band].notify_all();
  }

  void wait_rows(int y_begin, int y_end, int state) {
    for (std::size_t b = 0; b < bands_; ++b) {
      const auto rows = slice_of(static_cast<std::size_t>(img_.height()), bands_, b);
      if (rows.end <= static_cast<std::size_t>(y_begin) || rows.begin >= static_cast<std::size_t>(y_end)) continue;
      for (int seen = progress_[b].load(); seen < state; seen = progress_[b].load()) progress_[b].wait(seen);
    }
  }

  const Image8& img_;
  internal::SeparableSmoother smoother_;
  std::size_t bands_;
  std::vector<std::atomic<int>> progress_;
  std::vector<EdgeList> runs_;
  StageRecorder& rec_;
};

}  // namespace

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::kSequential: return "sequential";
    case Strategy::kPipelined: return "pipelined";
    case Strategy::kHybrid: return "hybrid";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) noexcept {
  for (const Strategy s : {Strategy::kSequential, Strategy::kPipelined, Strategy::kHybrid}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

SegmentationResult run_sequential(const Image8& img, const SegParams& params, std::uint64_t seed) {
  params.validate();
  StageRecorder rec;
  const ImageF smoothed = rec.time(kSmooth, [&] { return gaussian_smooth(img, {params.sigma}, 1); });
  EdgeList edges = rec.time(kBuild, [&] { return build_edges(smoothed, 1); });
  ComponentForest forest = rec.time(kBuild, [&] { return ComponentForest(img.pixel_count(), params.k); });
  rec.time(kSort, [&] { sort_edges(edges); });
  rec.time(kThreshold, [&] { threshold_pass(forest, edges, params.k); });
  return finish_run(forest, img, params, edges, rec, seed);
}

SegmentationResult run_pipelined(const Image8& img, const SegParams& params, int workers, std::uint64_t seed) {
  params.validate();
  workers = resolve_workers(workers);
  StageRecorder rec;

  // Forest initialization touches nothing the graph stages use.
  auto forest_ready = std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 [&] { return rec.time(kBuild, [&] { return ComponentForest(img.pixel_count(), params.k); }); });

  const auto bands = static_cast<std::size_t>(std::min(img.height(), workers));
  BandPipeline pipeline(img, params.sigma, bands, rec);
  // One thread per band: bands block on each other's progress.
  parallel_chunks(bands, static_cast<int>(bands), [&](std::size_t band) { pipeline.run_band(band); });
  const EdgeList edges = rec.time(kSort, [&] { return merge_runs(std::move(pipeline.runs()), workers); });

  ComponentForest forest = forest_ready.get();
  rec.time(kThreshold, [&] { threshold_pass(forest, edges, params.k); });
  return finish_run(forest, img, params, edges, rec, seed);
}

SegmentationResult run_hybrid(const Image8& img, const SegParams& params, int n, int workers, std::uint64_t seed) {
  params.validate();
  const TileGrid grid = make_grid(img.width(), img.height(), n);
  workers = std::min(resolve_workers(workers), n);
  StageRecorder rec;

  const ImageF smoothed = rec.time(kSmooth, [&] { return gaussian_smooth(img, {params.sigma}, workers); });
  ComponentForest forest = rec.time(kBuild, [&] { return ComponentForest(img.pixel_count(), params.k); });

  // Chunks [0, n) are tiles, each confined to its own vertex range of the
  // shared forest; chunk n builds the seam edge lists.
  std::vector<EdgeList> runs(grid.size() + 3);
  BoundaryEdges seams;
  parallel_chunks(grid.size() + 1, workers, [&](std::size_t t) {
    if (t == grid.size()) {
      rec.time(kBuild, [&] {
        seams = boundary_edges(smoothed, grid);
        runs[t + 2] = seam_diagonal_edges(smoothed, grid);
      });
      return;
    }
    const TileRect& r = grid.tiles[t];
    auto& edges = runs[t];
    rec.time(kBuild, [&] {
      edges.reserve(expected_edge_count(r.width, r.height));
      append_region_edges(smoothed, r.x0, r.x1(), r.y0, r.y1(), r.y1(), edges);
    });
    rec.time(kSort, [&] { sort_edges(edges); });
    rec.time(kThreshold, [&] { threshold_pass(forest, edges, params.k); });
  });
  rec.time(kThreshold, [&] { stitch(forest, seams, params.k); });

  // Tile, seam and diagonal lists partition the full edge set; merging them
  // yields exactly the sequential sorted order.
  runs[grid.size()] = std::move(seams.horizontal);
  runs[grid.size() + 1] = std::move(seams.vertical);
  const EdgeList edges = rec.time(kSort, [&] { return merge_runs(std::move(runs), workers); });
  return finish_run(forest, img, params, edges, rec, seed);
}

SegmentationResult run(const Image8& img, const SegParams& params, const StrategyConfig& config) {
  switch (config.kind) {
    case Strategy::kSequential: return run_sequential(img, params, config.seed);
    case Strategy::kPipelined: return run_pipelined(img, params, config.workers, config.seed);
    case Strategy::kHybrid: return run_hybrid(img, params, config.tiles, config.workers, config.seed);
  }
  throw ParameterError("unknown strategy");
}

}  // namespace graphseg
