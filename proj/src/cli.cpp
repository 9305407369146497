#include "graphseg/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphseg/bench.hpp"
#include "graphseg/compare.hpp"
#include "graphseg/engine.hpp"
#include "graphseg/error.hpp"
#include "graphseg/image.hpp"
#include "graphseg/tiling.hpp"

namespace graphseg {

namespace {

using nlohmann::json;

struct SegmentArgs {
  std::string input;
  std::string output;
  SegParams params;
  std::string strategy = "sequential";
  int tiles = 4;
  int workers = 0;
  std::uint64_t seed = 42;
  std::string stats;
};

struct BenchArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> strategies{"sequential", "pipelined", "hybrid"};
  std::vector<int> tiles{1, 2, 4, 8};
  int runs = 5;
  int workers = 0;
  SegParams params;
  std::string csv;
  std::string svg;
};

struct CompareArgs {
  std::string a;
  std::string b;
};

void add_seg_params(CLI::App& cmd, SegParams& p) {
  cmd.add_option("--k", p.k, "Threshold constant k")->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd.add_option("--min-size", p.min_size, "Minimum component size")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--sigma", p.sigma, "Gaussian pre-smoothing sigma")->capture_default_str()->check(CLI::NonNegativeNumber);
}

Strategy strategy_or_throw(const std::string& name) {
  const auto s = parse_strategy(name);
  if (!s) throw ParameterError("unknown strategy '" + name + "'");
  return *s;
}

json timings_json(const StageTimings& t) {
  json j;
  for (const auto& [name, ms] : t.stages()) j[std::string(name)] = ms;
  j["total"] = t.total;
  return j;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

int cmd_segment(const SegmentArgs& args, std::ostream& out) {
  const Strategy kind = strategy_or_throw(args.strategy);
  const Image8 img = load_ppm(args.input);
  const auto result = run(img, args.params, StrategyConfig{kind, args.tiles, args.workers, args.seed});
  save_ppm(result.rendered, args.output);
  if (!args.stats.empty()) {
    json stats;
    stats["width"] = img.width();
    stats["height"] = img.height();
    stats["strategy"] = args.strategy;
    if (kind == Strategy::kHybrid) stats["tiles"] = args.tiles;
    stats["component_count"] = result.component_count;
    stats["timings_ms"] = timings_json(result.timings);
    open_output(args.stats) << stats.dump(2) << '\n';
  }
  out << "segmented " << args.input << " -> " << args.output << " (" << result.component_count << " components, "
      << result.timings.total << " ms)\n";
  return kExitOk;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  BenchConfig config;
  config.strategies.clear();
  for (const auto& s : args.strategies) config.strategies.push_back(strategy_or_throw(s));
  config.tiles = args.tiles;
  config.runs = args.runs;
  config.workers = args.workers;
  config.params = args.params;
  std::vector<BenchInput> inputs;
  for (const auto& path : args.inputs) {
    Image8 img = load_ppm(path);
    for (const Strategy s : config.strategies) {
      if (s != Strategy::kHybrid) continue;
      // Surface "n too large" before any timing starts.
      for (const int n : config.tiles) make_grid(img.width(), img.height(), n);
    }
    inputs.push_back({std::filesystem::path(path).filename().string(), std::move(img)});
  }
  const BenchReport report = run_bench(inputs, config);
  if (args.csv.empty()) {
    write_csv(report, out);
  } else {
    auto csv = open_output(args.csv);
    write_csv(report, csv);
  }
  if (!args.svg.empty()) {
    auto svg = open_output(args.svg);
    write_svg(report, svg);
  }
  return kExitOk;
}

int cmd_compare(const CompareArgs& args, std::ostream& out) {
  const Image8 a = load_ppm(args.a);
  const Image8 b = load_ppm(args.b);
  const auto cmp = compare_images(a, b);
  json j;
  j["identical"] = cmp.identical;
  j["component_counts"] = {cmp.component_counts.first, cmp.component_counts.second};
  j["rand_index"] = cmp.rand_index;
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-based image segmentation with sequential, pipelined and hybrid execution"};
  app.require_subcommand(1);

  SegmentArgs seg;
  auto* segment = app.add_subcommand("segment", "Segment a P6 PPM and write the recolored result");
  segment->add_option("--input", seg.input, "Input PPM")->required();
  segment->add_option("--output", seg.output, "Output PPM")->required();
  add_seg_params(*segment, seg.params);
  segment->add_option("--strategy", seg.strategy, "sequential|pipelined|hybrid")
      ->capture_default_str()
      ->check(CLI::IsMember({"sequential", "pipelined", "hybrid"}));
  segment->add_option("--tiles", seg.tiles, "Tile count for the hybrid strategy")->capture_default_str()->check(CLI::PositiveNumber);
  segment->add_option("--workers", seg.workers, "Worker threads (default: hardware concurrency)")->check(CLI::PositiveNumber);
  segment->add_option("--seed", seg.seed, "Palette seed")->capture_default_str();
  segment->add_option("--stats", seg.stats, "Write component count and stage timings as JSON");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time strategies and tile counts, write CSV (and SVG)");
  bench_cmd->add_option("--input", bench.inputs, "Input PPM (repeatable)")->required();
  bench_cmd->add_option("--strategies", bench.strategies, "Comma-separated strategies")
      ->delimiter(',')
      ->capture_default_str()
      ->check(CLI::IsMember({"sequential", "pipelined", "hybrid"}));
  bench_cmd->add_option("--tiles", bench.tiles, "Comma-separated hybrid tile counts")
      ->delimiter(',')
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--runs", bench.runs, "Runs per configuration")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--workers", bench.workers, "Worker threads (default: hardware concurrency)")->check(CLI::PositiveNumber);
  add_seg_params(*bench_cmd, bench.params);
  bench_cmd->add_option("--csv", bench.csv, "CSV output path (default: stdout)");
  bench_cmd->add_option("--svg", bench.svg, "SVG bar chart of median totals");

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Compare two rendered segmentations");
  compare_cmd->add_option("--a", compare.a, "First rendered PPM")->required();
  compare_cmd->add_option("--b", compare.b, "Second rendered PPM")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (segment->parsed()) return cmd_segment(seg, out);
    if (bench_cmd->parsed()) return cmd_bench(bench, out);
    return cmd_compare(compare, out);
  } catch (const GridError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace graphseg
