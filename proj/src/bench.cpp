#include "graphseg/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "graphseg/error.hpp"
#include "graphseg/parallel.hpp"

namespace graphseg {

namespace {

constexpr std::size_t kColumns = 14;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string format_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

BenchRow median_row(const std::vector<BenchRow>& runs) {
  BenchRow m = runs.front();
  m.run = -1;
  auto column = [&](double StageTimings::*field) {
    std::vector<double> v;
    v.reserve(runs.size());
    for (const auto& r : runs) v.push_back(r.timings.*field);
    return median(std::move(v));
  };
  m.timings.smooth = column(&StageTimings::smooth);
  m.timings.build = column(&StageTimings::build);
  m.timings.sort = column(&StageTimings::sort);
  m.timings.threshold = column(&StageTimings::threshold);
  m.timings.minsize = column(&StageTimings::minsize);
  m.timings.render = column(&StageTimings::render);
  m.timings.total = column(&StageTimings::total);
  return m;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of no values");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

std::vector<BenchRow> BenchReport::medians() const {
  std::vector<BenchRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [](const BenchRow& r) { return r.is_median(); });
  return out;
}

double BenchReport::median_total(const std::string& image, Strategy strategy, int n) const {
  for (const auto& r : rows) {
    if (r.is_median() && r.image == image && r.strategy == strategy && r.n == n) return r.timings.total;
  }
  throw std::out_of_range("no median row for " + image + "/" + std::string(to_string(strategy)) + "/n=" +
                          std::to_string(n));
}

BenchReport run_bench(const std::vector<BenchInput>& inputs, const BenchConfig& config) {
  if (config.runs < 1) throw ParameterError("runs must be >= 1");
  const int workers = config.workers > 0 ? config.workers : default_workers();
  BenchReport report;
  for (const auto& input : inputs) {
    for (const Strategy strategy : config.strategies) {
      std::vector<int> tile_counts{1};
      if (strategy == Strategy::kHybrid) tile_counts = config.tiles;
      for (const int n : tile_counts) {
        const StrategyConfig sc{strategy, n, workers, 42};
        std::vector<BenchRow> runs;
        for (int i = 0; i < config.runs; ++i) {
          const auto result = run(input.image, config.params, sc);
          BenchRow row;
          row.image = input.name;
          row.width = input.image.width();
          row.height = input.image.height();
          row.strategy = strategy;
          row.n = n;
          row.workers = strategy == Strategy::kSequential ? 1 : strategy == Strategy::kHybrid ? std::min(workers, n) : workers;
          row.run = i;
          row.timings = result.timings;
          runs.push_back(row);
        }
        report.rows.insert(report.rows.end(), runs.begin(), runs.end());
        report.rows.push_back(median_row(runs));
      }
    }
  }
  return report;
}

void write_csv(const BenchReport& report, std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.image << ',' << r.width << ',' << r.height << ',' << to_string(r.strategy) << ',' << r.n << ','
        << r.workers << ',' << (r.is_median() ? std::string("median") : std::to_string(r.run));
    for (const auto& [name, ms] : r.timings.stages()) out << ',' << format_ms(ms);
    out << ',' << format_ms(r.timings.total) << '\n';
  }
}

BenchReport read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBenchCsvHeader) {
    throw ParseError(ParseError::Kind::kBadHeader, 0, "bench CSV header mismatch");
  }
  BenchReport report;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != kColumns) {
      throw ParseError(ParseError::Kind::kBadHeader, line_no, "bench CSV row has " + std::to_string(f.size()) + " fields");
    }
    try {
      BenchRow r;
      r.image = f[0];
      r.width = std::stoi(f[1]);
      r.height = std::stoi(f[2]);
      const auto s = parse_strategy(f[3]);
      if (!s) throw std::invalid_argument("strategy");
      r.strategy = *s;
      r.n = std::stoi(f[4]);
      r.workers = std::stoi(f[5]);
      r.run = f[6] == "median" ? -1 : std::stoi(f[6]);
      r.timings = {std::stod(f[7]), std::stod(f[8]), std::stod(f[9]), std::stod(f[10]),
                   std::stod(f[11]), std::stod(f[12]), std::stod(f[13])};
      report.rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError(ParseError::Kind::kBadHeader, line_no, "malformed bench CSV row");
    }
  }
  return report;
}

void write_svg(const BenchReport& report, std::ostream& out) {
  const auto bars = report.medians();
  constexpr int kBarWidth = 36;
  constexpr int kGap = 14;
  constexpr int kPlotHeight = 300;
  constexpr int kLeft = 70;
  constexpr int kTop = 40;
  constexpr int kLabelSpace = 160;
  const int width = kLeft + static_cast<int>(bars.size()) * (kBarWidth + kGap) + kGap + 20;
  const int height = kTop + kPlotHeight + kLabelSpace;
  double peak = 0.0;
  for (const auto& b : bars) peak = std::max(peak, b.timings.total);
  if (peak <= 0.0) peak = 1.0;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
      << "Median total wall-clock (ms) per configuration</text>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + kPlotHeight
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + kPlotHeight << "\" x2=\"" << width - 10 << "\" y2=\""
      << kTop + kPlotHeight << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    char tick_label[32];
    std::snprintf(tick_label, sizeof tick_label, "%.1f", peak * tick / 4.0);
    const int y = kTop + kPlotHeight - static_cast<int>(kPlotHeight * tick / 4.0);
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << tick_label << "</text>\n";
  }
  static constexpr const char* kFill[] = {"#4e79a7", "#f28e2b", "#59a14f"};
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const auto& b = bars[i];
    const int x = kLeft + kGap + static_cast<int>(i) * (kBarWidth + kGap);
    const int h = static_cast<int>(kPlotHeight * (b.timings.total / peak));
    const int y = kTop + kPlotHeight - h;
    const std::string label = b.image + " " + std::string(to_string(b.strategy)) +
                              (b.strategy == Strategy::kHybrid ? " n=" + std::to_string(b.n) : "");
    out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kBarWidth << "\" height=\"" << h << "\" fill=\""
        << kFill[static_cast<int>(b.strategy)] << "\"><title>" << xml_escape(label) << ": " << format_ms(b.timings.total)
        << " ms</title></rect>\n"
        << "<text transform=\"translate(" << x + kBarWidth / 2 << ',' << kTop + kPlotHeight + 8
        << ") rotate(60)\" font-family=\"sans-serif\" font-size=\"10\">" << xml_escape(label) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace graphseg
