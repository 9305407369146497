#include "graphseg/compare.hpp"

#include <unordered_map>

#include "graphseg/error.hpp"

namespace graphseg {

namespace {

std::uint64_t pairs(std::uint64_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

// Relabels to 0..m-1 by first appearance.
std::vector<std::uint32_t> densify(std::span<const std::uint32_t> labels, std::size_t& count) {
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  std::vector<std::uint32_t> out;
  out.reserve(labels.size());
  for (const auto l : labels) out.push_back(ids.try_emplace(l, static_cast<std::uint32_t>(ids.size())).first->second);
  count = ids.size();
  return out;
}

}  // namespace

std::vector<std::uint32_t> partition_from_colors(const Image8& img) {
  std::vector<std::uint32_t> packed;
  packed.reserve(img.pixel_count());
  const auto s = img.samples();
  for (std::size_t v = 0; v < img.pixel_count(); ++v) {
    packed.push_back(std::uint32_t{s[3 * v]} << 16 | std::uint32_t{s[3 * v + 1]} << 8 | s[3 * v + 2]);
  }
  std::size_t count = 0;
  return densify(packed, count);
}

PartitionComparison compare_partitions(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) throw ParameterError("partitions cover different element counts");
  PartitionComparison cmp;
  const auto da = densify(a, cmp.component_counts.first);
  const auto db = densify(b, cmp.component_counts.second);

  std::unordered_map<std::uint64_t, std::uint64_t> joint;
  std::vector<std::uint64_t> row(cmp.component_counts.first);
  std::vector<std::uint64_t> col(cmp.component_counts.second);
  for (std::size_t i = 0; i < da.size(); ++i) {
    ++joint[std::uint64_t{da[i]} << 32 | db[i]];
    ++row[da[i]];
    ++col[db[i]];
  }

  std::uint64_t same_both = 0;
  for (const auto& [key, n] : joint) same_both += pairs(n);
  std::uint64_t same_a = 0;
  for (const auto n : row) same_a += pairs(n);
  std::uint64_t same_b = 0;
  for (const auto n : col) same_b += pairs(n);

  const std::uint64_t total = pairs(da.size());
  // Agreements: pairs together in both plus pairs apart in both.
  const std::uint64_t agree = total + 2 * same_both - same_a - same_b;
  cmp.identical = joint.size() == row.size() && joint.size() == col.size();
  cmp.rand_index = total == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(total);
  return cmp;
}

PartitionComparison compare_images(const Image8& a, const Image8& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw ParameterError("image dimensions differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                         " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
  const auto pa = partition_from_colors(a);
  const auto pb = partition_from_colors(b);
  return compare_partitions(pa, pb);
}

}  // namespace graphseg
