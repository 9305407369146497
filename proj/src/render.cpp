#include "graphseg/render.hpp"

#include <limits>
#include <random>
#include <unordered_set>

#include "graphseg/error.hpp"

namespace graphseg {

std::vector<Rgb> Palette::colors(std::size_t count) const {
  constexpr std::size_t kColorSpace = std::size_t{1} << 24;
  if (count > kColorSpace) throw ParameterError("more components than distinct 24-bit colors");
  std::mt19937_64 rng(seed_);
  std::uniform_int_distribution<std::uint32_t> draw(0, kColorSpace - 1);
  std::unordered_set<std::uint32_t> used;
  used.reserve(count);
  std::vector<Rgb> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::uint32_t c = draw(rng);
    if (!used.insert(c).second) continue;
    out.push_back({static_cast<std::uint8_t>(c >> 16), static_cast<std::uint8_t>(c >> 8), static_cast<std::uint8_t>(c)});
  }
  return out;
}

Image8 render_labels(std::span<const VertexId> labels, int width, int height, const Palette& palette) {
  Image8 out(width, height);
  if (labels.size() != out.pixel_count()) throw ParameterError("label count does not match image size");

  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dense(labels.size(), kUnseen);
  std::uint32_t next = 0;
  for (const VertexId label : labels) {
    if (label >= labels.size()) throw ParameterError("label out of range");
    if (dense[label] == kUnseen) dense[label] = next++;
  }
  const auto colors = palette.colors(next);
  auto samples = out.samples();
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const Rgb& c = colors[dense[labels[v]]];
    samples[3 * v] = c[0];
    samples[3 * v + 1] = c[1];
    samples[3 * v + 2] = c[2];
  }
  return out;
}

}  // namespace graphseg
