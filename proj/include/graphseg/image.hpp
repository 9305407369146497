#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphseg/error.hpp"

namespace graphseg {

/// Row-major interleaved RGB raster, top-left origin.
template <typename Sample>
class RasterImage {
 public:
  static constexpr int kChannels = 3;

  RasterImage() = default;
  RasterImage(int width, int height, Sample fill = Sample{})
      : width_(checked_dim(width)),
        height_(checked_dim(height)),
        data_(static_cast<std::size_t>(width) * height * kChannels, fill) {}
  RasterImage(int width, int height, std::vector<Sample> data)
      : width_(checked_dim(width)), height_(checked_dim(height)), data_(std::move(data)) {
    if (data_.size() != pixel_count() * kChannels) {
      throw ParameterError("raster data length does not match width*height*3");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return data_.empty(); }

  Sample& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  const Sample& at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  std::span<Sample> row(int y) {
    return {data_.data() + static_cast<std::size_t>(y) * width_ * kChannels,
            static_cast<std::size_t>(width_) * kChannels};
  }
  std::span<const Sample> row(int y) const {
    return {data_.data() + static_cast<std::size_t>(y) * width_ * kChannels,
            static_cast<std::size_t>(width_) * kChannels};
  }

  std::span<Sample> samples() noexcept { return data_; }
  std::span<const Sample> samples() const noexcept { return data_; }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  static int checked_dim(int d) {
    if (d < 1) throw ParameterError("raster dimensions must be >= 1");
    return d;
  }
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Sample> data_;
};

using Image8 = RasterImage<std::uint8_t>;
using ImageF = RasterImage<float>;

// ---------------------------------------------------------------------------
// PPM (binary P6, maxval 255)

Image8 read_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_ppm(const Image8& img);

/// File helpers. I/O failures throw IoError.
class IoError : public Error {
 public:
  using Error::Error;
};
Image8 load_ppm(const std::string& path);
void save_ppm(const Image8& img, const std::string& path);

// ---------------------------------------------------------------------------
// Smoothing

struct SmoothingParams {
  double sigma = 0.8;
};

/// Radius of the truncated Gaussian kernel, ceil(3 sigma).
int kernel_radius(double sigma);

/// Normalized 1-D Gaussian taps, length 2*radius+1.
std::vector<double> gaussian_kernel(double sigma);

/// Half-sample symmetric reflection of an out-of-range index into [0, n).
inline int reflect_index(int i, int n) noexcept {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

/// Separable Gaussian filter per channel with reflect boundaries. sigma == 0
/// is an exact copy. `workers` only splits rows; the result does not depend on it.
ImageF gaussian_smooth(const Image8& img, const SmoothingParams& params, int workers = 1);

ImageF to_float(const Image8& img);

}  // namespace graphseg
