#pragma once

#include <cstddef>
#include <vector>

#include "graphseg/image.hpp"

namespace graphseg::internal {

/// Two-pass separable Gaussian filter whose passes can be scheduled by row range.
/// vertical_rows(b, e) needs horizontal rows [b - radius, e + radius] (reflected) done.
class SeparableSmoother {
 public:
  SeparableSmoother(const Image8& src, double sigma);

  int radius() const noexcept { return radius_; }
  bool identity() const noexcept { return taps_.size() == 1; }

  void horizontal_rows(int y_begin, int y_end);
  void vertical_rows(int y_begin, int y_end);

  /// Rows [y_begin, y_end) that vertical_rows must wait for, before reflection.
  int dependency_begin(int y_begin) const noexcept;
  int dependency_end(int y_end) const noexcept;

  ImageF& output() noexcept { return out_; }
  ImageF take() { return std::move(out_); }

 private:
  const Image8& src_;
  std::vector<double> taps_;
  int radius_;
  std::vector<double> horizontal_;
  ImageF out_;
};

}  // namespace graphseg::internal
