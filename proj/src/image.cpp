#include "graphseg/image.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "graphseg/parallel.hpp"
#include "internal/smoother.hpp"

namespace graphseg {

namespace {

bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

class HeaderReader {
 public:
  HeaderReader(std::span<const std::uint8_t> bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

  std::size_t pos() const { return pos_; }

  void skip_space() {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && is_space(bytes_[pos_])) ++pos_;
    if (pos_ == bytes_.size()) {
      throw ParseError(ParseError::Kind::kTruncated, pos_, "unexpected end of PPM header");
    }
    if (pos_ == start) {
      throw ParseError(ParseError::Kind::kBadHeader, pos_, "expected whitespace in PPM header");
    }
  }

  long number(const char* field) {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') ++pos_;
    if (pos_ == start) {
      if (pos_ == bytes_.size()) {
        throw ParseError(ParseError::Kind::kTruncated, pos_, std::string("missing PPM ") + field);
      }
      throw ParseError(ParseError::Kind::kBadHeader, pos_, std::string("expected PPM ") + field);
    }
    long value = 0;
    const auto* first = reinterpret_cast<const char*>(bytes_.data() + start);
    const auto* last = reinterpret_cast<const char*>(bytes_.data() + pos_);
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw ParseError(ParseError::Kind::kBadHeader, start, std::string("PPM ") + field + " out of range");
    }
    return value;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
};

}  // namespace

Image8 read_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) {
    throw ParseError(ParseError::Kind::kTruncated, bytes.size(), "stream too short for PPM magic");
  }
  if (bytes[0] != 'P' || bytes[1] != '6') {
    throw ParseError(ParseError::Kind::kBadMagic, 0, "unsupported magic, expected P6");
  }
  HeaderReader r(bytes, 2);
  r.skip_space();
  const std::size_t width_at = r.pos();
  const long width = r.number("width");
  r.skip_space();
  const std::size_t height_at = r.pos();
  const long height = r.number("height");
  r.skip_space();
  const std::size_t maxval_at = r.pos();
  const long maxval = r.number("maxval");
  if (width < 1 || width > (1L << 20)) throw ParseError(ParseError::Kind::kBadHeader, width_at, "invalid PPM width");
  if (height < 1 || height > (1L << 20)) throw ParseError(ParseError::Kind::kBadHeader, height_at, "invalid PPM height");
  if (maxval != 255) throw ParseError(ParseError::Kind::kBadMaxval, maxval_at, "PPM maxval must be 255");
  if (r.pos() == bytes.size()) {
    throw ParseError(ParseError::Kind::kTruncated, r.pos(), "missing whitespace after PPM maxval");
  }
  if (!is_space(bytes[r.pos()])) {
    throw ParseError(ParseError::Kind::kBadHeader, r.pos(), "expected single whitespace after PPM maxval");
  }
  const std::size_t payload_at = r.pos() + 1;
  const std::size_t payload = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  if (bytes.size() - payload_at < payload) {
    throw ParseError(ParseError::Kind::kTruncated, bytes.size(), "truncated PPM payload");
  }
  const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(payload_at);
  return Image8(static_cast<int>(width), static_cast<int>(height),
                std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(payload)));
}

std::vector<std::uint8_t> write_ppm(const Image8& img) {
  const std::string header =
      "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + img.samples().size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), img.samples().begin(), img.samples().end());
  return out;
}

Image8 load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading " + path);
  return read_ppm(bytes);
}

void save_ppm(const Image8& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const auto bytes = write_ppm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path);
}

int kernel_radius(double sigma) { return static_cast<int>(std::ceil(3.0 * sigma)); }

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be finite and >= 0");
  if (sigma == 0.0) return {1.0};
  const int radius = kernel_radius(sigma);
  std::vector<double> taps(2 * static_cast<std::size_t>(radius) + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    taps[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (double& t : taps) t /= sum;
  return taps;
}

ImageF to_float(const Image8& img) {
  std::vector<float> data(img.samples().begin(), img.samples().end());
  return ImageF(img.width(), img.height(), std::move(data));
}

namespace internal {

SeparableSmoother::SeparableSmoother(const Image8& src, double sigma)
    : src_(src),
      taps_(gaussian_kernel(sigma)),
      radius_(static_cast<int>(taps_.size() / 2)),
      out_(src.width(), src.height()) {
  if (!identity()) horizontal_.resize(src.pixel_count() * Image8::kChannels);
}

int SeparableSmoother::dependency_begin(int y_begin) const noexcept {
  return radius_ >= src_.height() ? 0 : std::max(0, y_begin - radius_);
}

int SeparableSmoother::dependency_end(int y_end) const noexcept {
  return radius_ >= src_.height() ? src_.height() : std::min(src_.height(), y_end + radius_);
}

void SeparableSmoother::horizontal_rows(int y_begin, int y_end) {
  const int w = src_.width();
  constexpr int C = Image8::kChannels;
  if (identity()) {
    for (int y = y_begin; y < y_end; ++y) {
      const auto in = src_.row(y);
      std::copy(in.begin(), in.end(), out_.row(y).begin());
    }
    return;
  }
  const auto pad = static_cast<std::size_t>(radius_);
  std::vector<double> padded((static_cast<std::size_t>(w) + 2 * pad) * C);
  for (int y = y_begin; y < y_end; ++y) {
    const auto in = src_.row(y);
    for (int x = -radius_; x < w + radius_; ++x) {
      const auto from = static_cast<std::size_t>(reflect_index(x, w)) * C;
      const auto to = static_cast<std::size_t>(x + radius_) * C;
      for (std::size_t c = 0; c < C; ++c) padded[to + c] = in[from + c];
    }
    double* dst = horizontal_.data() + static_cast<std::size_t>(y) * w * C;
    for (std::size_t j = 0; j < static_cast<std::size_t>(w) * C; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < taps_.size(); ++t) acc += taps_[t] * padded[j + t * C];
      dst[j] = acc;
    }
  }
}

void SeparableSmoother::vertical_rows(int y_begin, int y_end) {
  if (identity()) return;
  const int h = src_.height();
  const std::size_t row_len = static_cast<std::size_t>(src_.width()) * Image8::kChannels;
  std::vector<double> acc(row_len);
  for (int y = y_begin; y < y_end; ++y) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int i = -radius_; i <= radius_; ++i) {
      const double tap = taps_[static_cast<std::size_t>(i + radius_)];
      const double* in = horizontal_.data() + static_cast<std::size_t>(reflect_index(y + i, h)) * row_len;
      for (std::size_t j = 0; j < row_len; ++j) acc[j] += tap * in[j];
    }
    // Horizontal pass kept in double so each output sample is rounded to float once.
    std::transform(acc.begin(), acc.end(), out_.row(y).begin(), [](double v) { return static_cast<float>(v); });
  }
}

}  // namespace internal

ImageF gaussian_smooth(const Image8& img, const SmoothingParams& params, int workers) {
  internal::SeparableSmoother smoother(img, params.sigma);
  const int h = img.height();
  const std::size_t bands = static_cast<std::size_t>(std::min(h, std::max(1, workers)));
  parallel_chunks(bands, workers, [&](std::size_t band) {
    const auto rows = slice_of(static_cast<std::size_t>(h), bands, band);
    smoother.horizontal_rows(static_cast<int>(rows.begin), static_cast<int>(rows.end));
  });
  parallel_chunks(bands, workers, [&](std::size_t band) {
    const auto rows = slice_of(static_cast<std::size_t>(h), bands, band);
    smoother.vertical_rows(static_cast<int>(rows.begin), static_cast<int>(rows.end));
  });
  return smoother.take();
}

}  // namespace graphseg
