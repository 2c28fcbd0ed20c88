#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace tface {

/// Row-major 2D raster. `Tag` distinguishes rasters that share a pixel type
/// but not a meaning (a grayscale image versus a 0/1 mask).
template <class T, class Tag = void>
class Raster {
 public:
  using value_type = T;

  Raster() = default;

  Raster(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), pixels_(width * height, fill) {}

  Raster(std::size_t width, std::size_t height, std::vector<T> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != width_ * height_)
      throw std::invalid_argument("raster: pixel count does not match dimensions");
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  T& operator()(std::size_t x, std::size_t y) noexcept {
    assert(x < width_ && y < height_);
    return pixels_[y * width_ + x];
  }
  const T& operator()(std::size_t x, std::size_t y) const noexcept {
    assert(x < width_ && y < height_);
    return pixels_[y * width_ + x];
  }

  std::span<T> row(std::size_t y) noexcept { return {pixels_.data() + y * width_, width_}; }
  std::span<const T> row(std::size_t y) const noexcept {
    return {pixels_.data() + y * width_, width_};
  }

  std::span<T> pixels() noexcept { return pixels_; }
  std::span<const T> pixels() const noexcept { return pixels_; }

  bool operator==(const Raster&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> pixels_;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

struct BinaryTag;

using ColorImage = Raster<Rgb>;
using GrayImage = Raster<std::uint8_t>;
/// Foreground mask: 1 = face, 0 = background.
using BinaryImage = Raster<std::uint8_t, BinaryTag>;
using RealRaster = Raster<double>;

template <class To, class From, class Tag>
Raster<To> raster_cast(const Raster<From, Tag>& src) {
  std::vector<To> out(src.pixels().begin(), src.pixels().end());
  return Raster<To>(src.width(), src.height(), std::move(out));
}

inline GrayImage to_gray(const BinaryImage& mask, std::uint8_t on = 255) {
  GrayImage out(mask.width(), mask.height());
  auto dst = out.pixels();
  auto src = mask.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? on : 0;
  return out;
}

}  // namespace tface
