#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <span>
#include <type_traits>
#include <variant>

#include "tface/error.hpp"
#include "tface/io.hpp"
#include "tface/png.hpp"
#include "tface/pnm.hpp"
#include "tface/raster.hpp"

namespace tface {

/// Sniffs the container format and decodes PGM/PPM or PNG.
inline DecodedImage decode_image(std::span<const std::uint8_t> bytes) {
  if (is_png(bytes)) return decode_png(bytes);
  if (is_pnm(bytes)) return decode_pnm(bytes);
  throw Error("imaging", ErrorCode::MalformedFile, "unrecognized image format");
}

inline DecodedImage read_image(const std::filesystem::path& path) {
  auto bytes = read_file_bytes(path, "imaging");
  return decode_image(bytes);
}

/// BT.601 luma, rounded half up. Integer weights sum to 1000 so the result is exact.
inline std::uint8_t luma(Rgb p) noexcept {
  const unsigned weighted = 299u * p.r + 587u * p.g + 114u * p.b;
  return static_cast<std::uint8_t>(std::min(255u, (weighted + 500u) / 1000u));
}

inline GrayImage to_grayscale(const ColorImage& img) {
  GrayImage out(img.width(), img.height());
  std::ranges::transform(img.pixels(), out.pixels().begin(), luma);
  return out;
}

inline GrayImage to_grayscale(const DecodedImage& img) {
  return std::visit(
      [](const auto& im) -> GrayImage {
        if constexpr (std::is_same_v<std::decay_t<decltype(im)>, GrayImage>)
          return im;
        else
          return to_grayscale(im);
      },
      img);
}

inline std::uint64_t intensity_sum(const GrayImage& img) {
  return std::accumulate(img.pixels().begin(), img.pixels().end(), std::uint64_t{0});
}

inline double mean_intensity(const GrayImage& img) {
  if (img.empty()) throw Error("imaging", ErrorCode::EmptyImage);
  return static_cast<double>(intensity_sum(img)) / static_cast<double>(img.size());
}

/// Foreground = pixels strictly brighter than the mean. The comparison
/// `p * count > sum` is done in integers so the mean is never rounded.
inline BinaryImage binarize(const GrayImage& img) {
  if (img.empty()) throw Error("imaging", ErrorCode::EmptyImage);
  const std::uint64_t sum = intensity_sum(img);
  const std::uint64_t count = img.size();
  BinaryImage out(img.width(), img.height());
  std::ranges::transform(img.pixels(), out.pixels().begin(), [&](std::uint8_t p) {
    return static_cast<std::uint8_t>(std::uint64_t{p} * count > sum);
  });
  return out;
}

}  // namespace tface
