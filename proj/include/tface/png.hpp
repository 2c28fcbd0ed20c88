#pragma once

#include <zlib.h>

#include <array>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "tface/error.hpp"
#include "tface/pnm.hpp"
#include "tface/raster.hpp"

namespace tface {

namespace detail {

inline constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G',
                                                              '\r', '\n', 0x1a, '\n'};

inline std::uint32_t read_be32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

[[noreturn]] inline void png_fail(std::string detail) {
  throw Error("imaging", ErrorCode::MalformedFile, "png: " + std::move(detail));
}

inline std::uint8_t paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return static_cast<std::uint8_t>(a);
  if (pb <= pc) return static_cast<std::uint8_t>(b);
  return static_cast<std::uint8_t>(c);
}

/// Reverses per-scanline filtering in place; `data` holds (1 + stride) bytes per row.
inline std::vector<std::uint8_t> unfilter(std::span<const std::uint8_t> data, std::size_t rows,
                                          std::size_t stride, std::size_t bpp) {
  std::vector<std::uint8_t> out(rows * stride);
  for (std::size_t y = 0; y < rows; ++y) {
    const std::uint8_t filter = data[y * (stride + 1)];
    const std::uint8_t* src = data.data() + y * (stride + 1) + 1;
    std::uint8_t* cur = out.data() + y * stride;
    const std::uint8_t* prev = y ? cur - stride : nullptr;
    for (std::size_t i = 0; i < stride; ++i) {
      const int a = i >= bpp ? cur[i - bpp] : 0;
      const int b = prev ? prev[i] : 0;
      const int c = (prev && i >= bpp) ? prev[i - bpp] : 0;
      int pred = 0;
      switch (filter) {
        case 0: pred = 0; break;
        case 1: pred = a; break;
        case 2: pred = b; break;
        case 3: pred = (a + b) / 2; break;
        case 4: pred = paeth(a, b, c); break;
        default: png_fail("bad filter type " + std::to_string(filter));
      }
      cur[i] = static_cast<std::uint8_t>(src[i] + pred);
    }
  }
  return out;
}

}  // namespace detail

inline bool is_png(std::span<const std::uint8_t> bytes) noexcept {
  if (bytes.size() < detail::kPngSignature.size()) return false;
  for (std::size_t i = 0; i < detail::kPngSignature.size(); ++i)
    if (bytes[i] != detail::kPngSignature[i]) return false;
  return true;
}

/// Decodes a non-interlaced 8-bit grayscale or RGB PNG. Chunk CRCs are verified.
inline DecodedImage decode_png(std::span<const std::uint8_t> bytes) {
  using detail::png_fail;
  if (!is_png(bytes)) png_fail("bad signature");

  std::size_t pos = detail::kPngSignature.size();
  std::uint32_t width = 0, height = 0;
  std::uint8_t color_type = 0;
  bool have_header = false, have_end = false;
  std::vector<std::uint8_t> idat;

  while (!have_end) {
    if (pos + 12 > bytes.size()) png_fail("truncated chunk");
    const std::uint32_t len = detail::read_be32(bytes, pos);
    if (len > bytes.size() - pos - 12) png_fail("truncated chunk data");
    auto type_and_data = bytes.subspan(pos + 4, 4 + len);
    const std::uint32_t crc = detail::read_be32(bytes, pos + 8 + len);
    if (crc != ::crc32(0L, type_and_data.data(), static_cast<uInt>(type_and_data.size())))
      png_fail("crc mismatch");
    const std::string type(type_and_data.begin(), type_and_data.begin() + 4);
    auto data = type_and_data.subspan(4);
    pos += 12 + len;

    if (type == "IHDR") {
      if (len != 13) png_fail("bad IHDR length");
      width = detail::read_be32(data, 0);
      height = detail::read_be32(data, 4);
      const std::uint8_t depth = data[8];
      color_type = data[9];
      if (width == 0 || height == 0) png_fail("zero dimension");
      if (depth != 8)
        throw Error("imaging", ErrorCode::UnsupportedDepth, "png bit depth " + std::to_string(depth));
      if (color_type != 0 && color_type != 2)
        throw Error("imaging", ErrorCode::UnsupportedFormat,
                    "png color type " + std::to_string(color_type));
      if (data[10] != 0 || data[11] != 0) png_fail("unknown compression/filter method");
      if (data[12] != 0) throw Error("imaging", ErrorCode::UnsupportedFormat, "interlaced png");
      have_header = true;
    } else if (type == "IDAT") {
      if (!have_header) png_fail("IDAT before IHDR");
      idat.insert(idat.end(), data.begin(), data.end());
    } else if (type == "IEND") {
      have_end = true;
    } else if (!(type[0] & 0x20)) {
      png_fail("unknown critical chunk " + type);
    }
  }
  if (!have_header) png_fail("missing IHDR");

  const std::size_t bpp = color_type == 2 ? 3 : 1;
  const std::size_t stride = std::size_t{width} * bpp;
  std::vector<std::uint8_t> raw(std::size_t{height} * (stride + 1));
  uLongf raw_len = static_cast<uLongf>(raw.size());
  if (::uncompress(raw.data(), &raw_len, idat.data(), static_cast<uLong>(idat.size())) != Z_OK ||
      raw_len != raw.size())
    png_fail("corrupt image data");

  auto samples = detail::unfilter(raw, height, stride, bpp);
  if (color_type == 0) return GrayImage(width, height, std::move(samples));
  std::vector<Rgb> rgb(std::size_t{width} * height);
  for (std::size_t i = 0; i < rgb.size(); ++i)
    rgb[i] = Rgb{samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]};
  return ColorImage(width, height, std::move(rgb));
}

}  // namespace tface
