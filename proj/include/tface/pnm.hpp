#pragma once

#include <cctype>
#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "tface/error.hpp"
#include "tface/raster.hpp"

namespace tface {

namespace detail {

/// Header tokenizer for the netpbm family. Comments run from '#' to end of line.
class PnmCursor {
 public:
  explicit PnmCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  /// Reads a non-negative decimal integer; rejects values above `limit`.
  std::uint64_t read_uint(std::uint64_t limit, const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) fail(std::string("truncated before ") + what);
    if (!std::isdigit(bytes_[pos_])) fail(std::string("expected digit for ") + what);
    std::uint64_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > limit) fail(std::string(what) + " out of range");
      ++pos_;
    }
    return value;
  }

  /// Consumes the single whitespace byte separating the header from a binary payload.
  void expect_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("missing header terminator");
    ++pos_;
  }

  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

  [[noreturn]] static void fail(std::string detail) {
    throw Error("imaging", ErrorCode::MalformedFile, std::move(detail));
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

using DecodedImage = std::variant<ColorImage, GrayImage>;

inline bool is_pnm(std::span<const std::uint8_t> bytes) noexcept {
  return bytes.size() >= 2 && bytes[0] == 'P' &&
         (bytes[1] == '2' || bytes[1] == '3' || bytes[1] == '5' || bytes[1] == '6');
}

/// Decodes P2/P3/P5/P6. Only maxval 255 is accepted.
inline DecodedImage decode_pnm(std::span<const std::uint8_t> bytes) {
  if (!is_pnm(bytes)) detail::PnmCursor::fail("bad magic");
  const char kind = static_cast<char>(bytes[1]);
  const bool color = kind == '3' || kind == '6';
  const bool binary = kind == '5' || kind == '6';

  detail::PnmCursor cur(bytes.subspan(2));
  constexpr std::uint64_t kMaxDim = 1u << 20;
  const auto width = cur.read_uint(kMaxDim, "width");
  const auto height = cur.read_uint(kMaxDim, "height");
  const auto maxval = cur.read_uint(65535, "maxval");
  if (width == 0 || height == 0) detail::PnmCursor::fail("zero dimension");
  if (maxval == 0) detail::PnmCursor::fail("zero maxval");
  if (maxval != 255)
    throw Error("imaging", ErrorCode::UnsupportedDepth, "maxval " + std::to_string(maxval));

  const std::size_t channels = color ? 3 : 1;
  const std::size_t count = width * height * channels;
  std::vector<std::uint8_t> samples;
  samples.reserve(count);

  if (binary) {
    cur.expect_single_space();
    auto payload = cur.rest();
    if (payload.size() < count) detail::PnmCursor::fail("truncated payload");
    samples.assign(payload.begin(), payload.begin() + static_cast<std::ptrdiff_t>(count));
  } else {
    for (std::size_t i = 0; i < count; ++i)
      samples.push_back(static_cast<std::uint8_t>(cur.read_uint(255, "sample")));
  }

  if (!color) return GrayImage(width, height, std::move(samples));

  std::vector<Rgb> rgb(width * height);
  for (std::size_t i = 0; i < rgb.size(); ++i)
    rgb[i] = Rgb{samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]};
  return ColorImage(width, height, std::move(rgb));
}

enum class PnmEncoding { Binary, Ascii };

inline std::string encode_pgm(const GrayImage& img, PnmEncoding enc = PnmEncoding::Binary) {
  std::string out = enc == PnmEncoding::Binary ? "P5\n" : "P2\n";
  out += std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  if (enc == PnmEncoding::Binary) {
    out.append(reinterpret_cast<const char*>(img.pixels().data()), img.size());
    return out;
  }
  for (std::size_t y = 0; y < img.height(); ++y) {
    auto row = img.row(y);
    for (std::size_t x = 0; x < row.size(); ++x) {
      if (x) out += ' ';
      out += std::to_string(row[x]);
    }
    out += '\n';
  }
  return out;
}

inline std::string encode_ppm(const ColorImage& img, PnmEncoding enc = PnmEncoding::Binary) {
  std::string out = enc == PnmEncoding::Binary ? "P6\n" : "P3\n";
  out += std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  for (const Rgb& p : img.pixels()) {
    if (enc == PnmEncoding::Binary) {
      out += static_cast<char>(p.r);
      out += static_cast<char>(p.g);
      out += static_cast<char>(p.b);
    } else {
      out += std::to_string(p.r) + ' ' + std::to_string(p.g) + ' ' + std::to_string(p.b) + '\n';
    }
  }
  return out;
}

}  // namespace tface
