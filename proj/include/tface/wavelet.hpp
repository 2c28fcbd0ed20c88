#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tface/error.hpp"
#include "tface/raster.hpp"

namespace tface {

// Unnormalized Haar: pair mean and half-difference. Starting from 8-bit
// integers every coefficient is a dyadic rational, so binary floating point
// holds the transform and its inverse exactly.

template <std::floating_point T>
struct HaarStep {
  std::vector<T> averages;
  std::vector<T> details;
};

template <std::floating_point T>
HaarStep<T> haar_step_1d(std::span<const T> s) {
  if (s.size() < 2 || s.size() % 2 != 0)
    throw Error("wavelet", ErrorCode::OddLength, "length " + std::to_string(s.size()));
  const std::size_t half = s.size() / 2;
  HaarStep<T> out{std::vector<T>(half), std::vector<T>(half)};
  for (std::size_t k = 0; k < half; ++k) {
    out.averages[k] = (s[2 * k] + s[2 * k + 1]) / 2;
    out.details[k] = (s[2 * k] - s[2 * k + 1]) / 2;
  }
  return out;
}

template <std::floating_point T>
std::vector<T> inverse_haar_step_1d(std::span<const T> averages, std::span<const T> details) {
  if (averages.size() != details.size())
    throw Error("wavelet", ErrorCode::LengthMismatch, "averages/details differ in length");
  std::vector<T> out(averages.size() * 2);
  for (std::size_t k = 0; k < averages.size(); ++k) {
    out[2 * k] = averages[k] + details[k];
    out[2 * k + 1] = averages[k] - details[k];
  }
  return out;
}

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// Full 1D decomposition: [overall mean | coarsest details | ... | finest details].
template <std::floating_point T>
std::vector<T> haar_full_1d(std::span<const T> s) {
  if (!is_power_of_two(s.size()))
    throw Error("wavelet", ErrorCode::NotPowerOfTwo, "length " + std::to_string(s.size()));
  std::vector<T> out(s.begin(), s.end());
  for (std::size_t n = out.size(); n > 1; n /= 2) {
    auto step = haar_step_1d(std::span<const T>(out.data(), n));
    std::ranges::copy(step.averages, out.begin());
    std::ranges::copy(step.details, out.begin() + static_cast<std::ptrdiff_t>(n / 2));
  }
  return out;
}

template <std::floating_point T>
std::vector<T> inverse_haar_full_1d(std::span<const T> coeffs) {
  if (!is_power_of_two(coeffs.size()))
    throw Error("wavelet", ErrorCode::NotPowerOfTwo, "length " + std::to_string(coeffs.size()));
  std::vector<T> out(coeffs.begin(), coeffs.end());
  for (std::size_t n = 1; n < out.size(); n *= 2) {
    auto merged = inverse_haar_step_1d(std::span<const T>(out.data(), n),
                                       std::span<const T>(out.data() + n, n));
    std::ranges::copy(merged, out.begin());
  }
  return out;
}

template <std::floating_point T>
HaarStep<T> haar_step_1d(const std::vector<T>& s) {
  return haar_step_1d(std::span<const T>(s));
}
template <std::floating_point T>
std::vector<T> inverse_haar_step_1d(const std::vector<T>& averages, const std::vector<T>& details) {
  return inverse_haar_step_1d(std::span<const T>(averages), std::span<const T>(details));
}
template <std::floating_point T>
std::vector<T> haar_full_1d(const std::vector<T>& s) {
  return haar_full_1d(std::span<const T>(s));
}
template <std::floating_point T>
std::vector<T> inverse_haar_full_1d(const std::vector<T>& coeffs) {
  return inverse_haar_full_1d(std::span<const T>(coeffs));
}

enum class SubbandKind { LL, LH, HL, HH };

inline std::string to_string(SubbandKind k) {
  switch (k) {
    case SubbandKind::LL: return "LL";
    case SubbandKind::LH: return "LH";
    case SubbandKind::HL: return "HL";
    case SubbandKind::HH: return "HH";
  }
  return "?";
}

struct Subband {
  SubbandKind kind = SubbandKind::LL;
  int level = 1;
  RealRaster values;

  std::size_t width() const noexcept { return values.width(); }
  std::size_t height() const noexcept { return values.height(); }
};

/// One decomposition level laid out as LL | HL over LH | HH.
struct Quad {
  Subband ll, lh, hl, hh;
};

/// Rows first (averages left, details right), then columns (averages top,
/// details bottom).
inline Quad quad_decompose(const RealRaster& img, int level = 1) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  if (w == 0 || h == 0 || w % 2 != 0 || h % 2 != 0)
    throw Error("wavelet", ErrorCode::OddDimension,
                std::to_string(w) + "x" + std::to_string(h));
  const std::size_t hw = w / 2;
  const std::size_t hh = h / 2;

  // Row pass: low[x,y] / high[x,y] for x < hw.
  RealRaster low(hw, h), high(hw, h);
  for (std::size_t y = 0; y < h; ++y) {
    auto row = img.row(y);
    for (std::size_t k = 0; k < hw; ++k) {
      low(k, y) = (row[2 * k] + row[2 * k + 1]) / 2;
      high(k, y) = (row[2 * k] - row[2 * k + 1]) / 2;
    }
  }

  Quad q{{SubbandKind::LL, level, RealRaster(hw, hh)},
         {SubbandKind::LH, level, RealRaster(hw, hh)},
         {SubbandKind::HL, level, RealRaster(hw, hh)},
         {SubbandKind::HH, level, RealRaster(hw, hh)}};
  for (std::size_t k = 0; k < hh; ++k) {
    for (std::size_t x = 0; x < hw; ++x) {
      const double l0 = low(x, 2 * k), l1 = low(x, 2 * k + 1);
      const double h0 = high(x, 2 * k), h1 = high(x, 2 * k + 1);
      q.ll.values(x, k) = (l0 + l1) / 2;
      q.lh.values(x, k) = (l0 - l1) / 2;
      q.hl.values(x, k) = (h0 + h1) / 2;
      q.hh.values(x, k) = (h0 - h1) / 2;
    }
  }
  return q;
}

/// Inverse of quad_decompose: columns first, then rows.
inline RealRaster quad_reconstruct(const Quad& q) {
  const std::size_t hw = q.ll.width();
  const std::size_t hh = q.ll.height();
  for (const Subband* band : {&q.lh, &q.hl, &q.hh})
    if (band->width() != hw || band->height() != hh)
      throw Error("wavelet", ErrorCode::MalformedPyramid, "subband shapes differ within a level");

  RealRaster low(hw, 2 * hh), high(hw, 2 * hh);
  for (std::size_t k = 0; k < hh; ++k) {
    for (std::size_t x = 0; x < hw; ++x) {
      low(x, 2 * k) = q.ll.values(x, k) + q.lh.values(x, k);
      low(x, 2 * k + 1) = q.ll.values(x, k) - q.lh.values(x, k);
      high(x, 2 * k) = q.hl.values(x, k) + q.hh.values(x, k);
      high(x, 2 * k + 1) = q.hl.values(x, k) - q.hh.values(x, k);
    }
  }
  RealRaster out(2 * hw, 2 * hh);
  for (std::size_t y = 0; y < 2 * hh; ++y) {
    for (std::size_t k = 0; k < hw; ++k) {
      out(2 * k, y) = low(k, y) + high(k, y);
      out(2 * k + 1, y) = low(k, y) - high(k, y);
    }
  }
  return out;
}

struct Pyramid {
  /// levels[i] holds the quad of decomposition level i + 1.
  std::vector<Quad> levels;
  std::size_t source_width = 0;
  std::size_t source_height = 0;

  int depth() const noexcept { return static_cast<int>(levels.size()); }
  const Subband& ll() const { return levels.back().ll; }
};

inline Pyramid decompose_to_level(const RealRaster& img, int level) {
  if (level < 1) throw Error("wavelet", ErrorCode::InvalidConfig, "level must be >= 1");
  const std::size_t factor = std::size_t{1} << level;
  if (img.width() == 0 || img.height() == 0 || img.width() % factor != 0 ||
      img.height() % factor != 0)
    throw Error("wavelet", ErrorCode::InsufficientDivisibility,
                std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                    " not divisible by " + std::to_string(factor));
  Pyramid p{{}, img.width(), img.height()};
  p.levels.reserve(static_cast<std::size_t>(level));
  p.levels.push_back(quad_decompose(img, 1));
  for (int l = 2; l <= level; ++l) p.levels.push_back(quad_decompose(p.levels.back().ll.values, l));
  return p;
}

inline RealRaster reconstruct(const Pyramid& p) {
  if (p.levels.empty()) throw Error("wavelet", ErrorCode::MalformedPyramid, "no levels");
  for (std::size_t i = 0; i < p.levels.size(); ++i)
    if (p.levels[i].ll.level != static_cast<int>(i + 1))
      throw Error("wavelet", ErrorCode::MalformedPyramid, "level tags out of order");
  RealRaster current = p.levels.back().ll.values;
  for (std::size_t i = p.levels.size(); i-- > 0;) {
    const Quad& q = p.levels[i];
    if (current.width() != q.ll.width() || current.height() != q.ll.height())
      throw Error("wavelet", ErrorCode::MalformedPyramid, "level dimensions do not chain");
    Quad merged{{SubbandKind::LL, q.ll.level, std::move(current)}, q.lh, q.hl, q.hh};
    current = quad_reconstruct(merged);
  }
  if (current.width() != p.source_width || current.height() != p.source_height)
    throw Error("wavelet", ErrorCode::MalformedPyramid, "source dimensions disagree");
  return current;
}

/// Debug view: LL rounded to nearest, detail bands offset by 128; both clamped.
inline GrayImage subband_to_gray(const Subband& band) {
  const double offset = band.kind == SubbandKind::LL ? 0.0 : 128.0;
  GrayImage out(band.width(), band.height());
  std::ranges::transform(band.values.pixels(), out.pixels().begin(), [offset](double v) {
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + offset + 0.5), 0.0, 255.0));
  });
  return out;
}

}  // namespace tface
