#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tface/raster.hpp"
#include "tface/segmentation.hpp"
#include "tface/wavelet.hpp"

namespace tface {

/// Feature level: 0 is the undecomposed crop, k ≥ 1 the LL band of level k.
struct FeatureLevel {
  int value = 0;

  static constexpr FeatureLevel original() noexcept { return {0}; }
  static constexpr FeatureLevel ll(int k) noexcept { return {k}; }

  bool operator==(const FeatureLevel&) const = default;
  auto operator<=>(const FeatureLevel&) const = default;
};

/// "original", "ll1", "ll2", ...
inline std::string to_string(FeatureLevel l) {
  return l.value == 0 ? "original" : "ll" + std::to_string(l.value);
}

/// Row label in the report table.
inline std::string display_name(FeatureLevel l) {
  return l.value == 0 ? "Original image" : "LL" + std::to_string(l.value);
}

inline std::optional<FeatureLevel> parse_level(std::string_view s) {
  if (s == "original" || s == "0") return FeatureLevel::original();
  std::string_view digits = s;
  if (s.size() > 2 && (s.substr(0, 2) == "ll" || s.substr(0, 2) == "LL")) digits = s.substr(2);
  int k = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || k < 0 || k > 16)
    return std::nullopt;
  return FeatureLevel{k};
}

/// One image flattened row-major. `T` is std::uint8_t for quantized series,
/// double when quantization is disabled.
template <class T>
struct Series {
  std::vector<T> values;
  FeatureLevel level;
  std::string subject_id;

  std::size_t size() const noexcept { return values.size(); }
  bool operator==(const Series&) const = default;
};

using FeatureSeries = Series<std::uint8_t>;
using RealSeries = Series<double>;

inline std::uint8_t quantize(double v) noexcept {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

template <class T, class Tag>
FeatureSeries vectorize(const Raster<T, Tag>& band, FeatureLevel level) {
  FeatureSeries s{std::vector<std::uint8_t>(band.size()), level, {}};
  std::ranges::transform(band.pixels(), s.values.begin(),
                         [](T v) { return quantize(static_cast<double>(v)); });
  return s;
}

inline FeatureSeries vectorize(const Subband& band) {
  return vectorize(band.values, FeatureLevel::ll(band.level));
}

inline FeatureSeries vectorize(const FaceCrop& crop) {
  return vectorize(crop.pixels, FeatureLevel::original());
}

/// Row-major flattening without quantization.
template <class T, class Tag>
RealSeries vectorize_real(const Raster<T, Tag>& band, FeatureLevel level) {
  return RealSeries{std::vector<double>(band.pixels().begin(), band.pixels().end()), level, {}};
}

}  // namespace tface
