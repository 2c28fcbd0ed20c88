#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "tface/error.hpp"
#include "tface/features.hpp"
#include "tface/imaging.hpp"
#include "tface/io.hpp"
#include "tface/pnm.hpp"
#include "tface/segmentation.hpp"
#include "tface/wavelet.hpp"

namespace tface {

struct PipelineConfig {
  Connectivity connectivity = Connectivity::Eight;
  /// Side of the square every crop is resampled to; 0 keeps the padded crop as is.
  std::size_t crop_size = 128;
  bool quantize = true;
  std::optional<std::filesystem::path> debug_dir;
};

/// Every intermediate product of the preprocessing chain.
struct Preprocessed {
  GrayImage gray;
  BinaryImage binary;
  BinaryImage largest;
  Centroid center;
  EllipseSpec ellipse;
  FaceCrop crop;
};

inline Preprocessed preprocess(const DecodedImage& decoded, Connectivity conn) {
  Preprocessed p;
  p.gray = to_grayscale(decoded);
  p.binary = binarize(p.gray);
  p.largest = largest_component(label_components(p.binary, conn));
  p.center = centroid(p.largest);
  p.ellipse = derive_ellipse(p.largest, p.center);
  p.crop = crop_face(p.gray, p.ellipse);
  return p;
}

/// Nearest-neighbour resampling of the crop's bounding box (padding excluded)
/// to size × size. Sample centres map as src = floor((2·dst + 1)·src_len / (2·size)).
inline GrayImage resample_crop(const FaceCrop& crop, std::size_t size) {
  GrayImage out(size, size);
  const std::size_t cw = crop.content_width;
  const std::size_t ch = crop.content_height;
  for (std::size_t y = 0; y < size; ++y) {
    const std::size_t sy = (2 * y + 1) * ch / (2 * size);
    for (std::size_t x = 0; x < size; ++x) {
      const std::size_t sx = (2 * x + 1) * cw / (2 * size);
      out(x, y) = crop.pixels(sx, sy);
    }
  }
  return out;
}

/// The raster that feature extraction starts from.
inline GrayImage normalized_face(const FaceCrop& crop, const PipelineConfig& cfg) {
  return cfg.crop_size == 0 ? crop.pixels : resample_crop(crop, cfg.crop_size);
}

inline Pyramid decompose_face(const GrayImage& face, int level) {
  return decompose_to_level(raster_cast<double>(face), level);
}

inline FeatureSeries features_at(const GrayImage& face, FeatureLevel level) {
  if (level.value == 0) return vectorize(face, level);
  return vectorize(decompose_face(face, level.value).ll());
}

inline RealSeries real_features_at(const GrayImage& face, FeatureLevel level) {
  if (level.value == 0) return vectorize_real(face, level);
  return vectorize_real(decompose_face(face, level.value).ll().values, level);
}

template <class T>
Series<T> series_at(const GrayImage& face, FeatureLevel level) {
  if constexpr (std::is_same_v<T, double>)
    return real_features_at(face, level);
  else
    return features_at(face, level);
}

/// Writes gray, binary, largest-component and crop PGMs named after `stem`.
inline void write_debug_images(const std::filesystem::path& dir, const std::string& stem,
                               const Preprocessed& p) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("io", ErrorCode::IoError, "cannot create " + dir.string());
  write_file_atomic(dir / (stem + "_gray.pgm"), encode_pgm(p.gray));
  write_file_atomic(dir / (stem + "_binary.pgm"), encode_pgm(to_gray(p.binary)));
  write_file_atomic(dir / (stem + "_largest.pgm"), encode_pgm(to_gray(p.largest)));
  write_file_atomic(dir / (stem + "_crop.pgm"), encode_pgm(p.crop.pixels));
}

/// Preprocesses one image file into its normalized face raster. Errors keep
/// their stage tag and gain the path as context.
inline GrayImage load_face(const std::filesystem::path& path, const PipelineConfig& cfg) {
  try {
    auto pre = preprocess(read_image(path), cfg.connectivity);
    if (cfg.debug_dir) write_debug_images(*cfg.debug_dir, path.stem().string(), pre);
    return normalized_face(pre.crop, cfg);
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

/// decode → grayscale → binarize → label → largest → centroid → ellipse →
/// crop → (decompose) → vectorize.
inline FeatureSeries run_pipeline(const std::filesystem::path& path, FeatureLevel level,
                                  const PipelineConfig& cfg) {
  const auto face = load_face(path, cfg);
  try {
    return features_at(face, level);
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

inline RealSeries run_pipeline_real(const std::filesystem::path& path, FeatureLevel level,
                                    const PipelineConfig& cfg) {
  const auto face = load_face(path, cfg);
  try {
    return real_features_at(face, level);
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

}  // namespace tface
