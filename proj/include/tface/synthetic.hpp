#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tface/io.hpp"
#include "tface/manifest.hpp"
#include "tface/pnm.hpp"
#include "tface/raster.hpp"

namespace tface {

/// Parameters of a thermal-like synthetic face set: a warm textured ellipse
/// on a cool background plus one small warm distractor blob.
struct SyntheticSpec {
  std::size_t subjects = 10;
  std::size_t images_per_subject = 4;
  std::size_t width = 160;
  std::size_t height = 120;
  /// Per-image noise amplitude: every pixel gets a uniform integer in [-noise, noise].
  int noise = 2;
  std::uint64_t seed = 1;
  /// Every image gets its own texture; subject labels then carry no signal.
  bool independent_textures = false;
};

struct SyntheticImage {
  std::string subject_id;
  GrayImage image;
};

namespace detail {

struct Texture {
  struct Wave {
    double amplitude, fx, fy, phase;
  };
  std::vector<Wave> waves;

  static Texture random(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(12.0, 24.0);
    std::uniform_real_distribution<double> freq(-0.35, 0.35);
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    Texture t;
    for (int i = 0; i < 3; ++i) t.waves.push_back({amp(rng), freq(rng), freq(rng), phase(rng)});
    return t;
  }

  double operator()(double x, double y) const {
    double v = 150.0;
    for (const auto& w : waves) v += w.amplitude * std::sin(w.fx * x + w.fy * y + w.phase);
    return v;
  }
};

inline GrayImage render_face(const SyntheticSpec& spec, const Texture& tex, std::mt19937_64& rng) {
  const double cx = static_cast<double>(spec.width / 2);
  const double cy = static_cast<double>(spec.height / 2);
  const double rx = 0.3 * static_cast<double>(spec.width);
  const double ry = 0.4 * static_cast<double>(spec.height);
  std::uniform_int_distribution<int> jitter(-spec.noise, spec.noise);
  GrayImage img(spec.width, spec.height);
  const std::size_t blob = std::max<std::size_t>(2, spec.width / 20);
  for (std::size_t y = 0; y < spec.height; ++y) {
    for (std::size_t x = 0; x < spec.width; ++x) {
      const double dx = (static_cast<double>(x) - cx) / rx;
      const double dy = (static_cast<double>(y) - cy) / ry;
      double v = 20.0;
      if (dx * dx + dy * dy <= 1.0)
        v = std::round(tex(static_cast<double>(x), static_cast<double>(y)));
      else if (x < blob && y + blob >= spec.height)
        v = 200.0;
      img(x, y) = static_cast<std::uint8_t>(std::clamp(v + jitter(rng), 0.0, 255.0));
    }
  }
  return img;
}

}  // namespace detail

inline std::string subject_name(std::size_t s) {
  std::string id = std::to_string(s + 1);
  return "s" + std::string(id.size() < 2 ? 2 - id.size() : 0, '0') + id;
}

/// Images grouped by subject, in subject order.
inline std::vector<SyntheticImage> make_synthetic_faces(const SyntheticSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<SyntheticImage> out;
  for (std::size_t s = 0; s < spec.subjects; ++s) {
    auto tex = detail::Texture::random(rng);
    for (std::size_t i = 0; i < spec.images_per_subject; ++i) {
      if (spec.independent_textures) tex = detail::Texture::random(rng);
      out.push_back({subject_name(s), detail::render_face(spec, tex, rng)});
    }
  }
  return out;
}

/// Writes one PGM per image and `manifest.csv` into `dir`; returns the manifest path.
inline std::filesystem::path write_synthetic_dataset(const std::filesystem::path& dir,
                                                     const std::vector<SyntheticImage>& images) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("io", ErrorCode::IoError, "cannot create " + dir.string());
  DatasetManifest m;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string name = images[i].subject_id + "_" + std::to_string(i) + ".pgm";
    write_file_atomic(dir / name, encode_pgm(images[i].image));
    m.entries.push_back({name, images[i].subject_id});
  }
  const auto manifest = dir / "manifest.csv";
  write_file_atomic(manifest, format_manifest(m));
  return manifest;
}

}  // namespace tface
