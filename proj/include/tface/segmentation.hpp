#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tface/error.hpp"
#include "tface/raster.hpp"

namespace tface {

enum class Connectivity { Four = 4, Eight = 8 };

/// Per-pixel component labels (0 = background, 1..K) and the size of each component.
struct ComponentMap {
  Raster<std::uint32_t> labels;
  /// sizes[k - 1] is the pixel count of component k.
  std::vector<std::size_t> sizes;

  std::size_t count() const noexcept { return sizes.size(); }
};

namespace detail {

class DisjointSets {
 public:
  std::uint32_t make() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }
  std::uint32_t find(std::uint32_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace detail

/// Two-pass union-find labeling. Final labels follow first appearance in
/// row-major order.
inline ComponentMap label_components(const BinaryImage& mask,
                                     Connectivity conn = Connectivity::Eight) {
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  Raster<std::uint32_t> provisional(w, h, 0);
  detail::DisjointSets sets;
  sets.make();  // slot 0 is background

  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (!mask(x, y)) continue;
      std::uint32_t neighbours[4];
      std::size_t n = 0;
      if (x > 0 && provisional(x - 1, y)) neighbours[n++] = provisional(x - 1, y);
      if (y > 0) {
        if (provisional(x, y - 1)) neighbours[n++] = provisional(x, y - 1);
        if (conn == Connectivity::Eight) {
          if (x > 0 && provisional(x - 1, y - 1)) neighbours[n++] = provisional(x - 1, y - 1);
          if (x + 1 < w && provisional(x + 1, y - 1)) neighbours[n++] = provisional(x + 1, y - 1);
        }
      }
      if (n == 0) {
        provisional(x, y) = sets.make();
        continue;
      }
      provisional(x, y) = neighbours[0];
      for (std::size_t i = 1; i < n; ++i) sets.unite(neighbours[0], neighbours[i]);
    }
  }

  ComponentMap out{Raster<std::uint32_t>(w, h, 0), {}};
  std::vector<std::uint32_t> final_label;
  auto src = provisional.pixels();
  auto dst = out.labels.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src[i]) continue;
    const std::uint32_t root = sets.find(src[i]);
    if (root >= final_label.size()) final_label.resize(root + 1, 0);
    if (!final_label[root]) {
      out.sizes.push_back(0);
      final_label[root] = static_cast<std::uint32_t>(out.sizes.size());
    }
    dst[i] = final_label[root];
    ++out.sizes[dst[i] - 1];
  }
  return out;
}

/// Mask of the biggest component; ties go to the lowest label.
inline BinaryImage largest_component(const ComponentMap& cm) {
  if (cm.count() == 0) throw Error("segmentation", ErrorCode::NoForeground);
  const auto best = std::ranges::max_element(cm.sizes, std::less<>{}) - cm.sizes.begin();
  // max_element returns the first maximum, which is the lowest label.
  const auto keep = static_cast<std::uint32_t>(best + 1);
  BinaryImage out(cm.labels.width(), cm.labels.height());
  std::ranges::transform(cm.labels.pixels(), out.pixels().begin(),
                         [keep](std::uint32_t l) { return static_cast<std::uint8_t>(l == keep); });
  return out;
}

/// Mass centre of a 0/1 mask, held as exact integer sums.
struct Centroid {
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;
  std::int64_t mass = 0;

  double x() const noexcept { return static_cast<double>(sum_x) / static_cast<double>(mass); }
  double y() const noexcept { return static_cast<double>(sum_y) / static_cast<double>(mass); }
  /// floor(sum / mass + 1/2) without leaving integer arithmetic.
  std::int64_t rounded_x() const noexcept { return (2 * sum_x + mass) / (2 * mass); }
  std::int64_t rounded_y() const noexcept { return (2 * sum_y + mass) / (2 * mass); }
};

inline Centroid centroid(const BinaryImage& mask) {
  Centroid c;
  for (std::size_t y = 0; y < mask.height(); ++y) {
    auto row = mask.row(y);
    for (std::size_t x = 0; x < row.size(); ++x) {
      if (!row[x]) continue;
      c.sum_x += static_cast<std::int64_t>(x);
      c.sum_y += static_cast<std::int64_t>(y);
      ++c.mass;
    }
  }
  if (c.mass == 0) throw Error("segmentation", ErrorCode::NoForeground);
  return c;
}

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  auto operator<=>(const Point&) const = default;
};

/// Axis-aligned ellipse. `semi_major` is vertical (centre to forehead),
/// `semi_minor` horizontal (centre to ear).
struct EllipseSpec {
  Point center;
  std::int64_t semi_major = 1;
  std::int64_t semi_minor = 1;

  bool operator==(const EllipseSpec&) const = default;

  /// b²(x−cx)² + a²(y−cy)² − a²b² with a horizontal, b vertical. Non-positive inside.
  std::int64_t implicit(std::int64_t x, std::int64_t y) const noexcept {
    const std::int64_t a2 = semi_minor * semi_minor;
    const std::int64_t b2 = semi_major * semi_major;
    const std::int64_t dx = x - center.x;
    const std::int64_t dy = y - center.y;
    return b2 * dx * dx + a2 * dy * dy - a2 * b2;
  }
  bool contains(std::int64_t x, std::int64_t y) const noexcept { return implicit(x, y) <= 0; }
};

/// Measures the face extent from the rounded centroid: farthest foreground
/// pixel along the centroid row, and topmost along its column. Both axes are
/// clamped so the ellipse stays inside the mask and floored at 1.
inline EllipseSpec derive_ellipse(const BinaryImage& mask, const Centroid& c) {
  if (c.mass == 0) throw Error("segmentation", ErrorCode::NoForeground);
  const auto w = static_cast<std::int64_t>(mask.width());
  const auto h = static_cast<std::int64_t>(mask.height());
  const std::int64_t cx = c.rounded_x();
  const std::int64_t cy = c.rounded_y();
  if (cx < 0 || cx >= w || cy < 0 || cy >= h)
    throw Error("segmentation", ErrorCode::OutOfBounds, "centroid outside mask");

  std::int64_t minor = 0;
  auto row = mask.row(static_cast<std::size_t>(cy));
  for (std::int64_t x = 0; x < w; ++x)
    if (row[static_cast<std::size_t>(x)]) minor = std::max(minor, x > cx ? x - cx : cx - x);

  std::int64_t major = 0;
  for (std::int64_t y = 0; y <= cy; ++y) {
    if (mask(static_cast<std::size_t>(cx), static_cast<std::size_t>(y))) {
      major = cy - y;
      break;
    }
  }

  minor = std::min({minor, cx, w - 1 - cx});
  major = std::min({major, cy, h - 1 - cy});
  return EllipseSpec{{cx, cy}, std::max<std::int64_t>(major, 1), std::max<std::int64_t>(minor, 1)};
}

namespace detail {

/// One midpoint run over the arc where `fast` is the stepping axis
/// (|slope| ≤ 1 relative to it). Emits first-quadrant offsets as (fast, slow).
/// The decision is evaluated exactly at the midpoint, scaled by 4 to stay integral.
template <class Emit>
void midpoint_run(std::int64_t fast_radius, std::int64_t slow_radius, Emit emit) {
  const std::int64_t f2 = fast_radius * fast_radius;  // coefficient on the slow axis
  const std::int64_t s2 = slow_radius * slow_radius;  // coefficient on the fast axis
  std::int64_t u = 0;
  std::int64_t v = slow_radius;
  emit(u, v);
  while (s2 * u < f2 * v) {
    ++u;
    // 4·F(u, v − ½) = 4·s²u² + f²(2v − 1)² − 4·f²s²
    const std::int64_t d = 4 * s2 * u * u + f2 * (2 * v - 1) * (2 * v - 1) - 4 * f2 * s2;
    if (d >= 0) --v;
    emit(u, v);
  }
}

}  // namespace detail

/// Integer boundary of the ellipse by the midpoint (Bresenham) method. Each
/// quadrant arc is traced in two runs, one stepping along x and one along y,
/// and mirrored about both axes. Returned sorted, without duplicates.
inline std::vector<Point> rasterize_ellipse(const EllipseSpec& spec) {
  const std::int64_t a = std::max<std::int64_t>(spec.semi_minor, 1);
  const std::int64_t b = std::max<std::int64_t>(spec.semi_major, 1);
  std::vector<Point> pts;
  auto mirror = [&](std::int64_t dx, std::int64_t dy) {
    for (std::int64_t sx : {-1, 1})
      for (std::int64_t sy : {-1, 1})
        pts.push_back({spec.center.x + sx * dx, spec.center.y + sy * dy});
  };
  detail::midpoint_run(a, b, [&](std::int64_t u, std::int64_t v) { mirror(u, v); });
  detail::midpoint_run(b, a, [&](std::int64_t u, std::int64_t v) { mirror(v, u); });
  std::ranges::sort(pts);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Elliptical face cut-out on the ellipse bounding box. `content_*` is the
/// box itself; `pixels`/`mask` are zero-padded right and bottom to a multiple of 4.
struct FaceCrop {
  GrayImage pixels;
  BinaryImage mask;
  std::size_t content_width = 0;
  std::size_t content_height = 0;

  std::size_t width() const noexcept { return pixels.width(); }
  std::size_t height() const noexcept { return pixels.height(); }
};

inline constexpr std::size_t round_up(std::size_t v, std::size_t multiple) noexcept {
  return (v + multiple - 1) / multiple * multiple;
}

inline FaceCrop crop_face(const GrayImage& gray, const EllipseSpec& spec) {
  const std::int64_t x0 = spec.center.x - spec.semi_minor;
  const std::int64_t x1 = spec.center.x + spec.semi_minor;
  const std::int64_t y0 = spec.center.y - spec.semi_major;
  const std::int64_t y1 = spec.center.y + spec.semi_major;
  if (spec.semi_minor < 1 || spec.semi_major < 1 || x0 < 0 || y0 < 0 ||
      x1 >= static_cast<std::int64_t>(gray.width()) ||
      y1 >= static_cast<std::int64_t>(gray.height()))
    throw Error("segmentation", ErrorCode::OutOfBounds, "ellipse bounding box exceeds image");

  FaceCrop crop;
  crop.content_width = static_cast<std::size_t>(x1 - x0 + 1);
  crop.content_height = static_cast<std::size_t>(y1 - y0 + 1);
  const std::size_t pw = round_up(crop.content_width, 4);
  const std::size_t ph = round_up(crop.content_height, 4);
  crop.pixels = GrayImage(pw, ph, 0);
  crop.mask = BinaryImage(pw, ph, 0);
  for (std::size_t cy = 0; cy < crop.content_height; ++cy) {
    const std::int64_t y = y0 + static_cast<std::int64_t>(cy);
    for (std::size_t cx = 0; cx < crop.content_width; ++cx) {
      const std::int64_t x = x0 + static_cast<std::int64_t>(cx);
      if (!spec.contains(x, y)) continue;
      crop.mask(cx, cy) = 1;
      crop.pixels(cx, cy) = gray(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
    }
  }
  return crop;
}

}  // namespace tface
