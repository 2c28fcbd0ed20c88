#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tface/segmentation.hpp"

using namespace tface;

namespace {

BinaryImage mask_from(std::size_t w, std::size_t h, std::initializer_list<std::pair<int, int>> on) {
  BinaryImage m(w, h, 0);
  for (auto [x, y] : on) m(x, y) = 1;
  return m;
}

BinaryImage filled_ellipse(std::size_t w, std::size_t h, double cx, double cy, double rx, double ry) {
  BinaryImage m(w, h, 0);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      const double dx = (x - cx) / rx, dy = (y - cy) / ry;
      m(x, y) = dx * dx + dy * dy <= 1.0;
    }
  return m;
}

std::vector<std::uint32_t> labels_of(const ComponentMap& cm) {
  return {cm.labels.pixels().begin(), cm.labels.pixels().end()};
}

}  // namespace

TEST(LabelComponents, IsolatedCorners) {
  auto m = mask_from(3, 3, {{0, 0}, {2, 0}, {0, 2}, {2, 2}});
  auto cm = label_components(m, Connectivity::Four);
  EXPECT_EQ(cm.count(), 4u);
  EXPECT_EQ(cm.sizes, (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(LabelComponents, DiagonalsJoinUnderEight) {
  auto m = mask_from(3, 3, {{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}});
  auto cm = label_components(m, Connectivity::Eight);
  EXPECT_EQ(cm.count(), 1u);
  EXPECT_EQ(cm.sizes, (std::vector<std::size_t>{5}));
  EXPECT_EQ(label_components(m, Connectivity::Four).count(), 5u);
}

TEST(LabelComponents, EmptyMaskHasNoComponents) {
  EXPECT_EQ(label_components(BinaryImage(4, 4, 0)).count(), 0u);
}

TEST(LabelComponents, LabelsFollowFirstEncounter) {
  // U-shape: the right arm gets its own provisional label and merges via the bottom row.
  auto m = mask_from(5, 3, {{0, 0}, {4, 0}, {0, 1}, {4, 1}, {0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}});
  auto cm = label_components(m, Connectivity::Four);
  ASSERT_EQ(cm.count(), 1u);
  EXPECT_EQ(cm.labels(4, 0), 1u);
}

TEST(LabelComponents, MatchesFloodFillOracle) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = oracle::random_mask(rng, 32, 32, 0.45);
    for (int conn : {4, 8}) {
      auto cm = label_components(m, conn == 4 ? Connectivity::Four : Connectivity::Eight);
      auto expect = oracle::flood_fill_labels(m, conn);
      ASSERT_TRUE(oracle::same_partition(labels_of(cm), expect));
      // Both number in row-major first-encounter order, so labels agree exactly.
      ASSERT_EQ(labels_of(cm), std::vector<std::uint32_t>(expect.begin(), expect.end()));
    }
  }
}

TEST(LabelComponents, InvariantsAndConnectivityMonotone) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = oracle::random_mask(rng, 24, 20, 0.5);
    auto four = label_components(m, Connectivity::Four);
    auto eight = label_components(m, Connectivity::Eight);
    std::size_t fg = 0;
    for (auto p : m.pixels()) fg += p;
    for (const auto* cm : {&four, &eight}) {
      std::size_t total = 0;
      for (auto s : cm->sizes) total += s;
      ASSERT_EQ(total, fg);
      for (auto l : cm->labels.pixels()) ASSERT_LE(l, cm->count());
    }
    std::map<std::uint32_t, std::uint32_t> parent;
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto f = four.labels.pixels()[i];
      if (!f) continue;
      auto [it, inserted] = parent.emplace(f, eight.labels.pixels()[i]);
      ASSERT_EQ(it->second, eight.labels.pixels()[i]);
    }
  }
}

TEST(LargestComponent, PicksUniqueMaximum) {
  // Sizes 1, 5, 3 in label order.
  auto m = mask_from(7, 3, {{0, 0}, {2, 0}, {3, 0}, {2, 1}, {3, 1}, {2, 2}, {5, 0}, {5, 1}, {5, 2}});
  auto cm = label_components(m, Connectivity::Four);
  ASSERT_EQ(cm.sizes, (std::vector<std::size_t>{1, 5, 3}));
  auto big = largest_component(cm);
  EXPECT_EQ(big, mask_from(7, 3, {{2, 0}, {3, 0}, {2, 1}, {3, 1}, {2, 2}}));
}

TEST(LargestComponent, TieGoesToLowerLabel) {
  auto m = mask_from(5, 2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {3, 0}, {4, 0}, {3, 1}, {4, 1}});
  auto cm = label_components(m, Connectivity::Eight);
  ASSERT_EQ(cm.sizes, (std::vector<std::size_t>{4, 4}));
  EXPECT_EQ(largest_component(cm), mask_from(5, 2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
}

TEST(LargestComponent, NoForeground) {
  try {
    largest_component(label_components(BinaryImage(3, 3, 0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoForeground);
    EXPECT_STREQ(e.what(), "segmentation: NoForeground");
  }
}

TEST(Centroid, Examples) {
  auto full = centroid(BinaryImage(5, 5, 1));
  EXPECT_DOUBLE_EQ(full.x(), 2.0);
  EXPECT_DOUBLE_EQ(full.y(), 2.0);
  auto one = centroid(mask_from(8, 9, {{3, 7}}));
  EXPECT_DOUBLE_EQ(one.x(), 3.0);
  EXPECT_DOUBLE_EQ(one.y(), 7.0);
  auto two = centroid(mask_from(5, 1, {{0, 0}, {4, 0}}));
  EXPECT_DOUBLE_EQ(two.x(), 2.0);
  EXPECT_DOUBLE_EQ(two.y(), 0.0);
  EXPECT_THROW(centroid(BinaryImage(2, 2, 0)), Error);
}

TEST(Centroid, RoundsHalfUp) {
  auto c = centroid(mask_from(4, 1, {{0, 0}, {1, 0}, {2, 0}, {3, 0}}));  // x = 1.5
  EXPECT_EQ(c.rounded_x(), 2);
  auto d = centroid(mask_from(4, 1, {{0, 0}, {1, 0}, {2, 0}}));  // x = 1
  EXPECT_EQ(d.rounded_x(), 1);
}

TEST(Centroid, UnionIsSizeWeightedAverage) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = oracle::random_mask(rng, 20, 20, 0.3);
    a(0, 0) = 1;
    a(19, 19) = 0;
    BinaryImage b(20, 20, 0), u(20, 20, 0);
    for (std::size_t i = 0; i < a.size(); ++i) b.pixels()[i] = !a.pixels()[i] && rng() % 3 == 0;
    b(19, 19) = 1;
    for (std::size_t i = 0; i < a.size(); ++i) u.pixels()[i] = a.pixels()[i] | b.pixels()[i];
    auto ca = centroid(a), cb = centroid(b), cu = centroid(u);
    // Exact: (m_a·x_a + m_b·x_b) / (m_a + m_b) reduces to summing the numerators.
    ASSERT_EQ(cu.sum_x, ca.sum_x + cb.sum_x);
    ASSERT_EQ(cu.sum_y, ca.sum_y + cb.sum_y);
    ASSERT_EQ(cu.mass, ca.mass + cb.mass);
    const double wx = (ca.mass * ca.x() + cb.mass * cb.x()) / (ca.mass + cb.mass);
    ASSERT_NEAR(cu.x(), wx, 1e-12);
  }
}

TEST(DeriveEllipse, FilledEllipseRecoversSemiAxes) {
  auto m = filled_ellipse(101, 121, 50, 60, 20, 30);
  auto spec = derive_ellipse(m, centroid(m));
  EXPECT_EQ(spec.center, (Point{50, 60}));
  EXPECT_NEAR(spec.semi_minor, 20, 1);
  EXPECT_NEAR(spec.semi_major, 30, 1);
}

TEST(DeriveEllipse, SinglePixelFloorsAtOne) {
  auto m = mask_from(5, 5, {{2, 2}});
  auto spec = derive_ellipse(m, centroid(m));
  EXPECT_EQ(spec.semi_major, 1);
  EXPECT_EQ(spec.semi_minor, 1);
}

TEST(DeriveEllipse, FilledSquare) {
  BinaryImage m(21, 21, 0);
  for (int y = 5; y <= 15; ++y)
    for (int x = 5; x <= 15; ++x) m(x, y) = 1;
  auto spec = derive_ellipse(m, centroid(m));
  EXPECT_EQ(spec.center, (Point{10, 10}));
  EXPECT_EQ(spec.semi_minor, 5);
  EXPECT_EQ(spec.semi_major, 5);
}

TEST(DeriveEllipse, ClampsToImage) {
  // Face blob that runs off the bottom edge: downward room limits the vertical axis.
  BinaryImage m(40, 30, 0);
  for (int y = 10; y < 30; ++y)
    for (int x = 5; x < 35; ++x) m(x, y) = 1;
  auto spec = derive_ellipse(m, centroid(m));
  EXPECT_LE(spec.center.y + spec.semi_major, 29);
  EXPECT_GE(spec.center.x - spec.semi_minor, 0);
  EXPECT_NO_THROW(crop_face(GrayImage(40, 30, 7), spec));
}

TEST(RasterizeEllipse, UnitEllipseIsFourAxisPixels) {
  auto pts = rasterize_ellipse({{10, 10}, 1, 1});
  std::vector<Point> expect = {{9, 10}, {10, 9}, {10, 11}, {11, 10}};
  EXPECT_EQ(pts, expect);
}

TEST(RasterizeEllipse, CircleMatchesMidpointCircle) {
  for (long r = 1; r <= 40; ++r) {
    auto pts = rasterize_ellipse({{0, 0}, r, r});
    std::set<std::pair<long, long>> got;
    for (auto p : pts) got.insert({p.x, p.y});
    ASSERT_EQ(got, oracle::midpoint_circle(r)) << "r=" << r;
  }
}

TEST(RasterizeEllipse, SymmetricAndNearCurve) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    EllipseSpec spec{{static_cast<std::int64_t>(rng() % 50), static_cast<std::int64_t>(rng() % 50)},
                     1 + static_cast<std::int64_t>(rng() % 60),
                     1 + static_cast<std::int64_t>(rng() % 60)};
    auto pts = rasterize_ellipse(spec);
    std::set<Point> set(pts.begin(), pts.end());
    for (auto p : pts) {
      const Point mx{2 * spec.center.x - p.x, p.y};
      const Point my{p.x, 2 * spec.center.y - p.y};
      ASSERT_TRUE(set.count(mx) && set.count(my));
      // The curve passes through the 3x3 neighbourhood: the implicit function changes sign there.
      std::int64_t lo = spec.implicit(p.x, p.y), hi = lo;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          lo = std::min(lo, spec.implicit(p.x + dx, p.y + dy));
          hi = std::max(hi, spec.implicit(p.x + dx, p.y + dy));
        }
      ASSERT_LE(lo, 0);
      ASSERT_GE(hi, 0);
    }
  }
}

TEST(RasterizeEllipse, BoundaryIsEightConnected) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{3, 9}, {17, 5}, {25, 25}, {40, 12}}) {
    auto pts = rasterize_ellipse({{0, 0}, b, a});
    std::set<Point> set(pts.begin(), pts.end());
    for (auto p : pts) {
      int neighbours = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if ((dx || dy) && set.count({p.x + dx, p.y + dy})) ++neighbours;
      ASSERT_GE(neighbours, 2) << "gap near (" << p.x << "," << p.y << ")";
    }
  }
}

TEST(CropFace, ConstantImage) {
  EllipseSpec spec{{20, 15}, 10, 7};
  auto crop = crop_face(GrayImage(50, 40, 128), spec);
  EXPECT_EQ(crop.content_width, 15u);
  EXPECT_EQ(crop.content_height, 21u);
  EXPECT_EQ(crop.width(), 16u);
  EXPECT_EQ(crop.height(), 24u);
  for (std::size_t i = 0; i < crop.pixels.size(); ++i)
    ASSERT_EQ(crop.pixels.pixels()[i], crop.mask.pixels()[i] ? 128 : 0);
}

TEST(CropFace, MaskIsExactlyTheInteriorInequality) {
  EllipseSpec spec{{30, 30}, 17, 11};
  auto crop = crop_face(GrayImage(64, 64, 9), spec);
  for (std::size_t y = 0; y < crop.height(); ++y)
    for (std::size_t x = 0; x < crop.width(); ++x) {
      const auto gx = static_cast<std::int64_t>(x) + 30 - 11;
      const auto gy = static_cast<std::int64_t>(y) + 30 - 17;
      const bool inside = x < crop.content_width && y < crop.content_height &&
                          11 * 11 * 17 * 17 >= 17 * 17 * (gx - 30) * (gx - 30) +
                                                    11 * 11 * (gy - 30) * (gy - 30);
      ASSERT_EQ(crop.mask(x, y), inside);
    }
}

TEST(CropFace, InteriorAreaNearAnalytic) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{20, 20}, {20, 35}, {31, 24}, {50, 60}}) {
    EllipseSpec spec{{70, 70}, b, a};
    auto crop = crop_face(GrayImage(141, 141, 1), spec);
    std::size_t inside = 0;
    for (auto p : crop.mask.pixels()) inside += p;
    const double area = std::numbers::pi * a * b;
    EXPECT_NEAR(static_cast<double>(inside), area, 0.05 * area);
  }
}

TEST(CropFace, CropOfCropIsIdentical) {
  std::mt19937 rng(4);
  auto g = oracle::random_gray(rng, 80, 60);
  EllipseSpec spec{{40, 30}, 25, 18};
  auto first = crop_face(g, spec);
  auto second = crop_face(first.pixels, {{18, 25}, 25, 18});
  EXPECT_EQ(second.pixels, first.pixels);
  EXPECT_EQ(second.mask, first.mask);
}

TEST(CropFace, OutOfBounds) {
  try {
    crop_face(GrayImage(20, 20, 0), {{3, 10}, 5, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfBounds);
  }
}
