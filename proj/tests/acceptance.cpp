// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <unistd.h>

#include "oracles.hpp"
#include "tface/tface.hpp"

using namespace tface;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("tface_accept_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RealRaster random_raster(std::mt19937& rng, std::size_t w, std::size_t h) {
  std::uniform_int_distribution<int> v(0, 255);
  RealRaster r(w, h);
  for (auto& p : r.pixels()) p = v(rng);
  return r;
}

std::vector<std::uint8_t> random_values(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> v(0, 255);
  std::vector<std::uint8_t> out(n);
  for (auto& x : out) x = static_cast<std::uint8_t>(v(rng));
  return out;
}

FeatureSeries as_series(std::vector<std::uint8_t> v, std::string subject = {}) {
  return {std::move(v), FeatureLevel::original(), std::move(subject)};
}

Outcome table_vectors() {
  const auto step = haar_step_1d(std::vector<double>{10, 4, 9, 5});
  if (step.averages != std::vector<double>{7, 7} || step.details != std::vector<double>{3, 2})
    return fail("haar_step_1d([10,4,9,5]) wrong");
  if (haar_full_1d(std::vector<double>{10, 4, 9, 5}) != std::vector<double>{7, 0, 3, 2})
    return fail("haar_full_1d([10,4,9,5]) != [7,0,3,2]");
  return {true, "[7,7],[3,2] and [7,0,3,2]"};
}

Outcome sim_bound() {
  const std::size_t n = 320 * 240;
  const auto d = sim(as_series(std::vector<std::uint8_t>(n, 0)), as_series(std::vector<std::uint8_t>(n, 255)));
  if (d != 19584000u) return fail("sim = " + std::to_string(d));
  return {true, "sim = 19584000"};
}

Outcome dwt_round_trip() {
  std::mt19937 rng(2024);
  const int trials = 120;
  for (int t = 0; t < trials; ++t) {
    // Two levels need both dimensions divisible by 4.
    const std::size_t w = 4 * (1 + rng() % 32), h = 4 * (1 + rng() % 32);
    const auto img = random_raster(rng, w, h);
    if (reconstruct(decompose_to_level(img, 2)) != img)
      return fail("mismatch at " + std::to_string(w) + "x" + std::to_string(h));
  }
  return {true, std::to_string(trials) + " rasters bit-exact"};
}

Outcome ccl_oracle() {
  std::mt19937 rng(7);
  const int masks = 250;
  for (int t = 0; t < masks; ++t) {
    const auto mask = oracle::random_mask(rng, 32, 32, 0.1 + 0.8 * (t % 9) / 8.0);
    for (auto conn : {Connectivity::Four, Connectivity::Eight}) {
      const auto map = label_components(mask, conn);
      const std::vector<std::uint32_t> got(map.labels.pixels().begin(), map.labels.pixels().end());
      if (!oracle::same_partition(got, oracle::flood_fill_labels(mask, static_cast<int>(conn))))
        return fail("partition differs on mask " + std::to_string(t));
    }
  }
  return {true, std::to_string(masks) + " masks x 2 connectivities"};
}

Outcome centroid_oracle() {
  std::mt19937 rng(11);
  const int masks = 150;
  int checked = 0;
  for (int t = 0; t < masks; ++t) {
    auto mask = oracle::random_mask(rng, 1 + rng() % 64, 1 + rng() % 64, 0.05 + 0.9 * (t % 10) / 9.0);
    const auto ref = oracle::brute_centroid(mask);
    if (ref.den == 0) continue;
    const auto c = centroid(mask);
    const auto mass = static_cast<std::int64_t>(c.mass);
    if (static_cast<std::int64_t>(c.sum_x) * ref.den != ref.num_x * mass ||
        static_cast<std::int64_t>(c.sum_y) * ref.den != ref.num_y * mass)
      return fail("centroid differs on mask " + std::to_string(t));
    ++checked;
  }
  if (checked < 100) return fail("only " + std::to_string(checked) + " non-empty masks");
  return {true, std::to_string(checked) + " masks exact"};
}

Outcome ellipse_raster() {
  for (long r = 3; r <= 30; ++r) {
    std::set<std::pair<long, long>> got;
    for (auto p : rasterize_ellipse({{0, 0}, r, r})) got.insert({p.x, p.y});
    if (got != oracle::midpoint_circle(r)) return fail("circle r=" + std::to_string(r));
  }
  std::mt19937 rng(5);
  const int general = 300;
  for (int t = 0; t < general; ++t) {
    const EllipseSpec spec{{static_cast<std::int64_t>(rng() % 100), static_cast<std::int64_t>(rng() % 100)},
                           1 + static_cast<std::int64_t>(rng() % 80),
                           1 + static_cast<std::int64_t>(rng() % 80)};
    const auto pts = rasterize_ellipse(spec);
    const std::set<Point> set(pts.begin(), pts.end());
    for (auto p : pts) {
      if (!set.count({2 * spec.center.x - p.x, p.y}) || !set.count({p.x, 2 * spec.center.y - p.y}))
        return fail("asymmetric at trial " + std::to_string(t));
      // Within one pixel: the implicit function changes sign on a unit segment from p.
      const auto f0 = spec.implicit(p.x, p.y);
      bool near = f0 == 0;
      for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const auto f1 = spec.implicit(p.x + dx, p.y + dy);
        near = near || (f0 <= 0) != (f1 <= 0);
      }
      if (!near) return fail("point off curve at trial " + std::to_string(t));
    }
  }
  return {true, "r=3..30 circles, " + std::to_string(general) + " general ellipses"};
}

Outcome classifier_oracle() {
  std::mt19937 rng(13);
  const int galleries = 50;
  for (int g = 0; g < galleries; ++g) {
    const std::size_t n = 32 + rng() % 225;
    std::vector<FeatureSeries> train;
    std::vector<std::vector<std::uint8_t>> raw;
    for (int s = 0; s < 10; ++s)
      for (int k = 0; k < 2; ++k) {
        raw.push_back(random_values(rng, n));
        train.push_back(as_series(raw.back(), "s" + std::to_string(s)));
      }
    const GalleryModel gallery(train);
    for (int p = 0; p < 10; ++p) {
      const auto probe = random_values(rng, n);
      const auto expect = oracle::brute_argmin(probe, raw);
      const auto got = nearest_series(as_series(probe), gallery);
      if (got.ranked.front().index != expect || got.predicted != train[expect].subject_id)
        return fail("gallery " + std::to_string(g) + " probe " + std::to_string(p));
    }
  }
  return {true, std::to_string(galleries) + " galleries x 10 probes"};
}

Outcome end_to_end() {
  TempDir dir("e2e");
  const SyntheticSpec spec;  // 10 subjects x 4 images, noise 2
  const auto manifest = load_manifest(write_synthetic_dataset(dir.path, make_synthetic_faces(spec)));
  if (manifest.entries.size() != 40) return fail("expected 40 images");

  const PipelineConfig pcfg;
  std::vector<std::vector<std::uint8_t>> original;
  for (const auto& e : manifest.entries)
    original.push_back(run_pipeline(e.image_path, FeatureLevel::original(), pcfg).values);
  std::uint64_t intra = 0, inter = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < original.size(); ++i)
    for (std::size_t j = i + 1; j < original.size(); ++j) {
      const auto d = oracle::brute_l1(original[i], original[j]);
      if (manifest.entries[i].subject_id == manifest.entries[j].subject_id) intra = std::max(intra, d);
      else inter = std::min(inter, d);
    }
  if (inter < 10 * intra)
    return fail("margin " + std::to_string(inter) + " < 10 x " + std::to_string(intra));

  EvalConfig cfg;
  cfg.classifiers = {ClassifierKind::Nearest};
  const auto report = evaluate(manifest, cfg);
  if (report.rows.size() != 3) return fail("expected 3 rows");
  for (const auto& row : report.rows)
    if (row.correct != row.total || row.total != 20)
      return fail(to_string(row.level) + " " + std::to_string(row.correct) + "/" + std::to_string(row.total));

  const auto ll2 = run_pipeline(manifest.entries[0].image_path, FeatureLevel::ll(2), pcfg);
  if (ll2.size() != pcfg.crop_size * pcfg.crop_size / 16) return fail("LL2 length at crop 128");
  PipelineConfig native = pcfg;
  native.crop_size = 0;
  const auto pre = preprocess(read_image(manifest.entries[0].image_path), native.connectivity);
  const auto crop_pixels = pre.crop.width() * pre.crop.height();
  if (run_pipeline(manifest.entries[0].image_path, FeatureLevel::ll(2), native).size() != crop_pixels / 16)
    return fail("LL2 length at native crop");

  char margin[32];
  std::snprintf(margin, sizeof margin, "%.1f", static_cast<double>(inter) / static_cast<double>(intra));
  return {true, "100% at original/ll1/ll2, margin " + std::string(margin) + "x, LL2 length " +
                    std::to_string(ll2.size())};
}

Outcome chance_and_determinism() {
  TempDir dir("chance");
  SyntheticSpec spec;
  spec.images_per_subject = 10;
  auto images = make_synthetic_faces(spec);
  // Shuffle labels: each label keeps its count, but no longer tracks the texture.
  std::vector<std::string> labels;
  for (const auto& im : images) labels.push_back(im.subject_id);
  std::mt19937 rng(17);
  std::shuffle(labels.begin(), labels.end(), rng);
  for (std::size_t i = 0; i < images.size(); ++i) images[i].subject_id = labels[i];
  const auto path = write_synthetic_dataset(dir.path, images);
  const auto manifest = load_manifest(path);

  EvalConfig cfg;
  cfg.levels = {FeatureLevel::ll(2)};
  cfg.classifiers = {ClassifierKind::Nearest};
  const auto row = evaluate(manifest, cfg).rows.at(0);
  const double s = static_cast<double>(spec.subjects), n = static_cast<double>(row.total);
  const double p = 1.0 / s, sigma = 100.0 * std::sqrt(p * (1 - p) / n);
  if (std::abs(row.rate_percent - 100.0 * p) > 3 * sigma)
    return fail("random-label rate " + std::to_string(row.rate_percent) + "% outside 3 sigma");

  TempDir again("chance_again");
  const auto a = emit_report(evaluate(load_manifest(write_synthetic_dataset(again.path, images)), {}),
                             ReportFormat::Csv);
  const auto b = emit_report(evaluate(manifest, {}), ReportFormat::Csv);
  if (a != b) return fail("CSV reports differ between runs");

  char buf[96];
  std::snprintf(buf, sizeof buf, "random labels %.2f%% (chance %.2f%%, 3 sigma %.2f), CSV byte-identical",
                row.rate_percent, 100.0 * p, 3 * sigma);
  return {true, buf};
}

Outcome metric_axioms() {
  std::mt19937 rng(23);
  const int triples = 1500;
  for (int t = 0; t < triples; ++t) {
    const std::size_t n = 1 + rng() % 128;
    auto a = as_series(random_values(rng, n)), b = as_series(random_values(rng, n)),
         c = as_series(random_values(rng, n));
    if (t % 5 == 0) b = a;
    const auto ab = sim(a, b), ba = sim(b, a), ac = sim(a, c), bc = sim(b, c);
    if (ab != ba) return fail("symmetry");
    if (sim(a, a) != 0) return fail("self distance");
    if ((ab == 0) != (a.values == b.values)) return fail("identity of indiscernibles");
    if (ac > ab + bc) return fail("triangle inequality");
  }
  return {true, std::to_string(triples) + " triples"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Haar golden vectors", 1, table_vectors},
      {2, "dissimilarity upper bound", 1, sim_bound},
      {3, "two-level DWT round trip", 5, dwt_round_trip},
      {4, "CCL vs flood fill", 5, ccl_oracle},
      {5, "centroid vs direct sums", 1, centroid_oracle},
      {6, "ellipse rasterizer", 2, ellipse_raster},
      {7, "nearest_series vs brute argmin", 5, classifier_oracle},
      {8, "synthetic end-to-end", 30, end_to_end},
      {9, "chance level and determinism", 60, chance_and_determinism},
      {10, "metric axioms", 2, metric_axioms},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.budget_s) o = fail(o.detail + "; over time budget");
    failures += !o.pass;
    std::printf("%s  %2d  %-32s %8.3fs  (budget %gs)  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_s, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
