#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "tface/error.hpp"
#include "tface/features.hpp"

namespace tface {

/// Distance type: exact integers for quantized series.
template <class T>
using distance_t = std::conditional_t<std::is_integral_v<T>, std::uint64_t, double>;

/// Series matching dissimilarity: sum of absolute elementwise differences.
/// Zero iff identical; smaller is more similar.
template <class T>
distance_t<T> sim(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size())
    throw Error("classify", ErrorCode::LengthMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  distance_t<T> total{};
  for (std::size_t j = 0; j < a.size(); ++j) {
    if constexpr (std::is_integral_v<T>)
      total += a[j] > b[j] ? distance_t<T>(a[j] - b[j]) : distance_t<T>(b[j] - a[j]);
    else
      total += std::abs(a[j] - b[j]);
  }
  return total;
}

template <class T>
distance_t<T> sim(const Series<T>& a, const Series<T>& b) {
  return sim(std::span<const T>(a.values), std::span<const T>(b.values));
}

struct RankedMatch {
  std::string subject_id;
  double score = 0;
  /// Position of the matched series in the gallery.
  std::size_t index = 0;
};

struct MatchResult {
  std::string probe_id;
  /// Ascending by score; equal scores keep gallery order.
  std::vector<RankedMatch> ranked;
  std::string predicted;
};

/// Enrolled training series plus the column-mean reference used by the
/// scalar classifier. Immutable after construction.
template <class T>
class BasicGallery {
  using acc_t = std::conditional_t<std::is_integral_v<T>, std::int64_t, double>;

 public:
  BasicGallery() = default;

  explicit BasicGallery(std::vector<Series<T>> training) : series_(std::move(training)) {
    if (series_.empty()) throw Error("classify", ErrorCode::EmptyGallery);
    const std::size_t n = series_.front().size();
    column_sums_.assign(n, acc_t{});
    for (const auto& s : series_) {
      if (s.size() != n)
        throw Error("classify", ErrorCode::LengthMismatch,
                    "training series of length " + std::to_string(s.size()) + " vs " +
                        std::to_string(n));
      for (std::size_t j = 0; j < n; ++j) column_sums_[j] += static_cast<acc_t>(s.values[j]);
    }
    deviations_.reserve(series_.size());
    for (const auto& s : series_) deviations_.push_back(scaled_deviation(s.values));
  }

  bool empty() const noexcept { return series_.empty(); }
  std::size_t size() const noexcept { return series_.size(); }
  std::size_t series_length() const noexcept {
    return series_.empty() ? 0 : series_.front().size();
  }
  const std::vector<Series<T>>& series() const noexcept { return series_; }

  /// Column-wise mean of the training series (X).
  std::vector<double> mean_series() const {
    std::vector<double> x(column_sums_.size());
    for (std::size_t j = 0; j < x.size(); ++j)
      x[j] = static_cast<double>(column_sums_[j]) / static_cast<double>(series_.size());
    return x;
  }

  /// Σ_j |training_i[j] − X[j]| per training series (Y).
  std::vector<double> row_signatures() const {
    std::vector<double> y(deviations_.size());
    std::ranges::transform(deviations_, y.begin(), [this](acc_t d) { return unscale(d); });
    return y;
  }

  /// Σ_j |probe[j] − X[j]| (Z entry) for a probe.
  double signature(const Series<T>& probe) const { return unscale(probe_deviation(probe)); }

  /// Signatures scaled by the training count; exact integers for quantized series.
  const std::vector<acc_t>& scaled_signatures() const noexcept { return deviations_; }

  acc_t probe_deviation(const Series<T>& probe) const {
    if (probe.size() != series_length())
      throw Error("classify", ErrorCode::LengthMismatch,
                  "probe length " + std::to_string(probe.size()) + ", gallery " +
                      std::to_string(series_length()));
    return scaled_deviation(probe.values);
  }

  double unscale(acc_t d) const {
    if constexpr (std::is_integral_v<T>)
      return static_cast<double>(d) / static_cast<double>(series_.size());
    else
      return d;
  }

 private:
  // Integral: Σ |k·v_j − S_j| = k · Σ |v_j − X_j|, kept in integers.
  acc_t scaled_deviation(const std::vector<T>& values) const {
    acc_t total{};
    const auto k = static_cast<acc_t>(series_.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      if constexpr (std::is_integral_v<T>) {
        const acc_t d = k * static_cast<acc_t>(values[j]) - column_sums_[j];
        total += d < 0 ? -d : d;
      } else {
        total += std::abs(values[j] - column_sums_[j] / k);
      }
    }
    return total;
  }

  std::vector<Series<T>> series_;
  std::vector<acc_t> column_sums_;
  std::vector<acc_t> deviations_;
};

using GalleryModel = BasicGallery<std::uint8_t>;
using RealGalleryModel = BasicGallery<double>;

template <class T>
BasicGallery<T> build_mean_reference(std::vector<Series<T>> training) {
  return BasicGallery<T>(std::move(training));
}

namespace detail {

template <class Score>
MatchResult rank(const std::vector<Score>& scores, const auto& gallery, std::string probe_id,
                 auto to_double) {
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  MatchResult r;
  r.probe_id = std::move(probe_id);
  r.ranked.reserve(order.size());
  for (std::size_t i : order)
    r.ranked.push_back({gallery.series()[i].subject_id, to_double(scores[i]), i});
  r.predicted = r.ranked.front().subject_id;
  return r;
}

}  // namespace detail

/// Pairwise matcher: every enrolled series scored by `sim`, minimum wins.
template <class T>
MatchResult nearest_series(const Series<T>& probe, const BasicGallery<T>& gallery,
                           std::string probe_id = {}) {
  if (gallery.empty()) throw Error("classify", ErrorCode::EmptyGallery);
  if (probe.size() != gallery.series_length())
    throw Error("classify", ErrorCode::LengthMismatch,
                "probe length " + std::to_string(probe.size()) + ", gallery " +
                    std::to_string(gallery.series_length()));
  std::vector<distance_t<T>> scores;
  scores.reserve(gallery.size());
  for (const auto& s : gallery.series()) scores.push_back(sim(probe, s));
  return detail::rank(scores, gallery, std::move(probe_id),
                      [](distance_t<T> d) { return static_cast<double>(d); });
}

/// Scalar procedure: the subject whose signature Y_i is closest to `z` wins.
template <class T>
MatchResult mean_reference_classify(double z, const BasicGallery<T>& gallery,
                                    std::string probe_id = {}) {
  if (gallery.empty()) throw Error("classify", ErrorCode::EmptyGallery);
  const auto y = gallery.row_signatures();
  std::vector<double> scores(y.size());
  std::ranges::transform(y, scores.begin(), [z](double yi) { return std::abs(yi - z); });
  return detail::rank(scores, gallery, std::move(probe_id), [](double d) { return d; });
}

/// Same procedure computed from the probe series, comparing exact scaled signatures.
template <class T>
MatchResult mean_reference_classify(const Series<T>& probe, const BasicGallery<T>& gallery,
                                    std::string probe_id = {}) {
  if (gallery.empty()) throw Error("classify", ErrorCode::EmptyGallery);
  const auto z = gallery.probe_deviation(probe);
  const auto& y = gallery.scaled_signatures();
  using acc_t = std::decay_t<decltype(z)>;
  std::vector<acc_t> scores(y.size());
  std::ranges::transform(y, scores.begin(), [z](acc_t yi) { return yi > z ? yi - z : z - yi; });
  return detail::rank(scores, gallery, std::move(probe_id),
                      [&gallery](acc_t d) { return gallery.unscale(d); });
}

enum class ClassifierKind { Nearest, MeanReference };

inline std::string to_string(ClassifierKind k) {
  return k == ClassifierKind::Nearest ? "nearest" : "mean_reference";
}

template <class T>
MatchResult classify(ClassifierKind kind, const Series<T>& probe, const BasicGallery<T>& gallery,
                     std::string probe_id = {}) {
  return kind == ClassifierKind::Nearest ? nearest_series(probe, gallery, std::move(probe_id))
                                         : mean_reference_classify(probe, gallery, std::move(probe_id));
}

}  // namespace tface
