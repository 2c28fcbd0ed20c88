#pragma once

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tface/classify.hpp"
#include "tface/error.hpp"
#include "tface/features.hpp"
#include "tface/manifest.hpp"
#include "tface/pipeline.hpp"

namespace tface {

struct EvalConfig {
  PipelineConfig pipeline;
  std::vector<FeatureLevel> levels = {FeatureLevel::original(), FeatureLevel::ll(1),
                                      FeatureLevel::ll(2)};
  std::vector<ClassifierKind> classifiers = {ClassifierKind::Nearest,
                                             ClassifierKind::MeanReference};
  std::string dataset_name = "dataset";
};

struct EvalRow {
  FeatureLevel level;
  ClassifierKind classifier = ClassifierKind::Nearest;
  std::size_t correct = 0;
  std::size_t total = 0;
  double rate_percent = 0;
  double mean_match_ms = 0;
  bool operator==(const EvalRow&) const = default;
};

struct EvalReport {
  std::string dataset;
  std::vector<EvalRow> rows;
  bool operator==(const EvalReport&) const = default;
};

/// Enrolls the train rows of `all` and identifies every test row with each
/// classifier. `all[i].subject_id` is the ground truth for row i.
template <class T>
std::vector<EvalRow> evaluate_series(const std::vector<Series<T>>& all, const SplitPlan& split,
                                     FeatureLevel level,
                                     const std::vector<ClassifierKind>& classifiers) {
  std::vector<Series<T>> train;
  train.reserve(split.train_rows.size());
  for (std::size_t i : split.train_rows) train.push_back(all.at(i));
  const BasicGallery<T> gallery(std::move(train));

  std::vector<EvalRow> rows;
  for (ClassifierKind kind : classifiers) {
    EvalRow row{level, kind};
    std::chrono::steady_clock::duration elapsed{};
    for (std::size_t i : split.test_rows) {
      const auto start = std::chrono::steady_clock::now();
      const auto result = classify(kind, all.at(i), gallery);
      elapsed += std::chrono::steady_clock::now() - start;
      row.correct += result.predicted == all[i].subject_id;
      ++row.total;
    }
    row.rate_percent =
        row.total ? 100.0 * static_cast<double>(row.correct) / static_cast<double>(row.total) : 0.0;
    row.mean_match_ms =
        row.total ? std::chrono::duration<double, std::milli>(elapsed).count() /
                        static_cast<double>(row.total)
                  : 0.0;
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

template <class T>
EvalReport evaluate_faces(const DatasetManifest& m, const std::vector<GrayImage>& faces,
                          const EvalConfig& cfg) {
  const SplitPlan split = split_odd_even(m);
  EvalReport report{cfg.dataset_name, {}};
  for (FeatureLevel level : cfg.levels) {
    std::vector<Series<T>> all;
    all.reserve(faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
      try {
        all.push_back(series_at<T>(faces[i], level));
      } catch (const Error& e) {
        throw e.with_context(m.entries[i].image_path.string());
      }
      all.back().subject_id = m.entries[i].subject_id;
      if (all.back().size() != all.front().size())
        throw Error("eval", ErrorCode::InconsistentSeriesLength,
                    m.entries[i].image_path.string() + " yields " +
                        std::to_string(all.back().size()) + " values at " + to_string(level) +
                        ", expected " + std::to_string(all.front().size()));
    }
    auto rows = evaluate_series(all, split, level, cfg.classifiers);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

}  // namespace detail

/// Full protocol: preprocess every image once (fail-fast), odd/even split per
/// subject, then one row per (level, classifier).
inline EvalReport evaluate(const DatasetManifest& m, const EvalConfig& cfg) {
  std::vector<GrayImage> faces;
  faces.reserve(m.entries.size());
  for (const auto& e : m.entries) faces.push_back(load_face(e.image_path, cfg.pipeline));
  return cfg.pipeline.quantize ? detail::evaluate_faces<std::uint8_t>(m, faces, cfg)
                               : detail::evaluate_faces<double>(m, faces, cfg);
}

enum class ReportFormat { Table, Csv, Json };

namespace detail {

inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline ClassifierKind parse_classifier_name(const std::string& s) {
  if (s == "nearest") return ClassifierKind::Nearest;
  if (s == "mean_reference") return ClassifierKind::MeanReference;
  throw Error("eval", ErrorCode::InvalidConfig, "unknown classifier '" + s + "'");
}

}  // namespace detail

inline std::string emit_report(const EvalReport& r, ReportFormat format) {
  using detail::fixed2;
  using detail::pad;
  switch (format) {
    case ReportFormat::Csv: {
      std::string out = "dataset,level,classifier,correct,total,rate_percent\n";
      for (const auto& row : r.rows)
        out += r.dataset + "," + to_string(row.level) + "," + to_string(row.classifier) + "," +
               std::to_string(row.correct) + "," + std::to_string(row.total) + "," +
               fixed2(row.rate_percent) + "\n";
      return out;
    }
    case ReportFormat::Json: {
      nlohmann::json j;
      j["dataset"] = r.dataset;
      j["rows"] = nlohmann::json::array();
      for (const auto& row : r.rows)
        j["rows"].push_back({{"level", to_string(row.level)},
                             {"classifier", to_string(row.classifier)},
                             {"correct", row.correct},
                             {"total", row.total},
                             {"rate_percent", row.rate_percent},
                             {"mean_match_ms", row.mean_match_ms}});
      return j.dump(2) + "\n";
    }
    case ReportFormat::Table: {
      std::string out = pad("Database", 20) + pad("Label", 16) + pad("Classifier", 16) +
                        pad("Recognition rate (%)", 22) + pad("Correct/Total", 15) +
                        "Match time (ms)\n";
      for (const auto& row : r.rows)
        out += pad(r.dataset, 20) + pad(display_name(row.level), 16) +
               pad(to_string(row.classifier), 16) + pad(fixed2(row.rate_percent), 22) +
               pad(std::to_string(row.correct) + "/" + std::to_string(row.total), 15) +
               fixed2(row.mean_match_ms) + "\n";
      return out;
    }
  }
  return {};
}

inline EvalReport parse_report_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    EvalReport r;
    r.dataset = j.at("dataset").get<std::string>();
    for (const auto& jr : j.at("rows")) {
      EvalRow row;
      auto level = parse_level(jr.at("level").get<std::string>());
      if (!level) throw Error("eval", ErrorCode::MalformedFile, "bad level in report");
      row.level = *level;
      row.classifier = detail::parse_classifier_name(jr.at("classifier").get<std::string>());
      row.correct = jr.at("correct").get<std::size_t>();
      row.total = jr.at("total").get<std::size_t>();
      row.rate_percent = jr.at("rate_percent").get<double>();
      row.mean_match_ms = jr.at("mean_match_ms").get<double>();
      r.rows.push_back(row);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error("eval", ErrorCode::MalformedFile, e.what());
  }
}

}  // namespace tface
