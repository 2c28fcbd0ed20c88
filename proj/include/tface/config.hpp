#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tface/classify.hpp"
#include "tface/error.hpp"
#include "tface/features.hpp"
#include "tface/manifest.hpp"
#include "tface/pipeline.hpp"

namespace tface {

/// Front-end settings. Loaded from a flat key=value file, then overridden by flags.
struct Config {
  PipelineConfig pipeline;
  FeatureLevel level = FeatureLevel::ll(2);
  /// Empty means "all classifiers" for evaluate; identify uses the first entry or nearest.
  std::vector<ClassifierKind> classifiers = {ClassifierKind::Nearest};
};

inline std::optional<ClassifierKind> parse_classifier(std::string_view s) {
  if (s == "nearest") return ClassifierKind::Nearest;
  if (s == "mean" || s == "mean_reference") return ClassifierKind::MeanReference;
  return std::nullopt;
}

inline std::optional<bool> parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  return std::nullopt;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Applies one setting. Keys: connectivity, crop_size, level, classifier, quantize, debug_dir.
inline void apply_setting(Config& cfg, std::string_view key, std::string_view value) {
  auto bad = [&] {
    return Error("cli", ErrorCode::InvalidConfig,
                 "bad value '" + std::string(value) + "' for " + std::string(key));
  };
  if (key == "connectivity") {
    if (value == "4") cfg.pipeline.connectivity = Connectivity::Four;
    else if (value == "8") cfg.pipeline.connectivity = Connectivity::Eight;
    else throw bad();
  } else if (key == "crop_size") {
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc{} || p != value.data() + value.size() || n > 4096) throw bad();
    cfg.pipeline.crop_size = n;
  } else if (key == "level" || key == "wavelet_level") {
    auto l = parse_level(value);
    if (!l) throw bad();
    cfg.level = *l;
  } else if (key == "classifier") {
    if (value == "both" || value == "all") {
      cfg.classifiers = {ClassifierKind::Nearest, ClassifierKind::MeanReference};
    } else {
      auto c = parse_classifier(value);
      if (!c) throw bad();
      cfg.classifiers = {*c};
    }
  } else if (key == "quantize") {
    auto b = parse_bool(value);
    if (!b) throw bad();
    cfg.pipeline.quantize = *b;
  } else if (key == "debug_dir") {
    if (value.empty()) cfg.pipeline.debug_dir.reset();
    else cfg.pipeline.debug_dir = std::filesystem::path(value);
  } else {
    throw Error("cli", ErrorCode::InvalidConfig, "unknown key '" + std::string(key) + "'");
  }
}

/// `#` starts a comment; blank lines are ignored.
inline void apply_config_text(Config& cfg, std::string_view text) {
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = lines[i];
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error("cli", ErrorCode::InvalidConfig,
                  "line " + std::to_string(i + 1) + ": expected key=value");
    apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
}

/// Rejects combinations the pipeline cannot run.
inline void validate(const Config& cfg) {
  if (cfg.pipeline.crop_size != 0 && cfg.level.value > 0) {
    const std::size_t factor = std::size_t{1} << cfg.level.value;
    if (cfg.pipeline.crop_size % factor != 0)
      throw Error("cli", ErrorCode::InvalidConfig,
                  "crop_size " + std::to_string(cfg.pipeline.crop_size) +
                      " is not divisible by 2^" + std::to_string(cfg.level.value));
  }
  if (cfg.pipeline.crop_size == 0 && cfg.level.value > 2)
    throw Error("cli", ErrorCode::InvalidConfig,
                "levels above 2 need a crop_size divisible by 2^level");
}

}  // namespace tface
