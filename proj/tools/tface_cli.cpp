// Command-line front end: preprocess, extract, enroll, identify, evaluate, synth.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tface/tface.hpp"

namespace fs = std::filesystem;
using namespace tface;

namespace {

struct CommonFlags {
  std::string config_file;
  std::string level;
  std::string classifier;
  std::string connectivity;
  std::optional<std::size_t> crop_size;
  bool no_quantize = false;
  std::string debug_dir;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key=value settings file");
    cmd->add_option("--level", level, "feature level: original | ll1 | ll2");
    cmd->add_option("--classifier", classifier, "nearest | mean | both");
    cmd->add_option("--connectivity", connectivity, "4 | 8");
    cmd->add_option("--crop-size", crop_size, "side of the resampled square crop (0 = none)");
    cmd->add_flag("--no-quantize", no_quantize, "match on unrounded coefficients");
    cmd->add_option("--debug-dir", debug_dir, "write intermediate PGMs here");
  }

  /// Config file first, flags override. Returns whether a classifier was chosen explicitly.
  bool resolve(Config& cfg) const {
    bool classifier_set = false;
    if (!config_file.empty()) {
      const auto text = read_file_text(config_file, "cli");
      apply_config_text(cfg, text);
      classifier_set = text.find("classifier") != std::string::npos;
    }
    if (!level.empty()) apply_setting(cfg, "level", level);
    if (!classifier.empty()) {
      apply_setting(cfg, "classifier", classifier);
      classifier_set = true;
    }
    if (!connectivity.empty()) apply_setting(cfg, "connectivity", connectivity);
    if (crop_size) cfg.pipeline.crop_size = *crop_size;
    if (no_quantize) cfg.pipeline.quantize = false;
    if (!debug_dir.empty()) cfg.pipeline.debug_dir = fs::path(debug_dir);
    validate(cfg);
    return classifier_set;
  }
};

void print_match(const MatchResult& r, std::size_t top) {
  std::cout << "rank,subject_id,score\n";
  for (std::size_t i = 0; i < std::min(top, r.ranked.size()); ++i)
    std::cout << i + 1 << "," << r.ranked[i].subject_id << "," << r.ranked[i].score << "\n";
  std::cout << "predicted: " << r.predicted << "\n";
}

int cmd_preprocess(const fs::path& input, const fs::path& out_dir, const Config& cfg) {
  Preprocessed p;
  try {
    p = preprocess(read_image(input), cfg.pipeline.connectivity);
  } catch (const Error& e) {
    throw e.with_context(input.string());
  }
  write_debug_images(out_dir, input.stem().string(), p);
  std::cout << "centroid: x=" << p.center.x() << " y=" << p.center.y() << "\n"
            << "ellipse: center=(" << p.ellipse.center.x << "," << p.ellipse.center.y
            << ") semi_major=" << p.ellipse.semi_major << " semi_minor=" << p.ellipse.semi_minor
            << "\n"
            << "crop: " << p.crop.width() << "x" << p.crop.height() << "\n";
  return 0;
}

template <class T>
Series<T> extract(const fs::path& image, const Config& cfg) {
  if constexpr (std::is_same_v<T, double>)
    return run_pipeline_real(image, cfg.level, cfg.pipeline);
  else
    return run_pipeline(image, cfg.level, cfg.pipeline);
}

template <class T>
int cmd_extract(const fs::path& image, const std::string& subject, const std::string& out,
                const Config& cfg) {
  auto s = extract<T>(image, cfg);
  s.subject_id = subject;
  const auto text = format_gallery(std::vector<Series<T>>{s});
  if (out.empty()) std::cout << text;
  else write_file_atomic(out, text, "cli");
  return 0;
}

template <class T>
int cmd_enroll(const fs::path& manifest_path, const fs::path& gallery_out, const Config& cfg) {
  const auto manifest = load_manifest(manifest_path);
  const auto split = split_odd_even(manifest);
  std::vector<Series<T>> train;
  for (std::size_t i : split.train_rows) {
    const auto& e = manifest.entries[i];
    auto s = extract<T>(e.image_path, cfg);
    s.subject_id = e.subject_id;
    if (!train.empty() && train.front().size() != s.size())
      throw Error("eval", ErrorCode::InconsistentSeriesLength, e.image_path.string());
    train.push_back(std::move(s));
  }
  write_file_atomic(gallery_out, format_gallery(train), "cli");
  std::cout << "enrolled " << train.size() << " series (train split)\n";
  return 0;
}

template <class T>
int cmd_identify(const fs::path& probe, const fs::path& gallery_file, const Config& cfg) {
  auto series = parse_gallery<T>(read_file_text(gallery_file, "classify"));
  if (series.front().level != cfg.level)
    throw Error("classify", ErrorCode::LengthMismatch,
                "gallery level " + to_string(series.front().level) + ", probe level " +
                    to_string(cfg.level));
  const BasicGallery<T> gallery(std::move(series));
  const auto s = extract<T>(probe, cfg);
  const auto kind = cfg.classifiers.empty() ? ClassifierKind::Nearest : cfg.classifiers.front();
  print_match(classify(kind, s, gallery, probe.string()), 5);
  return 0;
}

int cmd_evaluate(const fs::path& manifest_path, const fs::path& report_out,
                 const std::string& format, const std::string& dataset, const Config& cfg,
                 bool classifier_set) {
  EvalConfig ecfg;
  ecfg.pipeline = cfg.pipeline;
  if (classifier_set) ecfg.classifiers = cfg.classifiers;
  ecfg.dataset_name = dataset.empty() ? manifest_path.parent_path().filename().string() : dataset;
  if (ecfg.dataset_name.empty()) ecfg.dataset_name = "dataset";

  ReportFormat fmt = ReportFormat::Table;
  if (format == "csv") fmt = ReportFormat::Csv;
  else if (format == "json") fmt = ReportFormat::Json;
  else if (format != "table") throw Error("cli", ErrorCode::InvalidConfig, "report format " + format);

  const auto report = evaluate(load_manifest(manifest_path), ecfg);
  write_file_atomic(report_out, emit_report(report, ReportFormat::Csv), "cli");
  std::cout << emit_report(report, fmt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal face identification: elliptical crop, Haar LL bands, series matching"};
  app.require_subcommand(1);

  CommonFlags flags;

  std::string input, out_dir;
  auto* pre = app.add_subcommand("preprocess", "write gray/binary/largest/crop PGMs for one image");
  pre->add_option("image", input, "input image (PGM, PPM or PNG)")->required();
  pre->add_option("--out,-o", out_dir, "output directory")->required();
  flags.attach(pre);

  std::string subject = "probe", extract_out;
  auto* ext = app.add_subcommand("extract", "print the feature series of one image");
  ext->add_option("image", input, "input image")->required();
  ext->add_option("--subject", subject, "subject id written on the record");
  ext->add_option("--out,-o", extract_out, "write the record here instead of stdout");
  flags.attach(ext);

  std::string manifest, gallery;
  auto* enroll = app.add_subcommand("enroll", "enroll the train split of a manifest");
  enroll->add_option("--manifest", manifest, "path,subject_id CSV")->required();
  enroll->add_option("--gallery", gallery, "gallery file to write")->required();
  flags.attach(enroll);

  auto* identify = app.add_subcommand("identify", "rank gallery subjects for a probe image");
  identify->add_option("image", input, "probe image")->required();
  identify->add_option("--gallery", gallery, "gallery file")->required();
  flags.attach(identify);

  std::string report_out, report_format = "table", dataset;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "recognition rates at original, LL1, LL2");
  evaluate_cmd->add_option("--manifest", manifest, "path,subject_id CSV")->required();
  evaluate_cmd->add_option("--out,-o", report_out, "CSV report path")->required();
  evaluate_cmd->add_option("--report", report_format, "stdout format: table | csv | json");
  evaluate_cmd->add_option("--dataset", dataset, "dataset name in the report");
  flags.attach(evaluate_cmd);

  SyntheticSpec synth_spec;
  std::string synth_dir;
  auto* synth = app.add_subcommand("synth", "generate a synthetic thermal-like dataset");
  synth->add_option("--out,-o", synth_dir, "output directory")->required();
  synth->add_option("--seed", synth_spec.seed, "random seed");
  synth->add_option("--subjects", synth_spec.subjects, "number of subjects");
  synth->add_option("--images", synth_spec.images_per_subject, "images per subject");
  synth->add_option("--width", synth_spec.width, "image width");
  synth->add_option("--height", synth_spec.height, "image height");
  synth->add_option("--noise", synth_spec.noise, "per-pixel noise amplitude");
  synth->add_flag("--random-labels", synth_spec.independent_textures,
                  "give every image its own texture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Config cfg;
    if (*synth) {
      auto images = make_synthetic_faces(synth_spec);
      std::cout << write_synthetic_dataset(synth_dir, images).string() << "\n";
      return 0;
    }
    const bool classifier_set = flags.resolve(cfg);
    const bool q = cfg.pipeline.quantize;
    if (*pre) return cmd_preprocess(input, out_dir, cfg);
    if (*ext)
      return q ? cmd_extract<std::uint8_t>(input, subject, extract_out, cfg)
               : cmd_extract<double>(input, subject, extract_out, cfg);
    if (*enroll)
      return q ? cmd_enroll<std::uint8_t>(manifest, gallery, cfg)
               : cmd_enroll<double>(manifest, gallery, cfg);
    if (*identify)
      return q ? cmd_identify<std::uint8_t>(input, gallery, cfg)
               : cmd_identify<double>(input, gallery, cfg);
    if (*evaluate_cmd)
      return cmd_evaluate(manifest, report_out, report_format, dataset, cfg, classifier_set);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
