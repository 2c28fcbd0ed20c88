#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tface/error.hpp"
#include "tface/io.hpp"

namespace tface {

struct ManifestEntry {
  std::filesystem::path image_path;
  std::string subject_id;
  bool operator==(const ManifestEntry&) const = default;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace detail

/// Parses `path,subject_id` CSV. Relative paths resolve against `base_dir`.
inline DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  auto fail = [](std::string detail) -> Error {
    return Error("eval", ErrorCode::MalformedManifest, std::move(detail));
  };
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  auto lines = detail::split_lines(text);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != "path,subject_id")
    throw fail("header must be 'path,subject_id'");

  DatasetManifest m;
  std::set<std::filesystem::path> seen;
  std::map<std::string, std::size_t> per_subject;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = detail::split_fields(lines[i]);
    const std::string where = "line " + std::to_string(i + 1);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw fail(where + ": expected 'path,subject_id'");
    std::filesystem::path p(fields[0]);
    if (p.is_relative()) p = base_dir / p;
    p = p.lexically_normal();
    if (!seen.insert(p).second) throw fail(where + ": duplicate path " + p.string());
    m.entries.push_back({p, std::string(fields[1])});
    ++per_subject[m.entries.back().subject_id];
  }
  if (m.entries.empty()) throw fail("no entries");
  for (const auto& [subject, n] : per_subject)
    if (n < 2)
      throw Error("eval", ErrorCode::SubjectTooSmall,
                  "subject '" + subject + "' has " + std::to_string(n) + " image");
  return m;
}

inline DatasetManifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file_text(path, "eval"), path.parent_path());
}

inline std::string format_manifest(const DatasetManifest& m) {
  std::string out = "path,subject_id\n";
  for (const auto& e : m.entries) out += e.image_path.generic_string() + "," + e.subject_id + "\n";
  return out;
}

/// Row indices into the manifest; both lists ascending.
struct SplitPlan {
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

/// Within each subject, in file order, the 1st, 3rd, 5th... image trains and
/// the 2nd, 4th... image tests.
inline SplitPlan split_odd_even(const DatasetManifest& m) {
  SplitPlan plan;
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const std::size_t pos = position[m.entries[i].subject_id]++;
    (pos % 2 == 0 ? plan.train_rows : plan.test_rows).push_back(i);
  }
  return plan;
}

}  // namespace tface
