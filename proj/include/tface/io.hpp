#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "tface/error.hpp"

namespace tface {

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path,
                                                 const std::string& stage = "imaging") {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw Error(stage, ErrorCode::NotFound, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(stage, ErrorCode::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string read_file_text(const std::filesystem::path& path, const std::string& stage) {
  auto bytes = read_file_bytes(path, stage);
  return {bytes.begin(), bytes.end()};
}

/// Writes via a sibling temporary and renames over the target, so readers
/// never observe a partially written file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content,
                              const std::string& stage = "io") {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(stage, ErrorCode::IoError, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(stage, ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(stage, ErrorCode::IoError, "cannot rename onto " + path.string());
  }
}

}  // namespace tface
