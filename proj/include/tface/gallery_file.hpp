#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "tface/error.hpp"
#include "tface/features.hpp"
#include "tface/manifest.hpp"

namespace tface {

// One line per series: subject_id,level,length,v1,...,vN

template <class T>
std::string format_gallery(const std::vector<Series<T>>& series) {
  std::string out;
  char buf[64];
  for (const auto& s : series) {
    out += s.subject_id;
    out += ',';
    out += to_string(s.level);
    out += ',';
    out += std::to_string(s.size());
    for (T v : s.values) {
      out += ',';
      if constexpr (std::is_integral_v<T>) {
        out += std::to_string(unsigned{v});
      } else {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        out.append(buf, end);
      }
    }
    out += '\n';
  }
  return out;
}

template <class T>
std::vector<Series<T>> parse_gallery(std::string_view text) {
  auto fail = [](std::size_t line, std::string detail) -> Error {
    return Error("eval", ErrorCode::MalformedGallery,
                 "line " + std::to_string(line) + ": " + std::move(detail));
  };
  std::vector<Series<T>> out;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() < 3) throw fail(i + 1, "too few fields");
    Series<T> s;
    s.subject_id = std::string(fields[0]);
    if (s.subject_id.empty()) throw fail(i + 1, "empty subject id");
    auto level = parse_level(fields[1]);
    if (!level) throw fail(i + 1, "bad level '" + std::string(fields[1]) + "'");
    s.level = *level;
    std::size_t length = 0;
    auto [p, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), length);
    if (ec != std::errc{} || p != fields[2].data() + fields[2].size())
      throw fail(i + 1, "bad length");
    if (fields.size() - 3 != length) throw fail(i + 1, "length does not match value count");
    s.values.reserve(length);
    for (std::size_t j = 3; j < fields.size(); ++j) {
      const auto f = fields[j];
      if constexpr (std::is_integral_v<T>) {
        unsigned v = 0;
        auto [q, e] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (e != std::errc{} || q != f.data() + f.size() || v > 255)
          throw fail(i + 1, "value '" + std::string(f) + "' is not an integer in [0,255]");
        s.values.push_back(static_cast<T>(v));
      } else {
        double v = 0;
        auto [q, e] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (e != std::errc{} || q != f.data() + f.size())
          throw fail(i + 1, "value '" + std::string(f) + "' is not a number");
        s.values.push_back(v);
      }
    }
    if (!out.empty() && out.front().level != s.level) throw fail(i + 1, "mixed levels");
    if (!out.empty() && out.front().size() != s.size()) throw fail(i + 1, "mixed lengths");
    out.push_back(std::move(s));
  }
  if (out.empty()) throw Error("classify", ErrorCode::EmptyGallery, "gallery file has no series");
  return out;
}

}  // namespace tface
