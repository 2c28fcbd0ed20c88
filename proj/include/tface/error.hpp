#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tface {

enum class ErrorCode {
  NotFound,
  IoError,
  MalformedFile,
  UnsupportedDepth,
  UnsupportedFormat,
  EmptyImage,
  NoForeground,
  OutOfBounds,
  OddLength,
  NotPowerOfTwo,
  OddDimension,
  InsufficientDivisibility,
  MalformedPyramid,
  LengthMismatch,
  EmptyGallery,
  MalformedGallery,
  MalformedManifest,
  MissingImage,
  SubjectTooSmall,
  InconsistentSeriesLength,
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::UnsupportedDepth: return "UnsupportedDepth";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::NoForeground: return "NoForeground";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::OddLength: return "OddLength";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::InsufficientDivisibility: return "InsufficientDivisibility";
    case ErrorCode::MalformedPyramid: return "MalformedPyramid";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyGallery: return "EmptyGallery";
    case ErrorCode::MalformedGallery: return "MalformedGallery";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
    case ErrorCode::MissingImage: return "MissingImage";
    case ErrorCode::SubjectTooSmall: return "SubjectTooSmall";
    case ErrorCode::InconsistentSeriesLength: return "InconsistentSeriesLength";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Exception carrying the pipeline stage that raised it and a machine-readable code.
///
/// `what()` renders as `"<stage>: <Code>"` optionally followed by `" (<detail>)"`,
/// prefixed by any context (typically a file path) attached on the way up.
class Error : public std::runtime_error {
 public:
  Error(std::string stage, ErrorCode code, std::string detail = {})
      : Error(std::string{}, std::move(stage), code, std::move(detail)) {}

  const std::string& stage() const noexcept { return stage_; }
  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& context() const noexcept { return context_; }

  /// Returns a copy with `ctx` prepended to the message.
  Error with_context(std::string ctx) const {
    if (!context_.empty()) ctx += ": " + context_;
    return Error(std::move(ctx), stage_, code_, detail_);
  }

 private:
  Error(std::string context, std::string stage, ErrorCode code, std::string detail)
      : std::runtime_error(render(context, stage, code, detail)),
        context_(std::move(context)),
        stage_(std::move(stage)),
        code_(code),
        detail_(std::move(detail)) {}

  static std::string render(const std::string& context, const std::string& stage,
                            ErrorCode code, const std::string& detail) {
    std::string msg;
    if (!context.empty()) msg += context + ": ";
    msg += stage;
    msg += ": ";
    msg += to_string(code);
    if (!detail.empty()) msg += " (" + detail + ")";
    return msg;
  }

  std::string context_;
  std::string stage_;
  ErrorCode code_;
  std::string detail_;
};

}  // namespace tface
