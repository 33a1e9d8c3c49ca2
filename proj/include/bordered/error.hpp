#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bordered {

enum class ErrorCode {
  Parse,
  DuplicateEndpoint,
  MissingEndpoint,
  DegenerateArc,
  CircleWithoutZ,
  UnknownZMark,
  SlidePrecondition,
  KOutOfRange,
  NotInMatchedSpan,
  NotAChainMap,
  NotAComplex,
  IdempotentMismatch,
  AlgebraMismatch,
  DepthExceeded,
  TruncationUnsound,
  DiagramInconsistent,
  DiagramNotNice,
  NonDiscRegion,
  Io,
  Usage,
};

inline std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return "parse";
    case ErrorCode::DuplicateEndpoint: return "duplicate-endpoint";
    case ErrorCode::MissingEndpoint: return "missing-endpoint";
    case ErrorCode::DegenerateArc: return "degenerate-arc";
    case ErrorCode::CircleWithoutZ: return "circle-without-z";
    case ErrorCode::UnknownZMark: return "unknown-z-mark";
    case ErrorCode::SlidePrecondition: return "slide-precondition";
    case ErrorCode::KOutOfRange: return "k-out-of-range";
    case ErrorCode::NotInMatchedSpan: return "not-in-matched-span";
    case ErrorCode::NotAChainMap: return "not-a-chain-map";
    case ErrorCode::NotAComplex: return "not-a-complex";
    case ErrorCode::IdempotentMismatch: return "idempotent-mismatch";
    case ErrorCode::AlgebraMismatch: return "algebra-mismatch";
    case ErrorCode::DepthExceeded: return "depth-exceeded";
    case ErrorCode::TruncationUnsound: return "truncation-unsound";
    case ErrorCode::DiagramInconsistent: return "diagram-inconsistent";
    case ErrorCode::DiagramNotNice: return "diagram-not-nice";
    case ErrorCode::NonDiscRegion: return "non-disc-region";
    case ErrorCode::Io: return "io";
    case ErrorCode::Usage: return "usage";
  }
  return "unknown";
}

/// Exception carrying a machine-readable code; every module reports failures this way.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace bordered
