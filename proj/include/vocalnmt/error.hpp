/*
 * Copyright 2026 The vocalnmt Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vocalnmt {

enum class ErrorKind {
  // audio
  FileMissing,
  UnsupportedEncoding,
  CorruptHeader,
  DuplicateClipId,
  MalformedRow,
  // numeric parameter validation
  InvalidParams,
  // sentiment
  EmptyLexicon,
  OutOfRange,
  TranscriptMissing,
  // behavior
  LengthMismatch,
  ZeroVariance,
  EmptyCohort,
  // corpus
  LineCountMismatch,
  EmptyInput,
  SequenceTooLong,
  InvalidRatio,
  // neural / nmt
  ShapeMismatch,
  IndexOutOfRange,
  NonFinite,
  InvalidSpec,
  InvalidConfig,
  NonFiniteLoss,
  IoError,
  VersionMismatch,
  // evaluation
  EmptyHypothesis,
  EmptyReference,
  MismatchedTestSets,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileMissing: return "FileMissing";
    case ErrorKind::UnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorKind::CorruptHeader: return "CorruptHeader";
    case ErrorKind::DuplicateClipId: return "DuplicateClipId";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::EmptyLexicon: return "EmptyLexicon";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::TranscriptMissing: return "TranscriptMissing";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::EmptyCohort: return "EmptyCohort";
    case ErrorKind::LineCountMismatch: return "LineCountMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::SequenceTooLong: return "SequenceTooLong";
    case ErrorKind::InvalidRatio: return "InvalidRatio";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::EmptyHypothesis: return "EmptyHypothesis";
    case ErrorKind::EmptyReference: return "EmptyReference";
    case ErrorKind::MismatchedTestSets: return "MismatchedTestSets";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported as an Error carrying
/// a kind that callers (and tests) can branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace vocalnmt
