#pragma once

#include <stdexcept>
#include <string>

namespace weaksup {

enum class ErrorKind {
  OutOfRange,
  OutOfSpace,
  Overflow,
  MissingTrueLabel,
  ParseError,
  SchemaError,
  LabelOutOfRange,
  ShapeMismatch,
  NotStochastic,
  NegativeEntry,
  SupportViolation,
  NotSquare,
  Degenerate,
  RankDeficient,
  EmptyColumn,
  ZeroEvidence,
  EmptyBag,
  InvalidThreshold,
  EmptyDataset,
  UnmatchedRegion,
  IncompatibleDimensions,
  IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace weaksup
