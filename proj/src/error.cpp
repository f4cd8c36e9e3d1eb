#include "weaksup/error.hpp"

namespace weaksup {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::OutOfSpace: return "OutOfSpace";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::MissingTrueLabel: return "MissingTrueLabel";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::EmptyColumn: return "EmptyColumn";
    case ErrorKind::ZeroEvidence: return "ZeroEvidence";
    case ErrorKind::EmptyBag: return "EmptyBag";
    case ErrorKind::InvalidThreshold: return "InvalidThreshold";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::UnmatchedRegion: return "UnmatchedRegion";
    case ErrorKind::IncompatibleDimensions: return "IncompatibleDimensions";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace weaksup
