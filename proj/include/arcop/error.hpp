#pragma once

#include <stdexcept>
#include <string>

namespace arcop {

enum class ErrorKind {
  NotAssociative,
  NotUnital,
  PairingDegenerate,
  PairingNotInvariant,
  OddDegreeBasis,
  FieldMismatch,
  NotAlgebraMap,
  UnknownBrane,
  DegreeMismatch,
  LabelMismatch,
  IndexOutOfRange,
  Malformed,
  ParallelArcs,
  InessentialArc,
  SideUsage,
  EulerMismatch,
  OrphanPuncture,
  WeightMismatch,
  InactiveWindow,
  KindMismatch,
  EmptyBoundary,
  NonCommutativeAmbiguity,
  NotSullivanType,
  UnboundedAction,
  ParseError,
  UsageError,
  PairingMismatch,
};

inline const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::PairingDegenerate: return "PairingDegenerate";
    case ErrorKind::PairingNotInvariant: return "PairingNotInvariant";
    case ErrorKind::OddDegreeBasis: return "OddDegreeBasis";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotAlgebraMap: return "NotAlgebraMap";
    case ErrorKind::UnknownBrane: return "UnknownBrane";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::ParallelArcs: return "ParallelArcs";
    case ErrorKind::InessentialArc: return "InessentialArc";
    case ErrorKind::SideUsage: return "SideUsage";
    case ErrorKind::EulerMismatch: return "EulerMismatch";
    case ErrorKind::OrphanPuncture: return "OrphanPuncture";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::InactiveWindow: return "InactiveWindow";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::EmptyBoundary: return "EmptyBoundary";
    case ErrorKind::NonCommutativeAmbiguity: return "NonCommutativeAmbiguity";
    case ErrorKind::NotSullivanType: return "NotSullivanType";
    case ErrorKind::UnboundedAction: return "UnboundedAction";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::PairingMismatch: return "PairingMismatch";
  }
  return "Unknown";
}

/// Error carrying the name of the violated invariant.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const char* name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace arcop
