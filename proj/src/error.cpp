#include "roofs/error.hpp"

namespace roofs {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::OutsideBall: return "OutsideBall";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::ZeroState: return "ZeroState";
    case ErrorKind::EmptyInterval: return "EmptyInterval";
    case ErrorKind::NotStandardForm: return "NotStandardForm";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::InvalidAxial: return "InvalidAxial";
    case ErrorKind::PureInput: return "PureInput";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace roofs
