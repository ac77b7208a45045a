#include "ncrat/error.h"

namespace ncrat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kDegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::kAlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::kNotDecaying: return "NotDecaying";
    case ErrorKind::kNotInvertible: return "NotInvertible";
    case ErrorKind::kNotProper: return "NotProper";
    case ErrorKind::kInsufficientData: return "InsufficientData";
    case ErrorKind::kInsufficientDepth: return "InsufficientDepth";
    case ErrorKind::kNotMinimal: return "NotMinimal";
    case ErrorKind::kWordTooLong: return "WordTooLong";
    case ErrorKind::kDegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::kMarginTooSmall: return "MarginTooSmall";
    case ErrorKind::kNotConverging: return "NotConverging";
  }
  return "Unknown";
}

}  // namespace ncrat
