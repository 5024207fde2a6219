#include "cumdiff/error.hpp"

namespace cumdiff {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidRecord: return "InvalidRecord";
    case ErrorKind::IndexError: return "IndexError";
    case ErrorKind::InvalidBinCount: return "InvalidBinCount";
    case ErrorKind::DegenerateRange: return "DegenerateRange";
    case ErrorKind::InvalidLattice: return "InvalidLattice";
    case ErrorKind::InvalidIndex: return "InvalidIndex";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace cumdiff
