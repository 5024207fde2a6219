#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cumdiff {

enum class ErrorKind {
  EmptyInput,
  InvalidRecord,
  IndexError,
  InvalidBinCount,
  DegenerateRange,
  InvalidLattice,
  InvalidIndex,
  OutOfRange,
  InvalidSpec,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. `record()` carries the offending
// row for InvalidRecord.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::size_t> record = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        record_(record) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> record() const noexcept { return record_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> record_;
};

}  // namespace cumdiff
