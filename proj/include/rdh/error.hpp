#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdh {

/// Failure classes. Each maps onto one process exit code in the CLI.
enum class ErrorKind {
  Validation,  ///< bad parameters or malformed input
  Capacity,    ///< payload does not fit the cover
  Corruption,  ///< embedded data or side information is inconsistent
  Io,          ///< file system failures
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Parse failure inside a PGM byte stream.
class PgmError : public Error {
public:
  PgmError(const std::string& what, std::size_t offset);

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Raised when the framed bitstream needs more room than the cover offers.
class CapacityError : public Error {
public:
  CapacityError(std::size_t required_bits, std::size_t available_bits);

  std::size_t required_bits() const noexcept { return required_; }
  std::size_t available_bits() const noexcept { return available_; }
  std::size_t deficit_bits() const noexcept { return required_ - available_; }

private:
  std::size_t required_;
  std::size_t available_;
};

/// 0 success, 2 validation, 3 capacity, 4 corruption, 5 I/O.
int exit_code(ErrorKind kind) noexcept;

const char* to_string(ErrorKind kind) noexcept;

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace rdh
