#include "rdh/error.hpp"

namespace rdh {

PgmError::PgmError(const std::string& what, std::size_t offset)
    : Error(ErrorKind::Validation,
            "pgm: " + what + " at byte offset " + std::to_string(offset)),
      offset_(offset) {}

CapacityError::CapacityError(std::size_t required_bits, std::size_t available_bits)
    : Error(ErrorKind::Capacity,
            "insufficient capacity: need " + std::to_string(required_bits) +
                " bits, cover holds " + std::to_string(available_bits) + " (deficit " +
                std::to_string(required_bits - available_bits) + " bits)"),
      required_(required_bits),
      available_(available_bits) {}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return 2;
    case ErrorKind::Capacity: return 3;
    case ErrorKind::Corruption: return 4;
    case ErrorKind::Io: return 5;
  }
  return 1;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Corruption: return "corruption";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace rdh
