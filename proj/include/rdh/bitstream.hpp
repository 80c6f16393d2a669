#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rdh {

/// Ordered sequence of bits. Byte conversions are most-significant-bit first.
class BitStream {
public:
  BitStream() = default;
  explicit BitStream(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}

  /// The first `bit_count` bits of `bytes`.
  static BitStream from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count);
  static BitStream from_bytes(std::span<const std::uint8_t> bytes) {
    return from_bytes(bytes, bytes.size() * 8);
  }
  /// Packs into ceil(size/8) bytes, zero padded.
  std::vector<std::uint8_t> to_bytes() const;

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t k) const noexcept { return bits_[k] != 0; }

  void push_back(bool b) { bits_.push_back(b ? 1 : 0); }
  /// Low `nbits` bits of `value`, most significant first.
  void append_uint(std::uint64_t value, int nbits);
  void append(const BitStream& other);
  void append_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count);
  void resize(std::size_t n) { bits_.resize(n, 0); }

  BitStream slice(std::size_t offset, std::size_t count) const;

  friend bool operator==(const BitStream&, const BitStream&) = default;

private:
  std::vector<std::uint8_t> bits_;
};

/// Sequential reader; reads past the end raise ErrorKind::Corruption.
class BitReader {
public:
  explicit BitReader(const BitStream& bits) : bits_(bits) {}

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bits_.size() - pos_; }

  std::uint64_t read_uint(int nbits);
  BitStream read_bits(std::size_t count);

private:
  void require(std::size_t count) const;

  const BitStream& bits_;
  std::size_t pos_ = 0;
};

}  // namespace rdh
