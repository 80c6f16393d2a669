#include "rdh/bitstream.hpp"

#include <string>

#include "rdh/error.hpp"

namespace rdh {

BitStream BitStream::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  BitStream s;
  s.append_bytes(bytes, bit_count);
  return s;
}

std::vector<std::uint8_t> BitStream::to_bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k]) out[k / 8] |= static_cast<std::uint8_t>(0x80u >> (k % 8));
  return out;
}

void BitStream::append_uint(std::uint64_t value, int nbits) {
  for (int b = nbits - 1; b >= 0; --b) bits_.push_back(static_cast<std::uint8_t>((value >> b) & 1u));
}

void BitStream::append(const BitStream& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitStream::append_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8)
    fail(ErrorKind::Validation, "bit count exceeds the supplied bytes");
  bits_.reserve(bits_.size() + bit_count);
  for (std::size_t k = 0; k < bit_count; ++k)
    bits_.push_back(static_cast<std::uint8_t>((bytes[k / 8] >> (7 - k % 8)) & 1u));
}

BitStream BitStream::slice(std::size_t offset, std::size_t count) const {
  BitStream s;
  s.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                 bits_.begin() + static_cast<std::ptrdiff_t>(offset + count));
  return s;
}

void BitReader::require(std::size_t count) const {
  if (count > remaining())
    fail(ErrorKind::Corruption, "bitstream ends early: need " + std::to_string(count) +
                                    " bits, " + std::to_string(remaining()) + " left");
}

std::uint64_t BitReader::read_uint(int nbits) {
  require(static_cast<std::size_t>(nbits));
  std::uint64_t v = 0;
  for (int b = 0; b < nbits; ++b) v = (v << 1) | (bits_[pos_++] ? 1u : 0u);
  return v;
}

BitStream BitReader::read_bits(std::size_t count) {
  require(count);
  BitStream s = bits_.slice(pos_, count);
  pos_ += count;
  return s;
}

}  // namespace rdh
