#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rdh {

/// Adaptive order-0 frequency table. Every symbol starts at count 1; each
/// update adds kIncrement and all counts are halved (rounding up) once the
/// total reaches kTotalCap, so totals stay below 2^16.
class AdaptiveModel {
public:
  static constexpr std::uint32_t kIncrement = 32;
  static constexpr std::uint32_t kTotalCap = 1u << 16;

  explicit AdaptiveModel(int alphabet_size);

  int alphabet_size() const noexcept { return static_cast<int>(counts_.size()); }
  std::uint32_t total() const noexcept { return total_; }
  std::uint32_t freq(int symbol) const noexcept { return counts_[symbol]; }
  std::uint32_t cum(int symbol) const noexcept;

  /// Symbol whose cumulative interval contains `target` (< total()).
  int find(std::uint32_t target, std::uint32_t& cum_out) const noexcept;

  void update(int symbol) noexcept;

private:
  std::vector<std::uint32_t> counts_;
  std::uint32_t total_ = 0;
};

/// 32-bit range encoder with carry propagation through a 64-bit low register.
/// The always-zero leading byte is dropped from the output.
class RangeEncoder {
public:
  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total);
  /// Flushes and returns the byte stream. The encoder is spent afterwards.
  std::vector<std::uint8_t> finish();

private:
  void shift_low();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  bool first_ = true;
  std::vector<std::uint8_t> out_;
};

/// Mirror of RangeEncoder. Reading past the end of the stream, or a code
/// value outside the current interval, raises ErrorKind::Corruption.
class RangeDecoder {
public:
  explicit RangeDecoder(std::span<const std::uint8_t> bytes);

  /// Target frequency in [0, total) for the next symbol.
  std::uint32_t decode_freq(std::uint32_t total);
  /// Consumes the symbol chosen for the last decode_freq call.
  void decode_update(std::uint32_t cum, std::uint32_t freq);

  /// True when every input byte has been consumed.
  bool at_end() const noexcept { return pos_ == bytes_.size(); }

private:
  std::uint8_t next_byte();

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  std::uint32_t code_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t step_ = 0;
};

}  // namespace rdh
