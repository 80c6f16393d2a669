#include "rdh/range_coder.hpp"

#include "rdh/error.hpp"

namespace rdh {

namespace {
constexpr std::uint32_t kTop = 1u << 24;
}

AdaptiveModel::AdaptiveModel(int alphabet_size) {
  if (alphabet_size < 1 || alphabet_size > 256)
    fail(ErrorKind::Validation, "alphabet size must lie in [1, 256]");
  counts_.assign(static_cast<std::size_t>(alphabet_size), 1);
  total_ = static_cast<std::uint32_t>(alphabet_size);
}

std::uint32_t AdaptiveModel::cum(int symbol) const noexcept {
  std::uint32_t c = 0;
  for (int s = 0; s < symbol; ++s) c += counts_[s];
  return c;
}

int AdaptiveModel::find(std::uint32_t target, std::uint32_t& cum_out) const noexcept {
  std::uint32_t c = 0;
  const int last = alphabet_size() - 1;
  int s = 0;
  for (; s < last; ++s) {
    if (target < c + counts_[s]) break;
    c += counts_[s];
  }
  cum_out = c;
  return s;
}

void AdaptiveModel::update(int symbol) noexcept {
  counts_[symbol] += kIncrement;
  total_ += kIncrement;
  if (total_ >= kTotalCap) {
    total_ = 0;
    for (auto& c : counts_) {
      c = (c + 1) / 2;
      total_ += c;
    }
  }
}

void RangeEncoder::encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
  const std::uint32_t r = range_ / total;
  low_ += static_cast<std::uint64_t>(r) * cum;
  range_ = r * freq;
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void RangeEncoder::shift_low() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const auto carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t pending = cache_;
    do {
      if (first_) {
        first_ = false;  // leading byte is always zero
      } else {
        out_.push_back(static_cast<std::uint8_t>(pending + carry));
      }
      pending = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

std::vector<std::uint8_t> RangeEncoder::finish() {
  for (int k = 0; k < 5; ++k) shift_low();
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> bytes) : bytes_(bytes) {
  for (int k = 0; k < 4; ++k) code_ = (code_ << 8) | next_byte();
}

std::uint8_t RangeDecoder::next_byte() {
  if (pos_ >= bytes_.size()) fail(ErrorKind::Corruption, "range decoder: bitstream exhausted");
  return bytes_[pos_++];
}

std::uint32_t RangeDecoder::decode_freq(std::uint32_t total) {
  step_ = range_ / total;
  const std::uint32_t v = code_ / step_;
  if (v >= total) fail(ErrorKind::Corruption, "range decoder: code outside interval");
  return v;
}

void RangeDecoder::decode_update(std::uint32_t cum, std::uint32_t freq) {
  code_ -= step_ * cum;
  range_ = step_ * freq;
  while (range_ < kTop) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
  }
}

}  // namespace rdh
