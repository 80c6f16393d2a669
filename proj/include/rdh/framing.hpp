#pragma once

#include <cstdint>

#include "rdh/bitstream.hpp"
#include "rdh/locmap_codec.hpp"
#include "rdh/preprocess.hpp"

namespace rdh {

inline constexpr std::uint8_t kFrameMagic = 0xB5;
inline constexpr std::uint8_t kFrameVersion = 1;
/// magic, version, T, t0, t1 (8 bits each), map bits, payload bits (32 each).
inline constexpr std::size_t kFrameHeaderBits = 104;

/// header || compressed location map bits || payload bits.
BitStream frame_payload(const BitStream& payload, const CompressedMap& map,
                        const PreprocessParams& params);

struct Deframed {
  BitStream payload;
  CompressedMap map;
  PreprocessParams params;
  std::size_t frame_bits = 0;  ///< bits consumed; anything after is not part of the frame
};

/// Inverse of frame_payload. The frame does not carry the grid size, so the
/// caller supplies it for the returned map. Trailing bits are left alone.
Deframed deframe_payload(const BitStream& bits, int width, int height);

}  // namespace rdh
