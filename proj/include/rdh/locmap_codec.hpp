#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdh/image.hpp"
#include "rdh/preprocess.hpp"

namespace rdh {

/// Arithmetic-coded symbol grid. The coder is an adaptive order-0 model over
/// the raster scan (see AdaptiveModel / RangeEncoder).
struct CompressedMap {
  int alphabet_size = 2;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bitstream;
  std::uint32_t bit_length = 0;  ///< meaningful bits, <= 8 * bitstream.size()

  friend bool operator==(const CompressedMap&, const CompressedMap&) = default;
};

/// Codes every symbol of `symbols` (each < alphabet_size, 2..256).
CompressedMap compress_symbols(const Grid<std::uint8_t>& symbols, int alphabet_size);
Grid<std::uint8_t> decompress_symbols(const CompressedMap& c);

CompressedMap compress(const LocationMap& map);
/// The alphabet must be odd (2T + 1).
LocationMap decompress(const CompressedMap& c);

/// 1 where the pixel is a boundary pixel of `img` under T, else 0.
Grid<std::uint8_t> binary_boundary_map(const GrayImage& img, int T);
/// The classic one-bit-per-pixel location map of the unprocessed cover, coded
/// with the same coder (alphabet 2).
CompressedMap compress_binary_baseline(const GrayImage& img, int T);

/// Big-endian container: "LM", u8 alphabet_size-1, u32 width, u32 height,
/// u32 bit_length, then ceil(bit_length / 8) bytes.
std::vector<std::uint8_t> serialize(const CompressedMap& c);
/// Parses one container from the front of `bytes`; `consumed` receives its size.
CompressedMap parse_compressed_map(std::span<const std::uint8_t> bytes,
                                   std::size_t* consumed = nullptr);

inline constexpr std::size_t kCompressedMapHeaderBytes = 15;

}  // namespace rdh
