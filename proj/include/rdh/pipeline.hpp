#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rdh/bitstream.hpp"
#include "rdh/embedder.hpp"
#include "rdh/framing.hpp"
#include "rdh/image.hpp"
#include "rdh/locmap_codec.hpp"
#include "rdh/preprocess.hpp"

namespace rdh {

/// CRC-32 of the original image raster and the payload, appended after the
/// frame so a damaged marked image cannot restore to a wrong cover silently.
inline constexpr std::size_t kSealBits = 32;

/// Header, compressed map and seal: everything embedded besides the payload.
constexpr std::size_t side_info_bits(std::size_t map_bits) noexcept {
  return kFrameHeaderBits + map_bits + kSealBits;
}

struct EmbedResult {
  GrayImage marked;
  PreprocessParams params;
  double r_emb = 0.0;              ///< max_payload_bits / pixel count
  Psnr psnr = Psnr::infinite();    ///< cover vs marked
  std::size_t side_info_bits = 0;
  std::size_t map_bits = 0;
  std::size_t capacity_bits = 0;
  std::size_t payload_bits = 0;
  std::size_t max_payload_bits = 0;
};

struct Recovered {
  BitStream payload;
  GrayImage original;
  PreprocessParams params;
};

/// Preprocesses `o`, embeds header || compressed L || payload || seal into X.
/// Throws CapacityError (with the deficit) when X cannot hold it all.
EmbedResult embed_full(const GrayImage& o, const BitStream& payload,
                       const PreprocessParams& params, const Embedder& emb);

/// Recovers payload and cover bit-exactly; any inconsistency is an
/// ErrorKind::Corruption error and no partial result is returned.
Recovered extract_full(const GrayImage& y, const Embedder& emb);

/// capacity(X) minus side information, floored at zero.
std::size_t max_payload(const GrayImage& o, const PreprocessParams& params, const Embedder& emb);

/// The same accounting without preprocessing: boundary pixels of `o` are
/// pulled into [T, 255-T] and recorded in the binary location map.
std::size_t baseline_max_payload(const GrayImage& o, int T, const Embedder& emb);

/// Deterministic pseudo-random payload used when a report needs a marked image.
BitStream filler_payload(std::size_t bits, std::uint64_t seed = 0x5eedULL);

/// 100 * numerator / denominator, or nullopt when the denominator is zero.
std::optional<double> percent_ratio(std::size_t numerator, std::size_t denominator);

struct SweepRecord {
  int t0 = 1;
  int t1 = 1;
  std::size_t boundary_before = 0;
  std::size_t boundary_after = 0;
  std::size_t map_bits_before = 0;
  std::size_t map_bits_after = 0;
  std::optional<double> r0;  ///< percent
  std::optional<double> r1;  ///< percent
  std::size_t max_payload_before = 0;
  std::size_t max_payload_bits = 0;
  double r_emb_before = 0.0;
  double r_emb = 0.0;
  /// Cover vs marked at maximum payload; nullopt when side info does not fit.
  std::optional<Psnr> psnr;
  bool selected = false;
};

/// One record for the given (t0, t1) pair.
SweepRecord evaluate(const GrayImage& o, int T, int t0, int t1, const Embedder& emb);

/// Evaluates every pair of `thresholds` (sorted, deduplicated) in
/// lexicographic (t0, t1) order and marks the record with the largest r_emb;
/// ties go to the earliest pair.
std::vector<SweepRecord> sweep(const GrayImage& o, std::span<const int> thresholds, int T,
                               const Embedder& emb);

/// The record flagged by sweep().
const SweepRecord& selected_record(const std::vector<SweepRecord>& records);

/// counts[pixel][prediction] over every pixel of `o`.
std::vector<std::array<std::uint32_t, 256>> joint_histogram(const GrayImage& o);

/// 255 where `mask` is nonzero, else 0.
GrayImage mask_image(const Grid<std::uint8_t>& mask);
/// 255 where the location map marks a clamped pixel.
GrayImage mask_image(const LocationMap& map);

}  // namespace rdh
