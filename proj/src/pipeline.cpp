#include "rdh/pipeline.hpp"

#include <algorithm>
#include <random>

#include <zlib.h>

#include "rdh/predictor.hpp"

namespace rdh {

namespace {

std::uint32_t seal_of(const GrayImage& o, const BitStream& payload) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, o.pixels().data(), static_cast<uInt>(o.pixels().size()));
  const auto bytes = payload.to_bytes();
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  const auto n = static_cast<std::uint32_t>(payload.size());
  const std::uint8_t len[4] = {static_cast<std::uint8_t>(n >> 24), static_cast<std::uint8_t>(n >> 16),
                               static_cast<std::uint8_t>(n >> 8), static_cast<std::uint8_t>(n)};
  crc = crc32(crc, len, 4);
  return static_cast<std::uint32_t>(crc);
}

void check_embedder_fits(const PreprocessParams& params, const Embedder& emb) {
  params.validate();
  if (params.T < emb.min_T())
    fail(ErrorKind::Validation, "T=" + std::to_string(params.T) + " is below the minimum " +
                                    std::to_string(emb.min_T()) + " of embedder " + emb.name());
}

std::size_t floor_sub(std::size_t a, std::size_t b) { return a > b ? a - b : 0; }

GrayImage clamp_into(const GrayImage& o, int T) {
  GrayImage x = o;
  for (auto& v : x.pixels()) v = static_cast<std::uint8_t>(std::clamp<int>(v, T, 255 - T));
  return x;
}

}  // namespace

EmbedResult embed_full(const GrayImage& o, const BitStream& payload,
                       const PreprocessParams& params, const Embedder& emb) {
  check_embedder_fits(params, emb);
  require_min_size(o);

  const PreprocessOutput pre = preprocess::forward(o, params);
  const CompressedMap map = compress(pre.locmap);
  BitStream stream = frame_payload(payload, map, params);
  stream.append_uint(seal_of(o, payload), static_cast<int>(kSealBits));

  const std::size_t cap = emb.capacity(pre.x);
  if (stream.size() > cap) throw CapacityError(stream.size(), cap);

  EmbedResult r;
  r.marked = emb.embed(pre.x, stream);
  r.params = params;
  r.map_bits = map.bit_length;
  r.side_info_bits = side_info_bits(map.bit_length);
  r.capacity_bits = cap;
  r.payload_bits = payload.size();
  r.max_payload_bits = floor_sub(cap, r.side_info_bits);
  r.r_emb = static_cast<double>(r.max_payload_bits) / static_cast<double>(o.size());
  r.psnr = psnr(o, r.marked);
  return r;
}

Recovered extract_full(const GrayImage& y, const Embedder& emb) {
  require_min_size(y);
  Extraction ex = emb.extract(y);
  Deframed d = deframe_payload(ex.bits, y.width(), y.height());
  if (d.params.T < emb.min_T()) fail(ErrorKind::Corruption, "frame: T below embedder minimum");

  BitReader tail(ex.bits);
  tail.read_bits(d.frame_bits);
  const auto seal = static_cast<std::uint32_t>(tail.read_uint(static_cast<int>(kSealBits)));
  while (tail.remaining() > 0)
    if (tail.read_uint(1) != 0) fail(ErrorKind::Corruption, "nonzero padding after the frame");

  const LocationMap locmap = decompress(d.map);
  GrayImage original = preprocess::inverse(ex.cover, locmap, d.params);
  if (seal_of(original, d.payload) != seal)
    fail(ErrorKind::Corruption, "integrity check failed: recovered image or payload differs");
  return {std::move(d.payload), std::move(original), d.params};
}

std::size_t max_payload(const GrayImage& o, const PreprocessParams& params, const Embedder& emb) {
  check_embedder_fits(params, emb);
  const PreprocessOutput pre = preprocess::forward(o, params);
  const CompressedMap map = compress(pre.locmap);
  return floor_sub(emb.capacity(pre.x), side_info_bits(map.bit_length));
}

std::size_t baseline_max_payload(const GrayImage& o, int T, const Embedder& emb) {
  check_embedder_fits({T, 1, 1}, emb);
  require_min_size(o);
  const CompressedMap map = compress_binary_baseline(o, T);
  return floor_sub(emb.capacity(clamp_into(o, T)), side_info_bits(map.bit_length));
}

BitStream filler_payload(std::size_t bits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitStream out;
  std::uint64_t word = 0;
  for (std::size_t k = 0; k < bits; ++k) {
    if (k % 64 == 0) word = rng();
    out.push_back(((word >> (63 - k % 64)) & 1u) != 0);
  }
  return out;
}

std::optional<double> percent_ratio(std::size_t numerator, std::size_t denominator) {
  if (denominator == 0) return std::nullopt;
  return 100.0 * static_cast<double>(numerator) / static_cast<double>(denominator);
}

namespace {

struct Baseline {
  std::size_t boundary = 0;
  std::size_t map_bits = 0;
  std::size_t max_payload = 0;
};

Baseline baseline_of(const GrayImage& o, int T, const Embedder& emb) {
  return {count_boundary_pixels(o, T), compress_binary_baseline(o, T).bit_length,
          baseline_max_payload(o, T, emb)};
}

SweepRecord evaluate_with(const GrayImage& o, int T, int t0, int t1, const Baseline& base,
                          const Embedder& emb) {
  const PreprocessParams params{T, t0, t1};
  check_embedder_fits(params, emb);
  const PreprocessOutput pre = preprocess::forward(o, params);
  const CompressedMap map = compress(pre.locmap);
  const std::size_t cap = emb.capacity(pre.x);
  const std::size_t side = side_info_bits(map.bit_length);
  const double pixels = static_cast<double>(o.size());

  SweepRecord r;
  r.t0 = t0;
  r.t1 = t1;
  r.boundary_before = base.boundary;
  r.boundary_after = boundary_count_after(pre);
  r.map_bits_before = base.map_bits;
  r.map_bits_after = map.bit_length;
  r.r0 = percent_ratio(r.boundary_after, r.boundary_before);
  // a cover without boundary pixels has nothing to map
  if (r.boundary_before > 0) r.r1 = percent_ratio(r.map_bits_after, r.map_bits_before);
  r.max_payload_before = base.max_payload;
  r.r_emb_before = static_cast<double>(base.max_payload) / pixels;
  r.max_payload_bits = floor_sub(cap, side);
  r.r_emb = static_cast<double>(r.max_payload_bits) / pixels;
  if (cap >= side) {
    const BitStream payload = filler_payload(r.max_payload_bits);
    BitStream stream = frame_payload(payload, map, params);
    stream.append_uint(seal_of(o, payload), static_cast<int>(kSealBits));
    r.psnr = psnr(o, emb.embed(pre.x, stream));
  }
  return r;
}

}  // namespace

SweepRecord evaluate(const GrayImage& o, int T, int t0, int t1, const Embedder& emb) {
  require_min_size(o);
  return evaluate_with(o, T, t0, t1, baseline_of(o, T, emb), emb);
}

std::vector<SweepRecord> sweep(const GrayImage& o, std::span<const int> thresholds, int T,
                               const Embedder& emb) {
  require_min_size(o);
  std::vector<int> ts(thresholds.begin(), thresholds.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  if (ts.empty()) fail(ErrorKind::Validation, "sweep: empty threshold set");

  const Baseline base = baseline_of(o, T, emb);
  std::vector<SweepRecord> records;
  records.reserve(ts.size() * ts.size());
  std::size_t best = 0;
  for (int t0 : ts) {
    for (int t1 : ts) {
      records.push_back(evaluate_with(o, T, t0, t1, base, emb));
      if (records.back().r_emb > records[best].r_emb) best = records.size() - 1;
    }
  }
  records[best].selected = true;
  return records;
}

const SweepRecord& selected_record(const std::vector<SweepRecord>& records) {
  auto it = std::find_if(records.begin(), records.end(), [](const SweepRecord& r) { return r.selected; });
  if (it == records.end()) fail(ErrorKind::Validation, "no selected sweep record");
  return *it;
}

std::vector<std::array<std::uint32_t, 256>> joint_histogram(const GrayImage& o) {
  require_min_size(o);
  std::vector<std::array<std::uint32_t, 256>> h(256);
  for (auto& row : h) row.fill(0);
  for (int i = 0; i < o.height(); ++i)
    for (int j = 0; j < o.width(); ++j) ++h[o.at(i, j)][predict(o, i, j)];
  return h;
}

GrayImage mask_image(const Grid<std::uint8_t>& mask) {
  GrayImage out(mask.width(), mask.height());
  auto src = mask.pixels();
  auto dst = out.pixels();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] ? 255 : 0;
  return out;
}

GrayImage mask_image(const LocationMap& map) {
  GrayImage out(map.width(), map.height());
  auto src = map.symbols().pixels();
  auto dst = out.pixels();
  const auto u = static_cast<std::uint8_t>(map.untouched());
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] != u ? 255 : 0;
  return out;
}

}  // namespace rdh
