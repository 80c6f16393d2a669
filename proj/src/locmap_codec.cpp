#include "rdh/locmap_codec.hpp"

#include "rdh/range_coder.hpp"

namespace rdh {

namespace {

void check_alphabet(int alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > 256)
    fail(ErrorKind::Validation, "alphabet size must lie in [2, 256], got " +
                                    std::to_string(alphabet_size));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

}  // namespace

CompressedMap compress_symbols(const Grid<std::uint8_t>& symbols, int alphabet_size) {
  check_alphabet(alphabet_size);
  CompressedMap c;
  c.alphabet_size = alphabet_size;
  c.width = symbols.width();
  c.height = symbols.height();
  if (symbols.empty()) return c;

  AdaptiveModel model(alphabet_size);
  RangeEncoder enc;
  for (auto s : symbols.pixels()) {
    if (s >= alphabet_size)
      fail(ErrorKind::Validation, "symbol " + std::to_string(s) + " outside alphabet of size " +
                                      std::to_string(alphabet_size));
    enc.encode(model.cum(s), model.freq(s), model.total());
    model.update(s);
  }
  c.bitstream = enc.finish();
  c.bit_length = static_cast<std::uint32_t>(c.bitstream.size() * 8);
  return c;
}

Grid<std::uint8_t> decompress_symbols(const CompressedMap& c) {
  check_alphabet(c.alphabet_size);
  if (c.width < 0 || c.height < 0) fail(ErrorKind::Corruption, "compressed map: bad dimensions");
  if (c.bit_length > c.bitstream.size() * 8)
    fail(ErrorKind::Corruption, "compressed map: bit length exceeds stream");
  Grid<std::uint8_t> out(c.width, c.height);
  if (out.empty()) {
    if (c.bit_length != 0) fail(ErrorKind::Corruption, "compressed map: data for an empty grid");
    return out;
  }
  const std::span<const std::uint8_t> bytes(c.bitstream.data(), (c.bit_length + 7) / 8);
  AdaptiveModel model(c.alphabet_size);
  RangeDecoder dec(bytes);
  for (auto& s : out.pixels()) {
    const std::uint32_t target = dec.decode_freq(model.total());
    std::uint32_t cum = 0;
    const int sym = model.find(target, cum);
    dec.decode_update(cum, model.freq(sym));
    model.update(sym);
    s = static_cast<std::uint8_t>(sym);
  }
  if (!dec.at_end()) fail(ErrorKind::Corruption, "compressed map: trailing bytes after last symbol");
  return out;
}

CompressedMap compress(const LocationMap& map) {
  return compress_symbols(map.symbols(), map.alphabet_size());
}

LocationMap decompress(const CompressedMap& c) {
  if (c.alphabet_size % 2 == 0 || c.alphabet_size < 3)
    fail(ErrorKind::Corruption, "location map alphabet must be 2T+1");
  return LocationMap(decompress_symbols(c), (c.alphabet_size - 1) / 2);
}

Grid<std::uint8_t> binary_boundary_map(const GrayImage& img, int T) {
  if (T < 1 || T > 127) fail(ErrorKind::Validation, "T must lie in [1, 127]");
  Grid<std::uint8_t> m(img.width(), img.height());
  auto src = img.pixels();
  auto dst = m.pixels();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = is_boundary(src[k], T) ? 1 : 0;
  return m;
}

CompressedMap compress_binary_baseline(const GrayImage& img, int T) {
  return compress_symbols(binary_boundary_map(img, T), 2);
}

std::vector<std::uint8_t> serialize(const CompressedMap& c) {
  check_alphabet(c.alphabet_size);
  std::vector<std::uint8_t> out{'L', 'M', static_cast<std::uint8_t>(c.alphabet_size - 1)};
  put_u32(out, static_cast<std::uint32_t>(c.width));
  put_u32(out, static_cast<std::uint32_t>(c.height));
  put_u32(out, c.bit_length);
  const std::size_t n = (c.bit_length + 7) / 8;
  out.insert(out.end(), c.bitstream.begin(), c.bitstream.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

CompressedMap parse_compressed_map(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
  if (bytes.size() < kCompressedMapHeaderBytes)
    fail(ErrorKind::Corruption, "compressed map: truncated header");
  if (bytes[0] != 'L' || bytes[1] != 'M') fail(ErrorKind::Corruption, "compressed map: bad magic");
  CompressedMap c;
  c.alphabet_size = bytes[2] + 1;
  if (c.alphabet_size < 2) fail(ErrorKind::Corruption, "compressed map: alphabet too small");
  const std::uint32_t w = get_u32(bytes, 3);
  const std::uint32_t h = get_u32(bytes, 7);
  if (w > (1u << 20) || h > (1u << 20)) fail(ErrorKind::Corruption, "compressed map: bad dimensions");
  c.width = static_cast<int>(w);
  c.height = static_cast<int>(h);
  c.bit_length = get_u32(bytes, 11);
  const std::size_t n = (std::size_t{c.bit_length} + 7) / 8;
  if (bytes.size() - kCompressedMapHeaderBytes < n)
    fail(ErrorKind::Corruption, "compressed map: truncated bitstream");
  c.bitstream.assign(bytes.begin() + kCompressedMapHeaderBytes,
                     bytes.begin() + static_cast<std::ptrdiff_t>(kCompressedMapHeaderBytes + n));
  if (consumed) *consumed = kCompressedMapHeaderBytes + n;
  return c;
}

}  // namespace rdh
