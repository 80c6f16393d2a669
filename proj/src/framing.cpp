#include "rdh/framing.hpp"

#include <limits>

namespace rdh {

BitStream frame_payload(const BitStream& payload, const CompressedMap& map,
                        const PreprocessParams& params) {
  params.validate();
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (payload.size() > kMax) fail(ErrorKind::Validation, "payload longer than 2^32-1 bits");
  if (map.bit_length > map.bitstream.size() * 8)
    fail(ErrorKind::Validation, "compressed map bit length exceeds its stream");

  BitStream out;
  out.append_uint(kFrameMagic, 8);
  out.append_uint(kFrameVersion, 8);
  out.append_uint(static_cast<std::uint64_t>(params.T), 8);
  out.append_uint(static_cast<std::uint64_t>(params.t0), 8);
  out.append_uint(static_cast<std::uint64_t>(params.t1), 8);
  out.append_uint(map.bit_length, 32);
  out.append_uint(payload.size(), 32);
  out.append_bytes(map.bitstream, map.bit_length);
  out.append(payload);
  return out;
}

Deframed deframe_payload(const BitStream& bits, int width, int height) {
  BitReader in(bits);
  if (in.read_uint(8) != kFrameMagic) fail(ErrorKind::Corruption, "frame: bad magic");
  const auto version = in.read_uint(8);
  if (version != kFrameVersion)
    fail(ErrorKind::Corruption, "frame: unsupported version " + std::to_string(version));

  Deframed d;
  d.params.T = static_cast<int>(in.read_uint(8));
  d.params.t0 = static_cast<int>(in.read_uint(8));
  d.params.t1 = static_cast<int>(in.read_uint(8));
  try {
    d.params.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Corruption, std::string("frame: ") + e.what());
  }
  const auto map_bits = in.read_uint(32);
  const auto payload_bits = in.read_uint(32);
  if (map_bits + payload_bits > in.remaining())
    fail(ErrorKind::Corruption, "frame: declared lengths (" + std::to_string(map_bits) + " + " +
                                    std::to_string(payload_bits) + " bits) exceed the " +
                                    std::to_string(in.remaining()) + " bits available");

  d.map.alphabet_size = 2 * d.params.T + 1;
  d.map.width = width;
  d.map.height = height;
  d.map.bit_length = static_cast<std::uint32_t>(map_bits);
  d.map.bitstream = in.read_bits(map_bits).to_bytes();
  d.payload = in.read_bits(payload_bits);
  d.frame_bits = in.position();
  return d;
}

}  // namespace rdh
