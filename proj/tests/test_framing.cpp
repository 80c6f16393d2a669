#include <random>

#include "doctest.h"
#include "rdh/framing.hpp"
#include "rdh/pgm_io.hpp"

using namespace rdh;

TEST_CASE("empty payload and empty map frame to a bare header") {
  const CompressedMap empty{3, 0, 0, {}, 0};
  const BitStream f = frame_payload(BitStream(), empty, {1, 1, 4});
  REQUIRE(f.size() == kFrameHeaderBits);
  CHECK(f.to_bytes() == std::vector<std::uint8_t>{0xB5, 0x01, 0x01, 0x01, 0x04, 0, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("frame/deframe identity on random inputs") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const PreprocessParams p{1 + int(rng() % 127), 1 + int(rng() % 127), 1 + int(rng() % 127)};
    CompressedMap m;
    m.alphabet_size = 2 * p.T + 1;
    m.width = 5;
    m.height = 7;
    m.bitstream.resize(rng() % 20);
    for (auto& b : m.bitstream) b = static_cast<std::uint8_t>(rng());
    m.bit_length = static_cast<std::uint32_t>(m.bitstream.size() * 8);
    BitStream payload;
    const std::size_t n = rng() % 300;
    for (std::size_t k = 0; k < n; ++k) payload.push_back(rng() & 1);

    BitStream framed = frame_payload(payload, m, p);
    REQUIRE(framed.size() == kFrameHeaderBits + m.bit_length + n);
    framed.append_uint(0, static_cast<int>(rng() % 40));  // trailing padding is tolerated
    const Deframed d = deframe_payload(framed, 5, 7);
    REQUIRE(d.params == p);
    REQUIRE(d.map == m);
    REQUIRE(d.payload == payload);
    REQUIRE(d.frame_bits == kFrameHeaderBits + m.bit_length + n);
  }
}

TEST_CASE("non-byte-aligned map bit lengths") {
  CompressedMap m{3, 2, 2, {0xF0}, 5};
  BitStream payload;
  payload.push_back(true);
  const auto d = deframe_payload(frame_payload(payload, m, {1, 2, 3}), 2, 2);
  CHECK(d.map.bit_length == 5);
  CHECK(d.map.bitstream == std::vector<std::uint8_t>{0xF0});
  CHECK(d.payload == payload);
}

TEST_CASE("deframe errors") {
  const CompressedMap empty{3, 0, 0, {}, 0};
  BitStream f = frame_payload(BitStream(8, true), empty, {1, 1, 4});

  auto expect_corruption = [](const BitStream& b) {
    try {
      deframe_payload(b, 0, 0);
      FAIL("expected corruption");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Corruption);
    }
  };

  auto bytes = f.to_bytes();
  bytes[0] ^= 0x01;
  expect_corruption(BitStream::from_bytes(bytes, f.size()));

  bytes = f.to_bytes();
  bytes[1] = 7;
  expect_corruption(BitStream::from_bytes(bytes, f.size()));

  bytes = f.to_bytes();
  bytes[2] = 0;  // T = 0
  expect_corruption(BitStream::from_bytes(bytes, f.size()));

  expect_corruption(f.slice(0, f.size() - 1));  // payload longer than remaining bits
  expect_corruption(f.slice(0, 50));            // header cut short
}

TEST_CASE("frame layout matches the golden file") {
  CompressedMap m{5, 3, 3, {0x12, 0x34, 0x56}, 24};
  BitStream payload = BitStream::from_bytes(std::vector<std::uint8_t>{0xCA, 0xFE}, 13);
  const auto bytes = frame_payload(payload, m, {2, 3, 9}).to_bytes();
  const auto golden = read_file(std::string(RDH_GOLDEN_DIR) + "/frame_T2_t3_t9.bin");
  CHECK(bytes == golden);
}

TEST_CASE("frame rejects oversized map lengths") {
  CompressedMap m{3, 1, 1, {0x00}, 9};
  CHECK_THROWS_AS(frame_payload(BitStream(), m, {1, 1, 1}), Error);
}
