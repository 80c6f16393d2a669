#include <random>

#include "doctest.h"
#include "rdh/fixtures.hpp"
#include "rdh/pipeline.hpp"
#include "test_support.hpp"

using namespace rdh;

namespace {

const HistogramShiftEmbedder kEmb;

BitStream random_bits(std::size_t n, std::mt19937& rng) {
  BitStream b;
  for (std::size_t k = 0; k < n; ++k) b.push_back(rng() & 1);
  return b;
}

void check_bounds(const GrayImage& o, const GrayImage& y, int T) {
  for (std::size_t k = 0; k < o.size(); ++k)
    REQUIRE(std::abs(int(o.pixels()[k]) - int(y.pixels()[k])) <= T + kEmb.max_shift());
}

}  // namespace

TEST_CASE("smooth mid-gray cover carries a small payload") {
  const GrayImage o(256, 256, 128);
  std::mt19937 rng(1);
  const BitStream p = random_bits(100, rng);
  const PreprocessParams params{1, 1, 4};
  const EmbedResult r = embed_full(o, p, params, kEmb);
  CHECK(r.payload_bits == 100);
  CHECK(r.r_emb == doctest::Approx(double(r.max_payload_bits) / o.size()));
  CHECK(r.max_payload_bits == max_payload(o, params, kEmb));
  check_bounds(o, r.marked, 1);

  const Recovered back = extract_full(r.marked, kEmb);
  CHECK(back.payload == p);
  CHECK(back.original == o);
  CHECK(back.params == params);
}

TEST_CASE("max_payload on a flat cover is capacity minus header, seal and a tiny map") {
  const GrayImage o(256, 256, 128);
  const PreprocessParams params{1, 1, 4};
  const std::size_t cap = kEmb.capacity(o);  // X == O here
  CHECK(cap == 256 * 256 / 2);
  const auto map_bits = compress(preprocess::forward(o, params).locmap).bit_length;
  CHECK(map_bits < 200);
  CHECK(max_payload(o, params, kEmb) == cap - kFrameHeaderBits - kSealBits - map_bits);
}

TEST_CASE("payload one bit over the maximum is rejected with its deficit") {
  std::mt19937 rng(2);
  const GrayImage o = make_fixture(FixtureKind::LowLight, 96, 96, 3).image;
  const PreprocessParams params{1, 1, 4};
  const std::size_t maxp = max_payload(o, params, kEmb);
  REQUIRE(maxp > 0);
  CHECK_NOTHROW(embed_full(o, random_bits(maxp, rng), params, kEmb));
  try {
    embed_full(o, random_bits(maxp + 1, rng), params, kEmb);
    FAIL("expected capacity error");
  } catch (const CapacityError& e) {
    CHECK(e.deficit_bits() == 1);
    CHECK(e.kind() == ErrorKind::Capacity);
  }
}

TEST_CASE("3x3 all-zero cover: side information is mostly header") {
  const GrayImage o(3, 3, 0);
  const PreprocessParams params{1, 1, 4};
  const auto pre = preprocess::forward(o, params);
  const auto map_bits = compress(pre.locmap).bit_length;
  CHECK(map_bits < kFrameHeaderBits);
  CHECK(max_payload(o, params, kEmb) == 0);
  try {
    embed_full(o, BitStream(2), params, kEmb);
    FAIL("expected capacity error");
  } catch (const CapacityError& e) {
    CHECK(e.required_bits() == side_info_bits(map_bits) + 2);
    CHECK(e.available_bits() == 5);
  }
}

TEST_CASE("max_payload is zero when the map outweighs the capacity") {
  std::mt19937 rng(3);
  const GrayImage o = test::extremes_image(64, 64, rng, 0.9);
  CHECK(max_payload(o, {1, 1, 4}, kEmb) == 0);
  CHECK(baseline_max_payload(o, 1, kEmb) == 0);
  CHECK_THROWS_AS(embed_full(o, BitStream(), {1, 1, 4}, kEmb), CapacityError);
}

TEST_CASE("raising t1 from 1 to 4 does not lower capacity on a dark pattern") {
  const GrayImage o(64, 64, 0);
  CHECK(max_payload(o, {1, 1, 4}, kEmb) >= max_payload(o, {1, 1, 1}, kEmb));
  CHECK(max_payload(o, {1, 1, 4}, kEmb) > 0);
}

TEST_CASE("end-to-end identity across fixtures, payload sizes and parameters") {
  std::mt19937 rng(4);
  const auto corpus = generate_corpus(5, 1, 96, 80);
  std::size_t successes = 0;
  for (const auto& fx : corpus) {
    for (int T : {1, 2, 4}) {
      for (int t0 : {1, 4, 16}) {
        for (int t1 : {1, 4, 16}) {
          const PreprocessParams params{T, t0, t1};
          const std::size_t maxp = max_payload(fx.image, params, kEmb);
          for (std::size_t n : {std::size_t{0}, std::size_t{1}, maxp / 2, maxp}) {
            if (n > maxp) continue;
            const BitStream p = random_bits(n, rng);
            EmbedResult r;
            try {
              r = embed_full(fx.image, p, params, kEmb);
            } catch (const CapacityError&) {
              REQUIRE(maxp == 0);
              continue;
            }
            check_bounds(fx.image, r.marked, T);
            const Recovered back = extract_full(r.marked, kEmb);
            REQUIRE(back.payload == p);
            REQUIRE(back.original == fx.image);
            ++successes;
          }
        }
      }
    }
  }
  CHECK(successes > 300);
}

TEST_CASE("single-bit damage never restores a wrong cover silently") {
  std::mt19937 rng(5);
  const GrayImage o = make_fixture(FixtureKind::Clustered, 128, 128, 9).image;
  const PreprocessParams params{1, 1, 4};
  const BitStream p = random_bits(max_payload(o, params, kEmb) / 2, rng);
  const GrayImage y = embed_full(o, p, params, kEmb).marked;
  for (int trial = 0; trial < 200; ++trial) {
    GrayImage damaged = y;
    const std::size_t k = rng() % damaged.size();
    damaged.pixels()[k] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
    try {
      const Recovered back = extract_full(damaged, kEmb);
      REQUIRE(back.original == o);  // at most the payload may differ
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::Corruption);
    }
  }
}

TEST_CASE("empty payload still restores the cover") {
  const GrayImage o = make_fixture(FixtureKind::Overexposed, 128, 100, 1).image;
  const auto r = embed_full(o, BitStream(), {1, 2, 8}, kEmb);
  const auto back = extract_full(r.marked, kEmb);
  CHECK(back.payload.empty());
  CHECK(back.original == o);
}

TEST_CASE("embedder minimum T is enforced") {
  CHECK_THROWS_AS(embed_full(GrayImage(4, 4, 9), BitStream(), {0, 1, 1}, kEmb), Error);
}

TEST_CASE("sweep over a constant cover") {
  const GrayImage o(32, 32, 128);
  const std::vector<int> ts{1, 2, 4};
  const auto recs = sweep(o, ts, 1, kEmb);
  REQUIRE(recs.size() == 9);
  for (const auto& r : recs) {
    CHECK(r.boundary_before == 0);
    CHECK(!r.r0);
    CHECK(!r.r1);
    CHECK(r.boundary_after == recs.front().boundary_after);
    CHECK(r.map_bits_after == recs.front().map_bits_after);
    CHECK(r.r_emb == recs.front().r_emb);
  }
  // every record ties, so the lexicographically first pair wins
  CHECK(recs.front().selected);
  CHECK(selected_record(recs).t0 == 1);
  CHECK(selected_record(recs).t1 == 1);
}

TEST_CASE("sweep on a clustered cover follows the table ordering and argmax") {
  const GrayImage o = make_fixture(FixtureKind::Clustered, 96, 96, 4).image;
  const std::vector<int> ts{4, 1, 2, 1};
  const auto recs = sweep(o, ts, 1, kEmb);
  REQUIRE(recs.size() == 9);
  auto find = [&](int t0, int t1) {
    for (const auto& r : recs)
      if (r.t0 == t0 && r.t1 == t1) return r;
    FAIL("missing record");
    return recs.front();
  };
  CHECK(find(1, 4).boundary_after < find(1, 1).boundary_after);
  const auto& best = selected_record(recs);
  int selected = 0;
  for (const auto& r : recs) {
    CHECK(best.r_emb >= r.r_emb);
    CHECK(r.r0.value() >= 0.0);
    CHECK(r.r0.value() <= 100.0);
    CHECK(r.r1.value() >= 0.0);
    CHECK(r.r1.value() <= 100.0);
    selected += r.selected;
  }
  CHECK(selected == 1);
  CHECK(recs[0].t0 == 1);
  CHECK(recs[0].t1 == 1);
  CHECK(recs[8].t0 == 4);
}

TEST_CASE("evaluate reports PSNR of a maximally loaded marked image") {
  const GrayImage o = make_fixture(FixtureKind::LowLight, 64, 64, 2).image;
  const auto rec = evaluate(o, 1, 1, 4, kEmb);
  REQUIRE(rec.psnr);
  CHECK(!rec.psnr->is_infinite());
  CHECK(rec.psnr->db() > 40.0);
  CHECK(rec.r_emb == double(rec.max_payload_bits) / o.size());
}

TEST_CASE("percent_ratio sentinel") {
  CHECK(!percent_ratio(3, 0));
  CHECK(*percent_ratio(1, 4) == 25.0);
}

TEST_CASE("joint histogram and mask images") {
  const GrayImage o(4, 3, {0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110});
  const auto h = joint_histogram(o);
  std::uint64_t total = 0;
  for (const auto& row : h)
    for (auto c : row) total += c;
  CHECK(total == 12);
  CHECK(h[0][25] == 1);  // (0,0): neighbours 10 and 40

  const auto mask = mask_image(Grid<std::uint8_t>(2, 1, {0, 1}));
  CHECK(mask == GrayImage(2, 1, {0, 255}));
  LocationMap l(2, 1, 1);
  l.set(0, 1, 0);
  CHECK(mask_image(l) == GrayImage(2, 1, {0, 255}));
}
