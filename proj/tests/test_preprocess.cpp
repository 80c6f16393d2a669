#include <algorithm>
#include <random>

#include "doctest.h"
#include "rdh/preprocess.hpp"
#include "test_support.hpp"

using namespace rdh;

namespace {

// Frozen from tests/oracles/hand_trace.py (3x3 all-zero image, T = 1).
const std::vector<std::int16_t> kTraceX0{1, 0, 1, 0, 1, 0, 1, 0, 1};
const std::vector<std::int16_t> kTraceX1_t1_1{1, 0, 1, 0, 1, 0, 1, 0, 1};
const std::vector<std::int16_t> kTraceX1_t1_4{1, 1, 1, 1, 1, 1, 1, 1, 1};
const std::vector<std::uint8_t> kTraceX{1, 1, 1, 1, 1, 1, 1, 1, 1};
const std::vector<std::uint8_t> kTraceL_t1_1{2, 1, 2, 1, 2, 1, 2, 1, 2};
const std::vector<std::uint8_t> kTraceL_t1_4{2, 2, 2, 2, 2, 2, 2, 2, 2};

std::vector<GrayImage> image_zoo(std::mt19937& rng) {
  std::vector<GrayImage> zoo;
  for (auto [w, h] : {std::pair{2, 2}, {3, 3}, {2, 7}, {9, 2}, {16, 16}, {31, 17}, {64, 48}}) {
    zoo.push_back(test::random_image(w, h, rng));
    zoo.push_back(GrayImage(w, h, 0));
    zoo.push_back(GrayImage(w, h, 255));
    zoo.push_back(test::extremes_image(w, h, rng, 0.5));
    zoo.push_back(test::checkerboard_extremes(w, h));
    zoo.push_back(test::smooth_gradient(w, h, rng));
    zoo.push_back(test::random_image(w, h, rng, 0, 3));
    zoo.push_back(test::random_image(w, h, rng, 252, 255));
  }
  return zoo;
}

std::vector<PreprocessParams> param_grid() {
  std::vector<PreprocessParams> out;
  for (int T : {1, 2, 4, 127})
    for (int t0 : {1, 4, 16, 127})
      for (int t1 : {1, 4, 16, 127}) out.push_back({T, t0, t1});
  return out;
}

}  // namespace

TEST_CASE("hand trace: 3x3 zeros, t0=1, t1=1") {
  const GrayImage o(3, 3, 0);
  const PreprocessParams p{1, 1, 1};
  const auto st = preprocess::forward_stages(o, p);
  CHECK(std::vector<std::int16_t>(st.x0.pixels().begin(), st.x0.pixels().end()) == kTraceX0);
  CHECK(std::vector<std::int16_t>(st.x1.pixels().begin(), st.x1.pixels().end()) == kTraceX1_t1_1);

  const auto out = preprocess::forward(o, p);
  CHECK(out.x == GrayImage(3, 3, kTraceX));
  CHECK(out.locmap.symbols() == Grid<std::uint8_t>(3, 3, kTraceL_t1_1));
  CHECK(boundary_count_after(out) == 4);
  CHECK(preprocess::inverse(out.x, out.locmap, p) == o);
}

TEST_CASE("hand trace: 3x3 zeros, t0=1, t1=4") {
  const GrayImage o(3, 3, 0);
  const PreprocessParams p{1, 1, 4};
  const auto st = preprocess::forward_stages(o, p);
  CHECK(std::vector<std::int16_t>(st.x1.pixels().begin(), st.x1.pixels().end()) == kTraceX1_t1_4);
  const auto out = preprocess::forward(o, p);
  CHECK(out.x == GrayImage(3, 3, kTraceX));
  CHECK(out.locmap.symbols() == Grid<std::uint8_t>(3, 3, kTraceL_t1_4));
  CHECK(boundary_count_after(out) == 0);
  CHECK(preprocess::inverse(out.x, out.locmap, p) == o);
}

TEST_CASE("mid-gray image is a fixed point") {
  for (const auto& p : param_grid()) {
    if (p.t0 > 127 || p.t1 > 127 || p.T > 100) continue;
    const GrayImage o(12, 9, 128);
    const auto out = preprocess::forward(o, p);
    CHECK(out.x == o);
    CHECK(out.locmap.marked_count() == 0);
  }
}

TEST_CASE("un-clamp branch table") {
  GrayImage x(3, 1, {1, 254, 100});
  LocationMap l(3, 1, 1);
  l.set(0, 0, 0);
  l.set(0, 1, 0);
  const WideImage x1 = preprocess::unclamp(x, l);
  CHECK(x1.at(0, 0) == -1);
  CHECK(x1.at(0, 1) == 256);
  CHECK(x1.at(0, 2) == 100);

  // T = 3: l = 1 at x = T means pre-clamp value -2; at 255-T it means 257.
  GrayImage y(2, 1, {3, 252});
  LocationMap m(2, 1, 3);
  m.set(0, 0, 1);
  m.set(0, 1, 1);
  const WideImage y1 = preprocess::unclamp(y, m);
  CHECK(y1.at(0, 0) == -2);
  CHECK(y1.at(0, 1) == 257);
}

TEST_CASE("inverse rejects inconsistent side information") {
  const PreprocessParams p{1, 1, 4};
  GrayImage x(4, 4, 100);
  LocationMap l(4, 4, 1);
  l.set(1, 1, 0);  // marked but x is not at T or 255-T
  try {
    preprocess::inverse(x, l, p);
    FAIL("expected corruption");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Corruption);
  }

  GrayImage bad(4, 4, 0);  // pixels below T
  CHECK_THROWS_AS(preprocess::inverse(bad, LocationMap(4, 4, 1), p), Error);

  CHECK_THROWS_AS(preprocess::inverse(x, LocationMap(4, 5, 1), p), Error);
  CHECK_THROWS_AS(preprocess::inverse(x, LocationMap(4, 4, 2), p), Error);

  Grid<std::uint8_t> sym(4, 4, 2);
  sym.at(0, 0) = 3;
  CHECK_THROWS_AS(LocationMap(sym, 1), Error);
}

TEST_CASE("parameter and size validation") {
  CHECK_THROWS_AS(preprocess::forward(GrayImage(1, 5, 0), {1, 1, 1}), Error);
  CHECK_THROWS_AS(preprocess::forward(GrayImage(5, 1, 0), {1, 1, 1}), Error);
  CHECK_THROWS_AS(preprocess::forward(GrayImage(4, 4, 0), {0, 1, 1}), Error);
  CHECK_THROWS_AS(preprocess::forward(GrayImage(4, 4, 0), {1, 128, 1}), Error);
  CHECK_THROWS_AS(preprocess::forward(GrayImage(4, 4, 0), {1, 1, 0}), Error);
  CHECK_NOTHROW(preprocess::forward(GrayImage(2, 2, 0), {127, 127, 127}));
}

TEST_CASE("round trip, range, distortion and map well-formedness") {
  std::mt19937 rng(2024);
  const auto zoo = image_zoo(rng);
  for (const auto& p : param_grid()) {
    for (const auto& o : zoo) {
      const auto st = preprocess::forward_stages(o, p);
      const auto out = preprocess::forward(o, p);
      const int T = p.T;
      for (int i = 0; i < o.height(); ++i) {
        for (int j = 0; j < o.width(); ++j) {
          const int v = out.x.at(i, j);
          REQUIRE(v >= T);
          REQUIRE(v <= 255 - T);
          REQUIRE(std::abs(v - int(o.at(i, j))) <= T);
          const int pre = st.x1.at(i, j);
          REQUIRE(pre >= -T);
          REQUIRE(pre <= 255 + T);
          const bool clamped = pre < T || pre > 255 - T;
          REQUIRE(clamped == (out.locmap.at(i, j) != 2 * T));
          // parity separation
          if (parity_of(i, j) == Parity::Odd) REQUIRE(st.x0.at(i, j) == o.at(i, j));
          else REQUIRE(st.x1.at(i, j) == st.x0.at(i, j));
        }
      }
      REQUIRE(preprocess::inverse(out.x, out.locmap, p) == o);
    }
  }
}

TEST_CASE("decoder recomputes exactly the encoder's predictions") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const GrayImage o = test::extremes_image(5 + trial, 4 + trial / 2, rng, 0.4);
    const PreprocessParams p{1 + trial % 3, 1 + trial % 5, 4};
    preprocess::PredictionTrace enc, dec;
    const auto out = preprocess::forward(o, p, &enc);
    preprocess::inverse(out.x, out.locmap, p, &dec);
    std::sort(enc.begin(), enc.end());
    std::sort(dec.begin(), dec.end());
    REQUIRE(enc.size() == o.size());
    REQUIRE(enc == dec);
  }
}
