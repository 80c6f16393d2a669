#include "rdh/embedder.hpp"

#include "rdh/predictor.hpp"
#include "rdh/preprocess.hpp"

namespace rdh {

namespace {

template <typename Fn>
void for_each_even_cell(int height, int width, Fn fn) {
  for (int i = 0; i < height; ++i)
    for (int j = i & 1; j < width; j += 2) fn(i, j);
}

}  // namespace

std::size_t HistogramShiftEmbedder::capacity(const GrayImage& x) const {
  require_min_size(x);
  std::size_t n = 0;
  for_each_even_cell(x.height(), x.width(), [&](int i, int j) {
    const int e = int(x.at(i, j)) - predict(x, i, j);
    n += (e == 0 || e == -1) ? 1 : 0;
  });
  return n;
}

GrayImage HistogramShiftEmbedder::embed(const GrayImage& x, const BitStream& bits) const {
  require_min_size(x);
  for (auto v : x.pixels())
    if (v < min_T() || v > 255 - min_T())
      fail(ErrorKind::Validation, "embedder: cover contains boundary pixel " + std::to_string(v));
  const std::size_t cap = capacity(x);
  if (bits.size() > cap) throw CapacityError(bits.size(), cap);

  GrayImage y = x;
  std::size_t next = 0;
  for_each_even_cell(x.height(), x.width(), [&](int i, int j) {
    const int pred = predict(x, i, j);
    const int e = int(x.at(i, j)) - pred;
    int shifted;
    if (e == 0 || e == -1) {
      const int b = next < bits.size() && bits[next] ? 1 : 0;
      ++next;
      shifted = e == 0 ? b : -1 - b;
    } else {
      shifted = e > 0 ? e + 1 : e - 1;
    }
    y.at(i, j) = static_cast<std::uint8_t>(pred + shifted);
  });
  return y;
}

Extraction HistogramShiftEmbedder::extract(const GrayImage& y) const {
  require_min_size(y);
  Extraction out{BitStream(), y};
  for_each_even_cell(y.height(), y.width(), [&](int i, int j) {
    const int pred = predict(y, i, j);
    const int shifted = int(y.at(i, j)) - pred;
    int e;
    if (shifted == 0 || shifted == 1) {
      out.bits.push_back(shifted == 1);
      e = 0;
    } else if (shifted == -1 || shifted == -2) {
      out.bits.push_back(shifted == -2);
      e = -1;
    } else {
      e = shifted > 0 ? shifted - 1 : shifted + 1;
    }
    const int v = pred + e;
    // Only reachable from a corrupted image; the value cannot come from embed().
    if (v < 0 || v > 255) fail(ErrorKind::Corruption, "extracted pixel outside [0, 255]");
    out.cover.at(i, j) = static_cast<std::uint8_t>(v);
  });
  return out;
}

}  // namespace rdh
