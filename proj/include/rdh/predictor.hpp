#pragma once

#include "rdh/image.hpp"

namespace rdh {

/// Nearest integer to sum / count, ties away from zero. count > 0.
constexpr int rounded_mean(int sum, int count) noexcept {
  const int q = (2 * (sum < 0 ? -sum : sum) + count) / (2 * count);
  return sum < 0 ? -q : q;
}

/// Rounded mean of the in-bounds 4-neighbours of (i, j). The pixel itself is
/// never read, so a prediction at one parity depends only on the other parity.
/// Corners average two neighbours and edges three; images must be at least 2x2.
template <typename Pixel>
int predict(const Grid<Pixel>& img, int i, int j) noexcept {
  const int h = img.height();
  const int w = img.width();
  if (i > 0 && j > 0 && i + 1 < h && j + 1 < w) {
    const int sum = int(img.at(i - 1, j)) + int(img.at(i + 1, j)) + int(img.at(i, j - 1)) +
                    int(img.at(i, j + 1));
    return rounded_mean(sum, 4);
  }
  int sum = 0;
  int count = 0;
  if (i > 0) sum += img.at(i - 1, j), ++count;
  if (i + 1 < h) sum += img.at(i + 1, j), ++count;
  if (j > 0) sum += img.at(i, j - 1), ++count;
  if (j + 1 < w) sum += img.at(i, j + 1), ++count;
  return count ? rounded_mean(sum, count) : 0;
}

}  // namespace rdh
