#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rdh/error.hpp"

namespace rdh {

/// Row-major 2-D grid. Row index i runs over height, column index j over width.
template <typename Pixel>
class Grid {
public:
  using value_type = Pixel;

  Grid() = default;
  Grid(int width, int height, Pixel fill = Pixel{})
      : width_(checked_dim(width)), height_(checked_dim(height)),
        pixels_(static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_), fill) {}
  Grid(int width, int height, std::vector<Pixel> pixels)
      : width_(checked_dim(width)), height_(checked_dim(height)), pixels_(std::move(pixels)) {
    if (pixels_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_))
      fail(ErrorKind::Validation, "grid: pixel count does not match " +
                                      std::to_string(width_) + "x" + std::to_string(height_));
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  Pixel& at(int i, int j) noexcept { return pixels_[index(i, j)]; }
  const Pixel& at(int i, int j) const noexcept { return pixels_[index(i, j)]; }

  std::span<Pixel> pixels() noexcept { return pixels_; }
  std::span<const Pixel> pixels() const noexcept { return pixels_; }

  bool same_shape(const auto& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  static int checked_dim(int d) {
    if (d < 0) fail(ErrorKind::Validation, "grid: negative dimension");
    return d;
  }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(j);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> pixels_;
};

/// 8-bit grayscale image: the cover, the preprocessed image and the marked image.
using GrayImage = Grid<std::uint8_t>;

/// Signed intermediate image. Values stay within [-T, 255+T] for T <= 127.
using WideImage = Grid<std::int16_t>;

template <typename To, typename From>
Grid<To> grid_cast(const Grid<From>& src) {
  std::vector<To> out(src.pixels().begin(), src.pixels().end());
  return Grid<To>(src.width(), src.height(), std::move(out));
}

/// Checkerboard class of a position: (i + j) mod 2.
enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

constexpr Parity parity_of(int i, int j) noexcept {
  return ((i + j) & 1) == 0 ? Parity::Even : Parity::Odd;
}

constexpr Parity opposite(Parity p) noexcept {
  return p == Parity::Even ? Parity::Odd : Parity::Even;
}

constexpr bool is_boundary(int value, int T) noexcept { return value < T || value > 255 - T; }

/// Pixels in [0, T) or (255 - T, 255]. T must lie in [1, 127].
std::size_t count_boundary_pixels(const GrayImage& img, int T);

/// Peak signal-to-noise ratio with a distinguished value for identical images.
class Psnr {
public:
  static Psnr infinite() noexcept { return Psnr(); }
  static Psnr finite(double db) noexcept { return Psnr(db); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful when !is_infinite().
  double db() const noexcept { return db_; }
  /// "inf" for identical images, otherwise fixed-point decibels.
  std::string to_string(int precision = 4) const;

  friend bool operator==(const Psnr&, const Psnr&) = default;

private:
  Psnr() = default;
  explicit Psnr(double db) noexcept : infinite_(false), db_(db) {}

  bool infinite_ = true;
  double db_ = 0.0;
};

/// 10 log10(255^2 / MSE). Throws on shape mismatch.
Psnr psnr(const GrayImage& a, const GrayImage& b);

}  // namespace rdh
