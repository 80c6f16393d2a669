#include "rdh/image.hpp"

#include <cmath>
#include <cstdio>

namespace rdh {

std::size_t count_boundary_pixels(const GrayImage& img, int T) {
  if (T < 1 || T > 127)
    fail(ErrorKind::Validation, "T must lie in [1, 127], got " + std::to_string(T));
  std::size_t n = 0;
  for (auto v : img.pixels()) n += is_boundary(v, T) ? 1 : 0;
  return n;
}

std::string Psnr::to_string(int precision) const {
  if (infinite_) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, db_);
  return buf;
}

Psnr psnr(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b))
    fail(ErrorKind::Validation, "psnr: images differ in size");
  std::uint64_t sse = 0;
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t k = 0; k < pa.size(); ++k) {
    const int d = static_cast<int>(pa[k]) - static_cast<int>(pb[k]);
    sse += static_cast<std::uint64_t>(d * d);
  }
  if (sse == 0) return Psnr::infinite();
  const double mse = static_cast<double>(sse) / static_cast<double>(pa.size());
  return Psnr::finite(10.0 * std::log10(255.0 * 255.0 / mse));
}

}  // namespace rdh
