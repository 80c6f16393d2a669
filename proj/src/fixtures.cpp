#include "rdh/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace rdh {

namespace {

/// mt19937_64 output is fixed by the standard; the distributions are not, so
/// uniform and normal deviates are derived here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  int below(int n) { return static_cast<int>(uniform() * n); }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

private:
  std::mt19937_64 eng_;
};

/// Multi-octave value noise in roughly [0, 1].
std::vector<double> smooth_field(int width, int height, Rng& rng) {
  std::vector<double> f(static_cast<std::size_t>(width) * height, 0.0);
  const int base = std::max(2, std::max(width, height) / 3);
  double amp = 1.0;
  double norm = 0.0;
  for (int cell = base; cell >= 2 && amp > 0.1; cell /= 2, amp *= 0.5) {
    const int gw = width / cell + 2;
    const int gh = height / cell + 2;
    std::vector<double> lattice(static_cast<std::size_t>(gw) * gh);
    for (auto& v : lattice) v = rng.uniform();
    for (int i = 0; i < height; ++i) {
      const double y = static_cast<double>(i) / cell;
      const int y0 = static_cast<int>(y);
      double ty = y - y0;
      ty = ty * ty * (3 - 2 * ty);
      for (int j = 0; j < width; ++j) {
        const double x = static_cast<double>(j) / cell;
        const int x0 = static_cast<int>(x);
        double tx = x - x0;
        tx = tx * tx * (3 - 2 * tx);
        auto at = [&](int a, int b) { return lattice[static_cast<std::size_t>(a) * gw + b]; };
        const double top = at(y0, x0) * (1 - tx) + at(y0, x0 + 1) * tx;
        const double bot = at(y0 + 1, x0) * (1 - tx) + at(y0 + 1, x0 + 1) * tx;
        f[static_cast<std::size_t>(i) * width + j] += amp * (top * (1 - ty) + bot * ty);
      }
    }
    norm += amp;
  }
  for (auto& v : f) v /= norm;
  return f;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  const auto k = static_cast<std::size_t>(std::clamp(q, 0.0, 1.0) * static_cast<double>(v.size() - 1));
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  return v[k];
}

std::uint8_t to_pixel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

/// Field quantile `lo_q` maps to `lo_value`, quantile `hi_q` to `hi_value`;
/// Gaussian noise of `sigma` is added before clipping.
GrayImage camera(int width, int height, Rng& rng, double lo_q, double lo_value, double hi_q,
                 double hi_value, double sigma) {
  const auto f = smooth_field(width, height, rng);
  const double a = quantile(f, lo_q);
  double b = quantile(f, hi_q);
  if (b <= a) b = a + 1e-9;
  const double gain = (hi_value - lo_value) / (b - a);
  GrayImage img(width, height);
  auto px = img.pixels();
  for (std::size_t k = 0; k < px.size(); ++k)
    px[k] = to_pixel(lo_value + gain * (f[k] - a) + sigma * rng.normal());
  return img;
}

}  // namespace

const char* to_string(FixtureKind kind) noexcept {
  switch (kind) {
    case FixtureKind::Constant: return "constant";
    case FixtureKind::Gradient: return "gradient";
    case FixtureKind::Uniform: return "uniform";
    case FixtureKind::Scattered: return "scattered";
    case FixtureKind::Clustered: return "clustered";
    case FixtureKind::LowLight: return "lowlight";
    case FixtureKind::Overexposed: return "overexposed";
  }
  return "unknown";
}

Fixture make_fixture(FixtureKind kind, int width, int height, std::uint64_t seed) {
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(kind) + 1);
  Fixture fx;
  fx.kind = kind;
  fx.seed = seed;
  fx.name = std::string(to_string(kind)) + "_" + std::to_string(seed);

  switch (kind) {
    case FixtureKind::Constant: {
      static constexpr std::array<int, 4> kLevels{128, 0, 255, 37};
      const int level = kLevels[seed % kLevels.size()];
      fx.image = GrayImage(width, height, static_cast<std::uint8_t>(level));
      fx.target_boundary_fraction = (level == 0 || level == 255) ? 1.0 : 0.0;
      break;
    }
    case FixtureKind::Gradient: {
      fx.image = GrayImage(width, height);
      const bool diagonal = seed % 2 == 1;
      const double span = diagonal ? std::max(1, width + height - 2) : std::max(1, width - 1);
      for (int i = 0; i < height; ++i)
        for (int j = 0; j < width; ++j)
          fx.image.at(i, j) = to_pixel(255.0 * (diagonal ? i + j : j) / span);
      break;
    }
    case FixtureKind::Uniform: {
      fx.image = GrayImage(width, height);
      for (auto& v : fx.image.pixels()) v = static_cast<std::uint8_t>(rng.below(256));
      fx.target_boundary_fraction = 2.0 / 256.0;
      break;
    }
    case FixtureKind::Scattered: {
      fx.image = camera(width, height, rng, 0.0, 60.0, 1.0, 200.0, 2.0);
      const double p = 0.05 + 0.10 * rng.uniform();
      for (auto& v : fx.image.pixels())
        if (rng.uniform() < p) v = rng.uniform() < 0.5 ? 0 : 255;
      fx.target_boundary_fraction = p;
      break;
    }
    case FixtureKind::Clustered: {
      const double each = 0.16 + 0.08 * rng.uniform();
      fx.image = camera(width, height, rng, each, 0.0, 1.0 - each, 255.0, 1.5);
      fx.target_boundary_fraction = 2 * each;
      break;
    }
    case FixtureKind::LowLight: {
      const double dark = 0.30 + 0.25 * rng.uniform();
      fx.image = camera(width, height, rng, dark, 0.0, 1.0, 40.0 + 60.0 * rng.uniform(), 1.5);
      fx.target_boundary_fraction = dark;
      break;
    }
    case FixtureKind::Overexposed: {
      const double bright = 0.30 + 0.25 * rng.uniform();
      fx.image = camera(width, height, rng, 0.0, 255.0 - (40.0 + 60.0 * rng.uniform()),
                        1.0 - bright, 255.0, 1.5);
      fx.target_boundary_fraction = bright;
      break;
    }
  }
  return fx;
}

std::vector<Fixture> generate_corpus(std::uint64_t seed, int per_kind, int width, int height) {
  static constexpr std::array kAll{FixtureKind::Constant, FixtureKind::Gradient,
                                   FixtureKind::Uniform,  FixtureKind::Scattered,
                                   FixtureKind::Clustered, FixtureKind::LowLight,
                                   FixtureKind::Overexposed};
  std::vector<Fixture> out;
  for (auto kind : kAll)
    for (int k = 0; k < per_kind; ++k)
      out.push_back(make_fixture(kind, width, height, seed * 1000 + static_cast<std::uint64_t>(k)));
  return out;
}

std::vector<Fixture> boundary_heavy_corpus(std::uint64_t seed, int count, int width, int height) {
  static constexpr std::array kHeavy{FixtureKind::Clustered, FixtureKind::LowLight,
                                     FixtureKind::Overexposed};
  std::vector<Fixture> out;
  for (int k = 0; k < count; ++k)
    out.push_back(make_fixture(kHeavy[k % kHeavy.size()], width, height,
                               seed * 1000 + static_cast<std::uint64_t>(k)));
  return out;
}

}  // namespace rdh
